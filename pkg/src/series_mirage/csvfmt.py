"""Float formatting shared by every CSV writer in the package.

All tables use the shortest decimal representation that round-trips to the
same IEEE double (at most 17 significant digits), so identical runs produce
byte-identical files on any platform.
"""


def fmt_float(x: float) -> str:
    return repr(float(x))
