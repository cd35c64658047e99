"""Quantitative diagnostics: normalizability classes, truncation-error
tables, and modulus checks for the unit-modulus solution family."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import EvaluationOverflowError, InvalidInputError
from .csvfmt import fmt_float
from .exact import ExactEvaluator, remainder_closed_form
from .expsum import ExpSum
from .methods import EquationKind, SeriesSolution, partial_sum_eval

#: |Re a| below this counts as a purely oscillatory exponent
REAL_EXPONENT_TOL = 1e-12


class NormClass(enum.Enum):
    SQUARE_INTEGRABLE = "square-integrable"
    BOUNDED_NOT_L2 = "bounded-not-l2"
    UNBOUNDED = "unbounded"
    ZERO = "zero"


def classify_normalizability(u0: ExpSum) -> NormClass:
    """Classify an exponential sum by its behavior on the whole real line.

    The judgement is symbolic, on the exponents, and deliberately ignores any
    computational domain: on a periodic box every bounded function is square
    integrable, which would erase the distinction being measured.  Any term
    with Re a != 0 grows at one infinity, so the sum is UNBOUNDED; a nonzero
    sum of pure plane waves is bounded but its |u|^2 integral over the line
    diverges, hence BOUNDED_NOT_L2.  No nonzero finite exponential sum is in
    L2 of the line, so SQUARE_INTEGRABLE is never returned here; it is
    reserved for the sampled Gaussian family (see
    :func:`classify_gaussian_packet`).
    """
    if u0.is_zero:
        return NormClass.ZERO
    if any(abs(a.real) > REAL_EXPONENT_TOL for _, a in u0.terms):
        return NormClass.UNBOUNDED
    return NormClass.BOUNDED_NOT_L2


def classify_gaussian_packet() -> NormClass:
    """Class of the grid-only Gaussian packet family: square-integrable.

    Gaussians are outside the exponential-sum family, so their class is fixed
    by construction rather than inferred from exponents.
    """
    return NormClass.SQUARE_INTEGRABLE


@dataclass(frozen=True)
class ErrorRow:
    order: int
    time: float
    sup_error: float
    bound: float | None = None


@dataclass(frozen=True)
class ErrorTable:
    """Rows of (order, time, sup error, optional analytic bound).

    Rows are kept sorted by (order, time); errors must be nonnegative.
    """

    rows: tuple[ErrorRow, ...]

    def __post_init__(self):
        rows = tuple(sorted(self.rows, key=lambda r: (r.order, r.time)))
        for r in rows:
            if r.sup_error < 0 or (r.bound is not None and r.bound < 0):
                raise InvalidInputError(f"error-table entries must be nonnegative: {r!r}")
        object.__setattr__(self, "rows", rows)

    def to_csv(self) -> str:
        lines = ["order,time,sup_error,bound"]
        for r in self.rows:
            bound = "" if r.bound is None else fmt_float(r.bound)
            lines.append(
                f"{r.order},{fmt_float(r.time)},{fmt_float(r.sup_error)},{bound}"
            )
        return "\n".join(lines) + "\n"


def _tail_bound_params(sol: SeriesSolution, x_samples) -> tuple[float, float] | None:
    """Frequency and amplitude for the factorial tail bound, if applicable.

    The bound applies when the evolved solution is (amplitude in x) * e^{ibt}
    with a single real nonzero frequency b: every exponent must have a real
    square, the nonzero frequencies b_j = -a_j^2 (linear) or g + a_j^2
    (reduced/full with unit-modulus data) must coincide, and terms with
    b_j = 0 are reproduced exactly at every order so they never contribute.
    """
    u0 = sol.terms[0].coeff(0)
    if u0.is_zero:
        return (0.0, 0.0)
    kind = sol.equation.kind
    if kind is EquationKind.FULL_NLS:
        # valid only where the cubic equation genuinely reduces: one plane
        # wave of unit modulus
        if len(u0.terms) != 1:
            return None
        c, a = u0.terms[0]
        if abs(a.real) > REAL_EXPONENT_TOL or abs(abs(c) - 1.0) > REAL_EXPONENT_TOL:
            return None
    freqs = []
    for c, a in u0.terms:
        a2 = a * a
        if abs(a2.imag) > REAL_EXPONENT_TOL:
            return None
        if kind is EquationKind.LINEAR:
            freqs.append(-a2.real)
        else:
            freqs.append(sol.equation.gamma + a2.real)
    nonzero = [b for b in freqs if abs(b) > REAL_EXPONENT_TOL]
    if not nonzero:
        return (0.0, 0.0)
    b = nonzero[0]
    if any(abs(other - b) > REAL_EXPONENT_TOL for other in nonzero):
        return None
    amplitude = max(
        sum(
            abs(c) * math.exp(a.real * x)
            for (c, a), bj in zip(u0.terms, freqs)
            if abs(bj - b) <= REAL_EXPONENT_TOL
        )
        for x in x_samples
    )
    return (abs(b), amplitude)


def truncation_error_table(
    sol: SeriesSolution,
    exact: ExactEvaluator,
    orders,
    times,
    x_samples,
) -> ErrorTable:
    """Sup error of each partial sum against the exact solution.

    For every requested (order, time) the error is the maximum over the x
    samples of |partial sum - exact|.  When the solution's time dependence is
    a single exponential e^{ibt} the bound column carries the factorial tail
    estimate from :func:`remainder_closed_form`; otherwise it is left empty.
    """
    orders = sorted(set(int(n) for n in orders))
    times = sorted(float(t) for t in times)
    xs = [float(x) for x in x_samples]
    if not orders or not times or not xs:
        raise InvalidInputError("orders, times and x_samples must be nonempty")
    if orders[0] < 0 or orders[-1] > sol.order:
        raise InvalidInputError(
            f"orders must lie within [0, {sol.order}], got {orders[0]}..{orders[-1]}"
        )
    params = _tail_bound_params(sol, xs)
    rows = []
    for n in orders:
        for t in times:
            try:
                err = max(abs(partial_sum_eval(sol, n, x, t) - exact(x, t)) for x in xs)
            except EvaluationOverflowError as exc:
                raise EvaluationOverflowError(
                    f"overflow in error-table row order={n}, t={t!r}: {exc}"
                ) from exc
            bound = None
            if params is not None:
                b, amplitude = params
                bound = remainder_closed_form(b, amplitude, n, t)
            rows.append(ErrorRow(n, t, err, bound))
    return ErrorTable(tuple(rows))


def unit_modulus_deviation(evaluator, samples) -> float:
    """Largest deviation of |u(x, t)| from 1 over the given (x, t) samples.

    Accepts any callable (x, t) -> complex, in particular an
    :class:`~series_mirage.exact.ExactEvaluator` or a partial-sum closure.
    """
    samples = list(samples)
    if not samples:
        raise InvalidInputError("samples must be nonempty")
    return max(abs(abs(complex(evaluator(x, t))) - 1.0) for x, t in samples)
