"""Experiment driver: reproduces each worked example and check from a config
file or flags and writes deterministic CSV/JSON artifacts.

Experiments:

* ``example1``      linear equation, u0 = 1 + 2cosh(2x)
* ``example2``      linear equation, u0 = exp(3ix)
* ``example3``      cubic equation, u0 = exp(ix), g = +2
* ``example4``      cubic equation, u0 = exp(ix), g = -2
* ``operator``      truncated operator series vs exact eigenexpansion
* ``gaussian-free`` spectral free propagation of a square-integrable packet
* ``nls-reference`` split-step cubic solver vs the exact plane wave
* ``classify``      normalizability table for the example initial data

Exit codes: 0 success, 1 config error, 2 internal cross-check failure,
3 numerical overflow or divergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .csvfmt import fmt_float
from .diagnostics import (
    ErrorRow,
    ErrorTable,
    classify_gaussian_packet,
    classify_normalizability,
    truncation_error_table,
)
from .errors import (
    DivergenceError,
    EvaluationOverflowError,
    InvalidInputError,
    SeriesMirageError,
    UnsupportedEquationError,
)
from .exact import exact_linear, exact_reduced_nls, remainder_closed_form
from .expsum import MAX_T_DEGREE, ExpSum
from .grid import (
    Grid,
    free_propagate_spectral,
    gaussian_packet,
    l2_norm,
    sample,
    split_step_nls,
    state_to_csv,
    sup_error,
)
from .methods import (
    Equation,
    adm_series,
    hpm_series,
    series_max_term_diff,
    taylor_series,
)
from .operators import (
    exact_evolve,
    laplacian_dirichlet,
    series_evolve,
)
from .operators import state_to_csv as vector_to_csv


class ConfigError(SeriesMirageError, ValueError):
    """A config file or flag set cannot be resolved into a valid run."""


class CrossCheckError(SeriesMirageError, AssertionError):
    """An internal consistency check between two computation routes failed."""


#: methods must agree to this coefficientwise tolerance or the run aborts
CROSS_CHECK_TOL = 1e-12

ENV_OUT = "SERIES_MIRAGE_OUT"
DEFAULT_OUT = "series-mirage-out"

_EX1_U0 = ExpSum(((1, 0), (1, 2), (1, -2)))  # 1 + 2cosh(2x)
_EX2_U0 = ExpSum.single(1, 3j)  # exp(3ix)
_EX34_U0 = ExpSum.single(1, 1j)  # exp(ix)

_SERIES_EXPERIMENTS = ("example1", "example2", "example3", "example4")

DEFAULTS: dict[str, dict] = {
    "example1": {
        "method": "all", "order": 20,
        "t0": 0.0, "t1": 1.0, "t_steps": 11,
        "x0": -1.0, "x1": 1.0, "x_steps": 9,
    },
    "example2": {
        "method": "all", "order": 20,
        "t0": 0.0, "t1": 1.0, "t_steps": 11,
        "x0": -1.0, "x1": 1.0, "x_steps": 9,
    },
    "example3": {
        "method": "all", "order": 20, "gamma": 2.0,
        "t0": 0.0, "t1": 2.0, "t_steps": 21,
        "x0": -1.0, "x1": 1.0, "x_steps": 9,
    },
    "example4": {
        "method": "all", "order": 20, "gamma": -2.0,
        "t0": 0.0, "t1": 2.0, "t_steps": 21,
        "x0": -1.0, "x1": 1.0, "x_steps": 9,
    },
    "operator": {"order": 40, "grid_n": 16, "h": 1.0, "t1": 1.0},
    "gaussian-free": {"grid_n": 512, "grid_L": 40.0, "sigma": 0.5, "t1": 1.0},
    "nls-reference": {
        "gamma": 2.0, "grid_n": 64, "grid_L": 2.0 * math.pi,
        "dt": 1e-3, "t1": 1.0, "t_steps": 11,
    },
    "classify": {},
}

_INT_KEYS = {"order", "grid_n", "t_steps", "x_steps"}
_FLOAT_KEYS = {"gamma", "grid_L", "h", "sigma", "dt", "t0", "t1", "x0", "x1"}
_STR_KEYS = {"method"}


@dataclass(frozen=True)
class ExperimentConfig:
    """A fully resolved run: the experiment name, its parameters, output dir."""

    experiment: str
    out: Path
    params: tuple[tuple[str, object], ...]

    def __getitem__(self, key: str):
        for k, v in self.params:
            if k == key:
                return v
        raise KeyError(key)

    def manifest_dict(self) -> dict:
        d = {"experiment": self.experiment, "out": str(self.out)}
        d.update({k: v for k, v in self.params})
        return d


def _coerce(key: str, value):
    try:
        if key in _INT_KEYS:
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError("not an integer")
            return int(value)
        if key in _FLOAT_KEYS:
            v = float(value)
            if not math.isfinite(v):
                raise ValueError("not finite")
            return v
        if key in _STR_KEYS:
            return str(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for '{key}': {value!r} ({exc})") from exc
    raise ConfigError(f"unknown config key '{key}'")


def _validate(experiment: str, params: dict) -> None:
    if "method" in params and params["method"] not in ("hpm", "adm", "taylor", "all"):
        raise ConfigError(f"method must be hpm, adm, taylor or all, got {params['method']!r}")
    if "order" in params and not 0 <= params["order"] <= MAX_T_DEGREE:
        raise ConfigError(f"order must lie in [0, {MAX_T_DEGREE}], got {params['order']}")
    if "t_steps" in params and params["t_steps"] < 1:
        raise ConfigError(f"t_steps must be >= 1, got {params['t_steps']}")
    if "x_steps" in params and params["x_steps"] < 1:
        raise ConfigError(f"x_steps must be >= 1, got {params['x_steps']}")
    if "t0" in params and "t1" in params and params["t1"] < params["t0"]:
        raise ConfigError("t1 must be >= t0")
    for key in ("grid_L", "h", "sigma", "dt"):
        if key in params and params[key] <= 0:
            raise ConfigError(f"{key} must be positive, got {params[key]}")
    n = params.get("grid_n")
    if experiment in ("gaussian-free", "nls-reference"):
        if n < 8 or n & (n - 1):
            raise ConfigError(f"grid_n must be a power of two >= 8, got {n}")
    if experiment == "operator" and n < 2:
        raise ConfigError(f"grid_n (operator dimension) must be >= 2, got {n}")
    if experiment == "nls-reference":
        # the sampled plane wave exp(ix) must fit the periodic box exactly
        ratio = params["grid_L"] / (2.0 * math.pi)
        if abs(ratio - round(ratio)) > 1e-9 or round(ratio) < 1:
            raise ConfigError(
                f"grid_L must be a positive integer multiple of 2*pi so the plane "
                f"wave is periodic on the box, got {params['grid_L']}"
            )
        if params["dt"] > params["t1"]:
            raise ConfigError("dt must not exceed t1")


def parse_config(
    experiment: str,
    config_file: str | os.PathLike | None = None,
    overrides: dict | None = None,
    out: str | os.PathLike | None = None,
) -> ExperimentConfig:
    """Resolve defaults, config-file values and flag overrides into a run.

    Flag overrides win over the file, which wins over the defaults.  Keys not
    used by the chosen experiment are rejected with a descriptive error.
    """
    if experiment not in DEFAULTS:
        raise ConfigError(
            f"unknown experiment {experiment!r}; choose from {', '.join(DEFAULTS)}"
        )
    params = dict(DEFAULTS[experiment])
    if config_file is not None:
        try:
            raw = json.loads(Path(config_file).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config file {config_file}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {config_file} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, value in raw.items():
            if key == "experiment":
                if value != experiment:
                    raise ConfigError(
                        f"config file is for experiment {value!r}, not {experiment!r}"
                    )
                continue
            if key == "out":
                if out is None:
                    out = str(value)
                continue
            if key not in params:
                raise ConfigError(
                    f"config key '{key}' is unknown or not used by experiment {experiment}"
                )
            params[key] = _coerce(key, value)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in params:
            raise ConfigError(
                f"flag --{key.replace('_', '-')} is not used by experiment {experiment}"
            )
        params[key] = _coerce(key, value)
    _validate(experiment, params)
    out_dir = Path(out) if out is not None else Path(
        os.environ.get(ENV_OUT, DEFAULT_OUT)
    )
    return ExperimentConfig(experiment, out_dir, tuple(sorted(params.items())))


def _linspace(a: float, b: float, n: int) -> list[float]:
    if n == 1:
        return [a]
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def _write(out: Path, name: str, text: str) -> Path:
    path = out / name
    path.write_text(text, encoding="utf-8", newline="")
    return path


def _terms_csv(solutions: dict) -> str:
    lines = ["method,term,t_power,re_coeff,im_coeff,re_alpha,im_alpha"]
    for name, sol in solutions.items():
        for n, poly in enumerate(sol.terms):
            for p, coeff in enumerate(poly.coeffs):
                for c, a in coeff.terms:
                    lines.append(
                        f"{name},{n},{p},{fmt_float(c.real)},{fmt_float(c.imag)},"
                        f"{fmt_float(a.real)},{fmt_float(a.imag)}"
                    )
    return "\n".join(lines) + "\n"


def _run_series(cfg: ExperimentConfig, out: Path) -> list[str]:
    exp = cfg.experiment
    if exp == "example1":
        u0, exact = _EX1_U0, exact_linear(_EX1_U0)
        eq_for = {m: Equation.linear() for m in ("hpm", "adm", "taylor")}
    elif exp == "example2":
        u0, exact = _EX2_U0, exact_linear(_EX2_U0)
        eq_for = {m: Equation.linear() for m in ("hpm", "adm", "taylor")}
    else:
        gamma = cfg["gamma"]
        u0, exact = _EX34_U0, exact_reduced_nls(1.0, gamma)
        # the Adomian route takes the genuinely cubic equation; the other two
        # take its unit-modulus linear reduction
        eq_for = {
            "hpm": Equation.reduced_nls(gamma),
            "taylor": Equation.reduced_nls(gamma),
            "adm": Equation.full_nls(gamma),
        }
    generators = {"hpm": hpm_series, "adm": adm_series, "taylor": taylor_series}
    methods = ["hpm", "adm", "taylor"] if cfg["method"] == "all" else [cfg["method"]]
    solutions = {m: generators[m](u0, eq_for[m], cfg["order"]) for m in methods}

    names = list(solutions)
    for other in names[1:]:
        diff = series_max_term_diff(solutions[names[0]], solutions[other])
        if diff > CROSS_CHECK_TOL:
            raise CrossCheckError(
                f"{names[0]} and {other} series disagree: max coefficient "
                f"difference {diff:.3e} exceeds {CROSS_CHECK_TOL}"
            )

    preferred = next(m for m in ("adm", "taylor", "hpm") if m in solutions)
    table = truncation_error_table(
        solutions[preferred],
        exact,
        range(cfg["order"] + 1),
        _linspace(cfg["t0"], cfg["t1"], cfg["t_steps"]),
        _linspace(cfg["x0"], cfg["x1"], cfg["x_steps"]),
    )
    _write(out, "terms.csv", _terms_csv(solutions))
    _write(out, "errors.csv", table.to_csv())
    return ["terms.csv", "errors.csv"]


def _run_operator(cfg: ExperimentConfig, out: Path) -> list[str]:
    n, h, t = cfg["grid_n"], cfg["h"], cfg["t1"]
    op = laplacian_dirichlet(n, h)
    u0 = np.ones(n) / math.sqrt(n)
    exact = exact_evolve(op, u0, t)
    rho = float(np.max(np.abs(op.eigenvalues)))
    rows = []
    for order in range(cfg["order"] + 1):
        approx = series_evolve(op, u0, t, order)
        err = float(np.linalg.norm(approx - exact))
        rows.append(ErrorRow(order, t, err, remainder_closed_form(rho, 1.0, order, t)))
    _write(out, "errors.csv", ErrorTable(tuple(rows)).to_csv())
    _write(out, "state.csv", vector_to_csv(exact))
    return ["errors.csv", "state.csv"]


def _run_gaussian_free(cfg: ExperimentConfig, out: Path) -> list[str]:
    grid = Grid(cfg["grid_L"], cfg["grid_n"])
    state0 = sample(grid, gaussian_packet(grid.length / 2.0, cfg["sigma"]))
    state = free_propagate_spectral(state0, cfg["t1"])
    drift = abs(l2_norm(state) - l2_norm(state0))
    if drift > 1e-10:
        raise CrossCheckError(f"free propagation changed the L2 norm by {drift:.3e}")
    _write(out, "state.csv", state_to_csv(state))
    return ["state.csv"]


def _run_nls_reference(cfg: ExperimentConfig, out: Path) -> list[str]:
    grid = Grid(cfg["grid_L"], cfg["grid_n"])
    gamma, dt = cfg["gamma"], cfg["dt"]
    state = sample(grid, lambda x: complex(math.cos(x), math.sin(x)))
    exact = exact_reduced_nls(1.0, gamma)
    checkpoints = _linspace(0.0, cfg["t1"], cfg["t_steps"])
    rows = []
    total_steps = 0
    for prev, now in zip(checkpoints, checkpoints[1:]):
        steps = max(1, round((now - prev) / dt))
        state = split_step_nls(state, gamma, (now - prev) / steps, steps)
        total_steps += steps
        reference = sample(grid, lambda x: exact(x, now))
        rows.append(ErrorRow(total_steps, now, sup_error(state, reference), None))
    _write(out, "errors.csv", ErrorTable(tuple(rows)).to_csv())
    _write(out, "state.csv", state_to_csv(state))
    return ["errors.csv", "state.csv"]


def _run_classify(cfg: ExperimentConfig, out: Path) -> list[str]:
    rows = [
        ("example1", "1+2cosh(2x)", classify_normalizability(_EX1_U0)),
        ("example2", "exp(3ix)", classify_normalizability(_EX2_U0)),
        ("example3", "exp(ix)", classify_normalizability(_EX34_U0)),
        ("example4", "exp(ix)", classify_normalizability(_EX34_U0)),
        ("zero", "0", classify_normalizability(ExpSum.zero())),
        ("gaussian-packet", "unit-norm gaussian (grid family)", classify_gaussian_packet()),
    ]
    lines = ["label,input,norm_class"]
    lines += [f"{label},{desc},{cls.value}" for label, desc, cls in rows]
    _write(out, "classification.csv", "\n".join(lines) + "\n")
    return ["classification.csv"]


_RUNNERS = {
    "example1": _run_series,
    "example2": _run_series,
    "example3": _run_series,
    "example4": _run_series,
    "operator": _run_operator,
    "gaussian-free": _run_gaussian_free,
    "nls-reference": _run_nls_reference,
    "classify": _run_classify,
}


def run(cfg: ExperimentConfig) -> list[Path]:
    """Execute one experiment, returning the paths of all files written."""
    out = cfg.out
    out.mkdir(parents=True, exist_ok=True)
    outputs = _RUNNERS[cfg.experiment](cfg, out)
    manifest = cfg.manifest_dict()
    manifest["outputs"] = sorted(outputs)
    manifest["version"] = __version__
    _write(out, "manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return [out / "manifest.json"] + [out / name for name in outputs]


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; config errors must exit 1
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="series-mirage",
        description="Reproduce the worked series examples and reference checks.",
    )
    p.add_argument("experiment", choices=sorted(DEFAULTS))
    p.add_argument("--method", choices=("hpm", "adm", "taylor", "all"))
    p.add_argument("--order", type=int)
    p.add_argument("--gamma", type=float)
    p.add_argument("--grid-n", "--n", dest="grid_n", type=int)
    p.add_argument("--grid-L", "--L", dest="grid_L", type=float)
    p.add_argument("--t0", type=float)
    p.add_argument("--t1", "--t", dest="t1", type=float)
    p.add_argument("--t-steps", dest="t_steps", type=int)
    p.add_argument("--dt", type=float)
    p.add_argument("--out")
    p.add_argument("--config")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        overrides = {
            key: getattr(args, key)
            for key in ("method", "order", "gamma", "grid_n", "grid_L",
                        "t0", "t1", "t_steps", "dt")
        }
        cfg = parse_config(args.experiment, args.config, overrides, args.out)
        files = run(cfg)
    except (ConfigError, InvalidInputError, UnsupportedEquationError) as exc:
        print(f"series-mirage: config error: {exc}", file=sys.stderr)
        return 1
    except CrossCheckError as exc:
        print(f"series-mirage: cross-check failed: {exc}", file=sys.stderr)
        return 2
    except (EvaluationOverflowError, DivergenceError) as exc:
        print(f"series-mirage: numerical failure: {exc}", file=sys.stderr)
        return 3
    names = ", ".join(f.name for f in files)
    print(f"{cfg.experiment}: wrote {names} in {cfg.out}")
    return 0
