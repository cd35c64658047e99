"""Decomposition-series generators for three evolution equations.

Equations (g is the cubic coupling):

    LINEAR        u_t + i u_xx = 0
    REDUCED_NLS   i u_t + u_xx + g u = 0           (constant-coefficient linear)
    FULL_NLS      i u_t + u_xx + g |u|^2 u = 0     (cubic)

All generators expand u = sum_n u_n with u_0 equal to the initial condition,
building each term inside the exact :class:`~series_mirage.expsum.TimePoly`
algebra.

* :func:`hpm_series` is the homotopy-perturbation construction with linear
  part d/dt and initial guess u(x,0).  Matching powers of the embedding
  parameter collapses to the recursion

      u_{n+1} = -i * I[ d_xx u_n ]            (LINEAR)
      u_{n+1} =  i * I[ (d_xx + g) u_n ]      (REDUCED_NLS)

  where I is the definite time integral from 0 to t.
* :func:`adm_series` applies the inverse operator I to the same right-hand
  sides; the two methods coincide term by term for the linear kinds.  For
  FULL_NLS the cubic term is expanded in the polynomials A_n produced by
  :func:`adomian_cubic`, giving u_{n+1} = i * I[ d_xx u_n + g A_n ].
* :func:`taylor_series` computes the plain Taylor terms t^j/j! (d/dt)^j u|_0
  by substituting the equation for every time derivative.  For the linear
  kinds each method performs the same elementary coefficient operations, so
  the three truncated series are one and the same Taylor polynomial of the
  exponential exact solution; this generator serves as the oracle the other
  two are compared against.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .errors import InvalidInputError, UnsupportedEquationError
from .expsum import MAX_T_DEGREE, ExpSum, TimePoly, tpoly_diff


class EquationKind(enum.Enum):
    LINEAR = "linear"
    REDUCED_NLS = "reduced-nls"
    FULL_NLS = "full-nls"


@dataclass(frozen=True)
class Equation:
    """An equation tag: the kind plus the cubic coupling g for the NLS kinds."""

    kind: EquationKind
    gamma: float | None = None

    def __post_init__(self):
        if self.kind is EquationKind.LINEAR:
            if self.gamma is not None:
                raise InvalidInputError("the linear equation carries no coupling g")
        else:
            if self.gamma is None or not math.isfinite(self.gamma):
                raise InvalidInputError(
                    f"{self.kind.value} requires a finite coupling g, got {self.gamma!r}"
                )

    @classmethod
    def linear(cls) -> "Equation":
        return cls(EquationKind.LINEAR)

    @classmethod
    def reduced_nls(cls, gamma: float) -> "Equation":
        return cls(EquationKind.REDUCED_NLS, float(gamma))

    @classmethod
    def full_nls(cls, gamma: float) -> "Equation":
        return cls(EquationKind.FULL_NLS, float(gamma))

    def describe(self) -> str:
        if self.kind is EquationKind.LINEAR:
            return "linear"
        return f"{self.kind.value}(g={self.gamma!r})"


class SeriesMethod(enum.Enum):
    HPM = "hpm"
    ADM = "adm"
    TAYLOR = "taylor"


@dataclass(frozen=True)
class SeriesSolution:
    """A truncated decomposition series: terms u_0..u_N plus provenance tags."""

    terms: tuple[TimePoly, ...]
    equation: Equation
    method: SeriesMethod

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @property
    def initial(self) -> ExpSum:
        return self.terms[0].coeff(0)


def _check_order(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or not 0 <= n <= MAX_T_DEGREE:
        raise InvalidInputError(
            f"series order must be an integer in [0, {MAX_T_DEGREE}], got {n!r}"
        )
    return n


def _integrand(eq: Equation, p: TimePoly) -> TimePoly:
    # the right-hand side of u_t = ... applied to one series term
    if eq.kind is EquationKind.LINEAR:
        return p.dx(2) * (-1j)
    return (p.dx(2) + eq.gamma * p) * 1j


def _integral_recursion(
    u0: ExpSum, eq: Equation, n_terms: int, method: SeriesMethod
) -> SeriesSolution:
    terms = [TimePoly.from_expsum(u0)]
    for _ in range(n_terms):
        terms.append(_integrand(eq, terms[-1]).integrate_t())
    return SeriesSolution(tuple(terms), eq, method)


def hpm_series(u0: ExpSum, eq: Equation, order: int) -> SeriesSolution:
    """Homotopy-perturbation series u_0..u_order for LINEAR or REDUCED_NLS.

    The genuinely cubic equation is not covered: this package exercises the
    homotopy construction only where the equation is linear (or reduced to
    linear), and the Adomian generator owns the cubic path.
    """
    _check_order(order)
    if eq.kind is EquationKind.FULL_NLS:
        raise UnsupportedEquationError(
            "hpm_series covers the linear and reduced equations only; "
            "use adm_series for the full cubic equation"
        )
    return _integral_recursion(u0, eq, order, SeriesMethod.HPM)


def adm_series(u0: ExpSum, eq: Equation, order: int) -> SeriesSolution:
    """Adomian decomposition series u_0..u_order for any equation kind.

    For LINEAR and REDUCED_NLS the recursion is identical to the homotopy
    one; for FULL_NLS the cubic term is fed through :func:`adomian_cubic`.
    """
    _check_order(order)
    if eq.kind is not EquationKind.FULL_NLS:
        return _integral_recursion(u0, eq, order, SeriesMethod.ADM)
    terms = [TimePoly.from_expsum(u0)]
    for n in range(order):
        a_n = adomian_cubic(terms)
        integrand = (terms[n].dx(2) + eq.gamma * a_n) * 1j
        terms.append(integrand.integrate_t())
    return SeriesSolution(tuple(terms), eq, SeriesMethod.ADM)


def adomian_cubic(terms: list[TimePoly] | tuple[TimePoly, ...]) -> TimePoly:
    """Adomian polynomial A_n for the nonlinearity N(u) = u^2 conj(u).

    Given u_0..u_n, returns the trilinear Cauchy sum

        A_n = sum_{i+j+k=n} u_i * u_j * conj(u_k)

    with t treated as real under conjugation.  For a polynomial nonlinearity
    this coincides with the classical derivative definition of the Adomian
    polynomials, and the sum is exact in this algebra.
    """
    if not terms:
        raise InvalidInputError("adomian_cubic requires at least u_0")
    n = len(terms) - 1
    conjs = [p.conj() for p in terms]
    total = TimePoly.zero()
    for i in range(n + 1):
        for j in range(n + 1 - i):
            k = n - i - j
            total = total + terms[i] * terms[j] * conjs[k]
    return total


def taylor_series(u0: ExpSum, eq: Equation, order: int) -> SeriesSolution:
    """Direct Taylor expansion u = sum_j t^j/j! (d/dt)^j u|_0.

    Time derivatives at t = 0 are obtained by substituting the equation:
    (d/dt)^j u|_0 = (-i d_xx)^j u0 for LINEAR and (i(d_xx+g))^j u0 for
    REDUCED_NLS.  The factorials are folded in incrementally, one floating
    reciprocal per step.  For the full cubic equation there is no such
    closed recursion here; the grid reference solver is the oracle there.
    """
    _check_order(order)
    if eq.kind is EquationKind.FULL_NLS:
        raise UnsupportedEquationError(
            "taylor_series covers the linear and reduced equations only; "
            "the grid reference solver is the oracle for the full equation"
        )
    w = u0
    terms = [TimePoly.from_expsum(w)]
    for j in range(1, order + 1):
        if eq.kind is EquationKind.LINEAR:
            w = (w.dx(2) * (-1j)) * (1.0 / j)
        else:
            w = ((w.dx(2) + eq.gamma * w) * 1j) * (1.0 / j)
        terms.append(TimePoly.from_expsum(w, power=j))
    return SeriesSolution(tuple(terms), eq, SeriesMethod.TAYLOR)


def partial_sum_eval(sol: SeriesSolution, order: int, x: float, t: float) -> complex:
    """Value of the partial sum u_0 + ... + u_order at (x, t)."""
    if not isinstance(order, int) or isinstance(order, bool) or not 0 <= order <= sol.order:
        raise InvalidInputError(
            f"partial-sum order must be an integer in [0, {sol.order}], got {order!r}"
        )
    return sum((sol.terms[n].eval(x, t) for n in range(order + 1)), 0j)


def partial_sum_fn(sol: SeriesSolution, order: int) -> Callable[[float, float], complex]:
    """Closure evaluating the order-N partial sum; validates the order once."""
    if not isinstance(order, int) or isinstance(order, bool) or not 0 <= order <= sol.order:
        raise InvalidInputError(
            f"partial-sum order must be an integer in [0, {sol.order}], got {order!r}"
        )
    return lambda x, t: partial_sum_eval(sol, order, x, t)


def series_residual(sol: SeriesSolution, order: int) -> TimePoly:
    """Apply the PDE operator to the order-N partial sum, exactly.

    Returns d_t S + i d_xx S for LINEAR and i d_t S + d_xx S + g S for
    REDUCED_NLS, with S the partial sum through ``order``.  The recursion
    telescopes the time derivatives, so the result equals the spatial part
    of the operator applied to the last kept term alone and its lowest
    t-power is ``order``.
    """
    if sol.equation.kind is EquationKind.FULL_NLS:
        raise UnsupportedEquationError(
            "series_residual covers the linear and reduced equations only"
        )
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise InvalidInputError(f"residual order must be an integer >= 1, got {order!r}")
    if order > sol.order:
        raise InvalidInputError(
            f"residual order {order} exceeds the series order {sol.order}"
        )
    s = TimePoly.zero()
    for n in range(order + 1):
        s = s + sol.terms[n]
    if sol.equation.kind is EquationKind.LINEAR:
        return s.dt() + s.dx(2) * 1j
    return s.dt() * 1j + s.dx(2) + sol.equation.gamma * s


def series_max_term_diff(
    a: SeriesSolution, b: SeriesSolution, upto: int | None = None
) -> float:
    """Largest coefficient difference between two series, term by term."""
    n = min(a.order, b.order) if upto is None else upto
    if n > min(a.order, b.order):
        raise InvalidInputError(
            f"comparison order {n} exceeds a series order ({a.order}, {b.order})"
        )
    return max(tpoly_diff(a.terms[k], b.terms[k]) for k in range(n + 1))
