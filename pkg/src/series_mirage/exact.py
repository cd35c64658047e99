"""Closed-form reference solutions and the factorial truncation bound."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import EvaluationOverflowError, InvalidInputError
from .expsum import ExpSum
from .methods import Equation


@dataclass(frozen=True)
class ExactEvaluator:
    """A closed-form solution u(x, t), tagged with the PDEs it satisfies."""

    family: str
    params: tuple[tuple[str, object], ...]
    equations: tuple[Equation, ...]
    fn: Callable[[float, float], complex] = field(repr=False, compare=False)

    def __call__(self, x: float, t: float) -> complex:
        return self.fn(x, t)


def exact_linear(u0: ExpSum) -> ExactEvaluator:
    """Exact evolution of sum_j c_j e^{a_j x} under u_t + i u_xx = 0.

    Each exponential evolves independently:

        u(x, t) = sum_j c_j * exp(a_j x - i a_j^2 t).

    For u0 = exp(3ix) this gives exp(i(3x + 9t)); note the phase is
    i(3x + 9t), not 3(x + 3it).
    """
    terms = u0.terms

    def fn(x: float, t: float) -> complex:
        if not (math.isfinite(x) and math.isfinite(t)):
            raise InvalidInputError(f"evaluation point must be finite, got {(x, t)!r}")
        total = 0j
        for c, a in terms:
            try:
                total += c * cmath.exp(a * x - 1j * a * a * t)
            except OverflowError as exc:
                raise EvaluationOverflowError(
                    f"exp overflow in term {c!r}*exp({a!r}*x) at x={x!r}, t={t!r}"
                ) from exc
        if not cmath.isfinite(total):
            raise EvaluationOverflowError(f"non-finite evaluation at x={x!r}, t={t!r}")
        return total

    return ExactEvaluator(
        family="linear-expsum",
        params=(("initial", u0),),
        equations=(Equation.linear(),),
        fn=fn,
    )


def exact_reduced_nls(alpha: float, gamma: float) -> ExactEvaluator:
    """Plane-wave solution e^{i a x} e^{i(g - a^2) t} of the reduced equation.

    Its modulus is identically 1, so the cubic term g|u|^2 u equals g u and
    the same function also solves the full cubic equation; the evaluator is
    tagged as valid for both.
    """
    if not (math.isfinite(alpha) and math.isfinite(gamma)):
        raise InvalidInputError(
            f"parameters must be finite, got alpha={alpha!r}, gamma={gamma!r}"
        )
    alpha = float(alpha)
    gamma = float(gamma)
    omega = gamma - alpha * alpha

    def fn(x: float, t: float) -> complex:
        if not (math.isfinite(x) and math.isfinite(t)):
            raise InvalidInputError(f"evaluation point must be finite, got {(x, t)!r}")
        return cmath.exp(1j * (alpha * x + omega * t))

    return ExactEvaluator(
        family="nls-plane-wave",
        params=(("alpha", alpha), ("gamma", gamma)),
        equations=(Equation.reduced_nls(gamma), Equation.full_nls(gamma)),
        fn=fn,
    )


def remainder_closed_form(b: float, amplitude: float, order: int, t: float) -> float:
    """Tail bound for a truncated exponential series.

    Bounds |amplitude * (e^{ibt} - sum_{n<=order} (ibt)^n/n!)| by

        amplitude * |bt|^(order+1) / (order+1)! * e^{|bt|},

    the standard remainder estimate for the exponential series.  The power
    and factorial are folded together as a running product of |bt|/k factors
    so large orders cannot overflow.
    """
    if not isinstance(order, int) or isinstance(order, bool) or order < 0:
        raise InvalidInputError(f"order must be a nonnegative integer, got {order!r}")
    if not (math.isfinite(b) and math.isfinite(amplitude)):
        raise InvalidInputError(f"b and amplitude must be finite, got {(b, amplitude)!r}")
    if not (math.isfinite(t) and t >= 0):
        raise InvalidInputError(f"t must be finite and nonnegative, got {t!r}")
    z = abs(b * t)
    tail = amplitude * math.exp(z)
    for k in range(1, order + 2):
        tail *= z / k
    return tail
