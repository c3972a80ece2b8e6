"""Closed-form test functions with exact derivatives and hypothesis checks.

A :class:`FunctionSpec` is a thrice-differentiable function drawn from a
small set of closed families (powers, exponentials, nonnegative-coefficient
polynomials, affine, constant).  Each family carries exact derivative rules
up to order 3, so right-hand sides of the bound catalog can be evaluated
without numerical differentiation.  Convexity and monotonicity hypotheses
are checked on uniform grids, since a numeric toolkit can only sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Union

import numpy as np

from .errors import (
    DomainError,
    MissingExponents,
    NonFiniteValue,
    UnsupportedOrder,
)

GRID_POINTS = 201
GRID_EPS = 1e-9


class Family(str, Enum):
    POWER = "pow"
    EXP = "exp"
    POLY_NONNEG = "poly"
    AFFINE = "affine"
    CONSTANT = "const"


@dataclass(frozen=True)
class FunctionSpec:
    """A closed-form function family member.

    Parameters are interpreted per family:

    * ``POWER``: params = (n,), f(x) = x**n with integer n >= 1.
    * ``EXP``: params = (c,), f(x) = exp(c*x) with c > 0.
    * ``POLY_NONNEG``: params = coefficients (c0, c1, ...), all >= 0.
    * ``AFFINE``: params = (m, k), f(x) = m*x + k.
    * ``CONSTANT``: params = (k,).
    """

    family: Family
    params: tuple[float, ...]

    def __post_init__(self) -> None:
        p = self.params
        if not all(np.isfinite(p)):
            raise ValueError("function parameters must be finite")
        if self.family is Family.POWER:
            if len(p) != 1 or p[0] != int(p[0]) or p[0] < 1:
                raise ValueError("power family needs one integer exponent n >= 1")
        elif self.family is Family.EXP:
            if len(p) != 1 or p[0] <= 0:
                raise ValueError("exp family needs one rate c > 0")
        elif self.family is Family.POLY_NONNEG:
            if len(p) < 1 or any(c < 0 for c in p):
                raise ValueError("poly family needs nonnegative coefficients")
        elif self.family is Family.AFFINE:
            if len(p) != 2:
                raise ValueError("affine family needs (m, k)")
        elif self.family is Family.CONSTANT:
            if len(p) != 1:
                raise ValueError("constant family needs one value")

    @staticmethod
    def power(n: int) -> "FunctionSpec":
        return FunctionSpec(Family.POWER, (float(n),))

    @staticmethod
    def exponential(c: float) -> "FunctionSpec":
        return FunctionSpec(Family.EXP, (float(c),))

    @staticmethod
    def poly_nonneg(coeffs) -> "FunctionSpec":
        return FunctionSpec(Family.POLY_NONNEG, tuple(float(c) for c in coeffs))

    @staticmethod
    def affine(m: float, k: float) -> "FunctionSpec":
        return FunctionSpec(Family.AFFINE, (float(m), float(k)))

    @staticmethod
    def constant(k: float) -> "FunctionSpec":
        return FunctionSpec(Family.CONSTANT, (float(k),))

    def to_canonical(self) -> str:
        """Render the canonical CLI string, e.g. ``pow:3`` or ``poly:0.5,1,2``."""
        if self.family is Family.POWER:
            return f"pow:{int(self.params[0])}"
        return f"{self.family.value}:" + ",".join(_num(v) for v in self.params)


def _num(v: float) -> str:
    return repr(int(v)) if float(v).is_integer() else repr(float(v))


def parse_function(text: str) -> FunctionSpec:
    """Parse a canonical function string (case-insensitive, no trailing garbage).

    Raises:
        ValueError: on an unknown family tag, malformed numbers, or a
            parameter set that violates the family's constraints.
    """
    head, sep, tail = text.strip().lower().partition(":")
    if not sep or not tail:
        raise ValueError(f"malformed function string: {text!r}")
    try:
        values = tuple(float(tok) for tok in tail.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed function parameters in {text!r}") from exc
    builders = {
        "pow": lambda v: FunctionSpec.power(_as_int(v, text)),
        "exp": lambda v: FunctionSpec.exponential(_one(v, text)),
        "poly": FunctionSpec.poly_nonneg,
        "affine": lambda v: FunctionSpec.affine(*_pair(v, text)),
        "const": lambda v: FunctionSpec.constant(_one(v, text)),
    }
    if head not in builders:
        raise ValueError(f"unknown function family: {text!r}")
    return builders[head](values)


def _one(values, text):
    if len(values) != 1:
        raise ValueError(f"expected one parameter in {text!r}")
    return values[0]


def _pair(values, text):
    if len(values) != 2:
        raise ValueError(f"expected two parameters in {text!r}")
    return values


def _as_int(values, text):
    v = _one(values, text)
    if v != int(v):
        raise ValueError(f"power exponent must be an integer in {text!r}")
    return int(v)


class Positivity(str, Enum):
    ANY = "any"
    NONNEG_A = "nonneg_a"
    STRICTLY_POSITIVE = "strictly_positive"


@dataclass(frozen=True)
class Interval:
    """Endpoints a < b with an optional positivity requirement on a."""

    a: float
    b: float
    positivity: Positivity = Positivity.ANY

    def __post_init__(self) -> None:
        if not (np.isfinite(self.a) and np.isfinite(self.b)):
            raise ValueError("interval endpoints must be finite")
        if not self.a < self.b:
            raise ValueError(f"interval requires a < b, got [{self.a}, {self.b}]")
        if self.positivity is Positivity.STRICTLY_POSITIVE and not self.a > 0:
            raise DomainError("strictly positive interval requires a > 0")
        if self.positivity is Positivity.NONNEG_A and self.a < 0:
            raise DomainError("nonnegative interval requires a >= 0")

    @property
    def width(self) -> float:
        return self.b - self.a

    def grid(self, points: int) -> np.ndarray:
        return np.linspace(self.a, self.b, points)


def eval_deriv(spec: FunctionSpec, x, order: int):
    """Evaluate the exact order-th derivative of the family member at x.

    Args:
        spec: the function.
        x: scalar or ndarray of evaluation points.
        order: derivative order in {0, 1, 2, 3}.

    Returns:
        Value(s) with the same shape as ``x``.

    Raises:
        UnsupportedOrder: for order outside {0, 1, 2, 3}.
        DomainError: for non-finite evaluation points.
    """
    if order not in (0, 1, 2, 3):
        raise UnsupportedOrder(f"derivative order {order} not supported")
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise DomainError("evaluation point must be finite")
    out = _EVAL[spec.family](spec.params, xa, order)
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


def _eval_power(params, x, order):
    n = int(params[0])
    if order > n:
        return np.zeros_like(x)
    coef = 1.0
    for i in range(order):
        coef *= n - i
    return coef * x ** (n - order)


def _eval_exp(params, x, order):
    c = params[0]
    return c**order * np.exp(c * x)


def _eval_poly(params, x, order):
    coeffs = np.asarray(params, dtype=float)
    dc = np.polynomial.polynomial.polyder(coeffs, m=order) if order else coeffs
    return np.polynomial.polynomial.polyval(x, dc)


def _eval_affine(params, x, order):
    m, k = params
    if order == 0:
        return m * x + k
    if order == 1:
        return np.full_like(x, m)
    return np.zeros_like(x)


def _eval_const(params, x, order):
    if order == 0:
        return np.full_like(x, params[0])
    return np.zeros_like(x)


_EVAL = {
    Family.POWER: _eval_power,
    Family.EXP: _eval_exp,
    Family.POLY_NONNEG: _eval_poly,
    Family.AFFINE: _eval_affine,
    Family.CONSTANT: _eval_const,
}


def third_derivative_weight(spec: FunctionSpec, x):
    """The combination x * f'''(x) used by the second deviation identity."""
    xa = np.asarray(x, dtype=float)
    out = xa * eval_deriv(spec, xa, 3)
    return float(out) if np.ndim(x) == 0 else out


def sample_handle(g: Callable, xs: np.ndarray) -> np.ndarray:
    """Evaluate a scalar function handle on a grid, tolerating non-vectorized g.

    Raises:
        NonFiniteValue: if any sample is NaN or infinite.
    """
    try:
        vals = np.asarray(g(xs), dtype=float)
        if vals.shape != xs.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([float(g(float(t))) for t in xs])
    if not np.all(np.isfinite(vals)):
        raise NonFiniteValue("function handle returned NaN or infinity on the grid")
    return vals


def check_convex_on_grid(g: Callable, iv: Interval, points: int = GRID_POINTS) -> bool:
    """Grid test of convexity: all centered second differences >= -eps*scale.

    ``scale`` is max(1, max|g|) on the grid and eps is 1e-9, so affine pieces
    and roundoff never register as concavity.
    """
    if points < 3:
        raise ValueError("convexity check needs at least 3 grid points")
    vals = sample_handle(g, iv.grid(points))
    scale = max(1.0, float(np.max(np.abs(vals))))
    second = vals[:-2] - 2.0 * vals[1:-1] + vals[2:]
    return bool(np.all(second >= -GRID_EPS * scale))


def check_increasing_on_grid(g: Callable, iv: Interval, points: int = GRID_POINTS) -> bool:
    """Grid test that g is nondecreasing: consecutive rises >= -eps*scale."""
    if points < 2:
        raise ValueError("monotonicity check needs at least 2 grid points")
    vals = sample_handle(g, iv.grid(points))
    scale = max(1.0, float(np.max(np.abs(vals))))
    return bool(np.all(np.diff(vals) >= -GRID_EPS * scale))


class TheoremId(str, Enum):
    """Identifiers of the bound catalog (see README for the statements)."""

    THM21 = "thm2.1"
    THM22 = "thm2.2"
    THM23 = "thm2.3"
    REMARK21 = "remark2.1"
    THM24 = "thm2.4"
    THM25 = "thm2.5"
    THM26 = "thm2.6"
    THM27 = "thm2.7"


FIRST_ORDER_IDS = (TheoremId.THM21, TheoremId.THM22, TheoremId.THM23, TheoremId.REMARK21)
SECOND_ORDER_IDS = (TheoremId.THM24, TheoremId.THM25, TheoremId.THM26, TheoremId.THM27)


@dataclass(frozen=True)
class HypothesisReport:
    """Named boolean hypothesis checks for one bound id, plus the overall flag."""

    theorem_id: TheoremId
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {"checks": dict(self.checks), "overall": self.overall}


def _needs_q(theorem_id: TheoremId) -> bool:
    return theorem_id is not TheoremId.THM21


def hypotheses_for(
    theorem_id: TheoremId,
    spec: FunctionSpec,
    iv: Interval,
    pq=None,
    points: int = GRID_POINTS,
) -> HypothesisReport:
    """Check the hypotheses a bound id places on the function and interval.

    ``pq`` may be an exponent pair (anything with a ``q`` attribute), a bare
    q value, or None for bounds that take no exponents.  Only q enters the
    hypotheses.  The first-derivative bounds additionally record the sign
    condition on a (nonnegative for thm2.1/thm2.2/remark2.1, strictly
    positive for thm2.3), which their product-convexity step relies on.

    Raises:
        MissingExponents: when a (p, q)-bound is queried without pq.
    """
    q = getattr(pq, "q", pq)
    if _needs_q(theorem_id) and q is None:
        raise MissingExponents(f"{theorem_id.value} requires exponents")
    checks: dict[str, bool] = {}
    if theorem_id is TheoremId.THM21:
        g = lambda x: np.abs(eval_deriv(spec, x, 1))
        checks["abs_f1_convex"] = check_convex_on_grid(g, iv, points)
        checks["abs_f1_increasing"] = check_increasing_on_grid(g, iv, points)
        checks["nonneg_a"] = iv.a >= 0
    elif theorem_id in (TheoremId.THM22, TheoremId.THM23, TheoremId.REMARK21):
        q = float(q)
        g = lambda x: np.abs(eval_deriv(spec, x, 1)) ** q
        checks["abs_f1_pow_q_convex"] = check_convex_on_grid(g, iv, points)
        checks["abs_f1_pow_q_increasing"] = check_increasing_on_grid(g, iv, points)
        if theorem_id is TheoremId.THM23:
            checks["positive_a"] = iv.a > 0
        else:
            checks["nonneg_a"] = iv.a >= 0
    else:
        q = float(q)
        g2 = lambda x: np.abs(eval_deriv(spec, x, 2)) ** q
        g3 = lambda x: np.abs(eval_deriv(spec, x, 3)) ** q
        checks["abs_f2_pow_q_convex"] = check_convex_on_grid(g2, iv, points)
        checks["abs_f3_pow_q_convex"] = check_convex_on_grid(g3, iv, points)
        checks["abs_f3_pow_q_increasing"] = check_increasing_on_grid(g3, iv, points)
    return HypothesisReport(theorem_id=theorem_id, checks=checks)
