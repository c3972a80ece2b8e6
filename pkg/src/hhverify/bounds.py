"""Special functions and the right-hand-side evaluators of the bound catalog.

Each ``thmXX_rhs`` function computes the stated closed form of one catalog
bound (see the README for the full statements).  The evaluators are total:
they do not enforce the convexity/monotonicity hypotheses, so the harness
can also explore hypothesis-violating regions.  ``evaluate_bound`` pairs a
bound with the matching deviation functional and hypothesis report.

Two corrected variants are included for the bounds whose stated constants
fail their own derivation (``thm22_rhs_corrected``, ``thm23_rhs_corrected``);
they are not part of the catalog surface and exist to support findings.

Conventions: powers use x**0 = 1 for every x >= 0, matching the q = 1
collapse of the derivations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DomainError, InvalidExponents, ParameterMismatch
from .funcspec import (
    FIRST_ORDER_IDS,
    FunctionSpec,
    HypothesisReport,
    Interval,
    TheoremId,
    eval_deriv,
    hypotheses_for,
)
from .quad import SignConvention, deviation_d1, deviation_d2

GAMMA_MAX = 30.0
CONJUGATE_TOL = 1e-12


class ExponentMode(str, Enum):
    INDEPENDENT = "independent"
    CONJUGATE = "conjugate"


@dataclass(frozen=True)
class ExponentPair:
    """Exponents (p, q): independent (p > 1, q >= 1) or conjugate (1/p + 1/q = 1)."""

    p: float
    q: float
    mode: ExponentMode

    def __post_init__(self) -> None:
        if not (np.isfinite(self.p) and np.isfinite(self.q)):
            raise InvalidExponents("exponents must be finite")
        if self.mode is ExponentMode.INDEPENDENT:
            if not (self.p > 1 and self.q >= 1):
                raise InvalidExponents(
                    f"independent mode needs p > 1 and q >= 1, got p={self.p}, q={self.q}"
                )
        else:
            if not (self.p > 1 and self.q > 1):
                raise InvalidExponents("conjugate mode needs p > 1 and q > 1")
            if abs(1.0 / self.p + 1.0 / self.q - 1.0) > CONJUGATE_TOL:
                raise InvalidExponents(
                    f"1/p + 1/q = {1.0/self.p + 1.0/self.q!r} is not 1"
                )

    @staticmethod
    def independent(p: float, q: float) -> "ExponentPair":
        return ExponentPair(float(p), float(q), ExponentMode.INDEPENDENT)

    @staticmethod
    def conjugate(p: float, q: Optional[float] = None) -> "ExponentPair":
        p = float(p)
        if q is None:
            if p <= 1:
                raise InvalidExponents("conjugate mode needs p > 1")
            q = p / (p - 1.0)
        return ExponentPair(p, float(q), ExponentMode.CONJUGATE)


@dataclass(frozen=True)
class DerivativeCap:
    """A bound M >= sup |f'| on the interval, for the capped first-order bound."""

    M: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.M) and self.M >= 0):
            raise ValueError("derivative cap must be finite and nonnegative")


def gamma(x: float) -> float:
    """Gamma function on (0, 30], relative error <= 1e-12 on [0.5, 30].

    Computed through the C library's log-gamma based implementation.
    Arguments above 30 raise DomainError rather than silently degrading
    precision, and nonpositive arguments are outside the needed domain.
    """
    if not x > 0:
        raise DomainError(f"gamma requires x > 0, got {x}")
    if x > GAMMA_MAX:
        raise DomainError(f"gamma contract covers x <= {GAMMA_MAX:g}, got {x}")
    return math.gamma(x)


def beta(x: float, y: float) -> float:
    """Beta function via log-gamma: exp(lgamma(x) + lgamma(y) - lgamma(x+y))."""
    if not (x > 0 and y > 0):
        raise DomainError(f"beta requires positive arguments, got ({x}, {y})")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def beta_duplication_check(p: float) -> tuple[float, float]:
    """Both sides of B(p+1, p+1) = 2**(1-2(p+1)) * sqrt(pi) * G(p+1) / G(p+3/2)."""
    if not p > 0:
        raise DomainError(f"duplication check requires p > 0, got {p}")
    lhs = beta(p + 1.0, p + 1.0)
    rhs = 2.0 ** (1.0 - 2.0 * (p + 1.0)) * math.sqrt(math.pi) * gamma(p + 1.0) / gamma(p + 1.5)
    return lhs, rhs


def _d1_endpoints(spec: FunctionSpec, iv: Interval) -> tuple[float, float]:
    return abs(eval_deriv(spec, iv.a, 1)), abs(eval_deriv(spec, iv.b, 1))


def thm21_rhs(spec: FunctionSpec, iv: Interval) -> float:
    """(|a| |f'(a)| + |b| |f'(b)|) / 2."""
    da, db = _d1_endpoints(spec, iv)
    return 0.5 * (abs(iv.a) * da + abs(iv.b) * db)


def _require_mode(pq: ExponentPair, mode: ExponentMode, which: str) -> None:
    if pq.mode is not mode:
        raise InvalidExponents(f"{which} requires {mode.value} exponents")


def thm22_rhs(spec: FunctionSpec, iv: Interval, pq: ExponentPair) -> float:
    """First-order mixed bound with the stated constant 2**(2 - 1/p)."""
    _require_mode(pq, ExponentMode.INDEPENDENT, "thm2.2")
    p, q = pq.p, pq.q
    da, db = _d1_endpoints(spec, iv)
    num = (
        (db + da) ** ((p - 1.0) / p)
        * (abs(iv.b) ** p + abs(iv.a) ** p) ** ((q - 1.0) / (q * p))
        * (abs(iv.b) ** p * db**q + abs(iv.a) ** p * da**q) ** (1.0 / (q * p))
    )
    return num / 2.0 ** (2.0 - 1.0 / p)


def thm22_rhs_corrected(spec: FunctionSpec, iv: Interval, pq: ExponentPair) -> float:
    """Variant of thm22_rhs with the constant its derivation actually yields.

    Chaining Hoelder (p/(p-1), p), the power-mean split in q, and the
    endpoint-average bound on each integral produces denominator 2, not
    2**(2 - 1/p).  The stated constant fails already for f(x) = x on any
    [a, b] with a > 0; this variant holds on the whole generator domain.
    """
    _require_mode(pq, ExponentMode.INDEPENDENT, "thm2.2")
    return thm22_rhs(spec, iv, pq) * 2.0 ** (1.0 - 1.0 / pq.p)


def thm23_rhs(spec: FunctionSpec, iv: Interval, pq: ExponentPair) -> float:
    """First-order bound for 0 < a < b with the stated constant."""
    _require_mode(pq, ExponentMode.INDEPENDENT, "thm2.3")
    if not iv.a > 0:
        raise DomainError("thm2.3 requires a > 0")
    p, q = pq.p, pq.q
    da, db = _d1_endpoints(spec, iv)
    e = (q - 1.0) / (q * p)
    num = (
        (db + da) ** ((p - 1.0) / p)
        * (iv.b ** (p + 1.0) - iv.a ** (p + 1.0)) ** e
        * (abs(iv.b) ** p * db**q + abs(iv.a) ** p * da**q) ** (1.0 / (q * p))
    )
    return num / (2.0 ** (2.0 - 1.0 / p) * (p + 1.0) ** e)


def thm23_rhs_corrected(spec: FunctionSpec, iv: Interval, pq: ExponentPair) -> float:
    """Variant of thm23_rhs with the constants its derivation actually yields.

    The exact evaluation of the middle integral leaves a factor
    (b - a)**((q-1)/(qp)) in the denominator and a 2-power of
    1 - (q-1)/(qp), both absent from the stated form.  At q = 1 the only
    difference is denominator 2 versus 2**(2 - 1/p).
    """
    _require_mode(pq, ExponentMode.INDEPENDENT, "thm2.3")
    p, q = pq.p, pq.q
    e = (q - 1.0) / (q * p)
    stated = thm23_rhs(spec, iv, pq)
    return stated * 2.0 ** (1.0 - 1.0 / p + e) / iv.width**e


def remark21_rhs(iv: Interval, pq: ExponentPair, cap: DerivativeCap) -> float:
    """Capped first-order bound M**((p-1+pq)/p) (b**(p+1)-a**(p+1)) / (2**(1/p) (b-a))."""
    _require_mode(pq, ExponentMode.INDEPENDENT, "remark2.1")
    if iv.a < 0:
        raise DomainError("remark2.1 requires a >= 0")
    p, q = pq.p, pq.q
    return (
        cap.M ** ((p - 1.0 + p * q) / p)
        * (iv.b ** (p + 1.0) - iv.a ** (p + 1.0))
        / (2.0 ** (1.0 / p) * iv.width)
    )


def _d2_endpoint_data(spec: FunctionSpec, iv: Interval) -> tuple[float, float, float, float]:
    a2 = abs(2.0 * eval_deriv(spec, iv.a, 2))
    b2 = abs(2.0 * eval_deriv(spec, iv.b, 2))
    a3 = abs(iv.a * eval_deriv(spec, iv.a, 3))
    b3 = abs(iv.b * eval_deriv(spec, iv.b, 3))
    return a2, b2, a3, b3


def thm24_rhs(spec: FunctionSpec, iv: Interval, q: float) -> float:
    """Second-order power-mean bound with weight constant (1/6)**((q-1)/q)."""
    if not q >= 1:
        raise InvalidExponents(f"thm2.4 requires q >= 1, got {q}")
    a2, b2, a3, b3 = _d2_endpoint_data(spec, iv)
    return (
        iv.width**2
        / 2.0
        * (1.0 / 6.0) ** ((q - 1.0) / q)
        * (((a2**q + b2**q) / 12.0) ** (1.0 / q) + ((a3**q + b3**q) / 12.0) ** (1.0 / q))
    )


def thm25_rhs(spec: FunctionSpec, iv: Interval, q: float) -> float:
    """Second-order bound with the 1/((q+1)(q+2)(q+3)) moment constant."""
    if not q >= 1:
        raise InvalidExponents(f"thm2.5 requires q >= 1, got {q}")
    a2, b2, a3, b3 = _d2_endpoint_data(spec, iv)
    c = 1.0 / ((q + 1.0) * (q + 2.0) * (q + 3.0))
    return (
        iv.width**2
        / 2.0
        * 0.5 ** (1.0 - 1.0 / q)
        * c ** (1.0 / q)
        * (
            (2.0 * a2**q + (q + 1.0) * b2**q) ** (1.0 / q)
            + (2.0 * a3**q + (q + 1.0) * b3**q) ** (1.0 / q)
        )
    )


def thm26_rhs(spec: FunctionSpec, iv: Interval, pq: ExponentPair) -> float:
    """Second-order Hoelder bound with the Beta-moment factor, conjugate (p, q)."""
    _require_mode(pq, ExponentMode.CONJUGATE, "thm2.6")
    p, q = pq.p, pq.q
    a2, b2, a3, b3 = _d2_endpoint_data(spec, iv)
    beta_factor = (
        math.sqrt(math.pi) * gamma(p + 1.0) / (2.0 ** (1.0 + 2.0 * p) * gamma(p + 1.5))
    )
    return (
        iv.width**2
        / 2.0
        * beta_factor ** (1.0 / p)
        * (((a2**q + b2**q) / 2.0) ** (1.0 / q) + ((a3**q + b3**q) / 2.0) ** (1.0 / q))
    )


def thm27_rhs(spec: FunctionSpec, iv: Interval, pq: ExponentPair) -> float:
    """Second-order Hoelder bound with the (1/(p+1))**(1/p) factor, conjugate (p, q)."""
    _require_mode(pq, ExponentMode.CONJUGATE, "thm2.7")
    p, q = pq.p, pq.q
    a2, b2, a3, b3 = _d2_endpoint_data(spec, iv)
    den = (q + 1.0) * (q + 2.0)
    return (
        iv.width**2
        / 2.0
        * (1.0 / (p + 1.0)) ** (1.0 / p)
        * (
            ((a2**q + (q + 1.0) * b2**q) / den) ** (1.0 / q)
            + ((a3**q + (q + 1.0) * b3**q) / den) ** (1.0 / q)
        )
    )


@dataclass(frozen=True)
class BoundReport:
    """One bound evaluation: |LHS|, RHS, margin = RHS - |LHS|, and context."""

    theorem_id: TheoremId
    lhs_abs: float
    rhs: float
    margin: float
    hypotheses: HypothesisReport
    function: str
    a: float
    b: float
    sign_convention: Optional[SignConvention] = None
    p: Optional[float] = None
    q: Optional[float] = None
    m_cap: Optional[float] = None

    def to_dict(self) -> dict:
        out = {
            "theorem": self.theorem_id.value,
            "function": self.function,
            "a": self.a,
            "b": self.b,
            "lhs_abs": self.lhs_abs,
            "rhs": self.rhs,
            "margin": self.margin,
            "hypotheses": self.hypotheses.to_dict(),
            "p": self.p,
            "q": self.q,
            "m_cap": self.m_cap,
            "sign": None if self.sign_convention is None else self.sign_convention.value,
        }
        return out


def grid_derivative_sup(spec: FunctionSpec, iv: Interval, points: int = 201) -> float:
    """sup |f'| over the default check grid, used to validate derivative caps."""
    xs = iv.grid(points)
    return float(np.max(np.abs(eval_deriv(spec, xs, 1))))


def evaluate_bound(
    theorem_id: TheoremId,
    spec: FunctionSpec,
    iv: Interval,
    pq: Optional[ExponentPair] = None,
    q: Optional[float] = None,
    cap: Optional[DerivativeCap] = None,
    sign: SignConvention = SignConvention.PLUS_DERIVED,
) -> BoundReport:
    """Pair a catalog bound with its deviation functional and hypotheses.

    Parameter rules: thm2.1 takes no exponents; thm2.2/thm2.3 take an
    independent pair; remark2.1 takes an independent pair plus a derivative
    cap; thm2.4/thm2.5 take a bare q >= 1; thm2.6/thm2.7 take a conjugate
    pair.  Anything else raises ParameterMismatch.

    The left side is |D1| for the first-order bounds and |D2| under ``sign``
    for the second-order bounds (the plus convention is the derived one;
    the minus convention is kept for demonstrating the discrepancy).
    """
    if theorem_id is TheoremId.THM21:
        if pq is not None or q is not None or cap is not None:
            raise ParameterMismatch("thm2.1 takes no exponents or cap")
        rhs = thm21_rhs(spec, iv)
        hyp = hypotheses_for(theorem_id, spec, iv)
        used_pq, used_q, used_cap = None, None, None
    elif theorem_id in (TheoremId.THM22, TheoremId.THM23):
        if pq is None or q is not None or cap is not None:
            raise ParameterMismatch(f"{theorem_id.value} takes an independent pair only")
        rhs = (thm22_rhs if theorem_id is TheoremId.THM22 else thm23_rhs)(spec, iv, pq)
        hyp = hypotheses_for(theorem_id, spec, iv, pq)
        used_pq, used_q, used_cap = pq, None, None
    elif theorem_id is TheoremId.REMARK21:
        if pq is None or cap is None or q is not None:
            raise ParameterMismatch("remark2.1 takes an independent pair and a cap")
        rhs = remark21_rhs(iv, pq, cap)
        hyp = hypotheses_for(theorem_id, spec, iv, pq)
        checks = dict(hyp.checks)
        checks["cap_dominates_grid"] = cap.M >= grid_derivative_sup(spec, iv)
        hyp = HypothesisReport(theorem_id=theorem_id, checks=checks)
        used_pq, used_q, used_cap = pq, None, cap
    elif theorem_id in (TheoremId.THM24, TheoremId.THM25):
        if q is None or pq is not None or cap is not None:
            raise ParameterMismatch(f"{theorem_id.value} takes a bare q only")
        rhs = (thm24_rhs if theorem_id is TheoremId.THM24 else thm25_rhs)(spec, iv, q)
        hyp = hypotheses_for(theorem_id, spec, iv, q)
        used_pq, used_q, used_cap = None, float(q), None
    elif theorem_id in (TheoremId.THM26, TheoremId.THM27):
        if pq is None or q is not None or cap is not None:
            raise ParameterMismatch(f"{theorem_id.value} takes a conjugate pair only")
        rhs = (thm26_rhs if theorem_id is TheoremId.THM26 else thm27_rhs)(spec, iv, pq)
        hyp = hypotheses_for(theorem_id, spec, iv, pq)
        used_pq, used_q, used_cap = pq, None, None
    else:
        raise ParameterMismatch(f"unknown bound id {theorem_id!r}")

    if theorem_id in FIRST_ORDER_IDS:
        lhs_abs = abs(deviation_d1(spec, iv))
        sign_used = None
    else:
        lhs_abs = abs(deviation_d2(spec, iv, sign))
        sign_used = sign
    return BoundReport(
        theorem_id=theorem_id,
        lhs_abs=lhs_abs,
        rhs=rhs,
        margin=rhs - lhs_abs,
        hypotheses=hyp,
        function=spec.to_canonical(),
        a=iv.a,
        b=iv.b,
        sign_convention=sign_used,
        p=None if used_pq is None else used_pq.p,
        q=used_q if used_pq is None else used_pq.q,
        m_cap=None if used_cap is None else used_cap.M,
    )
