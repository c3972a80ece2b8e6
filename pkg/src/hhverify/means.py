"""Arithmetic and generalized logarithmic means, and the mean-bound checks.

``log_mean_pow`` returns the n-th power of the generalized logarithmic
mean, L_n(a,b)**n = (b**(n+1) - a**(n+1)) / ((b-a)(n+1)), which equals the
average of x**n over [a, b].  All mean-type checks in the catalog are
stated in terms of that power, so the 1/n root is never taken where the
radicand could be negative.

Checks prop3.2 through prop3.4 evaluate the stated constants verbatim and
REPORT the comparison; they are never asserted by the harness, because the
stated constants fail on much of the domain (see README findings).
prop3.1 is asserted; it follows from the first catalog bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .bounds import ExponentMode, ExponentPair, gamma
from .errors import (
    DegenerateInterval,
    InvalidExponents,
    InvalidOrder,
    PositivityRequired,
)

PROP_SLACK = 1e-12


def arithmetic_mean(x: float, y: float) -> float:
    return 0.5 * (x + y)


def _check_pair(a: float, b: float) -> None:
    if a == b:
        raise DegenerateInterval(f"a = b = {a}")
    if a > b:
        raise ValueError(f"requires a < b, got a={a}, b={b}")


def _check_order(n: int, minimum: int) -> int:
    if n != int(n) or n < minimum:
        raise InvalidOrder(f"order n must be an integer >= {minimum}, got {n}")
    return int(n)


def log_mean_pow(a: float, b: float, n: int) -> float:
    """L_n(a, b)**n computed through the homogeneous power sum.

    (b**(n+1) - a**(n+1)) / ((b-a)(n+1)) equals
    sum_{k=0..n} a**k b**(n-k) / (n+1) identically; the sum form avoids the
    catastrophic cancellation of the quotient form when b - a is small.
    """
    n = _check_order(n, 1)
    _check_pair(a, b)
    return math.fsum(a**k * b ** (n - k) for k in range(n + 1)) / (n + 1)


def k1(a: float, b: float, n: int, q: float) -> float:
    """(1/3) * A(|a|**((n-2)q), |b|**((n-2)q)) ** (1/q)."""
    n = _check_order(n, 3)
    if not q >= 1:
        raise InvalidExponents(f"k1 requires q >= 1, got {q}")
    return (1.0 / 3.0) * arithmetic_mean(
        abs(a) ** ((n - 2) * q), abs(b) ** ((n - 2) * q)
    ) ** (1.0 / q)


def k2(a: float, b: float, n: int, q: float) -> float:
    """[4/((q+1)(q+2)(q+3))]**(1/q) * A(2|a|**((n-2)q), (q+1)|b|**((n-2)q)) ** (1/q)."""
    n = _check_order(n, 3)
    if not q >= 1:
        raise InvalidExponents(f"k2 requires q >= 1, got {q}")
    c = 4.0 / ((q + 1.0) * (q + 2.0) * (q + 3.0))
    return c ** (1.0 / q) * arithmetic_mean(
        2.0 * abs(a) ** ((n - 2) * q), (q + 1.0) * abs(b) ** ((n - 2) * q)
    ) ** (1.0 / q)


def _conjugate(pq: ExponentPair, which: str) -> tuple[float, float]:
    if pq.mode is not ExponentMode.CONJUGATE:
        raise InvalidExponents(f"{which} requires conjugate exponents")
    return pq.p, pq.q


def k3(a: float, b: float, n: int, pq: ExponentPair) -> float:
    """Beta-moment constant times A(|a|**((n-2)q), |b|**((n-2)q)) ** (1/q)."""
    n = _check_order(n, 3)
    p, q = _conjugate(pq, "k3")
    beta_factor = math.sqrt(math.pi) * gamma(p + 1.0) / (2.0 ** (1.0 + 2.0 * p) * gamma(p + 1.5))
    return beta_factor ** (1.0 / p) * arithmetic_mean(
        abs(a) ** ((n - 2) * q), abs(b) ** ((n - 2) * q)
    ) ** (1.0 / q)


def k4(a: float, b: float, n: int, pq: ExponentPair) -> float:
    """(1/(p+1))**(1/p) [2/((q+1)(q+2))]**(1/q) A(|a|**((n-2)q), (q+1)|b|**((n-2)q))**(1/q)."""
    n = _check_order(n, 3)
    p, q = _conjugate(pq, "k4")
    return (
        (1.0 / (p + 1.0)) ** (1.0 / p)
        * (2.0 / ((q + 1.0) * (q + 2.0))) ** (1.0 / q)
        * arithmetic_mean(abs(a) ** ((n - 2) * q), (q + 1.0) * abs(b) ** ((n - 2) * q))
        ** (1.0 / q)
    )


@dataclass(frozen=True)
class Prop31Result:
    a: float
    b: float
    n: int
    lhs: float
    rhs: float
    holds: bool

    def to_dict(self) -> dict:
        return {
            "prop": "prop3.1",
            "a": self.a,
            "b": self.b,
            "n": self.n,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
        }


def prop31_check(a: float, b: float, n: int) -> Prop31Result:
    """L_n**n <= A(|a|**n, |b|**n), checked with 1e-12 slack."""
    n = _check_order(n, 1)
    _check_pair(a, b)
    lhs = log_mean_pow(a, b, n)
    rhs = arithmetic_mean(abs(a) ** n, abs(b) ** n)
    return Prop31Result(a=a, b=b, n=n, lhs=lhs, rhs=rhs, holds=lhs <= rhs + PROP_SLACK)


@dataclass(frozen=True)
class Prop32Result:
    a: float
    b: float
    n: int
    p: float
    q: float
    lhs: float
    rhs: float
    holds: bool

    def to_dict(self) -> dict:
        return {
            "prop": "prop3.2",
            "a": self.a,
            "b": self.b,
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
        }


def prop32_check(a: float, b: float, n: int, pq: ExponentPair) -> Prop32Result:
    """|L_n**n| against the stated product-of-means bound (report-only)."""
    n = _check_order(n, 3)
    if pq.mode is not ExponentMode.INDEPENDENT:
        raise InvalidExponents("prop3.2 requires independent exponents")
    _check_pair(a, b)
    p, q = pq.p, pq.q
    lhs = abs(log_mean_pow(a, b, n))
    rhs = (
        2.0
        * float(n) ** ((1.0 - q) / (p * q))
        * arithmetic_mean(abs(a) ** (n - 1), abs(b) ** (n - 1)) ** ((p - 1.0) / p)
        * arithmetic_mean(abs(a) ** n, abs(b) ** n) ** ((q - 1.0) / (q * p))
        * arithmetic_mean(abs(a) ** (n * (p + q) - q), abs(b) ** (n * (p + q) - q))
        ** (1.0 / (p * q))
    )
    return Prop32Result(
        a=a, b=b, n=n, p=p, q=q, lhs=lhs, rhs=rhs, holds=lhs <= rhs + PROP_SLACK
    )


@dataclass(frozen=True)
class PropMinResult:
    """Shared record shape of the min{K.,K.} checks (prop3.3 and prop3.4).

    The sum form compares |L_n**n + A(a**n, b**n)|; the plain form compares
    |L_n**n| with the halved divisor and requires a, b > 0 (fields are None
    when that part is absent).
    """

    prop: str
    a: float
    b: float
    n: int
    q: float
    k_lo: float
    k_hi: float
    lhs_sum: float
    rhs_sum: float
    holds_sum: bool
    lhs_plain: Optional[float]
    rhs_plain: Optional[float]
    holds_plain: Optional[bool]
    p: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "prop": self.prop,
            "a": self.a,
            "b": self.b,
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "k_lo": self.k_lo,
            "k_hi": self.k_hi,
            "lhs_sum": self.lhs_sum,
            "rhs_sum": self.rhs_sum,
            "holds_sum": self.holds_sum,
            "lhs_plain": self.lhs_plain,
            "rhs_plain": self.rhs_plain,
            "holds_plain": self.holds_plain,
        }


def _min_pair_check(
    prop: str,
    a: float,
    b: float,
    n: int,
    q: float,
    ka: float,
    kb: float,
    sum_divisor: float,
    plain_divisor: float,
    require_plain: bool,
    p: Optional[float] = None,
) -> PropMinResult:
    k_min = min(ka, kb)
    scale = n * (n - 1) * (b - a) ** 2
    lhs_sum = abs(log_mean_pow(a, b, n) + arithmetic_mean(a**n, b**n))
    rhs_sum = k_min * scale / sum_divisor
    plain_ok = a > 0 and b > 0
    if require_plain and not plain_ok:
        raise PositivityRequired(f"{prop} plain form requires a, b > 0")
    lhs_plain = rhs_plain = holds_plain = None
    if plain_ok:
        lhs_plain = abs(log_mean_pow(a, b, n))
        rhs_plain = k_min * scale / plain_divisor
        holds_plain = lhs_plain <= rhs_plain + PROP_SLACK
    return PropMinResult(
        prop=prop,
        a=a,
        b=b,
        n=n,
        p=p,
        q=q,
        k_lo=min(ka, kb),
        k_hi=max(ka, kb),
        lhs_sum=lhs_sum,
        rhs_sum=rhs_sum,
        holds_sum=lhs_sum <= rhs_sum + PROP_SLACK,
        lhs_plain=lhs_plain,
        rhs_plain=rhs_plain,
        holds_plain=holds_plain,
    )


def prop33_check(
    a: float, b: float, n: int, q: float, require_plain: bool = False
) -> PropMinResult:
    """min{K1, K2} mean comparison with divisors 4 (sum form) and 8 (plain form).

    Report-only: the returned ``holds_*`` flags record the comparison, and
    the harness never asserts them.
    """
    n = _check_order(n, 3)
    _check_pair(a, b)
    return _min_pair_check(
        "prop3.3",
        a,
        b,
        n,
        float(q),
        k1(a, b, n, q),
        k2(a, b, n, q),
        sum_divisor=4.0,
        plain_divisor=8.0,
        require_plain=require_plain,
    )


def prop34_check(
    a: float, b: float, n: int, pq: ExponentPair, require_plain: bool = False
) -> PropMinResult:
    """min{K3, K4} mean comparison with divisors 2 (sum form) and 4 (plain form)."""
    n = _check_order(n, 3)
    p, q = _conjugate(pq, "prop3.4")
    _check_pair(a, b)
    return _min_pair_check(
        "prop3.4",
        a,
        b,
        n,
        q,
        k3(a, b, n, pq),
        k4(a, b, n, pq),
        sum_divisor=2.0,
        plain_divisor=4.0,
        require_plain=require_plain,
        p=p,
    )
