"""Independent high-precision substitution oracle (mpmath, 50+ digits).

Violations found by the floating-point evaluators are re-derived here from
closed forms before they are labeled findings: derivatives and integrals of
the function families have elementary antiderivatives, so both sides of
every bound can be recomputed by direct substitution at 60 working digits
with no quadrature involved.  A violation is confirmed only when the
high-precision margin is decisively negative.
"""

from __future__ import annotations

from typing import Optional

import mpmath as mp

from .funcspec import Family, FunctionSpec, TheoremId
from .quad import SignConvention

ORACLE_DIGITS = 50
WORK_DPS = 60
CONFIRM_THRESHOLD = mp.mpf("1e-30")


def _params(spec: FunctionSpec) -> list:
    return [mp.mpf(p) for p in spec.params]


def hp_deriv(spec: FunctionSpec, x, order: int):
    """Exact order-th derivative of the family member, as mpf."""
    x = mp.mpf(x)
    p = _params(spec)
    if spec.family is Family.POWER:
        n = int(spec.params[0])
        if order > n:
            return mp.mpf(0)
        coef = mp.mpf(1)
        for i in range(order):
            coef *= n - i
        return coef * x ** (n - order)
    if spec.family is Family.EXP:
        c = p[0]
        return c**order * mp.e ** (c * x)
    if spec.family is Family.POLY_NONNEG:
        total = mp.mpf(0)
        for k, ck in enumerate(p):
            if k - order < 0:
                continue
            coef = mp.mpf(1)
            for i in range(order):
                coef *= k - i
            total += ck * coef * x ** (k - order)
        return total
    if spec.family is Family.AFFINE:
        m, k = p
        return (m * x + k, m, mp.mpf(0), mp.mpf(0))[order]
    return (p[0], mp.mpf(0), mp.mpf(0), mp.mpf(0))[order]


def hp_antideriv(spec: FunctionSpec, x):
    """An antiderivative of the family member, as mpf."""
    x = mp.mpf(x)
    p = _params(spec)
    if spec.family is Family.POWER:
        n = int(spec.params[0])
        return x ** (n + 1) / (n + 1)
    if spec.family is Family.EXP:
        return mp.e ** (p[0] * x) / p[0]
    if spec.family is Family.POLY_NONNEG:
        return mp.fsum(ck * x ** (k + 1) / (k + 1) for k, ck in enumerate(p))
    if spec.family is Family.AFFINE:
        m, k = p
        return m * x**2 / 2 + k * x
    return p[0] * x


def hp_deviation_d1(spec: FunctionSpec, a, b):
    a, b = mp.mpf(a), mp.mpf(b)
    avg = (hp_antideriv(spec, b) - hp_antideriv(spec, a)) / (b - a)
    return avg - (b * hp_deriv(spec, b, 0) - a * hp_deriv(spec, a, 0)) / (b - a)


def hp_deviation_d2(spec: FunctionSpec, a, b, sign: SignConvention):
    a, b = mp.mpf(a), mp.mpf(b)
    term = (b * hp_deriv(spec, b, 1) + a * hp_deriv(spec, a, 1)) / 2
    d1 = hp_deviation_d1(spec, a, b)
    return d1 + term if sign is SignConvention.PLUS_DERIVED else d1 - term


def _hp_beta_factor(p):
    return mp.sqrt(mp.pi) * mp.gamma(p + 1) / (2 ** (1 + 2 * p) * mp.gamma(p + mp.mpf(3) / 2))


def hp_bound_rhs(
    theorem_id: TheoremId,
    spec: Optional[FunctionSpec],
    a,
    b,
    p=None,
    q=None,
    M=None,
):
    """The stated right-hand side of a catalog bound, by direct substitution."""
    a, b = mp.mpf(a), mp.mpf(b)
    p = None if p is None else mp.mpf(p)
    q = None if q is None else mp.mpf(q)
    if theorem_id is TheoremId.THM21:
        return (abs(a) * abs(hp_deriv(spec, a, 1)) + abs(b) * abs(hp_deriv(spec, b, 1))) / 2
    if theorem_id is TheoremId.REMARK21:
        M = mp.mpf(M)
        return M ** ((p - 1 + p * q) / p) * (b ** (p + 1) - a ** (p + 1)) / (2 ** (1 / p) * (b - a))
    if theorem_id in (TheoremId.THM22, TheoremId.THM23):
        da, db = abs(hp_deriv(spec, a, 1)), abs(hp_deriv(spec, b, 1))
        last = (abs(b) ** p * db**q + abs(a) ** p * da**q) ** (1 / (q * p))
        head = (db + da) ** ((p - 1) / p)
        if theorem_id is TheoremId.THM22:
            mid = (abs(b) ** p + abs(a) ** p) ** ((q - 1) / (q * p))
            return head * mid * last / 2 ** (2 - 1 / p)
        e = (q - 1) / (q * p)
        mid = (b ** (p + 1) - a ** (p + 1)) ** e
        return head * mid * last / (2 ** (2 - 1 / p) * (p + 1) ** e)
    a2, b2 = abs(2 * hp_deriv(spec, a, 2)), abs(2 * hp_deriv(spec, b, 2))
    a3, b3 = abs(a * hp_deriv(spec, a, 3)), abs(b * hp_deriv(spec, b, 3))
    w = (b - a) ** 2 / 2
    if theorem_id is TheoremId.THM24:
        return w * (mp.mpf(1) / 6) ** ((q - 1) / q) * (
            ((a2**q + b2**q) / 12) ** (1 / q) + ((a3**q + b3**q) / 12) ** (1 / q)
        )
    if theorem_id is TheoremId.THM25:
        c = 1 / ((q + 1) * (q + 2) * (q + 3))
        return w * mp.mpf("0.5") ** (1 - 1 / q) * c ** (1 / q) * (
            (2 * a2**q + (q + 1) * b2**q) ** (1 / q)
            + (2 * a3**q + (q + 1) * b3**q) ** (1 / q)
        )
    if theorem_id is TheoremId.THM26:
        return w * _hp_beta_factor(p) ** (1 / p) * (
            ((a2**q + b2**q) / 2) ** (1 / q) + ((a3**q + b3**q) / 2) ** (1 / q)
        )
    den = (q + 1) * (q + 2)
    return w * (1 / (p + 1)) ** (1 / p) * (
        ((a2**q + (q + 1) * b2**q) / den) ** (1 / q)
        + ((a3**q + (q + 1) * b3**q) / den) ** (1 / q)
    )


def hp_bound_rhs_corrected(theorem_id: TheoremId, spec: FunctionSpec, a, b, p, q):
    """Corrected-constant variants of the two defective first-order bounds."""
    a, b, p, q = mp.mpf(a), mp.mpf(b), mp.mpf(p), mp.mpf(q)
    stated = hp_bound_rhs(theorem_id, spec, a, b, p=p, q=q)
    if theorem_id is TheoremId.THM22:
        return stated * 2 ** (1 - 1 / p)
    if theorem_id is TheoremId.THM23:
        e = (q - 1) / (q * p)
        return stated * 2 ** (1 - 1 / p + e) / (b - a) ** e
    raise ValueError(f"no corrected variant for {theorem_id.value}")


def _hp_mean(x, y):
    return (x + y) / 2


def _hp_lnn(a, b, n):
    a, b = mp.mpf(a), mp.mpf(b)
    return mp.fsum(a**k * b ** (n - k) for k in range(n + 1)) / (n + 1)


def hp_prop_sides(prop: str, a, b, n: int, p=None, q=None, form: str = "sum"):
    """(lhs, rhs) of a mean check at high precision, by direct substitution.

    ``form`` selects the sum or plain comparison for prop3.3/prop3.4 and is
    ignored for the others.
    """
    a, b = mp.mpf(a), mp.mpf(b)
    n = int(n)
    p = None if p is None else mp.mpf(p)
    q = None if q is None else mp.mpf(q)
    if prop == "prop3.1":
        return _hp_lnn(a, b, n), _hp_mean(abs(a) ** n, abs(b) ** n)
    if prop == "prop3.2":
        lhs = abs(_hp_lnn(a, b, n))
        rhs = (
            2
            * mp.mpf(n) ** ((1 - q) / (p * q))
            * _hp_mean(abs(a) ** (n - 1), abs(b) ** (n - 1)) ** ((p - 1) / p)
            * _hp_mean(abs(a) ** n, abs(b) ** n) ** ((q - 1) / (q * p))
            * _hp_mean(abs(a) ** (n * (p + q) - q), abs(b) ** (n * (p + q) - q)) ** (1 / (p * q))
        )
        return lhs, rhs
    if prop == "prop3.3":
        ka = mp.mpf(1) / 3 * _hp_mean(abs(a) ** ((n - 2) * q), abs(b) ** ((n - 2) * q)) ** (1 / q)
        kb = (4 / ((q + 1) * (q + 2) * (q + 3))) ** (1 / q) * _hp_mean(
            2 * abs(a) ** ((n - 2) * q), (q + 1) * abs(b) ** ((n - 2) * q)
        ) ** (1 / q)
        sum_div, plain_div = 4, 8
    elif prop == "prop3.4":
        ka = _hp_beta_factor(p) ** (1 / p) * _hp_mean(
            abs(a) ** ((n - 2) * q), abs(b) ** ((n - 2) * q)
        ) ** (1 / q)
        kb = (1 / (p + 1)) ** (1 / p) * (2 / ((q + 1) * (q + 2))) ** (1 / q) * _hp_mean(
            abs(a) ** ((n - 2) * q), (q + 1) * abs(b) ** ((n - 2) * q)
        ) ** (1 / q)
        sum_div, plain_div = 2, 4
    else:
        raise ValueError(f"unknown mean check id {prop!r}")
    scale = n * (n - 1) * (b - a) ** 2
    if form == "sum":
        return abs(_hp_lnn(a, b, n) + _hp_mean(a**n, b**n)), min(ka, kb) * scale / sum_div
    return abs(_hp_lnn(a, b, n)), min(ka, kb) * scale / plain_div


def _oracle_record(lhs, rhs) -> dict:
    margin = rhs - lhs
    return {
        "digits": ORACLE_DIGITS,
        "lhs": mp.nstr(lhs, ORACLE_DIGITS),
        "rhs": mp.nstr(rhs, ORACLE_DIGITS),
        "margin": mp.nstr(margin, ORACLE_DIGITS),
        "confirmed": bool(margin < -CONFIRM_THRESHOLD),
    }


def confirm_bound_violation(
    theorem_id: TheoremId,
    spec: FunctionSpec,
    a: float,
    b: float,
    p: Optional[float] = None,
    q: Optional[float] = None,
    M: Optional[float] = None,
    sign: SignConvention = SignConvention.PLUS_DERIVED,
) -> dict:
    """Recompute a bound comparison at 60 digits and report 50 of them.

    Returns a dict with lhs/rhs/margin strings and a ``confirmed`` flag that
    is True only when the high-precision margin is below -1e-30.
    """
    with mp.workdps(WORK_DPS):
        if theorem_id in (TheoremId.THM21, TheoremId.THM22, TheoremId.THM23, TheoremId.REMARK21):
            lhs = abs(hp_deviation_d1(spec, a, b))
        else:
            lhs = abs(hp_deviation_d2(spec, a, b, sign))
        rhs = hp_bound_rhs(theorem_id, spec, a, b, p=p, q=q, M=M)
        record = _oracle_record(lhs, rhs)
        if theorem_id in (TheoremId.THM22, TheoremId.THM23):
            corrected = hp_bound_rhs_corrected(theorem_id, spec, a, b, p, q)
            record["rhs_corrected"] = mp.nstr(corrected, ORACLE_DIGITS)
            record["corrected_holds"] = bool(lhs <= corrected + CONFIRM_THRESHOLD)
        return record


def confirm_prop_violation(
    prop: str,
    a: float,
    b: float,
    n: int,
    p: Optional[float] = None,
    q: Optional[float] = None,
    form: str = "sum",
) -> dict:
    """High-precision confirmation record for a mean-check violation."""
    with mp.workdps(WORK_DPS):
        lhs, rhs = hp_prop_sides(prop, a, b, n, p=p, q=q, form=form)
        record = _oracle_record(lhs, rhs)
        record["form"] = form
        return record
