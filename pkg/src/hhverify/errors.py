"""Exception types shared across the toolkit.

Every error condition named in an operation contract maps to one of these
classes so callers can discriminate without string matching.
"""

from __future__ import annotations


class HHVerifyError(Exception):
    """Base class for all toolkit errors."""


class DomainError(HHVerifyError):
    """An argument lies outside the mathematical domain of the operation."""


class UnsupportedOrder(HHVerifyError):
    """A derivative order outside {0, 1, 2, 3} was requested."""


class NonFiniteValue(HHVerifyError):
    """A sampled function value was NaN or infinite."""


class ToleranceNotReached(HHVerifyError):
    """Adaptive quadrature hit its depth limit before meeting the tolerance."""


class MissingExponents(HHVerifyError):
    """A (p, q)-parameterized check was queried without exponents."""


class InvalidExponents(HHVerifyError):
    """An exponent pair violates its mode constraints."""


class InvalidOrder(HHVerifyError):
    """A mean order n below the operation's minimum was supplied."""


class DegenerateInterval(HHVerifyError):
    """The interval endpoints coincide."""


class PositivityRequired(HHVerifyError):
    """Strictly positive endpoints are required for the requested quantity."""


class ParameterMismatch(HHVerifyError):
    """Parameters supplied to evaluate_bound do not fit the bound id."""


class ConfigError(HHVerifyError):
    """A trial configuration is malformed."""


class NotAViolation(HHVerifyError):
    """Counterexample minimization was asked to shrink a passing record."""
