"""Even analytic scalar profiles of a squared invariant.

Every closed form in this package is written in terms of functions of
d = x^2 that are analytic across d = 0: cos(sqrt(d)) continues to
cosh(sqrt(-d)) for d < 0, sin(sqrt(d))/sqrt(d) to sinh(sqrt(-d))/sqrt(-d),
and so on. Writing the forms this way removes every unit-vector hat from
the formulas (q_mu sin(omega) becomes omega_mu * sinc(...)), makes the
three exponential branches one expression, and keeps everything smooth
through the null stratum.

Taylor series are used for |d| below a threshold where the direct
expressions lose digits to cancellation.
"""
from __future__ import annotations

import math

_SERIES_CUTOFF = 1e-4


def cos_sqrt(d: float) -> float:
    """cos(sqrt(d)) for d >= 0, cosh(sqrt(-d)) for d < 0."""
    if abs(d) < _SERIES_CUTOFF:
        return 1.0 + d * (-1.0 / 2 + d * (1.0 / 24 + d * (-1.0 / 720 + d / 40320)))
    if d > 0:
        return math.cos(math.sqrt(d))
    return math.cosh(math.sqrt(-d))


def sinc_sqrt(d: float) -> float:
    """sin(sqrt(d))/sqrt(d), hyperbolic for d < 0; -> 1 at d = 0."""
    if abs(d) < _SERIES_CUTOFF:
        return 1.0 + d * (-1.0 / 6 + d * (1.0 / 120 + d * (-1.0 / 5040 + d / 362880)))
    if d > 0:
        x = math.sqrt(d)
        return math.sin(x) / x
    x = math.sqrt(-d)
    return math.sinh(x) / x


def omc_sqrt(d: float) -> float:
    """(1 - cos(sqrt(d)))/d, hyperbolic for d < 0; -> 1/2 at d = 0."""
    if abs(d) < _SERIES_CUTOFF:
        return 0.5 + d * (-1.0 / 24 + d * (1.0 / 720 + d * (-1.0 / 40320 + d / 3628800)))
    return (1.0 - cos_sqrt(d)) / d


def tanc_sqrt(d: float) -> float:
    """tan(sqrt(d))/sqrt(d), hyperbolic for d < 0; -> 1 at d = 0.

    Singular where sqrt(d) hits pi/2 + n pi (the tangent-chart boundary).
    """
    if abs(d) < _SERIES_CUTOFF:
        return 1.0 + d * (1.0 / 3 + d * (2.0 / 15 + d * (17.0 / 315 + d * 62.0 / 2835)))
    if d > 0:
        x = math.sqrt(d)
        return math.tan(x) / x
    x = math.sqrt(-d)
    return math.tanh(x) / x


def xcot_sqrt(d: float) -> float:
    """sqrt(d) * cot(sqrt(d)), hyperbolic for d < 0; -> 1 at d = 0."""
    if abs(d) < _SERIES_CUTOFF:
        return 1.0 + d * (-1.0 / 3 + d * (-1.0 / 45 + d * (-2.0 / 945 - d / 4725)))
    if d > 0:
        x = math.sqrt(d)
        return x * math.cos(x) / math.sin(x)
    x = math.sqrt(-d)
    return x * math.cosh(x) / math.sinh(x)


def omxcot_sqrt(d: float) -> float:
    """(1 - sqrt(d) cot(sqrt(d)))/d, hyperbolic for d < 0; -> 1/3 at d = 0."""
    if abs(d) < _SERIES_CUTOFF:
        return 1.0 / 3 + d * (1.0 / 45 + d * (2.0 / 945 + d / 4725))
    return (1.0 - xcot_sqrt(d)) / d


# Half-angle wrappers: profiles of sqrt(d)/2 expressed in d.

def cos_half(d: float) -> float:
    """cos(sqrt(d)/2)-analytic."""
    return cos_sqrt(0.25 * d)


def sinc_half(d: float) -> float:
    """sin(sqrt(d)/2)/sqrt(d)-analytic; -> 1/2 at d = 0."""
    return 0.5 * sinc_sqrt(0.25 * d)


def tanc_half(d: float) -> float:
    """tan(sqrt(d)/2)/sqrt(d)-analytic; -> 1/2 at d = 0."""
    return 0.5 * tanc_sqrt(0.25 * d)


def xcot_half(d: float) -> float:
    """(sqrt(d)/2) cot(sqrt(d)/2)-analytic; -> 1 at d = 0."""
    return xcot_sqrt(0.25 * d)


def omxcot_half(d: float) -> float:
    """(1 - (sqrt(d)/2) cot(sqrt(d)/2))/d-analytic; -> 1/12 at d = 0."""
    return 0.25 * omxcot_sqrt(0.25 * d)
