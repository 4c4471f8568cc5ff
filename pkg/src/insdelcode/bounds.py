"""Closed-form rate bounds for linear insdel codes.

All three calculators return the asymptotic limiting rates (the o(1) terms
are dropped): the random-coding existence rate, and the half-Singleton /
half-Plotkin upper bounds, which are exactly half their classical
Hamming-distance counterparts.
"""

from __future__ import annotations

import math

from .errors import UsageError


def _check_delta(delta: float, upper_open: bool = False) -> float:
    hi_ok = delta < 1.0 if upper_open else delta <= 1.0
    if not (0.0 <= delta and hi_ok):
        raise UsageError(f"delta={delta} out of range")
    return float(delta)


def _check_q(q: int) -> int:
    if int(q) != q or q < 2:
        raise UsageError(f"alphabet size must be an integer >= 2, got {q}")
    return int(q)


def entropy(delta: float) -> float:
    """Binary entropy H(delta), with H(0) = H(1) = 0 by continuity."""
    d = _check_delta(delta)
    if d in (0.0, 1.0):
        return 0.0
    return -d * math.log2(d) - (1.0 - d) * math.log2(1.0 - d)


def existence_rate(delta: float, q: int) -> float:
    """Achievable rate (1 - delta)/2 - H(delta)/log2(q) of random linear
    codes correcting a delta fraction of insdels; may be negative (vacuous)."""
    d = _check_delta(delta, upper_open=True)
    q = _check_q(q)
    return (1.0 - d) / 2.0 - entropy(d) / math.log2(q)


def half_singleton(delta: float) -> float:
    """Rate upper bound (1 - delta)/2 for any linear insdel code."""
    return (1.0 - _check_delta(delta)) / 2.0


def half_plotkin(delta: float, q: int) -> float:
    """Rate upper bound (1/2)(1 - q*delta/(q-1)), clamped below at 0."""
    d = _check_delta(delta)
    q = _check_q(q)
    return max(0.0, 0.5 * (1.0 - q * d / (q - 1.0)))


def sweep(deltas, q: int) -> list[tuple[float, float, float, float]]:
    """Rows (delta, existence, half_singleton, half_plotkin) for a grid."""
    return [(float(d), existence_rate(d, q), half_singleton(d),
             half_plotkin(d, q)) for d in deltas]
