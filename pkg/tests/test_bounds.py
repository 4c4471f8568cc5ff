import math

import pytest
from hypothesis import given, strategies as st

from insdelcode.bounds import (entropy, existence_rate, half_plotkin,
                               half_singleton, sweep)
from insdelcode.errors import UsageError

H_QUARTER = 2.0 - 0.75 * math.log2(3.0)  # 0.8112781244591328


def test_entropy_values():
    assert entropy(0.5) == 1.0
    assert entropy(0.0) == 0.0
    assert entropy(1.0) == 0.0
    assert abs(entropy(0.25) - H_QUARTER) < 1e-12
    with pytest.raises(UsageError):
        entropy(1.5)


def test_existence_rate_values():
    assert existence_rate(0.0, 2) == 0.5
    assert existence_rate(0.0, 64) == 0.5
    assert abs(existence_rate(0.01, 2)
               - (0.495 - entropy(0.01))) < 1e-12
    # entropy term vanishes with growing alphabet
    assert abs(existence_rate(0.3, 2 ** 60) - 0.35) < 2e-2
    with pytest.raises(UsageError):
        existence_rate(0.5, 1)


def test_half_singleton_values():
    assert half_singleton(0.0) == 0.5
    assert half_singleton(1.0) == 0.0
    assert abs(half_singleton(0.2) - 0.4) < 1e-12


def test_half_plotkin_values():
    assert abs(half_plotkin(0.25, 2) - 0.25) < 1e-12
    assert half_plotkin(0.0, 5) == 0.5
    assert half_plotkin(0.9, 2) == 0.0  # clamped
    assert abs(half_plotkin(0.3, 10 ** 6) - half_singleton(0.3)) < 1e-5


@given(st.floats(0.0, 0.999), st.integers(2, 512))
def test_orderings_and_monotonicity(delta, q):
    assert half_plotkin(delta, q) <= half_singleton(delta) + 1e-12
    assert existence_rate(delta, q) <= half_singleton(delta) + 1e-12
    eps = 1e-3
    if delta + eps < 1.0:
        assert half_singleton(delta + eps) <= half_singleton(delta)
        assert half_plotkin(delta + eps, q) <= half_plotkin(delta, q) + 1e-12
        # the raw existence formula turns back up deep in its vacuous
        # (negative) region, so monotonicity is asserted on the clamped rate
        assert max(0.0, existence_rate(delta + eps, q)) <= \
            max(0.0, existence_rate(delta, q)) + 1e-12


def test_sweep_shape():
    rows = sweep([0.0, 0.1, 0.2], 4)
    assert len(rows) == 3
    assert rows[0] == (0.0, 0.5, 0.5, 0.5)
