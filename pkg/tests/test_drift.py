import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ietgroups.drift import (
    DriftData,
    DriftPowerError,
    ThetaTooLarge,
    drift_vector,
    drifted_iet,
    find_drift_power,
    find_drifting_direction,
    fourier_motzkin,
    in_window,
    is_admissible,
)
from ietgroups.iet import Iet, is_canonical_permutation, power, random_canonical_permutation, random_iet
from ietgroups.sets import mod_q

from conftest import rot


def canonical_perms(n):
    return [p for p in itertools.permutations(range(1, n + 1)) if is_canonical_permutation(p)]


def test_admissible_examples():
    assert is_admissible((2, 1))
    assert not is_admissible((1, 3, 2))
    assert not is_admissible((2, 1, 3))
    assert is_admissible((3, 2, 1))


def test_drifting_direction_examples():
    d = find_drifting_direction((2, 1))
    assert d.direction == (-1, 1) and d.vector == (1, 1) and d.ratio == 1
    d = find_drifting_direction((3, 2, 1))
    assert sum(d.direction) == 0 and all(v > 0 for v in d.vector)
    assert max(abs(x) for x in d.direction) == 1
    assert d.direction == (-1, 0, 1) and d.vector == (1, 2, 1)
    assert find_drifting_direction((1, 3, 2)) is None
    assert find_drifting_direction((1,)) is None


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_admissible_iff_driftable_exhaustive(n):
    for perm in canonical_perms(n):
        d = find_drifting_direction(perm)
        assert (d is not None) == is_admissible(perm), perm
        if d is not None:
            assert sum(d.direction) == 0
            assert d.vector == drift_vector(d.direction, perm)
            assert all(v > 0 for v in d.vector) and d.ratio >= 1


def test_fourier_motzkin_small_systems():
    # x >= 1, y >= 1, -x - y >= -3
    sol = fourier_motzkin([((1, 0), 1), ((0, 1), 1), ((-1, -1), -3)], 2)
    x, y = sol
    assert x >= 1 and y >= 1 and x + y <= 3
    assert fourier_motzkin([((1,), 2), ((-1,), -1)], 1) is None


def test_drifted_iet_examples():
    T = drifted_iet(rot(F(1, 5)), (-1, 1), F(1, 100))
    assert T.lengths == (F(79, 100), F(21, 100)) and T.perm == (2, 1)
    assert drifted_iet(rot(F(1, 5)), (-1, 1), 0) == rot(F(1, 5))
    theta = F(1, 37)
    T = drifted_iet(rot(F(1, 5)), (-1, 1), theta)
    assert tuple(a - b for a, b in zip(T.translations, rot(F(1, 5)).translations)) == (theta, theta)
    with pytest.raises(ThetaTooLarge):
        drifted_iet(rot(F(1, 5)), (-1, 1), 1)
    with pytest.raises(ValueError):
        drifted_iet(rot(F(1, 5)), (1, 1), F(1, 100))


def test_find_drift_power_examples():
    theta = F(1, 100)
    T = drifted_iet(rot(F(1, 5)), (-1, 1), theta)
    assert find_drift_power(T, 5, theta / 3, F(1, 10)) == 1
    assert find_drift_power(T, 5, theta, F(1, 10)) == 2
    with pytest.raises(DriftPowerError):
        find_drift_power(T, 5, F(1, 40), F(1, 10))
    with pytest.raises(DriftPowerError):
        find_drift_power(rot(F(1, 5)), 5, F(1, 100), F(1, 10), cap=50)


def test_drift_data_json():
    d = find_drifting_direction((3, 2, 1))
    assert DriftData.from_json(d.to_json()) == d


@given(st.integers(0, 10**9), st.integers(2, 5), st.integers(2, 400))
def test_drift_linearity(seed, n, m):
    rng = random.Random(seed)
    perm = random_canonical_permutation(rng, n)
    drift = find_drifting_direction(perm)
    if drift is None:
        return
    T0 = Iet([F(1, n)] * n, perm)
    theta = F(1, 8 * n * m)
    T = drifted_iet(T0, drift.direction, theta)
    assert T.translations == tuple(t + theta * v for t, v in zip(T0.translations, drift.vector))


@given(st.integers(0, 10**9), st.integers(2, 5))
def test_drift_power_postcondition(seed, q):
    rng = random.Random(seed)
    n = rng.randint(2, q)
    T0 = random_iet(rng, n, denominator=q)
    drift = find_drifting_direction(T0.perm)
    if drift is None:
        return
    theta = F(1, 50 * q * q)
    T = drifted_iet(T0, drift.direction, theta)
    eps = theta * drift.v_min / 2
    alpha = F(1, 2 * q)
    try:
        k = find_drift_power(T, q, eps, alpha, drift=drift, theta=theta)
    except DriftPowerError:
        return
    P = power(T, k)
    assert in_window(P, q, 2 * eps, alpha - 2 * eps)
    assert all(2 * eps <= mod_q(t, q) <= alpha - 2 * eps for t in P.translations)
    assert k == 1 or not in_window(power(T, k - 1), q, 2 * eps, alpha - 2 * eps)
