import io
import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ietgroups.iet import Iet, compose, identity, power, random_iet
from ietgroups.rational import (
    CSV_COLUMNS,
    NotQRational,
    arnoux_yoccoz,
    ay_sweep,
    grid_permutation,
    is_q_rational,
    nearest_q_rational,
    nearest_q_rational_exhaustive,
    order,
    sweep_row,
    write_csv,
    write_svgs,
)
from ietgroups.scalar import A

from conftest import fig2, iets, rot


def test_q_rational_examples():
    assert is_q_rational(rot(F(1, 5)), 5)
    assert grid_permutation(rot(F(1, 5)), 5).cycles() == [(0, 1, 2, 3, 4)]
    assert not is_q_rational(fig2(), 5)
    assert not is_q_rational(rot(F(1, 3)), 5)
    gp = grid_permutation(fig2(), 10)
    assert (0, 2, 4, 1, 3) in gp.cycles()
    assert all(gp.images[c] == c for c in range(5, 10))
    with pytest.raises(NotQRational):
        grid_permutation(fig2(), 5)


def test_order_examples():
    assert order(rot(F(1, 5)), 5) == 5
    assert order(fig2(), 10) == 5
    assert order(identity(), 7) == 1
    with pytest.raises(NotQRational):
        order(rot(F(1, 3)), 5)


def test_nearest_examples():
    assert nearest_q_rational(rot(F(1, 3)), 3) == (rot(F(1, 3)), 0)
    T0, delta = nearest_q_rational(rot(F(1, 3)), 5)
    assert T0.lengths == (F(3, 5), F(2, 5)) and delta == F(2, 15)
    assert nearest_q_rational_exhaustive(rot(F(1, 3)), 5) == F(2, 15)
    with pytest.raises(ValueError):
        nearest_q_rational(fig2(), 2)


def test_arnoux_yoccoz_construction():
    g, h, f = arnoux_yoccoz()
    assert sum(g.lengths, F(0)) == 1
    assert A + A**2 + A**3 == 1
    assert h == rot(F(1, 2))
    assert f.lengths == ((1 - A) / 2, A - F(1, 2), A / 2, A**2 / 2, A**2 / 2, A**3 / 2, A**3 / 2)
    assert f.perm == (7, 1, 6, 3, 2, 5, 4)
    assert f == compose(h, g)


@given(st.integers(1, 8), st.integers(0, 10**9))
def test_order_properties(q, seed):
    rng = random.Random(seed)
    T0 = random_iet(rng, rng.randint(1, min(q, 5)), denominator=q) if q > 1 else identity()
    o = order(T0, q)
    assert math.factorial(q) % o == 0
    assert power(T0, o).is_identity()
    assert all(not power(T0, j).is_identity() for j in range(1, o))


@given(st.integers(0, 10**9), st.integers(1, 4), st.integers(4, 12), st.booleans())
def test_nearest_is_optimal(seed, n, q, cubic):
    rng = random.Random(seed)
    S = random_iet(rng, n, cubic=cubic)
    if q < S.n:
        return
    T0, delta = nearest_q_rational(S, q)
    assert T0.perm == S.perm
    assert is_q_rational(T0, q)
    assert delta == nearest_q_rational_exhaustive(S, q)
    assert delta == sum((abs(a - b) for a, b in zip(S.lengths, T0.lengths)), F(0))


def test_sweep_small_range():
    rows = ay_sweep(20, 60)
    assert [r.q for r in rows] == list(range(20, 61))
    for r in rows:
        assert r.consistent()
        assert r.delta <= F(5, r.q)
        assert r.bound > 1 and not r.bound_lt_1
    assert rows[0].delta == F(1, 10) and rows[0].order == 16
    assert rows == ay_sweep(20, 60, jobs=2)


def test_sweep_row_and_outputs(tmp_path):
    f = arnoux_yoccoz()[2]
    row = sweep_row(f, 26)
    assert row.bound == 40 * 26 * (row.order + 2) * row.delta
    buf = io.StringIO()
    write_csv([row], buf)
    header, line = buf.getvalue().strip().splitlines()
    assert header.split(",") == CSV_COLUMNS
    assert line.startswith("26,")
    written = write_svgs(ay_sweep(20, 30), tmp_path)
    assert sorted(p.name for p in written) == ["bound.svg", "delta.svg", "order.svg"]
    assert all(p.read_text().startswith("<svg") for p in written)


def test_sweep_rejects_small_q():
    with pytest.raises(ValueError):
        ay_sweep(5, 10)
