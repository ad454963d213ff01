import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import landscape_on_grid
from pldiv import (ParameterError, PersistenceDiagram, PiecewiseLinearFn, build_landscape,
                   integrate_landscape, pldiv_closed_form, sample_landscape, tent)
from pldiv.landscape import PersistenceLandscape

pair = st.tuples(st.floats(0, 10), st.floats(0, 10)).map(lambda t: (min(t), max(t)))
int_pair = st.tuples(st.integers(0, 6), st.integers(0, 6)).map(lambda t: (float(min(t)), float(max(t))))
diagrams = st.lists(st.one_of(pair, int_pair), max_size=40)


def test_tent_values():
    f = tent((0, 2))
    assert f(1.0) == 1.0 and f(3.0) == 0.0 and f(-1) == 0.0
    assert tent((1, 1)).is_zero and len(tent((1, 1)).t) == 0


def test_single_tent_landscape():
    L = build_landscape([(0, 2)])
    assert len(L) == 1 and L[0].breakpoints() == [(0, 0), (1, 1), (2, 0)]


def test_duplicate_pairs_stack():
    L = build_landscape([(0, 2), (0, 2)])
    assert len(L) == 2 and L[0].breakpoints() == L[1].breakpoints() == tent((0, 2)).breakpoints()


def test_overlapping_pairs():
    L = build_landscape([(0, 2), (1, 3)])
    assert L[0].breakpoints() == [(0, 0), (1, 1), (1.5, 0.5), (2, 1), (3, 0)]
    assert L[1].breakpoints() == [(1, 0), (1.5, 0.5), (2, 0)]
    grid = np.linspace(-1, 4, 1001)
    assert np.allclose(L(grid), landscape_on_grid([(0, 2), (1, 3)], grid), atol=1e-12)
    assert integrate_landscape(L) == 2.0


def test_empty():
    L = build_landscape([])
    assert len(L) == 0 and integrate_landscape(L) == 0.0
    grid, vals = sample_landscape(L, 0, 1, 7)
    assert vals.shape == (0, 7)
    assert pldiv_closed_form(PersistenceDiagram([], [])) == 0.0


def test_integral_single_tent():
    assert integrate_landscape(build_landscape([(0, 2)])) == 1.0


def test_closed_form_examples():
    assert pldiv_closed_form([(0, 3.0)]) == 9 / 4
    c, n = 1.7, 9
    assert pldiv_closed_form([(0, c)] * (n - 1)) == pytest.approx((n - 1) * c * c / 4, rel=1e-15)
    assert pldiv_closed_form([(0, 0)] * 5) == 0.0


def test_sample_tent():
    grid, vals = sample_landscape(PersistenceLandscape((tent((0, 2)),)), 0, 2, 5)
    assert grid.tolist() == [0, 0.5, 1, 1.5, 2]
    assert vals.tolist() == [[0, 0.5, 1, 0.5, 0]]


@pytest.mark.parametrize("args", [(1, 1, 5), (2, 1, 5), (0, 1, 1), (0, np.inf, 5), (0, 1, 2.5)])
def test_sample_bad_args(args):
    with pytest.raises(ParameterError):
        sample_landscape(build_landscape([(0, 1)]), *args)


def test_piecewise_requires_increasing():
    with pytest.raises(ValueError):
        PiecewiseLinearFn([0, 0], [0, 1])


@given(diagrams)
def test_tonelli_identity(pairs):
    L = build_landscape(pairs)
    closed = pldiv_closed_form(pairs)
    assert abs(integrate_landscape(L) - closed) <= 1e-9 * max(1.0, closed)
    assert len(L) <= len(pairs)


@given(diagrams)
def test_levels_match_order_statistics(pairs):
    L = build_landscape(pairs)
    grid = np.linspace(-0.5, 10.5, 2201)
    ref = landscape_on_grid(pairs, grid)
    got = L(grid)
    k = len(L)
    assert np.allclose(got, ref[:k], atol=1e-9)
    assert np.allclose(ref[k:], 0.0)
    assert (np.diff(got, axis=0) <= 1e-12).all()
    # sum over levels equals the sum of tents
    assert np.allclose(got.sum(axis=0), ref.sum(axis=0), atol=1e-9)


@given(diagrams)
def test_level_shape(pairs):
    for lvl in build_landscape(pairs).levels:
        assert lvl.values[0] == 0 and lvl.values[-1] == 0 and (lvl.values >= 0).all()
        assert (np.diff(lvl.t) > 0).all()


@given(st.lists(pair, max_size=30), st.randoms())
def test_closed_form_order_free(pairs, rnd):
    shuffled = pairs[:]
    rnd.shuffle(shuffled)
    assert pldiv_closed_form(pairs) == pldiv_closed_form(shuffled)
    assert pldiv_closed_form(pairs + [(3.0, 3.0)]) == pldiv_closed_form(pairs)
