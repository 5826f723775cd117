import pytest
from unittest.mock import patch

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

import medagg.order_core as oc
from medagg.errors import (MeetUndefined, NotAntisymmetric, NotGraded,
                           NotJoinSemilattice, NotMedian, NotReflexive,
                           NotTransitive, SizeLimit)
from medagg.relation_spaces import Flavor, enumerate_space

CHAIN = oc.build_context(oc.chain_poset(3))
CUBE = oc.build_context(oc.subset_poset(3))
PREORDERS = enumerate_space(Flavor.TOTAL_PREORDER, 3)

# 0 < 1, 2, 3 < 4
DIAMOND = np.array([
    [1, 1, 1, 1, 1],
    [0, 1, 0, 0, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
], dtype=bool)

# 0 < 1 < 2 < 4 and 0 < 3 < 4
PENTAGON = np.array([
    [1, 1, 1, 1, 1],
    [0, 1, 1, 0, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
], dtype=bool)

elements = st.integers(min_value=0, max_value=PREORDERS.n - 1)


def test_build_poset_rejects_bad_relations():
    with pytest.raises(NotReflexive) as err:
        oc.build_poset(2, np.zeros((2, 2)))
    assert err.value.x == 0

    with pytest.raises(NotAntisymmetric) as err:
        oc.build_poset(2, np.ones((2, 2)))
    assert (err.value.x, err.value.y) == (0, 1)

    broken = np.eye(3, dtype=bool)
    broken[0, 1] = broken[1, 2] = True
    with pytest.raises(NotTransitive) as err:
        oc.build_poset(3, broken)
    assert (err.value.x, err.value.y, err.value.z) == (0, 1, 2)


def test_antichain_is_not_a_join_semilattice():
    with pytest.raises(NotJoinSemilattice):
        oc.build_context(oc.build_poset(2, np.eye(2)))


def test_chain_tables():
    assert CHAIN.top == 2
    assert CHAIN.bottom == 0
    assert list(CHAIN.meet_irr) == [0, 1]
    assert list(CHAIN.join_irr) == [1, 2]
    assert list(CHAIN.rank) == [0, 1, 2]
    assert oc.median(CHAIN, 0, 2, 1) == 1
    assert oc.dist_rank(CHAIN, 0, 2) == 2
    assert CHAIN.report.is_distributive_lattice


def test_boolean_lattice_structure():
    report = CUBE.report
    assert report.is_median
    assert report.is_graded
    assert report.is_distributive_lattice
    assert report.is_atomistic and report.is_coatomistic
    assert sorted(CUBE.meet_irr) == [3, 5, 6]
    assert sorted(CUBE.join_irr) == [1, 2, 4]
    assert list(oc.interval(CUBE, 1, 2)) == [0, 1, 2, 3]
    assert oc.rank_valuation_defect(CUBE) == []


def test_betweenness_kinds_agree_on_distributive_lattice():
    median = oc.betweenness_cube(CUBE, 'median')
    assert np.array_equal(median, oc.betweenness_cube(CUBE, 'interval'))
    assert np.array_equal(median, oc.betweenness_cube(CUBE, 'metric'))
    assert oc.betweenness(CUBE, 'interval', 1, 0, 2)
    assert not oc.betweenness(CUBE, 'median', 1, 4, 2)


def test_interval_inside_median_on_preorders():
    ctx = PREORDERS.ctx
    median = oc.betweenness_cube(ctx, 'median')
    interval = oc.betweenness_cube(ctx, 'interval')
    assert not (interval & ~median).any()
    assert np.array_equal(median, oc.betweenness_cube(ctx, 'metric'))


def test_diamond_is_not_median():
    ctx = oc.build_context(oc.build_poset(5, DIAMOND))
    assert not ctx.is_median
    assert not ctx.report.is_upper_distributive
    assert ctx.report.is_meet_helly
    assert 'is_median' in ctx.report.witnesses

    with pytest.raises(NotMedian):
        oc.median(ctx, 1, 2, 3)


def test_pentagon_is_not_graded():
    ctx = oc.build_context(oc.build_poset(5, PENTAGON))
    assert not ctx.is_graded
    with pytest.raises(NotGraded):
        oc.dist_rank(ctx, 0, 4)


def test_set_meets_and_joins():
    assert oc.meet_of_set(CUBE, []) == CUBE.top
    assert oc.meet_of_set(CUBE, [3, 5, 6]) == 0
    assert oc.join_of_set(CUBE, [1, 2]) == 3
    assert oc.join_of_set(CHAIN, []) == 0

    ctx = PREORDERS.ctx
    linear = [x for x in range(ctx.n) if len(PREORDERS.blocks[x]) == 3]
    with pytest.raises(MeetUndefined) as err:
        oc.meet_of_set(ctx, linear)
    assert err.value.pair is not None

    # total preorders have no least element
    with pytest.raises(MeetUndefined):
        oc.join_of_set(ctx, [])


def test_filters_and_irreducibles():
    assert list(oc.principal_filter(CUBE, 6)) == [6, 7]
    assert sorted(oc.meet_irreducibles_above(CUBE, 1)) == [3, 5]
    assert sorted(oc.join_irreducibles_below(CUBE, 6)) == [2, 4]


def test_metric_median_of_odd_profile():
    assert list(oc.metric_median_set(CHAIN, [0, 0, 2])) == [0]
    assert list(oc.metric_median_set(CUBE, [1, 2, 4])) == [0]
    assert list(oc.remoteness(CHAIN, [0, 2])) == [2, 2, 2]


@patch('medagg.order_core.get_limit', return_value=4)
def test_large_context_needs_permission(mock_limit):
    with pytest.raises(SizeLimit):
        oc.build_context(oc.chain_poset(5))

    ctx = oc.build_context(oc.chain_poset(5), allow_large=True)
    assert ctx.dist is None
    assert ctx.report.sampled
    assert list(oc.distance_rows(ctx, [0])[0]) == [0, 1, 2, 3, 4]


@settings(max_examples=200, deadline=None)
@given(elements, elements, elements)
def test_rank_metric_is_the_covering_distance(x, y, z):
    ctx = PREORDERS.ctx
    d = oc.dist_rank(ctx, x, y)
    assert d == oc.distance_rows(ctx, [x])[0, y]
    assert d == oc.dist_rank(ctx, y, x)
    assert (d == 0) == (x == y)
    assert d <= oc.dist_rank(ctx, x, z) + oc.dist_rank(ctx, z, y)


@settings(max_examples=200, deadline=None)
@given(elements, elements, elements)
def test_median_is_symmetric_and_between(x, y, z):
    ctx = PREORDERS.ctx
    m = oc.median(ctx, x, y, z)
    assert m == oc.median(ctx, y, z, x) == oc.median(ctx, z, x, y)
    assert m in oc.interval(ctx, x, y)
    assert oc.median(ctx, x, x, y) == x
