import pytest
from unittest.mock import patch

import numpy as np

import medagg.relation_spaces as rs
from medagg.errors import BadProfile, SizeLimit, WrongFlavor
from medagg.order_core import dist_rank

XYZ = rs.GroundSet.from_names('x,y,z')
PREORDERS = rs.enumerate_space(rs.Flavor.TOTAL_PREORDER, XYZ)


def test_space_sizes():
    sizes = {
        rs.Flavor.TOTAL_PREORDER: 13,
        rs.Flavor.WEAK_ORDER: 13,
        rs.Flavor.WEAK_TOURNAMENT: 27,
        rs.Flavor.STRICT_TOURNAMENT: 27,
        rs.Flavor.REFLEXIVE: 64,
        rs.Flavor.IRREFLEXIVE: 64,
    }
    for flavor, size in sizes.items():
        assert rs.enumerate_space(flavor, 3).n == size

    assert rs.enumerate_space(rs.Flavor.TOTAL_PREORDER, 4).n == 75


def test_ground_set_limits():
    with pytest.raises(SizeLimit):
        rs.enumerate_space(rs.Flavor.TOTAL_PREORDER, 5)
    with pytest.raises(SizeLimit):
        rs.enumerate_space(rs.Flavor.REFLEXIVE, 4)


def test_preorder_irreducibles_are_two_block():
    ctx = PREORDERS.ctx
    two_block = rs.two_block_irreducibles(PREORDERS)
    assert len(two_block) == 6
    assert sorted(ctx.meet_irr) == sorted(two_block)
    assert sorted(ctx.coatoms) == sorted(two_block)
    assert rs.render(PREORDERS, ctx.top) == '[xyz]'
    assert ctx.bottom is None
    assert ctx.is_median and ctx.is_graded


def test_weak_tournament_irreducibles():
    space = rs.enumerate_space(rs.Flavor.WEAK_TOURNAMENT, 3)
    assert len(space.ctx.meet_irr) == 6
    assert space.ctx.is_median

    with pytest.raises(WrongFlavor):
        rs.two_block_irreducibles(space)


def test_reflexive_relations_form_a_boolean_lattice():
    space = rs.enumerate_space(rs.Flavor.REFLEXIVE, 3)
    report = space.ctx.report
    assert report.is_distributive_lattice
    assert len(space.ctx.meet_irr) == 6
    assert space.ctx.bottom is not None


def test_render_and_parse():
    x_yz = rs.parse(PREORDERS, 'x[yz]')
    assert rs.render(PREORDERS, x_yz) == 'x[yz]'
    assert rs.parse(PREORDERS, ' x [zy] ') == x_yz
    assert rs.parse(PREORDERS, str(x_yz)) == x_yz
    assert rs.parse(PREORDERS, x_yz) == x_yz

    xyz = rs.parse(PREORDERS, 'xyz')
    assert rs.parse(PREORDERS, '{(x,y),(y,z),(x,z)}') == xyz
    assert list(rs.top_set(PREORDERS.element(xyz))) == [0]
    assert list(rs.top_set(PREORDERS.element(rs.parse(PREORDERS,
                                                      '[xy]z')))) == [0, 1]


def test_parse_rejects_bad_text():
    for text in ('xy', 'x[yz', 'x[]yz', 'x[y[z]]', 'xyq', '{(x,y)}', '99'):
        with pytest.raises(BadProfile):
            rs.parse(PREORDERS, text)


def test_render_without_bracket_notation():
    x_yz = rs.parse(PREORDERS, 'x[yz]')
    pairs = '{(x,y),(x,z),(y,z),(z,y)}'
    assert rs.render(PREORDERS, x_yz, bracket=False) == pairs
    assert rs.parse(PREORDERS, pairs) == x_yz

    with patch('medagg.relation_spaces.use_bracket_notation',
               return_value=False):
        assert rs.render(PREORDERS, x_yz) == pairs
        assert rs.render(PREORDERS, x_yz, bracket=True) == 'x[yz]'
    assert rs.render(PREORDERS, x_yz) == 'x[yz]'


def test_render_long_names():
    space = rs.enumerate_space(rs.Flavor.TOTAL_PREORDER,
                               rs.GroundSet.from_names('alpha, beta'))
    rendered = sorted(rs.render(space, e) for e in range(space.n))
    assert rendered == ['alpha > beta', 'alpha ~ beta', 'beta > alpha']


def test_pair_lists_for_lattices():
    space = rs.enumerate_space(rs.Flavor.IRREFLEXIVE, 3)
    e = rs.relation_from_pairs(space, [(0, 0), (0, 1)])
    assert rs.render(space, e) == '{(a,b)}'
    assert rs.parse(space, '{(a,b)}') == e
    assert rs.parse(space, '{}') == space.ctx.bottom


def test_kemeny_distance_differs_from_rank_metric():
    xyz = rs.parse(PREORDERS, 'xyz')
    top = PREORDERS.ctx.top
    assert rs.kemeny_distance(PREORDERS.element(xyz),
                              PREORDERS.element(top)) == 3
    assert dist_rank(PREORDERS.ctx, xyz, top) == 2
    assert rs.kemeny_matrix(PREORDERS)[xyz, top] == 3


def test_paired_spaces():
    iso = rs.iso_maps(PREORDERS)
    assert iso.target.flavor == rs.Flavor.WEAK_ORDER
    assert sorted(iso.forward) == list(range(13))

    reflexive = rs.enumerate_space(rs.Flavor.REFLEXIVE, 2)
    iso = rs.iso_maps(reflexive)
    assert iso.target.flavor == rs.Flavor.IRREFLEXIVE
    assert iso(reflexive.ctx.top) == iso.target.ctx.top

    with pytest.raises(WrongFlavor):
        rs.iso_maps(rs.enumerate_space(rs.Flavor.STRICT_TOURNAMENT, 3))


def test_paired_space_sizes():
    pairs = {
        rs.Flavor.TOTAL_PREORDER: (rs.Flavor.WEAK_ORDER, 13),
        rs.Flavor.WEAK_TOURNAMENT: (rs.Flavor.STRICT_TOURNAMENT, 27),
        rs.Flavor.REFLEXIVE: (rs.Flavor.IRREFLEXIVE, 64),
    }
    for flavor, (paired, size) in pairs.items():
        space = rs.enumerate_space(flavor, 3)
        iso = rs.iso_maps(space)
        assert iso.target.flavor == paired
        assert space.n == iso.target.n == size
        assert len(np.unique(iso.forward)) == size


def test_weak_orders_share_the_order():
    weak = rs.weak_order_space(PREORDERS)
    assert weak.ctx.top == PREORDERS.ctx.top
    assert not weak.mats[weak.ctx.top].any()


def test_condorcet_winner():
    mats = [PREORDERS.mats[rs.parse(PREORDERS, t)]
            for t in ('xyz', 'xyz', 'yxz')]
    assert rs.condorcet_winner(XYZ, mats) == 0

    cyclic = [PREORDERS.element(rs.parse(PREORDERS, t))
              for t in ('xyz', 'yzx', 'zxy')]
    assert rs.condorcet_winner(XYZ, cyclic) is None
    assert rs.strict_tally(np.array(mats))[0, 1] == 2
    assert rs.majority_threshold(3) == 2
    assert rs.majority_threshold(4) == 3


def test_linear_orders_and_relabeling():
    linear = rs.linear_orders(PREORDERS)
    assert len(linear) == 6

    act = rs.permutation_action(PREORDERS, (1, 0, 2))
    assert act[rs.parse(PREORDERS, 'xyz')] == rs.parse(PREORDERS, 'yxz')
    assert list(rs.permutation_action(PREORDERS, (0, 1, 2))) == \
        list(range(13))
    assert len(list(rs.ground_permutations(3))) == 6

    with pytest.raises(WrongFlavor):
        rs.linear_orders(rs.enumerate_space(rs.Flavor.REFLEXIVE, 2))


def test_flavor_and_ground_parsing():
    assert rs.Flavor.parse('Total_Preorder') == rs.Flavor.TOTAL_PREORDER
    with pytest.raises(ValueError):
        rs.Flavor.parse('partial-order')

    with pytest.raises(AssertionError):
        rs.GroundSet.from_names('x,x,y')
    with pytest.raises(BadProfile):
        XYZ.index('w')


def test_space_summary():
    summary = rs.space_summary(PREORDERS)
    assert summary['elements'] == 13
    assert summary['top'] == '[xyz]'
    assert len(summary['meet_irreducibles']) == 6
    assert summary['structure']['is_median']
