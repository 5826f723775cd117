import pytest

import numpy as np

import medagg.agg_rules as ar
from medagg.errors import (BadProfile, InternalInvariantViolation, SizeLimit,
                           WrongFlavor)
from medagg.order_core import build_context, chain_poset
from medagg.relation_spaces import (Flavor, GroundSet, enumerate_space, parse,
                                    render)

XYZ = GroundSet.from_names('x,y,z')
PREORDERS = enumerate_space(Flavor.TOTAL_PREORDER, XYZ)
REFLEXIVE2 = enumerate_space(Flavor.REFLEXIVE, 2)
REFLEXIVE3 = enumerate_space(Flavor.REFLEXIVE, 3)
CHAIN = build_context(chain_poset(3))


def profile(*texts):
    return [parse(PREORDERS, t) for t in texts]


def test_coalitions():
    assert ar.coalition([0, 2]) == 5
    assert ar.members(5) == [0, 2]
    assert ar.popcount(7) == 3
    assert ar.majority_coalitions(3) == [3, 5, 6, 7]
    assert list(ar.coalition_sizes(2)) == [0, 1, 1, 2]


def test_order_filters():
    f = ar.OrderFilterN(3, (3, 1, 7))
    assert f.basis == (1,)
    assert f.contains(5)
    assert not f.contains(6)

    majority = ar.OrderFilterN.threshold(3, 2)
    assert majority.basis == (3, 5, 6)
    assert majority.members() == [3, 5, 6, 7]
    assert majority.quota() == 2
    assert majority.is_transversal()
    assert majority.is_nontrivial_proper

    assert ar.OrderFilterN(3).is_empty
    assert ar.OrderFilterN(3, (0,)).is_trivial
    assert ar.OrderFilterN.threshold(3, 4).is_empty
    assert ar.OrderFilterN.principal(3, 2).quota() is None
    assert not ar.OrderFilterN(2, (1, 2)).is_transversal()


def test_co_majority_on_cyclic_profiles():
    outcome = ar.evaluate(PREORDERS, ar.co_majority_rule(),
                          profile('xyz', 'yzx', 'zxy'))
    assert render(PREORDERS, outcome) == '[xyz]'

    outcome = ar.evaluate(PREORDERS, ar.co_majority_rule(),
                          profile('xyz', 'yzx', 'xzy'))
    assert render(PREORDERS, outcome) == 'x[yz]'


def test_co_majority_keeps_a_repeated_proposal():
    ctx = PREORDERS.ctx
    for a in range(ctx.n):
        for b in range(ctx.n):
            assert ar.co_majority(ctx, [a, a, b]) == a
    assert ar.co_majority(CHAIN, [0, 2, 1]) == 1


def test_simple_rules():
    p = profile('xyz', 'yzx', 'zxy')
    assert ar.evaluate(PREORDERS, ar.dictator(1), p) == p[1]
    assert ar.evaluate(PREORDERS, ar.constant(4), p) == 4
    assert ar.evaluate(PREORDERS, ar.quota_rule(3), p) == PREORDERS.ctx.top
    assert ar.evaluate(PREORDERS, ar.quota_rule(2), p) == \
        ar.evaluate(PREORDERS, ar.co_majority_rule(), p)

    with pytest.raises(BadProfile):
        ar.evaluate(PREORDERS, ar.dictator(3), p)
    with pytest.raises(BadProfile):
        ar.evaluate(PREORDERS, ar.co_majority_rule(), [0, 13])
    with pytest.raises(BadProfile):
        ar.evaluate(PREORDERS, ar.co_majority_rule(), [])


def test_condorcet_kemeny_rules():
    p = profile('xyz', 'xyz', 'yxz')
    assert render(PREORDERS, ar.generalized_ck(PREORDERS.ctx, p)) == 'xyz'
    assert render(PREORDERS, ar.strict_ck(PREORDERS, p)) == 'xyz'

    # the cyclic profile ties every linear order; the tiebreak decides
    p = profile('xyz', 'yzx', 'zxy')
    linear = ar.linear_orders(PREORDERS)
    first = ar.strict_ck(PREORDERS, p, ar.TieBreak.default(13))
    last = ar.strict_ck(PREORDERS, p, ar.TieBreak.reverse(13))
    assert first in linear and last in linear
    assert first < last

    with pytest.raises(WrongFlavor):
        ar.evaluate(PREORDERS.ctx, ar.strict_ck_rule(), p)


def test_tiebreak_must_be_a_permutation():
    with pytest.raises(AssertionError):
        ar.TieBreak((0, 0, 1))
    assert list(ar.TieBreak((2, 0, 1)).position) == [1, 2, 0]


def test_rule_table():
    table = ar.tabulate(PREORDERS, ar.co_majority_rule(), 2)
    assert table.outcomes.shape == (13, 13)
    assert table([3, 3]) == 3
    assert len(table.profiles()) == 169

    with pytest.raises(AssertionError):
        ar.RuleTable(2, 3, np.zeros((3, 2)))
    with pytest.raises(AssertionError):
        ar.RuleTable(1, 3, np.array([0, 1, 3]))
    with pytest.raises(SizeLimit):
        ar.tabulate(enumerate_space(Flavor.TOTAL_PREORDER, 4),
                    ar.co_majority_rule(), 3)


def test_filters_rebuild_strategy_proof_rules():
    ctx = PREORDERS.ctx
    for rule in (ar.co_majority_rule(), ar.dictator(2), ar.quota_rule(3)):
        table = ar.tabulate(PREORDERS, rule, 3)
        family = ar.extract_filters(ctx, table)
        rebuilt = ar.sponsorship_many(ctx, family, table.profiles())
        assert np.array_equal(rebuilt, table.flat)

    table = ar.tabulate(PREORDERS, ar.co_majority_rule(), 3)
    family = ar.extract_filters(ctx, table)
    assert family == ar.quota_family(ctx, 3, 2)
    shape = ar.classify_family(ctx, family)
    assert shape.quota and shape.quorum_system and shape.inclusive
    assert set(shape.quotas.values()) == {2}
    assert not shape.collegial
    assert shape.weakly_neutral
    assert 'weakly_neutral' in shape.tags()

    irr = [int(m) for m in ctx.meet_irr]
    mixed = ar.quota_family(ctx, 3, {m: 3 if m == irr[0] else 2
                                     for m in irr})
    assert not ar.classify_family(ctx, mixed).weakly_neutral


def test_dictator_family_is_collegial():
    ctx = PREORDERS.ctx
    table = ar.tabulate(PREORDERS, ar.dictator(1), 3)
    shape = ar.classify_family(ctx, ar.extract_filters(ctx, table))
    assert shape.collegial
    assert set(shape.collegial_sets.values()) == {2}
    assert 'collegial' in shape.tags()


def test_total_families():
    ctx = PREORDERS.ctx
    assert ar.is_total_family(ctx, ar.quota_family(ctx, 3, 2))
    assert not ar.is_total_family(ctx, ar.quota_family(ctx, 3, 1))
    assert ar.is_total_family(ctx, ar.empty_family(ctx, 3))
    assert ar.is_total_family(ctx, ar.collegial_family(ctx, 3, 1))

    family = ar.quota_family(ctx, 3, 1)
    with pytest.raises(InternalInvariantViolation):
        ar.sponsorship_eval(ctx, family, profile('xyz', 'zyx', 'xyz'))

    rng = np.random.default_rng(7)
    family = ar.random_sponsorship_family(ctx, 3, rng)
    assert ar.is_total_family(ctx, family)

    empty = ar.sponsorship_rule(ar.empty_family(ctx, 3))
    assert ar.evaluate(PREORDERS, empty, [0, 1, 2]) == ctx.top


def test_majority_lattice_rule():
    p = [5, 9, 12]
    majority = ar.evaluate(REFLEXIVE3, ar.majority_lattice_rule(), p)
    codes = REFLEXIVE3.codes
    held = [(int(codes[a]) & int(codes[b])) for a, b in ((5, 9), (5, 12),
                                                          (9, 12))]
    assert int(codes[majority]) == held[0] | held[1] | held[2]
    assert majority == ar.evaluate(REFLEXIVE3, ar.co_majority_rule(), p)

    with pytest.raises(WrongFlavor):
        ar.evaluate(PREORDERS, ar.majority_lattice_rule(), profile(
            'xyz', 'xyz', 'xyz'))


def test_lattice_filter_closure_uses_explicit_offsets():
    ctx = REFLEXIVE2.ctx
    singles = ar.OrderFilterN.threshold(2, 1)
    offsets = {1: ctx.top, 2: ctx.top, 3: ctx.bottom}
    p = [ctx.bottom, ctx.bottom]

    basis = ar.lattice_filter(singles, offsets)
    closure = ar.lattice_filter(singles, offsets, mode='closure')
    assert ar.evaluate(REFLEXIVE2, basis, p) == ctx.top
    assert ar.evaluate(REFLEXIVE2, closure, p) == ctx.bottom

    dual = ar.lattice_filter(singles, dual=True)
    q = [ctx.top, ctx.bottom]
    assert ar.lattice_filter_rule(REFLEXIVE2, singles, None, q,
                                  dual=True) == ctx.top
    assert ar.evaluate(REFLEXIVE2, dual, [ctx.bottom, ctx.bottom]) == \
        ctx.bottom


def test_retract_breaks_cycles():
    cycle = REFLEXIVE3.index_of(
        _code([(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0)]))
    assert ar.has_asymmetric_cycle(REFLEXIVE3.mats[[cycle]])[0]

    result = ar.minimal_monotonic_retract(REFLEXIVE3, ar.constant(cycle),
                                          [0, 0, 0])
    mat = REFLEXIVE3.mats[result]
    assert not ar.has_asymmetric_cycle(mat[None])[0]
    assert (mat <= REFLEXIVE3.mats[cycle]).all()
    assert mat.sum() == REFLEXIVE3.mats[cycle].sum() - 1

    assert ar.evaluate(REFLEXIVE3, ar.retract(ar.constant(cycle)),
                       [0, 0, 0]) == result


def test_asymmetric_cycles():
    full = np.ones((1, 3, 3), dtype=bool)
    assert not ar.has_asymmetric_cycle(full)[0]
    linear = PREORDERS.mats[ar.linear_orders(PREORDERS)]
    assert not ar.has_asymmetric_cycle(linear).any()


def test_tabulated_rule_and_corpora():
    table = ar.tabulate(PREORDERS, ar.dictator(0), 2)
    rule = ar.tabulated(table, name='d0')
    assert ar.evaluate(PREORDERS, rule, [4, 7]) == 4
    assert ar.tabulate(PREORDERS, rule, 2) is table

    rules = ar.structured_rules(PREORDERS, 3)
    assert len(rules) == 10
    assert rules[0].describe() == 'co-majority'
    assert ar.retract(ar.dictator(1)).describe() == 'retract(dictator-1)'

    anti = ar.anti_dictator_table(PREORDERS.ctx, 2)
    assert anti([0, 5]) != 0

    with pytest.raises(AssertionError):
        ar.RuleSpec('bogus')


def _code(pairs):
    return sum(1 << (a * 3 + b) for a, b in pairs)
