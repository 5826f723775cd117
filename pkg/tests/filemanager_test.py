import pytest

import json
import tempfile
import numpy as np
import os

import medagg.filemanager as fm
from medagg.agg_rules import (FilterFamily, OrderFilterN, TieBreak,
                              co_majority_rule, evaluate, generalized_ck_rule,
                              lattice_filter, quota_family, quota_rule,
                              retract, sponsorship_rule, tabulate)
from medagg.errors import BadProfile
from medagg.prop_checkers import axiom
from medagg.relation_spaces import Flavor, GroundSet, enumerate_space, parse

# create a temporary folder for test files
TEMP_FOLDER_HANDLE = tempfile.TemporaryDirectory()
TEMP_FOLDER = TEMP_FOLDER_HANDLE.name

XYZ = GroundSet.from_names('x,y,z')
PREORDERS = enumerate_space(Flavor.TOTAL_PREORDER, XYZ)
REFLEXIVE2 = enumerate_space(Flavor.REFLEXIVE, 2)


@pytest.fixture(autouse=True)
def clear_output_files():
    yield

    # code that runs after each test
    for file in os.listdir(TEMP_FOLDER):
        os.remove(os.path.join(TEMP_FOLDER, file))


def test_json_is_sorted_and_indented():
    path = os.path.join(TEMP_FOLDER, 'data.json')
    fm.write_json(path, {'b': 1, 'a': 'ü'})

    with open(path, encoding='utf-8') as f:
        text = f.read()
    assert text.index('"a"') < text.index('"b"')
    assert 'ü' in text
    assert '\n  "a"' in text
    assert fm.read_json(path) == {'a': 'ü', 'b': 1}


def test_read_yaml():
    path = os.path.join(TEMP_FOLDER, 'run.yaml')
    with open(path, 'w') as f:
        f.write('ground: xyz\nn: 3\n')
    assert fm.read_yaml(path) == {'ground': 'xyz', 'n': 3}

    with open(path, 'w') as f:
        f.write('')
    assert fm.read_yaml(path) == {}

    with open(path, 'w') as f:
        f.write('- a\n- b\n')
    with pytest.raises(ValueError):
        fm.read_yaml(path)

    with open(path, 'w') as f:
        f.write('a: [1, 2\n')
    with pytest.raises(ValueError):
        fm.read_yaml(path)


def test_space_and_relation_dicts():
    data = fm.space_to_dict(PREORDERS)
    assert data == {'flavor': 'total-preorder', 'ground': ['x', 'y', 'z']}
    assert fm.space_from_dict(data).n == 13
    assert fm.space_from_dict({'flavor': 'reflexive', 'ground': 2}).n == 4

    x_yz = parse(PREORDERS, 'x[yz]')
    relation = fm.relation_to_dict(PREORDERS, x_yz)
    assert relation['text'] == 'x[yz]'
    assert ['y', 'z'] in relation['pairs'] and ['z', 'y'] in relation['pairs']
    assert fm.relation_from_dict(PREORDERS, relation) == x_yz
    assert fm.relation_from_dict(PREORDERS, {'pairs': relation['pairs']}) \
        == x_yz
    assert fm.relation_from_dict(PREORDERS, 'x[yz]') == x_yz

    poset = fm.poset_from_dict(fm.poset_to_dict(PREORDERS.ctx.poset))
    assert np.array_equal(poset.leq, PREORDERS.ctx.leq)
    assert poset.labels == PREORDERS.ctx.poset.labels


def test_profiles():
    profile = [parse(PREORDERS, t) for t in ('xyz', 'yzx', 'zxy')]
    data = fm.profile_to_dict(PREORDERS, profile)
    assert data['profile'] == ['xyz', 'yzx', 'zxy']
    assert fm.profile_from_dict(PREORDERS, data) == profile

    with pytest.raises(BadProfile):
        fm.profile_from_dict(PREORDERS, [])

    path = os.path.join(TEMP_FOLDER, 'profile.json')
    fm.write_json(path, data)
    assert fm.load_profile(path, PREORDERS) == profile

    fm.write_json(path, profile)
    assert fm.load_profile(path) == profile


def test_rule_dicts_keep_outcomes():
    ctx = PREORDERS.ctx
    family = quota_family(ctx, 3, 2)
    assert fm.family_from_dict(fm.family_to_dict(family)) == family

    irr = [int(m) for m in ctx.meet_irr]
    rules = [
        sponsorship_rule(family, name='majority-family'),
        quota_rule({m: 2 if j % 2 else 3 for j, m in enumerate(irr)}),
        generalized_ck_rule(TieBreak.reverse(ctx.n)),
    ]
    profile = [parse(PREORDERS, t) for t in ('xyz', 'yzx', 'xzy')]
    for rule in rules:
        data = json.loads(fm.dumps(fm.rule_to_dict(rule)))
        rebuilt = fm.rule_from_dict(data)
        assert rebuilt.variant == rule.variant
        assert evaluate(PREORDERS, rebuilt, profile) == \
            evaluate(PREORDERS, rule, profile)


def test_rule_files():
    path = os.path.join(TEMP_FOLDER, 'rule.json')
    singles = OrderFilterN.threshold(2, 1)
    top = REFLEXIVE2.ctx.top
    bottom = REFLEXIVE2.ctx.bottom
    rule = retract(lattice_filter(singles, {1: top, 2: top, 3: bottom},
                                  mode='closure'))
    fm.write_json(path, fm.rule_to_dict(rule))

    loaded = fm.load_rule(path)
    assert loaded.variant == 'retract'
    assert loaded.inner.mode == 'closure'
    assert loaded.inner.offsets == {1: top, 2: top, 3: bottom}
    assert evaluate(REFLEXIVE2, loaded, [bottom, bottom]) == bottom

    path = os.path.join(TEMP_FOLDER, 'family.json')
    family = FilterFamily(2, {
        int(m): OrderFilterN(2, (3,)) for m in REFLEXIVE2.ctx.meet_irr
    })
    fm.write_json(path, fm.family_to_dict(family))
    assert fm.load_family(path) == family


def test_tables_on_disk():
    table = tabulate(PREORDERS, co_majority_rule(), 2)
    for name in ('table.hdf5', 'table.json'):
        path = os.path.join(TEMP_FOLDER, name)
        fm.save_table(path, table)
        assert fm.load_table(path) == table

    with pytest.raises(AssertionError):
        fm.load_table(os.path.join(TEMP_FOLDER, 'missing.hdf5'))


def test_reports():
    reports = [
        axiom(PREORDERS, co_majority_rule(), 'anonymous', n=3),
        axiom(PREORDERS, quota_rule(3), 'idempotent', n=3),
    ]
    path = os.path.join(TEMP_FOLDER, 'reports.json')
    fm.write_reports(path, reports)

    loaded = fm.read_reports(path)
    assert [r.name for r in loaded] == ['anonymous', 'idempotent']
    assert [r.verdict for r in loaded] == [r.verdict for r in reports]
    assert loaded[0].rule == 'co-majority'
