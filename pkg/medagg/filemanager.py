#!/usr/bin/env python3
'''
Reading and writing medagg objects.

All JSON is UTF-8 with sorted keys and the indent set in the [output]
section of the config.  Dense rule tables can also go to .hdf5 files: the
outcome array is stored as a dataset and the scalar metadata as file
attributes.  Run configurations are read from .yaml files.

Useage:
    write_json('family.json', family_to_dict(family))
    family = family_from_dict(read_json('family.json'))
    save_table('table.hdf5', table)
'''

import json
import os
from typing import List, Optional, Sequence

import h5py
import numpy as np
import yaml

from medagg.agg_rules import (FilterFamily, OrderFilterN, RuleSpec,
                              RuleTable, TieBreak)
from medagg.defaults import get_indent
from medagg.errors import BadProfile
from medagg.order_core import Poset, build_poset
from medagg.prop_checkers import CheckReport
from medagg.relation_spaces import (Flavor, GroundSet, RelationSpace,
                                    enumerate_space, parse, render)


def write_json(path: str, data) -> None:
    '''
    Writes data to path as sorted, indented UTF-8 JSON.
    '''
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(data))
        f.write('\n')


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=get_indent(),
                      ensure_ascii=False)


def read_json(path: str):
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def read_yaml(path: str) -> dict:
    '''
    Loads nested dictionaries from .yaml formated files.

    Arguments:
        path: the path to read yaml data from.

    Returns:
        yaml_contents: The contents of the yaml file.

    Raises:
        ValueError: when the file is not valid yaml or not a mapping.
    '''
    with open(path, 'r', encoding='utf-8') as data:
        try:
            yaml_contents = yaml.safe_load(data)
        except yaml.YAMLError as exc:
            raise ValueError('invalid yaml in {0}: {1}'.format(path, exc))

    if yaml_contents is None:
        return dict()
    if not isinstance(yaml_contents, dict):
        raise ValueError('{0} does not hold a mapping'.format(path))
    return yaml_contents


# Posets and spaces
# -----------------------


def poset_to_dict(p: Poset) -> dict:
    return {
        'n': p.n,
        'leq': p.leq.astype(int).tolist(),
        'labels': list(p.labels) if p.labels is not None else None,
    }


def poset_from_dict(data: dict) -> Poset:
    return build_poset(int(data['n']), np.array(data['leq'], dtype=bool),
                       data.get('labels'))


def space_to_dict(space: RelationSpace) -> dict:
    return {'flavor': space.flavor.value, 'ground': list(space.ground.names)}


def space_from_dict(data: dict, allow_large: bool = False) -> RelationSpace:
    '''
    Enumerates the space described by {"flavor": ..., "ground": [...]}.
    '''
    ground = data['ground']
    if isinstance(ground, int):
        ground = GroundSet.default(ground)
    else:
        ground = GroundSet.from_names(ground)
    return enumerate_space(Flavor.parse(data['flavor']), ground,
                           allow_large=allow_large)


def relation_to_dict(space: RelationSpace, element: int) -> dict:
    names = space.ground.names
    return {
        'flavor': space.flavor.value,
        'index': int(element),
        'pairs': [[names[a], names[b]] for a, b in np.argwhere(
            space.mats[element]) if a != b],
        'text': render(space, element),
    }


def relation_from_dict(space: RelationSpace, data) -> int:
    '''
    Element index from an index, a text form, or a relation dict.
    '''
    if isinstance(data, (int, str)):
        return parse(space, data)
    if 'text' in data:
        return parse(space, data['text'])
    pairs = ','.join('({0},{1})'.format(a, b) for a, b in data['pairs'])
    return parse(space, '{' + pairs + '}')


def profile_to_dict(space: RelationSpace, profile: Sequence[int]) -> dict:
    return {
        'space': space_to_dict(space),
        'profile': [render(space, x) for x in profile],
    }


def profile_from_dict(space: RelationSpace, data) -> List[int]:
    '''
    Profile indices from a list of element forms or {"profile": [...]}.

    Raises:
        BadProfile: for an empty profile or unknown elements.
    '''
    if isinstance(data, dict):
        data = data.get('profile')
    if not data:
        raise BadProfile('a profile needs at least one agent')
    return [relation_from_dict(space, x) for x in data]


# Rules
# -----------------------


def family_to_dict(family: FilterFamily) -> dict:
    return {
        'n': family.n,
        'filters': {
            str(m): list(f.basis) for m, f in sorted(family.filters.items())
        },
    }


def family_from_dict(data: dict) -> FilterFamily:
    n = int(data['n'])
    return FilterFamily(n, {
        int(m): OrderFilterN(n, tuple(int(S) for S in basis))
        for m, basis in data['filters'].items()
    })


def table_to_dict(table: RuleTable) -> dict:
    return {'n': table.n, 'k': table.k, 'outcomes': table.flat.tolist()}


def table_from_dict(data: dict) -> RuleTable:
    n, k = int(data['n']), int(data['k'])
    outcomes = np.array(data['outcomes'], dtype=np.int64).reshape((k,) * n)
    return RuleTable(n, k, outcomes)


def rule_to_dict(rule: RuleSpec) -> dict:
    '''
    JSON form of a RuleSpec with a "variant" discriminator.  Only the
    fields the variant uses are written.
    '''
    data = {'variant': rule.variant}
    if rule.name:
        data['name'] = rule.name
    if rule.family is not None:
        data['family'] = family_to_dict(rule.family)
    if rule.quotas is not None:
        data['quotas'] = rule.quotas if isinstance(rule.quotas, int) else {
            str(m): int(q) for m, q in rule.quotas.items()
        }
    if rule.tiebreak is not None:
        data['tiebreak'] = list(rule.tiebreak.order)
    if rule.coalitions is not None:
        data['coalitions'] = {
            'n': rule.coalitions.n,
            'basis': list(rule.coalitions.basis)
        }
        data['mode'] = rule.mode
    if rule.offsets is not None:
        data['offsets'] = {str(S): int(e) for S, e in rule.offsets.items()}
    if rule.agent is not None:
        data['agent'] = rule.agent
    if rule.element is not None:
        data['element'] = rule.element
    if rule.table is not None:
        data['table'] = table_to_dict(rule.table)
    if rule.inner is not None:
        data['inner'] = rule_to_dict(rule.inner)
    return data


def rule_from_dict(data: dict) -> RuleSpec:
    quotas = data.get('quotas')
    if isinstance(quotas, dict):
        quotas = {int(m): int(q) for m, q in quotas.items()}
    coalitions = data.get('coalitions')
    if coalitions is not None:
        coalitions = OrderFilterN(int(coalitions['n']),
                                  tuple(coalitions['basis']))
    offsets = data.get('offsets')
    if offsets is not None:
        offsets = {int(S): int(e) for S, e in offsets.items()}
    return RuleSpec(
        data['variant'],
        family=family_from_dict(data['family']) if 'family' in data else None,
        quotas=quotas,
        tiebreak=TieBreak(tuple(data['tiebreak']))
        if 'tiebreak' in data else None,
        coalitions=coalitions,
        offsets=offsets,
        mode=data.get('mode', 'basis'),
        agent=data.get('agent'),
        element=data.get('element'),
        table=table_from_dict(data['table']) if 'table' in data else None,
        inner=rule_from_dict(data['inner']) if 'inner' in data else None,
        name=data.get('name'))


# Tables on disk
# -----------------------


def save_table(path: str, table: RuleTable, verbose: bool = False) -> None:
    '''
    Writes a RuleTable as .hdf5 or, for any other extension, JSON.
    '''
    if path.endswith('.hdf5'):
        if verbose:
            print('Writing table to', os.path.abspath(path))
        with h5py.File(path, 'w') as f:
            f.create_dataset('outcomes', data=table.outcomes, chunks=None)
            f.attrs['n'] = table.n
            f.attrs['k'] = table.k
    else:
        write_json(path, table_to_dict(table))


def load_table(path: str) -> RuleTable:
    assert os.path.isfile(path), 'File does not exist'
    if path.endswith('.hdf5'):
        with h5py.File(path, 'r') as f:
            n = int(f.attrs['n'])
            k = int(f.attrs['k'])
            outcomes = f['outcomes'][()]
        return RuleTable(n, k, outcomes)
    return table_from_dict(read_json(path))


# Reports
# -----------------------


def reports_to_list(reports: Sequence[CheckReport]) -> List[dict]:
    return [report.as_dict() for report in reports]


def report_from_dict(data: dict) -> CheckReport:
    return CheckReport(data['name'],
                       data['verdict'],
                       witness=data.get('witness'),
                       expected=data.get('expected', True),
                       rule=data.get('rule'),
                       details=data.get('details') or {})


def write_reports(path: str, reports: Sequence[CheckReport]) -> None:
    write_json(path, reports_to_list(reports))


def read_reports(path: str) -> List[CheckReport]:
    return [report_from_dict(data) for data in read_json(path)]


def load_family(path: str) -> FilterFamily:
    return family_from_dict(read_json(path))


def load_rule(path: str) -> RuleSpec:
    return rule_from_dict(read_json(path))


def load_profile(path: str,
                 space: Optional[RelationSpace] = None) -> List[int]:
    '''
    Reads a profile file.  Without a space the file must hold indices.
    '''
    data = read_json(path)
    if space is None:
        if isinstance(data, dict):
            data = data['profile']
        return [int(x) for x in data]
    return profile_from_dict(space, data)
