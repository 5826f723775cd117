#!/usr/bin/env python3
'''
Command line interface: build relation spaces, evaluate and tabulate rules,
check axioms and run the verification harnesses.  Results are printed on
stdout as aligned tables (--format text, the default) or as JSON with sorted
keys (--format json), or written as JSON with --out.  With --verbose,
progress goes to stderr.

Exit codes: 0 when every verdict is as expected, 1 when one is not, 2 for
bad input.

Useage:
    medagg space info --flavor total-preorder --ground x,y,z
    medagg rule eval --ground x,y,z --rule co-majority --profile xyz,yzx,zxy
    medagg rule table --rule co-majority --n 3 --out table.hdf5
    medagg check --rule quota:3 --n 3 --check bi_idempotent
    medagg verify kemeny-agreement --n 5 --samples 10000 --format json
    medagg kemeny --ground x,y,z --profile xyz,yzx,zxy
'''

import argparse
import contextlib
import json
import re
import sys
from dataclasses import dataclass, field, fields
from typing import List, Optional, Sequence

import numpy as np
import yaml

from medagg import filemanager
from medagg.agg_rules import (OrderFilterN, RuleSpec, TieBreak,
                              co_majority_rule, constant, dictator, evaluate,
                              generalized_ck_rule, lattice_filter,
                              majority_coalitions, majority_lattice_rule,
                              quota_rule, retract, strict_ck_rule, tabulate,
                              tabulated)
from medagg.errors import InternalInvariantViolation, MedAggError
from medagg.order_core import metric_median_set, remoteness
from medagg.prop_checkers import (CHECKS, CheckReport, check,
                                  verify_basic_pareto,
                                  verify_comajority_characterization,
                                  verify_kemeny_agreement,
                                  verify_lattice_rules,
                                  verify_sp_equivalence,
                                  verify_sponsorship_roundtrip,
                                  verify_structure_claims,
                                  verify_weak_condorcet)
from medagg.relation_spaces import (Flavor, GroundSet, RelationSpace,
                                    enumerate_space, parse, render,
                                    space_summary)

VERIFY_TARGETS = ('sp-equivalence', 'sponsorship-roundtrip', 'comajority',
                  'kemeny-agreement', 'lattice-rules', 'basic-pareto',
                  'weak-condorcet', 'claims')
VERIFY_ALIASES = {
    'theorem1': 'sp-equivalence',
    'corollary1': 'sponsorship-roundtrip',
    'prop1': 'comajority',
    'prop3': 'kemeny-agreement',
    'prop5': 'lattice-rules',
}
OUTPUT_FORMATS = ('text', 'json')
LEAD_COLUMNS = ('name', 'index', 'text', 'verdict', 'expected', 'rule')
DEFAULT_CHECKS = ('strategy_proof', 'bmu_monotonic',
                  'monotonic_m_independent', 'anonymous', 'idempotent',
                  'bi_idempotent', 'sovereign', 'inclusive')

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_INPUT = 2


@dataclass
class RunConfig:
    '''
    Everything one invocation needs.  Values come from a --config yaml file
    first and are then overridden by command line flags.
    '''
    command: str = ''
    action: Optional[str] = None
    flavor: Optional[str] = None
    ground: Optional[str] = None
    space_file: Optional[str] = None
    rule: str = 'co-majority'
    rule_file: Optional[str] = None
    table_file: Optional[str] = None
    profile: Optional[str] = None
    profile_file: Optional[str] = None
    tiebreak: str = 'default'
    n: Optional[int] = None
    checks: List[str] = field(default_factory=list)
    full_pairs: bool = False
    strict: bool = False
    out: Optional[str] = None
    seed: Optional[int] = None
    random: Optional[int] = None
    samples: Optional[int] = None
    allow_large: bool = False
    verbose: bool = False
    format: str = 'text'

    def update(self, values: dict):
        known = {f.name for f in fields(self)}
        for key, value in values.items():
            key = key.replace('-', '_')
            if key not in known:
                raise ValueError('unknown config key: {0}'.format(key))
            if value is not None:
                setattr(self, key, value)
        if isinstance(self.seed, str):
            self.seed = int(self.seed, 0)
        if self.format not in OUTPUT_FORMATS:
            raise ValueError('unknown output format: {0}'.format(self.format))
        if self.command == 'verify':
            self.action = VERIFY_ALIASES.get(self.action, self.action)


def _seed(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='yaml file of RunConfig values')
    common.add_argument('--flavor', help='one of: ' + ', '.join(
        f.value for f in Flavor))
    common.add_argument('--ground',
                        help='alternatives, comma separated or one word')
    common.add_argument('--space-file', help='json space description')
    common.add_argument('--out', help='output file (json, or .hdf5 tables)')
    common.add_argument('--format', choices=OUTPUT_FORMATS,
                        help='stdout as aligned tables (default) or json')
    common.add_argument('--seed', type=_seed, help='random seed, hex allowed')
    common.add_argument('--allow-large', action='store_true', default=None,
                        help='lift the configured size limits')
    common.add_argument('--verbose', '-v', action='store_true', default=None,
                        help='progress output on stderr')

    rules = argparse.ArgumentParser(add_help=False)
    rules.add_argument('--rule',
                       help='co-majority, dictator:i, constant[:x], '
                       'quota:q, ck, strict-ck, majority-lattice, '
                       'lattice-filter, retract:<rule>')
    rules.add_argument('--rule-file', help='json RuleSpec')
    rules.add_argument('--table-file', help='json or .hdf5 RuleTable')
    rules.add_argument('--tiebreak', choices=('default', 'reverse',
                                              'shuffled'))
    rules.add_argument('--n', type=int, help='number of agents')

    profiles = argparse.ArgumentParser(add_help=False)
    profiles.add_argument('--profile',
                          help='elements separated by commas, semicolons '
                          'or spaces, or a json list')
    profiles.add_argument('--profile-file', help='json profile')

    parser = argparse.ArgumentParser(
        prog='medagg',
        description='Aggregation rules on median semilattices of relations.')
    sub = parser.add_subparsers(dest='command', required=True)

    space = sub.add_parser('space', parents=[common],
                           help='describe or list a relation space')
    space.add_argument('action', choices=('info', 'enumerate'))

    rule = sub.add_parser('rule', parents=[common, rules, profiles],
                          help='evaluate or tabulate a rule')
    rule.add_argument('action', choices=('eval', 'table'))

    checks = sub.add_parser('check', parents=[common, rules],
                            help='check axioms of a rule')
    checks.add_argument('--check', dest='checks', action='append',
                        choices=CHECKS, help='repeatable; default: ' +
                        ', '.join(DEFAULT_CHECKS))
    checks.add_argument('--full-pairs', action='store_true', default=None)

    verify = sub.add_parser('verify', parents=[common],
                            help='run a verification harness')
    verify.add_argument('action',
                        choices=VERIFY_TARGETS + tuple(VERIFY_ALIASES))
    verify.add_argument('--n', type=int, help='number of agents')
    verify.add_argument('--random', type=int,
                        help='number of random rules in the corpus')
    verify.add_argument('--samples', type=int,
                        help='profile sample size')

    kemeny = sub.add_parser('kemeny', parents=[common, profiles],
                            help='Condorcet-Kemeny outcome of a profile')
    kemeny.add_argument('--tiebreak', choices=('default', 'reverse',
                                               'shuffled'))
    kemeny.add_argument('--strict', action='store_true', default=None,
                        help='restrict to linear orders')
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    config = RunConfig()
    if args.config:
        config.update(filemanager.read_yaml(args.config))
    values = {
        key: value
        for key, value in vars(args).items() if key != 'config'
    }
    config.update(values)
    return config


# Building inputs
# -----------------------


def _ground(text: str) -> GroundSet:
    if ',' in text:
        return GroundSet.from_names(text)
    return GroundSet.from_names(list(text.strip()))


def load_space(config: RunConfig,
               default_flavor: str = 'total-preorder') -> RelationSpace:
    if config.space_file:
        data = filemanager.read_json(config.space_file)
        return filemanager.space_from_dict(data, config.allow_large)
    flavor = Flavor.parse(config.flavor or default_flavor)
    ground = _ground(config.ground) if config.ground else 3
    return enumerate_space(flavor, ground, allow_large=config.allow_large,
                           verbose=config.verbose)


def _split_profile(text: str) -> list:
    text = text.strip()
    if text.startswith('['):
        return json.loads(text)
    if '(' in text:
        return [t for t in re.split(r'[;\s]+', text) if t]
    return [t for t in re.split(r'[,;\s]+', text) if t]


def load_profile(config: RunConfig, space: RelationSpace) -> List[int]:
    if config.profile_file:
        return filemanager.load_profile(config.profile_file, space)
    if config.profile is None:
        raise ValueError('a profile is required (--profile or '
                         '--profile-file)')
    return filemanager.profile_from_dict(space,
                                         _split_profile(config.profile))


def load_tiebreak(config: RunConfig, k: int) -> TieBreak:
    if config.tiebreak == 'reverse':
        return TieBreak.reverse(k)
    if config.tiebreak == 'shuffled':
        return TieBreak.shuffled(k, np.random.default_rng(config.seed))
    return TieBreak.default(k)


def parse_rule(space: RelationSpace, text: str, n: Optional[int],
               tiebreak: TieBreak) -> RuleSpec:
    '''
    RuleSpec from a short descriptor such as quota:2 or retract:ck.
    '''
    name, _, arg = text.strip().partition(':')
    name = name.lower()
    if name in ('co-majority', 'comajority'):
        return co_majority_rule()
    if name == 'dictator':
        return dictator(int(arg or 0))
    if name == 'constant':
        return constant(parse(space, arg) if arg else space.ctx.top)
    if name == 'quota':
        return quota_rule(int(arg))
    if name in ('ck', 'generalized-ck'):
        return generalized_ck_rule(tiebreak)
    if name == 'strict-ck':
        return strict_ck_rule(tiebreak)
    if name == 'majority-lattice':
        return majority_lattice_rule()
    if name == 'lattice-filter':
        if n is None:
            raise ValueError('lattice-filter needs the number of agents')
        return lattice_filter(OrderFilterN(n, tuple(majority_coalitions(n))))
    if name == 'retract':
        return retract(parse_rule(space, arg or 'majority-lattice', n,
                                  tiebreak))
    raise ValueError('unknown rule: {0}'.format(text))


def load_rule(config: RunConfig, space: RelationSpace,
              n: Optional[int]) -> RuleSpec:
    if config.table_file:
        return tabulated(filemanager.load_table(config.table_file),
                         name=config.table_file)
    if config.rule_file:
        return filemanager.load_rule(config.rule_file)
    return parse_rule(space, config.rule, n,
                      load_tiebreak(config, space.n))


# Text output
# -----------------------


def _cell(value) -> str:
    if isinstance(value, (str, int, float)) or value is None:
        return str(value)
    if isinstance(value, list) and all(
            isinstance(v, (str, int, float)) for v in value):
        return ', '.join(str(v) for v in value)
    return json.dumps(value, sort_keys=True, separators=(',', ':'),
                      ensure_ascii=False)


def _align(rows: List[List[str]],
           header: Optional[List[str]] = None) -> List[str]:
    table = ([header] if header else []) + rows
    if not table:
        return []
    widths = [max(len(row[c]) for row in table) for c in range(len(table[0]))]
    lines = [
        '  '.join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in table
    ]
    if header:
        lines.insert(1, '  '.join('-' * w for w in widths))
    return lines


def _is_records(value) -> bool:
    return isinstance(value, list) and bool(value) and all(
        isinstance(v, dict) for v in value)


def _record_table(records: List[dict]) -> List[str]:
    keys = {key for record in records for key in record}
    columns = [c for c in LEAD_COLUMNS if c in keys] + sorted(
        keys.difference(LEAD_COLUMNS))
    rows = [[_cell(record.get(c)) for c in columns] for record in records]
    return _align(rows, columns)


def format_text(payload) -> str:
    '''
    Aligned tables holding the same content as the JSON payload: a list of
    records becomes one table with a column per key, a dict becomes key and
    value rows followed by a table for each list of records it holds.
    '''
    payload = json.loads(filemanager.dumps(payload))
    if isinstance(payload, list):
        return '\n'.join(_record_table(payload)) if payload else '(none)'

    lines = _align([[key, _cell(value)]
                    for key, value in sorted(payload.items())
                    if not _is_records(value)])
    for key, value in sorted(payload.items()):
        if _is_records(value):
            lines += ['', key, '-----------------------']
            lines += _record_table(value)
    return '\n'.join(lines)


# Commands
# -----------------------


def cmd_space(config: RunConfig):
    space = load_space(config)
    if config.action == 'enumerate':
        payload = {
            'space': filemanager.space_to_dict(space),
            'elements': [
                filemanager.relation_to_dict(space, e)
                for e in range(space.n)
            ],
        }
    else:
        payload = space_summary(space)
        payload['meet_irreducible_count'] = len(space.ctx.meet_irr)
        # structure flags from sampled triples rather than a full check
        payload['sampled'] = bool(space.ctx.report.sampled)
    return payload, True


def cmd_rule(config: RunConfig):
    space = load_space(config)
    if config.action == 'eval':
        profile = load_profile(config, space)
        rule = load_rule(config, space, len(profile))
        outcome = evaluate(space, rule, profile)
        payload = {
            'rule': rule.describe(),
            'profile': [render(space, x) for x in profile],
            'outcome': filemanager.relation_to_dict(space, outcome),
        }
        return payload, True

    n = config.n or 3
    rule = load_rule(config, space, n)
    table = tabulate(space, rule, n, allow_large=config.allow_large,
                     verbose=config.verbose)
    payload = {
        'rule': rule.describe(),
        'space': filemanager.space_to_dict(space),
        'n': table.n,
        'profiles': int(table.flat.size),
    }
    if config.out:
        filemanager.save_table(config.out, table, verbose=config.verbose)
        payload['table'] = config.out
    else:
        payload['table'] = filemanager.table_to_dict(table)
    return payload, True


def cmd_check(config: RunConfig):
    space = load_space(config)
    n = config.n or 3
    rule = load_rule(config, space, n)
    names = config.checks or list(DEFAULT_CHECKS)
    table = tabulate(space, rule, n, allow_large=config.allow_large,
                     verbose=config.verbose)
    reports = []
    for which in names:
        if config.verbose:
            print('\tChecking', which)
        report = check(space, table, which, full_pairs=config.full_pairs)
        report.rule = rule.describe()
        reports.append(report)
    return reports, all(r.as_expected for r in reports)


def cmd_verify(config: RunConfig):
    target = config.action
    n = config.n or 3
    options = dict(seed=config.seed, verbose=config.verbose)
    if target == 'claims':
        reports = verify_structure_claims(n=n, **options)
    elif target == 'lattice-rules':
        space = load_space(config, default_flavor='reflexive')
        reports = [
            verify_lattice_rules(space, n, sample=config.samples, **options)
        ]
    else:
        space = load_space(config)
        if target == 'sp-equivalence':
            report = verify_sp_equivalence(space, n=n,
                                           random_count=config.random,
                                           **options)
        elif target == 'sponsorship-roundtrip':
            report = verify_sponsorship_roundtrip(space, n=n,
                                                  random_count=config.random,
                                                  **options)
        elif target == 'comajority':
            report = verify_comajority_characterization(
                space, n, random_count=config.random, **options)
        elif target == 'kemeny-agreement':
            report = verify_kemeny_agreement(space, n, sample=config.samples,
                                             **options)
        elif target == 'basic-pareto':
            report = verify_basic_pareto(space, n, random_count=config.random,
                                         **options)
        else:
            report = verify_weak_condorcet(space, n, verbose=config.verbose)
        reports = [report]
    return reports, all(r.as_expected for r in reports)


def cmd_kemeny(config: RunConfig):
    space = load_space(config)
    profile = load_profile(config, space)
    tiebreak = load_tiebreak(config, space.n)
    rule = strict_ck_rule(tiebreak) if config.strict else \
        generalized_ck_rule(tiebreak)
    outcome = evaluate(space, rule, profile)
    remote = remoteness(space.ctx, profile)
    payload = {
        'rule': rule.describe(),
        'profile': [render(space, x) for x in profile],
        'outcome': filemanager.relation_to_dict(space, outcome),
        'remoteness': int(remote[outcome]),
        'minimizers': [
            render(space, x) for x in metric_median_set(space.ctx, profile)
        ],
    }
    return payload, True


COMMANDS = {
    'space': cmd_space,
    'rule': cmd_rule,
    'check': cmd_check,
    'verify': cmd_verify,
    'kemeny': cmd_kemeny,
}


def run(config: RunConfig):
    '''
    Runs one command.  Returns the JSON payload and whether every verdict
    was as expected.
    '''
    result, ok = COMMANDS[config.command](config)
    if isinstance(result, list):
        result = [r.as_dict() if isinstance(r, CheckReport) else r
                  for r in result]
    return result, ok


def main(argv: Optional[Sequence[str]] = None) -> int:
    stdout = sys.stdout
    try:
        config = parse_args(argv)
        progress = contextlib.redirect_stdout(sys.stderr) if config.verbose \
            else contextlib.nullcontext()
        with progress:
            payload, ok = run(config)
        table_written = config.command == 'rule' and config.action == 'table'
        if config.out and not table_written:
            filemanager.write_json(config.out, payload)
        elif config.format == 'json':
            print(filemanager.dumps(payload), file=stdout)
        else:
            print(format_text(payload), file=stdout)
    except InternalInvariantViolation as exc:
        print('medagg: internal error: {0}'.format(exc), file=sys.stderr)
        return EXIT_UNEXPECTED
    except (MedAggError, ValueError, OSError, KeyError, AssertionError,
            json.JSONDecodeError, yaml.YAMLError) as exc:
        print('medagg: error: {0}'.format(exc), file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK if ok else EXIT_UNEXPECTED


if __name__ == '__main__':
    sys.exit(main())
