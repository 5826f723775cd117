import pytest
from unittest.mock import patch

import json
import tempfile
import os

import medagg.cli as cli
from medagg.agg_rules import TieBreak
from medagg.errors import InternalInvariantViolation
from medagg.filemanager import load_table, read_json
from medagg.relation_spaces import Flavor, enumerate_space

# create a temporary folder for test files
TEMP_FOLDER_HANDLE = tempfile.TemporaryDirectory()
TEMP_FOLDER = TEMP_FOLDER_HANDLE.name


def run(capsys, *argv):
    code = cli.main(list(argv) + ['--format', 'json'])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_space_info(capsys):
    code, payload = run(capsys, 'space', 'info', '--ground', 'xyz')
    assert code == cli.EXIT_OK
    assert payload['elements'] == 13
    assert payload['top'] == '[xyz]'
    assert payload['meet_irreducible_count'] == 6
    assert payload['sampled'] is False


def test_space_enumerate(capsys):
    code, payload = run(capsys, 'space', 'enumerate', '--flavor',
                        'reflexive', '--ground', 'a,b')
    assert code == cli.EXIT_OK
    assert payload['space'] == {'flavor': 'reflexive', 'ground': ['a', 'b']}
    assert len(payload['elements']) == 4


def test_rule_eval_on_cyclic_profiles(capsys):
    code, payload = run(capsys, 'rule', 'eval', '--ground', 'xyz',
                        '--profile', 'xyz,yzx,zxy')
    assert code == cli.EXIT_OK
    assert payload['rule'] == 'co-majority'
    assert payload['outcome']['text'] == '[xyz]'

    code, payload = run(capsys, 'rule', 'eval', '--ground', 'xyz',
                        '--profile', 'xyz; yzx; xzy')
    assert payload['outcome']['text'] == 'x[yz]'


def test_rule_eval_from_yaml_config(capsys):
    path = os.path.join(TEMP_FOLDER, 'run.yaml')
    with open(path, 'w') as f:
        f.write('ground: xyz\nrule: dictator:1\n')

    code, payload = run(capsys, 'rule', 'eval', '--config', path,
                        '--profile', 'xyz,yzx,zxy')
    assert code == cli.EXIT_OK
    assert payload['outcome']['text'] == 'yzx'

    code, payload = run(capsys, 'rule', 'eval', '--config', path, '--rule',
                        'dictator:2', '--profile', 'xyz,yzx,zxy')
    assert payload['outcome']['text'] == 'zxy'


def test_rule_table_to_hdf5(capsys):
    path = os.path.join(TEMP_FOLDER, 'table.hdf5')
    code, payload = run(capsys, 'rule', 'table', '--ground', 'xyz', '--n',
                        '2', '--out', path)
    assert code == cli.EXIT_OK
    assert payload['profiles'] == 169
    assert payload['table'] == path

    table = load_table(path)
    assert (table.n, table.k) == (2, 13)

    code, payload = run(capsys, 'check', '--ground', 'xyz', '--table-file',
                        path, '--n', '2', '--check', 'anonymous')
    assert code == cli.EXIT_OK
    assert payload[0]['verdict']


def test_check_reports(capsys):
    code, payload = run(capsys, 'check', '--ground', 'xyz', '--n', '3')
    assert code == cli.EXIT_OK
    assert [r['name'] for r in payload] == list(cli.DEFAULT_CHECKS)
    assert all(r['verdict'] for r in payload)

    code, payload = run(capsys, 'check', '--ground', 'xyz', '--rule',
                        'dictator:0', '--n', '3', '--check', 'anonymous',
                        '--check', 'strategy_proof')
    assert code == cli.EXIT_UNEXPECTED
    assert [r['verdict'] for r in payload] == [False, True]
    assert payload[0]['witness']['profile']


def test_verify_targets(capsys):
    code, payload = run(capsys, 'verify', 'kemeny-agreement', '--ground',
                        'xyz', '--n', '2')
    assert code == cli.EXIT_OK
    assert payload[0]['verdict'] is False
    assert payload[0]['expected'] is False

    code, payload = run(capsys, 'verify', 'lattice-rules', '--ground', 'ab')
    assert code == cli.EXIT_OK
    assert payload[0]['verdict']

    code, payload = run(capsys, 'verify', 'weak-condorcet', '--ground', 'xyz')
    assert code == cli.EXIT_OK


def test_verify_writes_out_file(capsys):
    path = os.path.join(TEMP_FOLDER, 'reports.json')
    code, payload = run(capsys, 'verify', 'sp-equivalence', '--n', '2',
                        '--random', '5', '--seed', '0x2A', '--out', path)
    assert code == cli.EXIT_OK
    assert payload is None
    assert read_json(path)[0]['name'] == 'sp_equivalence'


def test_kemeny(capsys):
    code, payload = run(capsys, 'kemeny', '--ground', 'xyz', '--profile',
                        'xyz,xyz,yxz')
    assert code == cli.EXIT_OK
    assert payload['outcome']['text'] == 'xyz'
    assert payload['remoteness'] == 2
    assert payload['minimizers'] == ['xyz']

    code, payload = run(capsys, 'kemeny', '--ground', 'xyz', '--strict',
                        '--profile', 'x[yz],x[yz],x[yz]')
    assert payload['outcome']['text'] in ('xyz', 'xzy')
    assert payload['minimizers'] == ['x[yz]']


def test_verbose_progress_goes_to_stderr(capsys):
    code = cli.main(['space', 'info', '--ground', 'xyz', '--verbose',
                     '--format', 'json'])
    captured = capsys.readouterr()
    assert code == cli.EXIT_OK
    assert 'Enumerating Space' in captured.err
    assert json.loads(captured.out)['elements'] == 13


@patch('medagg.order_core.get_limit', return_value=3)
def test_space_info_shows_sampled_structure(mock_limit, capsys):
    code, payload = run(capsys, 'space', 'info', '--flavor', 'reflexive',
                        '--ground', 'ab', '--allow-large')
    assert code == cli.EXIT_OK
    assert payload['elements'] == 4
    assert payload['sampled'] is True
    assert payload['structure']['sampled'] is True


def test_text_output_is_the_default(capsys):
    code = cli.main(['space', 'info', '--ground', 'xyz'])
    text = capsys.readouterr().out
    assert code == cli.EXIT_OK
    rows = {line.split()[0]: line.split()[1:] for line in text.splitlines()
            if line.strip()}
    assert rows['elements'] == ['13']
    assert rows['top'] == ['[xyz]']
    assert rows['sampled'] == ['False']
    assert rows['meet_irreducible_count'] == ['6']


def test_text_and_json_reports_match(capsys):
    argv = ['check', '--ground', 'xyz', '--rule', 'dictator:0', '--n', '3',
            '--check', 'anonymous', '--check', 'strategy_proof']
    code, payload = run(capsys, *argv)
    assert code == cli.EXIT_UNEXPECTED

    assert cli.main(argv + ['--format', 'text']) == cli.EXIT_UNEXPECTED
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ['name', 'verdict', 'expected', 'rule',
                                'details', 'witness']
    assert set(lines[1]) == {'-', ' '}
    rows = [line.split()[:4] for line in lines[2:]]
    assert rows == [[r['name'], str(r['verdict']), str(r['expected']),
                     r['rule']] for r in payload]


def test_text_output_of_nested_records(capsys):
    code = cli.main(['space', 'enumerate', '--flavor', 'reflexive',
                     '--ground', 'a,b'])
    lines = capsys.readouterr().out.splitlines()
    assert code == cli.EXIT_OK
    start = lines.index('elements')
    assert lines[start + 2].split()[:2] == ['index', 'text']
    assert len(lines[start + 4:]) == 4


def test_format_text():
    assert cli.format_text([]) == '(none)'
    assert cli.format_text({'a': 1, 'bb': [1, 2]}) == 'a   1\nbb  1, 2'
    assert cli.format_text({'w': {'x': 1}}) == 'w  {"x":1}'


def test_verify_aliases(capsys):
    config = cli.parse_args(['verify', 'prop3', '--n', '3'])
    assert config.action == 'kemeny-agreement'
    assert cli.parse_args(['verify', 'theorem1']).action == 'sp-equivalence'
    assert cli.parse_args(['verify', 'corollary1']).action == \
        'sponsorship-roundtrip'
    assert cli.parse_args(['verify', 'prop1']).action == 'comajority'
    assert cli.parse_args(['verify', 'prop5']).action == 'lattice-rules'

    code, payload = run(capsys, 'verify', 'prop3', '--ground', 'xyz', '--n',
                        '3')
    assert code == cli.EXIT_OK
    assert payload[0]['name'] == 'kemeny_agreement'


def test_bad_input(capsys):
    assert cli.main(['space', 'info', '--flavor', 'bogus']) == cli.EXIT_INPUT
    assert cli.main(['rule', 'eval', '--profile', 'xyz,yzx']) == \
        cli.EXIT_INPUT
    assert cli.main(['rule', 'eval', '--ground', 'xyz']) == cli.EXIT_INPUT
    assert cli.main(['space', 'info', '--ground', 'abcde']) == cli.EXIT_INPUT

    path = os.path.join(TEMP_FOLDER, 'bad.yaml')
    with open(path, 'w') as f:
        f.write('colour: blue\n')
    assert cli.main(['space', 'info', '--config', path]) == cli.EXIT_INPUT
    assert 'unknown config key' in capsys.readouterr().err

    with open(path, 'w') as f:
        f.write('format: xml\n')
    assert cli.main(['space', 'info', '--config', path]) == cli.EXIT_INPUT
    assert 'unknown output format' in capsys.readouterr().err

    with pytest.raises(SystemExit):
        cli.main(['verify', 'everything'])


@patch('medagg.cli.run', side_effect=InternalInvariantViolation('broken'))
def test_internal_errors_exit_unexpected(mock_run, capsys):
    assert cli.main(['space', 'info']) == cli.EXIT_UNEXPECTED
    assert 'internal error' in capsys.readouterr().err


def test_parse_args():
    config = cli.parse_args(['verify', 'claims', '--seed', '0x10', '--n',
                             '5'])
    assert config.command == 'verify'
    assert config.action == 'claims'
    assert config.seed == 16
    assert config.n == 5
    assert config.rule == 'co-majority'


def test_parse_rule():
    space = enumerate_space(Flavor.REFLEXIVE, 2)
    tiebreak = TieBreak.default(space.n)
    assert cli.parse_rule(space, 'quota:2', 3, tiebreak).quotas == 2
    assert cli.parse_rule(space, 'constant', 3, tiebreak).element == \
        space.ctx.top
    assert cli.parse_rule(space, 'retract:ck', 3,
                          tiebreak).inner.variant == 'generalized-ck'
    assert cli.parse_rule(space, 'retract', 3,
                          tiebreak).inner.variant == 'majority-lattice'
    assert cli.parse_rule(space, 'lattice-filter', 3,
                          tiebreak).coalitions.basis == (3, 5, 6)

    with pytest.raises(ValueError):
        cli.parse_rule(space, 'lattice-filter', None, tiebreak)
    with pytest.raises(ValueError):
        cli.parse_rule(space, 'borda', 3, tiebreak)
