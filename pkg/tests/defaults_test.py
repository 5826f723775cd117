import pytest
from unittest.mock import patch

import configparser
import tempfile
import os

import medagg.defaults as defaults

# create a temporary folder for test files
TEMP_FOLDER_HANDLE = tempfile.TemporaryDirectory()
TEMP_FOLDER = TEMP_FOLDER_HANDLE.name


@pytest.fixture(autouse=True)
def clear_output_files():
    yield

    for file in os.listdir(TEMP_FOLDER):
        os.remove(os.path.join(TEMP_FOLDER, file))


def test_write_and_load_config():
    path = os.path.join(TEMP_FOLDER, 'config.txt')
    parameters = {'limits': {'max_elements': '64'}}
    defaults.write_config(path, parameters)

    config = defaults.load_config(path)
    assert config.getint('limits', 'max_elements') == 64

    # keys missing from the file fall back to the defaults
    assert config.getint('limits', 'max_ground_preorder') == 4
    assert config.get('random', 'seed') == '0xC0FFEE'


def test_missing_config_is_written(capsys):
    path = os.path.join(TEMP_FOLDER, 'fresh.txt')
    config = defaults.load_config(path)

    assert os.path.isfile(path)
    assert 'No Config file found' in capsys.readouterr().out
    assert config.getint('limits', 'exhaustive_max_profiles') == 250000


@patch('medagg.defaults.write_config', side_effect=OSError)
def test_unwritable_config_keeps_defaults(mock_write):
    config = defaults.load_config(os.path.join(TEMP_FOLDER, 'nowhere.txt'))
    assert mock_write.called
    assert config.getint('output', 'indent') == 2


def test_getters():
    assert defaults.get_seed() == 0xC0FFEE
    assert defaults.get_indent() == 2

    config = configparser.ConfigParser()
    config.read_dict(defaults.DEFAULT_CONFIG)
    config['limits']['max_elements'] = '12'
    config['random']['seed'] = '0x10'
    with patch.object(defaults, 'config', config):
        assert defaults.get_limit('max_elements') == 12
        assert defaults.get_seed() == 16
