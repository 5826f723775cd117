#!/usr/bin/env python3
'''
Default limits and parameters used throughout the medagg module.  The file is saved to config.txt within the medagg library.  On first import, the config file is loaded and can be accessed through medagg.defaults.config.

Default parameters include the desk-scale size limits, the seed and sizes used for randomized verification, and output formatting.
'''

import configparser
import os

DEFAULT_CONFIG = {
    'limits': {
        'max_elements': '2048',
        'max_ground_preorder': '4',
        'max_ground_tournament': '4',
        'max_ground_relation': '3',
        'max_ground_retract': '3',
        'full_pair_max_elements': '13',
        'full_pair_max_agents': '2',
        'exhaustive_max_profiles': '250000',
    },
    'random': {
        'seed': '0xC0FFEE',
        'corpus_size': '200',
        'sample_size': '10000',
        'family_attempts': '2000',
    },
    'output': {
        'indent': '2',
        'bracket_notation': 'yes',
    },
}


def write_config(path: str, parameters: dict = None):
    '''
    Writes a config file to path.  The default location is the medagg module directory.

    Arguments:
        path: Where to save the config file.
        parameters: The sections to write.  Defaults to DEFAULT_CONFIG.

    Returns:
        config: the config file just saved

    Defaults values are as follows:
        'limits':
            'max_elements': '2048',
            'max_ground_preorder': '4',
            'max_ground_tournament': '4',
            'max_ground_relation': '3',
            'max_ground_retract': '3',
            'full_pair_max_elements': '13',
            'full_pair_max_agents': '2',
            'exhaustive_max_profiles': '250000',
        'random':
            'seed': '0xC0FFEE',
            'corpus_size': '200',
            'sample_size': '10000',
            'family_attempts': '2000',
        'output':
            'indent': '2',
            'bracket_notation': 'yes',
    '''
    config = configparser.ConfigParser()

    if parameters is None:
        parameters = DEFAULT_CONFIG

    for key in parameters:
        config[key] = parameters[key]

    with open(path, 'w') as configfile:
        config.write(configfile)

    return config


def load_config(path: str = None):
    '''
    Load the configuration file.  The default location is the medagg module directory.
    Missing sections or keys fall back to DEFAULT_CONFIG.

    Arguments:
        path: Where to load the config file from.

    Returns:
        config: the configuration parameters loaded from file.
    '''
    config = configparser.ConfigParser()
    config.read_dict(DEFAULT_CONFIG)

    if path is None:
        folder = os.path.dirname(__file__)
        path = os.path.join(folder, 'config.txt')

    if not os.path.isfile(path):
        print('No Config file found.. resetting defaults to', path)
        try:
            write_config(path)
        except OSError:
            # read-only installs keep the in-memory defaults
            return config

    config.read(path)

    return config


def get_limit(name: str) -> int:
    '''
    Integer value of a key in the [limits] section.
    '''
    return config.getint('limits', name)


def get_random(name: str) -> int:
    '''
    Integer value of a key in the [random] section.  Hex strings are accepted.
    '''
    return int(config.get('random', name), 0)


def get_seed() -> int:
    return get_random('seed')


def get_indent() -> int:
    return config.getint('output', 'indent')


def use_bracket_notation() -> bool:
    '''
    Whether total preorders and weak orders render as x[yz] rather than as
    pair lists.
    '''
    return config.getboolean('output', 'bracket_notation')


config = load_config()
