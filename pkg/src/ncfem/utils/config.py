import copy
import os
from collections.abc import Mapping

from panoptes.utils.config.helpers import load_config as load_config_files

from ncfem.utils.logger import logger

DEFAULT_CONFIG_FILE = os.path.join(os.path.dirname(os.path.dirname(__file__)),
                                   'conf_files', 'ncfem.yaml')


def _plain(value):
    """ Builtin containers and scalars, so the config dumps with `yaml.safe_dump`. """
    if isinstance(value, Mapping):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    for kind in (bool, int, float, str):
        if isinstance(value, kind):
            return kind(value)
    return value


def _merge(base, update):
    """ Recursively merge the mapping `update` into a copy of `base`. """
    merged = copy.deepcopy(dict(base))
    for key, value in update.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _load_file(path):
    """ One YAML file, with its `<name>_local.yaml` sibling applied if present. """
    path = str(path)
    if not os.path.isfile(path):
        raise FileNotFoundError(f'Config file {path} does not exist')
    return _plain(load_config_files(config_files=path, parse=False))


def load_config(config_file=None, overrides=None):
    """ Load the default config, merge a user file and then explicit overrides on top.

    Files are read with `panoptes.utils.config.helpers.load_config`, so a `ncfem_local.yaml`
    next to the defaults (or `<name>_local.yaml` next to the user file) is applied as well.

    Args:
        config_file (str, optional): A YAML file whose keys override the defaults.
        overrides (dict, optional): Nested dict of values that win over both files. Values
            of None are ignored so unset command line flags do not clobber file values.
    Returns:
        dict: The merged config.
    """
    default_file = os.getenv('NCFEM_CONFIG_FILE', DEFAULT_CONFIG_FILE)
    logger.debug(f'Loading default config from {default_file}')
    config = _load_file(default_file)

    if config_file is not None:
        logger.debug(f'Merging config file {config_file}')
        config = _merge(config, _load_file(config_file))

    output_dir = os.getenv('NCFEM_OUTPUT_DIR')
    if output_dir:
        config.setdefault('output', dict())['directory'] = output_dir

    if overrides:
        config = _merge(config, _drop_none(overrides))

    return config


def _drop_none(mapping):
    cleaned = dict()
    for key, value in mapping.items():
        if isinstance(value, Mapping):
            value = _drop_none(value)
            if value:
                cleaned[key] = value
        elif value is not None:
            cleaned[key] = value
    return cleaned


def get_config(key=None, default=None, config=None):
    """ Look up a dotted key, e.g. `solver.tolerance`.

    Args:
        key (str, optional): The dotted key. If None, the whole config is returned.
        default (optional): Returned if the key is not present.
        config (dict, optional): The config to search, default is the packaged default config.
    Returns:
        The config value or `default`.
    """
    if config is None:
        config = load_config()
    if key is None:
        return config

    value = config
    for part in key.split('.'):
        if not isinstance(value, Mapping) or part not in value:
            return default
        value = value[part]
    return value
