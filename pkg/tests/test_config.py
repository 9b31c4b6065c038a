import pytest
import yaml

from ncfem.analysis import artifact_stem
from ncfem.utils.config import get_config, load_config


@pytest.fixture
def user_file(tmp_path):
    path = tmp_path / 'user.yaml'
    path.write_text('solver:\n  restart: 5\noutput:\n  formats:\n    - csv\n')
    return str(path)


def test_defaults():
    config = load_config()
    assert get_config('solver.tolerance', config=config) == 1e-10
    assert get_config('quadrature.order', config=config) == 3
    assert get_config('solver.missing', default='x', config=config) == 'x'
    assert get_config('solver.tolerance.deeper', config=config) is None
    # Plain builtins all the way down.
    assert type(config['solver']) is dict
    assert type(config['solver']['tolerance']) is float
    assert type(config['output']['formats']) is list


def test_user_file_is_merged(user_file):
    config = load_config(config_file=user_file)
    assert get_config('solver.restart', config=config) == 5
    assert get_config('solver.tolerance', config=config) == 1e-10
    assert get_config('output.formats', config=config) == ['csv']


def test_local_file_overrides_user_file(tmp_path, user_file):
    (tmp_path / 'user_local.yaml').write_text('solver:\n  restart: 7\n')
    config = load_config(config_file=user_file)
    # The local file replaces the whole top level key of the file it sits next to.
    assert get_config('solver.restart', config=config) == 7
    assert get_config('solver.tolerance', config=config) == 1e-10


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(config_file=str(tmp_path / 'nope.yaml'))


def test_output_directory_precedence(monkeypatch, tmp_path):
    monkeypatch.setenv('NCFEM_OUTPUT_DIR', str(tmp_path / 'env'))
    assert get_config('output.directory', config=load_config()) == str(tmp_path / 'env')

    config = load_config(overrides=dict(output=dict(directory=str(tmp_path / 'flag'))))
    assert get_config('output.directory', config=config) == str(tmp_path / 'flag')

    config = load_config(overrides=dict(output=dict(directory=None)))
    assert get_config('output.directory', config=config) == str(tmp_path / 'env')


def test_loaded_config_dumps_safely(user_file):
    config = load_config(config_file=user_file)
    assert yaml.safe_load(yaml.safe_dump(config)) == config
    assert artifact_stem('rankdef', None, None, config).startswith('rankdef-')
