import os

import pytest
from click.testing import CliRunner

from ncfem.cli import H_LIST, entry_point


@pytest.fixture
def run(output_dir):
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(entry_point, ['--output-dir', output_dir, *args])

    return invoke


def test_dims(run, output_dir):
    result = run('dims', '--2d', '4', '4', '--verify')
    assert result.exit_code == 0, result.output
    assert '17' in result.output
    assert any(name.endswith('.csv') for name in os.listdir(output_dir))


def test_dims_3d_with_boundary_conditions(run):
    result = run('dims', '--3d', '2', '2', '2', '--bc', 'periodic', '--bc', 'dirichlet')
    assert result.exit_code == 0, result.output
    assert 'dirichlet' in result.output


@pytest.mark.parametrize('args', [
    ['dims', '--2d', '0', '4'],
    ['dims'],
    ['dims', '--2d', '4', '4', '--3d', '2', '2', '2'],
    ['solve', '--h', 'abc'],
    ['solve', '--h', '-1/8'],
    ['solve', '--h', '1/8', '--option', '5'],
])
def test_usage_errors(run, args):
    assert run(*args).exit_code == 2


def test_solve(run, output_dir):
    result = run('solve', '--example', 'sine2d', '--h', '1/8')
    assert result.exit_code == 0, result.output
    assert 'vtk:' in result.output
    assert 'csv:' in result.output


@pytest.mark.parametrize('args', [
    ['solve', '--example', 'ex3', '--h', '1/4', '--option', '1'],
    ['solve', '--h', '1/5', '--option', '2'],
])
def test_solve_failures(run, args):
    result = run(*args)
    assert result.exit_code == 1


def test_convergence(run):
    result = run('convergence', '--example', 'sine2d', '--h', '1/4:1/8')
    assert result.exit_code == 0, result.output
    assert 'L2 order' in result.output


@pytest.mark.parametrize('flag', ['--check-paper', '--check-published'])
def test_convergence_published_check_fails_without_reference(run, flag):
    result = run('convergence', '--example', 'zero2d', '--h', '1/4', flag)
    assert result.exit_code == 1


@pytest.mark.parametrize('flag', ['--check-paper', '--check-published'])
def test_rankdef(run, flag):
    result = run('rankdef', '--max', '3', flag)
    assert result.exit_code == 0, result.output
    assert 'predicted' in result.output


def test_iterations(run):
    result = run('iterations', '--example', 'ex2', '--h', '1/8', '--option', '3', '--option', '4')
    assert result.exit_code == 0, result.output
    assert 'CG' in result.output


def test_h_list():
    assert [str(h) for h in H_LIST.convert('1/8:1/32', None, None)] == ['1/8', '1/16', '1/32']
    assert [str(h) for h in H_LIST.convert('1/8, 1/16', None, None)] == ['1/8', '1/16']
