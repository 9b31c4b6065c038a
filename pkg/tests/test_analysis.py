import math
import os
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from ncfem.analysis import (BumpProblem, ConvergenceTable, EquivalenceReport, Runner,
                            SineProblem, SquareWaveProblem, artifact_stem, bump_constant,
                            check_against_published, convergence_study, error_norms, format_h,
                            get_problem, halving_sequence, iteration_study, observed_order,
                            published_triples, rank_deficiency_study, scheme_equivalence_study)
from ncfem.analysis.golden import ITERATIONS, RANK_DEFICIENCY, reference_errors
from ncfem.analysis.tables import EquivalenceRow
from ncfem.linalg import SolverConfig
from ncfem.mesh import build_mesh
from ncfem.schemes import DiscreteSolution, solve
from ncfem.space import build_catalog

H = [Fraction(1, 8), Fraction(1, 16), Fraction(1, 32)]


def test_get_problem():
    assert isinstance(get_problem('ex1'), SquareWaveProblem)
    assert get_problem('ex3').dim == 3
    assert get_problem('sine2d').dim == 2
    problem = get_problem('ncfem.analysis.problems.BumpProblem')
    assert isinstance(problem, BumpProblem)
    assert get_problem(problem) is problem
    with pytest.raises(TypeError):
        get_problem('ncfem.analysis.tables.RankDeficiencyTable')


@pytest.mark.parametrize('name', ['ex1', 'ex2', 'sine2d'])
def test_profiles_have_zero_mean(name):
    problem = get_problem(name)
    value, _ = integrate.quad(problem.s, 0, 1, limit=200)
    assert value == pytest.approx(0, abs=1e-10)


@pytest.mark.parametrize('name', ['ex1', 'ex2', 'sine2d'])
def test_profile_derivatives(name):
    problem = get_problem(name)
    t = np.array([0.13, 0.3, 0.5, 0.77])
    eps = 1e-6
    ds = (problem.s(t + eps) - problem.s(t - eps)) / (2 * eps)
    d2s = (problem.ds(t + eps) - problem.ds(t - eps)) / (2 * eps)
    assert problem.ds(t) == pytest.approx(ds, rel=1e-6, abs=1e-6)
    assert problem.d2s(t) == pytest.approx(d2s, rel=1e-6, abs=1e-6)


def test_bump_constant():
    assert bump_constant() < 0
    # The bump vanishes at the seam, so only the constant is left there.
    assert BumpProblem().s(np.array([0., 1.])) == pytest.approx([bump_constant()] * 2)


def test_load_is_minus_laplacian():
    problem = SineProblem(dim=3)
    x, y, z = 0.1, 0.35, 0.8
    assert problem.f(x, y, z) == pytest.approx(12 * np.pi ** 2 * problem.u(x, y, z))
    assert problem.grad(x, y, z).shape == (3, )


def test_error_norms_of_zero_solution(mesh_8x8):
    problem = SineProblem(dim=2)
    zero = DiscreteSolution(np.zeros(mesh_8x8.n_nodes), build_catalog(mesh_8x8, 'B'))
    l2, h1 = error_norms(problem, zero)
    assert l2 == pytest.approx(0.5, rel=1e-10)
    assert h1 == pytest.approx(math.sqrt(2) * math.pi, rel=1e-10)


def test_error_norms_of_zero_problem():
    problem = get_problem('zero3d')
    mesh = build_mesh((2, 2, 2))
    solution, _ = solve(mesh, problem.f)
    assert error_norms(problem, solution) == (0., 0.)
    with pytest.raises(ValueError):
        error_norms(SineProblem(dim=2), solution)


def test_halving_sequence():
    assert halving_sequence(Fraction(1, 8), Fraction(1, 64)) == \
        [Fraction(1, 8), Fraction(1, 16), Fraction(1, 32), Fraction(1, 64)]
    with pytest.raises(ValueError):
        halving_sequence(Fraction(1, 8), Fraction(1, 24))
    with pytest.raises(ValueError):
        halving_sequence(Fraction(1, 16), Fraction(1, 8))


def test_format_h_and_order():
    assert format_h(Fraction(1, 64)) == '1/64'
    assert format_h(0.015625) == '1/64'
    assert format_h(0.3) == '0.3'
    assert observed_order(4., 1., Fraction(1, 8), Fraction(1, 16)) == pytest.approx(2.)
    assert math.isnan(observed_order(0., 1., 0.5, 0.25))


def test_convergence_table(output_dir):
    table = ConvergenceTable(problem='sine2d', option=4)
    for n, h1, l2 in [(8, 1.410, 3.037e-2), (16, 0.7104, 7.601e-3)]:
        table.add(Fraction(1, n), h1, l2, iterations=10)
    assert len(table) == 2
    assert math.isnan(table.orders()[0])
    assert table.orders('l2')[1] == pytest.approx(2., abs=0.01)
    assert check_against_published(table) == []

    astropy_table = table.to_table()
    assert astropy_table.colnames == ['h', 'H1', 'H1 order', 'L2', 'L2 order', 'iterations',
                                      'converged']
    paths = table.write(output_dir, 'convergence-test')
    assert [os.path.basename(p) for p in paths] == ['convergence-test.csv',
                                                    'convergence-test.md']
    with open(paths[1]) as f:
        assert f.readline().startswith('|')


def test_check_against_published_flags_errors():
    table = ConvergenceTable(problem='ex1', option=2)
    table.add(Fraction(1, 8), 1.123e+01, 5e-1)
    violations = check_against_published(table)
    assert len(violations) == 1
    assert 'L2' in violations[0]

    assert check_against_published(ConvergenceTable(problem='ex3', option=1)) != []
    assert check_against_published(ConvergenceTable(problem='zero2d', option=4)) != []


def test_equivalence_slopes():
    report = EquivalenceReport(problem='ex1')
    for n in (8, 16, 32):
        h = Fraction(1, n)
        report.rows.append(EquivalenceRow(h, 1e-12, 3 * float(h) ** 2, 5 * float(h), 1e-9))
    slope_l2, slope_h1 = report.slopes()
    assert slope_l2 == pytest.approx(2.)
    assert slope_h1 == pytest.approx(1.)
    assert report.to_table().meta['slope_l2'] == pytest.approx(2.)


def test_convergence_orders_2d():
    table = convergence_study('sine2d', 4, H)
    assert all(row.converged for row in table.rows)
    assert table.orders('l2')[-1] == pytest.approx(2., abs=0.1)
    assert table.orders('h1')[-1] == pytest.approx(1., abs=0.1)


def test_convergence_3d_coarse():
    table = convergence_study('ex3', 4, [Fraction(1, 8)])
    h1, l2 = reference_errors('ex3', 8)
    assert table.rows[0].h1 == pytest.approx(h1, rel=0.1)
    assert table.rows[0].l2 == pytest.approx(l2, rel=0.1)


def test_rank_deficiency_study():
    triples = published_triples(4)
    assert (4, 4, 4) in triples
    assert all(max(t) <= 4 for t in triples)

    table = rank_deficiency_study(triples)
    assert len(table) == len(triples)
    assert table.mismatches() == []
    assert check_against_published(table) == []


def test_rank_deficiency_study_cap(tmp_path):
    table = rank_deficiency_study([(2, 2, 2), (8, 8, 5)], max_faces=500)
    assert table.entries[(8, 8, 5)] == (None, RANK_DEFICIENCY[(8, 8, 5)])
    assert table.mismatches() == []

    astropy_table = table.to_table()
    assert list(astropy_table['computed'].mask) == [False, True]
    assert list(astropy_table['match'].mask) == [False, True]
    assert astropy_table['match'][0]
    assert astropy_table['predicted'][-1] == RANK_DEFICIENCY[(8, 8, 5)]

    csv_path, = table.write(str(tmp_path), 'rankdef', formats=('csv', ))
    with open(csv_path) as f:
        last = f.read().splitlines()[-1]
    assert last == f'8,8,5,,{RANK_DEFICIENCY[(8, 8, 5)]},'


def test_scheme_equivalence_study():
    config = SolverConfig(tolerance=1e-12, restart=300)
    report = scheme_equivalence_study('ex2', H[:2], config=config)
    assert len(report.rows) == 2
    for row in report.rows:
        assert row.options_difference == pytest.approx(0, abs=1e-7)
        assert row.gap_prediction_error == pytest.approx(0, abs=1e-4)


def test_iteration_study():
    table = iteration_study('ex2', Fraction(1, 8), options=(3, 4))
    assert list(table['option']) == [3, 4]
    assert all(table['converged'])
    assert 'wall_time' in table.colnames


def test_published_iteration_ordering():
    assert sorted(ITERATIONS, key=ITERATIONS.get, reverse=True) == [1, 2, 3, 4]


def test_artifact_stem():
    assert artifact_stem('rankdef', None, None, {'a': 1}) == 'rankdef-08831397'
    assert artifact_stem('convergence', 'ex1', 4, {'a': 1}) != \
        artifact_stem('convergence', 'ex1', 4, {'a': 2})


def test_runner(config, output_dir):
    runner = Runner(config=config)
    assert runner.output_directory == output_dir
    assert runner.published_tolerance == 0.02

    table, paths = runner.dims([(4, 4)], ['periodic'], verify=True)
    assert all(table['match'])
    assert all(os.path.exists(p) for p in paths)

    solution, report, paths = runner.solve('sine2d', Fraction(1, 8), 4)
    assert report.converged
    assert set(paths) == {'vtk', 'csv'}

    # The same settings give the same file names.
    assert runner.stem('convergence', 'ex1', 4, hs=['1/8']) == \
        Runner(config=config).stem('convergence', 'ex1', 4, hs=['1/8'])

    _, paths = runner.iterations('ex2', Fraction(1, 8), (4, ))
    with open(paths[0]) as f:
        assert 'wall_time' not in f.readline()


@pytest.mark.slow
@pytest.mark.parametrize('name', ['ex1', 'ex2', 'sine2d'])
def test_published_errors_2d(name):
    table = convergence_study(name, 4, [Fraction(1, 32), Fraction(1, 64)])
    assert check_against_published(table) == []


@pytest.mark.slow
def test_published_errors_3d():
    table = convergence_study('ex3', 4, [Fraction(1, 8), Fraction(1, 16)])
    assert check_against_published(table) == []


@pytest.mark.slow
def test_published_rank_table(config):
    runner = Runner(config=config)
    table, violations, _ = runner.rankdef(max_count=8, check_published=True)
    assert violations == []
