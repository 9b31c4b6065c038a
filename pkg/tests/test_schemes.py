import os

import numpy as np
import pytest

from ncfem.analysis.problems import SineProblem
from ncfem.error import (IncompatibleLoadError, MeshMismatchError, ParityError,
                         UnsupportedOptionError)
from ncfem.linalg import SolverConfig
from ncfem.mesh import build_mesh
from ncfem.schemes import (DiscreteSolution, alternating_gap, assemble, assemble_mass,
                           compare_solutions, difference_norms, prepare_load, solve,
                           solve_option3, with_zero_mean_row, write_solution)
from ncfem.space import build_catalog

# Full GMRES, so option 1 does not depend on restarts.
CONFIG = SolverConfig(tolerance=1e-12, restart=100)


@pytest.fixture(scope='module')
def sine():
    return SineProblem(dim=2)


@pytest.fixture(scope='module')
def solutions(mesh_8x8, sine):
    return {option: solve(mesh_8x8, sine.f, option=option, config=CONFIG)
            for option in (1, 2, 3, 4)}


def test_zero_load(mesh_4x4):
    solution, report = solve(mesh_4x4, None, option=4)
    assert report.converged
    assert report.iterations == 0
    assert solution.coefficients == pytest.approx(np.zeros(16))


@pytest.mark.parametrize('option', [1, 2, 3, 4])
def test_options_converge(solutions, option):
    solution, report = solutions[option]
    assert report.converged
    assert solution.mean() == pytest.approx(0, abs=1e-10)
    assert report.method == ('GMRES(65)' if option == 1 else 'CG')


def test_options_one_to_three_agree(solutions):
    for a, b in ((1, 2), (1, 3), (2, 3)):
        l2, h1 = compare_solutions(solutions[a][0], solutions[b][0])
        assert l2 == pytest.approx(0, abs=1e-8)
        assert h1 == pytest.approx(0, abs=1e-7)


def checkered_load(x, y):
    """ Its cell moments alternate like the alternating functions, so the gap is not zero. """
    return np.cos(8 * np.pi * x) * np.sin(8 * np.pi * y)


def test_option4_is_option3_without_alternating_part(mesh_8x8):
    full, _ = solve(mesh_8x8, checkered_load, option=3, config=CONFIG)
    nodes_only, _ = solve(mesh_8x8, checkered_load, option=4, config=CONFIG)
    l2, _ = compare_solutions(full.restrict('B'), nodes_only)
    assert l2 == pytest.approx(0, abs=1e-8)

    predicted = alternating_gap(mesh_8x8, checkered_load)
    assert np.abs(predicted).max() > 1e-6
    assert full.alternating_coefficients == pytest.approx(predicted, rel=1e-6, abs=1e-12)

    gap_l2, _ = compare_solutions(full, nodes_only)
    gap = full.restrict('A')
    assert gap_l2 == pytest.approx(difference_norms(mesh_8x8, *gap.cell_linear())[0],
                                   abs=1e-8)


def test_option3_iterates_keep_zero_mean(mesh_8x8, sine):
    sums = []

    def callback(iteration, x):
        sums.append(x[:mesh_8x8.n_nodes].sum() / (1 + np.abs(x).sum()))

    _, report = solve_option3(mesh_8x8, sine.f, config=CONFIG, callback=callback)
    assert len(sums) == report.iterations > 0
    assert np.abs(sums).max() == pytest.approx(0, abs=1e-12)


def test_option4_in_3d():
    mesh = build_mesh((4, 4, 4))
    problem = SineProblem(dim=3)
    solution, report = solve(mesh, problem.f, option=4)
    assert report.converged
    assert solution.zero_mean_functional() == pytest.approx(0, abs=1e-9)


@pytest.mark.parametrize('option', [1, 2, 3])
def test_3d_supports_option4_only(mesh_2x2x2, option):
    with pytest.raises(UnsupportedOptionError):
        solve(mesh_2x2x2, None, option=option)


@pytest.mark.parametrize('option', [1, 2, 3])
def test_odd_counts(mesh_odd, option):
    with pytest.raises(ParityError):
        solve(mesh_odd, None, option=option)


def test_unknown_option(mesh_4x4):
    with pytest.raises(UnsupportedOptionError):
        solve(mesh_4x4, None, option=5)


def test_incompatible_load(mesh_4x4):
    with pytest.raises(IncompatibleLoadError):
        solve(mesh_4x4, lambda x, y: np.ones_like(x), option=4)


def test_small_load_mean_is_removed(mesh_8x8, sine):
    load = prepare_load(lambda x, y: sine.f(x, y) + 1e-9, mesh_8x8)
    assert load.mean_removed == pytest.approx(1e-9, rel=1e-3)
    assert load.f0.sum() == pytest.approx(0, abs=1e-12)

    load = prepare_load(sine.f, mesh_8x8)
    assert load.integral == pytest.approx(0, abs=1e-12)


def test_assemble_node_system(mesh_4x4, sine):
    system = assemble(mesh_4x4, build_catalog(mesh_4x4, 'B'), sine.f)
    assert system.size == 16
    assert system.matrix.symmetric
    assert system.matrix.diagonal() == pytest.approx(np.full(16, 2.))
    assert system.matrix.row_sums() == pytest.approx(np.zeros(16))
    assert system.rhs.sum() == pytest.approx(0, abs=1e-10)


def test_assemble_errors(mesh_4x4, mesh_8x8, mesh_odd):
    with pytest.raises(MeshMismatchError):
        assemble(mesh_4x4, build_catalog(mesh_8x8, 'B'))
    with pytest.raises(ValueError):
        assemble(mesh_odd, build_catalog(mesh_odd, 'A'))


def test_with_zero_mean_row(mesh_4x4, sine):
    system = with_zero_mean_row(assemble(mesh_4x4, build_catalog(mesh_4x4, 'Eflat'), sine.f))
    assert system.modified_row == 14
    row = system.matrix.to_dense()[14]
    assert row[:15] == pytest.approx(np.ones(15))
    assert row[15:] == pytest.approx(np.zeros(2))
    assert system.rhs[14] == 0
    assert not system.matrix.symmetric


def test_assemble_mass(mesh_4x4):
    mass = assemble_mass(mesh_4x4, build_catalog(mesh_4x4, 'E'))
    assert mass.symmetric
    # The node functions sum to one in 2D.
    ones = np.zeros(18)
    ones[:16] = 1
    assert ones @ mass.matvec(ones) == pytest.approx(1.)


def test_discrete_solution(solutions, mesh_8x8):
    solution, _ = solutions[3]
    values = solution.face_values()
    assert solution.evaluate(mesh_8x8.face_midpoints) == pytest.approx(values)
    assert solution.local_linear(3).satisfies_dice_rule(rtol=1e-10)

    with pytest.raises(ValueError):
        solution.restrict('C')
    with pytest.raises(ValueError):
        DiscreteSolution(np.zeros(3), solution.catalog)


def test_compare_solutions_needs_same_mesh(solutions, mesh_4x4):
    other, _ = solve(mesh_4x4, None)
    with pytest.raises(MeshMismatchError):
        compare_solutions(solutions[4][0], other)


def test_difference_norms(mesh_4x4):
    l2, h1 = difference_norms(mesh_4x4, np.ones(16), np.zeros((16, 2)))
    assert l2 == pytest.approx(1.)
    assert h1 == 0


def test_write_solution(solutions, output_dir, mesh_8x8):
    paths = write_solution(solutions[4][0], output_dir, 'sine2d-opt4')
    assert set(paths) == {'vtk', 'csv'}
    assert all(os.path.exists(path) for path in paths.values())

    with open(paths['csv']) as f:
        lines = f.read().splitlines()
    assert lines[0] == 'face,x,y,value'
    assert len(lines) == mesh_8x8.n_faces + 1

    with open(paths['vtk']) as f:
        vtk = f.read().splitlines()
    assert 'FIELD FieldData 1' in vtk
    assert 'face_values 4 64 double' in vtk
