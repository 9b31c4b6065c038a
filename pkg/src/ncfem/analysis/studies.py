import hashlib
import itertools
import math
from fractions import Fraction

import numpy as np
import yaml
from astropy.table import Table

from ncfem.analysis import golden
from ncfem.analysis.norms import error_norms
from ncfem.analysis.problems import get_problem
from ncfem.analysis.tables import (ConvergenceTable, EquivalenceReport, EquivalenceRow,
                                   RankDeficiencyTable, format_h)
from ncfem.element.quadrature import QuadratureRule
from ncfem.error import TooLargeError
from ncfem.mesh.grid import GridSpec, build_mesh
from ncfem.schemes.options import OPTIONS, alternating_gap, solve
from ncfem.schemes.solution import compare_solutions
from ncfem.space.dimensions import dim_formulas, stiffness_rank_deficiency
from ncfem.utils.logger import logger


def halving_sequence(coarse, fine):
    """ h = coarse, coarse / 2, ... down to fine, as fractions.

    >>> [str(h) for h in halving_sequence(Fraction(1, 8), Fraction(1, 32))]
    ['1/8', '1/16', '1/32']
    """
    coarse, fine = Fraction(coarse), Fraction(fine)
    if fine <= 0 or coarse < fine:
        raise ValueError(f'Need 0 < fine <= coarse, got {coarse} and {fine}')
    hs = [coarse]
    while hs[-1] > fine:
        hs.append(hs[-1] / 2)
    if hs[-1] != fine:
        raise ValueError(f'{fine} is not {coarse} halved a whole number of times')
    return hs


def mesh_for(problem, h):
    """ The periodic mesh of size h on the problem's box. """
    return build_mesh(GridSpec.from_h(h, dim=problem.dim))


def convergence_study(problem, option, hs, config=None, quadrature_order=3, **load_options):
    """ Solve on each mesh size and tabulate the errors and observed orders.

    A solve that does not converge is kept in the table with `converged=False`.

    Args:
        problem (str or ManufacturedProblem): The problem.
        option (int): The scheme option, 1 to 4.
        hs (sequence): Mesh sizes, coarse to fine.
        config (SolverConfig, optional): Stopping rule.
        quadrature_order (int, optional): Gauss points per axis for loads and errors.
    Returns:
        ConvergenceTable: The table.
    """
    problem = get_problem(problem)
    rule = QuadratureRule.gauss(quadrature_order, problem.dim)
    table = ConvergenceTable(problem=problem.name, option=option)
    for h in hs:
        mesh = mesh_for(problem, h)
        solution, report = solve(mesh, problem.f, option=option, config=config, rule=rule,
                                 **load_options)
        l2, h1 = error_norms(problem, solution, rule=rule)
        table.add(h, h1, l2, iterations=report.iterations, converged=report.converged)
        logger.info(f'{problem.name} option {option} h={format_h(h)}: '
                    f'H1 {h1:.3e}, L2 {l2:.3e}, {report.iterations} iterations')
    return table


def rank_deficiency_study(triples, rtol=1e-9, max_faces=20000):
    """ Stiffness rank deficiency by dense rank and by formula for 3D grids.

    A grid above the size cap is kept with no computed value and a warning.
    """
    table = RankDeficiencyTable()
    for counts in triples:
        predicted = dim_formulas(counts).ker_stiffness
        try:
            computed = stiffness_rank_deficiency(counts, rtol=rtol, max_faces=max_faces)
        except TooLargeError as err:
            logger.warning(f'Skipping {counts}: {err!r}')
            computed = None
        table.add(counts, computed, predicted)
        logger.debug(f'Rank deficiency of {counts}: computed {computed}, predicted {predicted}')
    return table


def published_triples(max_count=8):
    """ The grids of the published rank table with all counts at most `max_count`. """
    return sorted(t for t in golden.RANK_DEFICIENCY if max(t) <= max_count)


def scheme_equivalence_study(problem, hs, config=None, quadrature_order=3, **load_options):
    """ Compare the four options on 2D even meshes.

    Options 1 to 3 give the same function up to solver tolerance. Option 4 misses the
    alternating part, and the option 3 / option 4 gap is compared with its closed form.
    """
    problem = get_problem(problem)
    rule = QuadratureRule.gauss(quadrature_order, problem.dim)
    report = EquivalenceReport(problem=problem.name)
    for h in hs:
        mesh = mesh_for(problem, h)
        solutions = {option: solve(mesh, problem.f, option=option, config=config, rule=rule,
                                   **load_options)[0]
                     for option in OPTIONS}

        options_difference = max(compare_solutions(solutions[a], solutions[b])[0]
                                 for a, b in itertools.combinations((1, 2, 3), 2))
        gap_l2, gap_h1 = compare_solutions(solutions[3], solutions[4])

        predicted = alternating_gap(mesh, problem.f, rule=rule, **load_options)
        actual = solutions[3].alternating_coefficients
        scale = max(float(np.abs(predicted).max()), np.finfo(float).tiny)
        prediction_error = float(np.abs(actual - predicted).max() / scale)

        report.rows.append(EquivalenceRow(Fraction(h), options_difference, gap_l2, gap_h1,
                                          prediction_error))
        logger.info(f'{problem.name} h={format_h(h)}: options differ by '
                    f'{options_difference:.3e}, gap L2 {gap_l2:.3e} H1 {gap_h1:.3e}')
    return report


def iteration_study(problem, h, options=OPTIONS, config=None, quadrature_order=3):
    """ Iterations and wall time of each option on one mesh.

    Returns:
        astropy.table.Table: Columns option, method, iterations, residual, converged and
            wall_time.
    """
    problem = get_problem(problem)
    rule = QuadratureRule.gauss(quadrature_order, problem.dim)
    mesh = mesh_for(problem, h)
    rows = []
    for option in options:
        _, report = solve(mesh, problem.f, option=option, config=config, rule=rule)
        rows.append((option, report.method, report.iterations, report.residual,
                     report.converged, report.wall_time))
    return Table(rows=rows,
                 names=('option', 'method', 'iterations', 'residual', 'converged', 'wall_time'))


def check_against_published(table, tolerance=0.02):
    """ Compare a study result with the published values.

    Convergence tables are compared row by row at a relative tolerance, for the mesh sizes
    that were published. Rank tables must match exactly.

    Args:
        table (ConvergenceTable or RankDeficiencyTable): The result.
        tolerance (float, optional): Relative tolerance for error values, default 0.02.
    Returns:
        list of str: One message per violation; empty if everything agrees.
    """
    violations = []
    if isinstance(table, RankDeficiencyTable):
        for counts, (computed, _) in sorted(table.entries.items()):
            reference = golden.reference_rank_deficiency(counts)
            if reference is not None and computed != reference:
                violations.append(f'{counts}: rank deficiency {computed}, published {reference}')
        return violations

    if table.problem not in golden.CONVERGENCE:
        return [f'No published values for {table.problem}']
    if table.option not in golden.CONVERGENCE_OPTIONS[table.problem]:
        return [f'No published values for {table.problem} with option {table.option}']

    for row in table.rows:
        if row.h.numerator != 1:
            continue
        reference = golden.reference_errors(table.problem, row.h.denominator)
        if reference is None:
            continue
        for name, value, published in (('H1', row.h1, reference[0]), ('L2', row.l2, reference[1])):
            if not math.isclose(value, published, rel_tol=tolerance):
                violations.append(f'{table.problem} option {table.option} h={format_h(row.h)} '
                                  f'{name}: {value:.4e}, published {published:.4e}')
    return violations


def artifact_stem(kind, problem, option, config):
    """ A file stem that encodes the run: kind, problem, option and a digest of the config.

    >>> artifact_stem('convergence', 'ex1', 4, {'a': 1})
    'convergence-ex1-opt4-08831397'
    """
    dump = yaml.safe_dump(config, sort_keys=True, default_flow_style=False)
    digest = hashlib.sha1(dump.encode('utf-8')).hexdigest()[:8]
    parts = [kind]
    if problem is not None:
        parts.append(str(problem))
    if option is not None:
        parts.append(f'opt{option}')
    parts.append(digest)
    return '-'.join(parts)
