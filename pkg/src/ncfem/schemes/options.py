""" The four ways of solving the periodic Poisson problem with the nonconforming element.

1. GMRES on the E flat system whose last node row is replaced by the zero mean row.
2. CG on the E flat system, then a multiple of the unity representation w fixes the mean.
3. CG on the E system from a zero mean initial guess; CG keeps the mean at zero.
4. CG on the node system S^B alone. The solution lives in the span of B, which misses the
   alternating functions, but converges at the same rates. The only option in 3D.
"""
import numpy as np

from ncfem.error import ParityError, UnsupportedOptionError
from ncfem.linalg.krylov import SolverConfig, cg, gmres_restarted
from ncfem.schemes.assembly import assemble, with_zero_mean_row
from ncfem.schemes.solution import DiscreteSolution
from ncfem.space.catalog import build_catalog, unity_representation
from ncfem.space.kernel import kernel_vectors
from ncfem.space.operators import integral_vector, stiffness_matrix
from ncfem.utils.logger import logger

OPTIONS = (1, 2, 3, 4)


def _check_option(mesh, option):
    if option not in OPTIONS:
        raise UnsupportedOptionError(f'Unknown option {option!r}, expected one of {OPTIONS}')
    if option == 4:
        return
    if mesh.dim != 2:
        raise UnsupportedOptionError(f'Option {option} needs B flat, which exists only in 2D; '
                                     f'3D supports option 4 only')
    if any(n % 2 for n in mesh.counts):
        raise ParityError(f'Option {option} needs even N_x and N_y, got {mesh.counts}')


def _load_options(load_options):
    return {k: v for k, v in (load_options or dict()).items()
            if k in ('rule', 'mean_tolerance', 'compatibility_tolerance')}


def _padded_kernel(catalog, node_kernel):
    """ Node kernel vectors extended by zeros over the alternating part. """
    node_kernel = np.atleast_2d(np.asarray(node_kernel, dtype=float).T).T
    kernel = np.zeros((len(catalog), node_kernel.shape[1]))
    kernel[catalog.node_slice] = node_kernel
    return kernel


def solve_option1(mesh, f=None, config=None, **load_options):
    """ GMRES on the E flat system with the zero mean row.

    Args:
        mesh (PeriodicMesh): A 2D periodic mesh with even cell counts.
        f (callable, optional): The load, default zero.
        config (SolverConfig, optional): Stopping rule and restart length.
        **load_options: `rule`, `mean_tolerance` and `compatibility_tolerance` for the load.
    Returns:
        tuple: (DiscreteSolution, SolveReport).
    """
    _check_option(mesh, 1)
    catalog = build_catalog(mesh, 'Eflat')
    system = with_zero_mean_row(assemble(mesh, catalog, f, **_load_options(load_options)))
    coefficients, report = gmres_restarted(system.matrix, system.rhs, config=config)
    logger.info(f'Option 1 on {mesh}: {report}')
    return DiscreteSolution(coefficients, catalog), report


def solve_option2(mesh, f=None, config=None, **load_options):
    """ CG on the singular E flat system, then `u = u' - (u'|B . 1) / (w . 1) w`. """
    _check_option(mesh, 2)
    catalog = build_catalog(mesh, 'Eflat')
    system = assemble(mesh, catalog, f, **_load_options(load_options))
    w = unity_representation(catalog)
    coefficients, report = cg(system.matrix, system.rhs, config=config, kernel=w)

    nodes = catalog.node_slice
    coefficients = coefficients - coefficients[nodes].sum() / w[nodes].sum() * w
    logger.info(f'Option 2 on {mesh}: {report}')
    return DiscreteSolution(coefficients, catalog), report


def solve_option3(mesh, f=None, config=None, callback=None, **load_options):
    """ CG on the singular E system from the zero initial guess.

    The kernel of the node block contains the all ones vector, so every CG iterate keeps
    the zero sum of node coefficients of the initial guess.

    Args:
        callback (callable, optional): Called as `callback(iteration, x)` by CG.
    """
    _check_option(mesh, 3)
    catalog = build_catalog(mesh, 'E')
    system = assemble(mesh, catalog, f, **_load_options(load_options))
    kernel = _padded_kernel(catalog, kernel_vectors(mesh).stiffness)
    coefficients, report = cg(system.matrix, system.rhs, x0=np.zeros(system.size),
                              config=config, kernel=kernel, callback=callback)
    logger.info(f'Option 3 on {mesh}: {report}')
    return DiscreteSolution(coefficients, catalog), report


def solve_option4(mesh, f=None, config=None, callback=None, **load_options):
    """ CG on the node system `S^B u = int f B` from the zero initial guess.

    Works in 2D and 3D for any parity. The right hand side is checked against the kernel of
    S^B and an inconsistent load raises.
    """
    _check_option(mesh, 4)
    catalog = build_catalog(mesh, 'B')
    system = assemble(mesh, catalog, f, **_load_options(load_options))
    coefficients, report = cg(system.matrix, system.rhs, x0=np.zeros(system.size),
                              config=config, kernel=kernel_vectors(mesh).stiffness,
                              callback=callback)
    logger.info(f'Option 4 on {mesh}: {report}')
    return DiscreteSolution(coefficients, catalog), report


SOLVERS = {1: solve_option1, 2: solve_option2, 3: solve_option3, 4: solve_option4}


def solve(mesh, f=None, option=4, config=None, **kwargs):
    """ Dispatch to one of the four options. """
    if option not in SOLVERS:
        raise UnsupportedOptionError(f'Unknown option {option!r}, expected one of {OPTIONS}')
    return SOLVERS[option](mesh, f, config=config or SolverConfig(), **kwargs)


def alternating_gap(mesh, f, **load_options):
    """ The alternating coefficients of the option 3 solution, predicted in closed form.

    In 2D `a_h` is diagonal on A, so `u|A = diag(a_h(psi, psi))^-1 int f A`. The difference
    between the option 3 and option 4 solutions is exactly `u|A . A`.

    Returns:
        numpy.ndarray: The coefficients of psi_x and psi_y.
    """
    _check_option(mesh, 3)
    catalog = build_catalog(mesh, 'A')
    system = assemble(mesh, catalog, f, **_load_options(load_options))
    return system.rhs / system.matrix.diagonal()


def alternating_integrals(mesh, kind='A'):
    """ `int psi` over the domain for each alternating function. """
    catalog = build_catalog(mesh, kind)
    return integral_vector(mesh, catalog.values)


def coupling_block(mesh, kind='E'):
    """ The node by alternating block of the full stiffness matrix, as a dense array. """
    catalog = build_catalog(mesh, kind)
    full = stiffness_matrix(mesh, catalog.values).to_dense()
    return full[catalog.node_slice, catalog.alternating_slice]


__all__ = ('OPTIONS', 'SOLVERS', 'solve', 'solve_option1', 'solve_option2', 'solve_option3',
           'solve_option4', 'alternating_gap', 'alternating_integrals', 'coupling_block')
