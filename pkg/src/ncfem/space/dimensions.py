""" Closed form dimension counts and the brute force rank oracle that checks them. """
from dataclasses import asdict, dataclass

import numpy as np
from astropy.table import Table

from ncfem.error import TooLargeError
from ncfem.linalg.dense import numerical_rank
from ncfem.mesh.grid import BOUNDARY_CONDITIONS, GridSpec, PeriodicMesh
from ncfem.mesh.topology import dice_constraint_matrix
from ncfem.space.alternating import even
from ncfem.space.operators import node_representation, node_stiffness
from ncfem.utils.logger import logger

QUANTITIES = ('dim_space', 'ker_representation', 'ker_stiffness', 'node_span', 'n_essential')


@dataclass(frozen=True)
class DimensionRecord:
    """ Dimensions of the nonconforming space on one grid.

    `dim_space` is dim V^h for Neumann, dim V^h_0 for Dirichlet and dim V^h_# for periodic
    meshes. The kernel and span counts refer to the node basis and only exist on periodic
    meshes. `n_essential` is the number of independent discrete boundary conditions that cut
    the Neumann space down to this one.
    """
    counts: tuple
    bc: str
    dim_space: int
    ker_representation: int = None
    ker_stiffness: int = None
    node_span: int = None
    n_essential: int = None

    def as_dict(self):
        return asdict(self)

    def quantities(self):
        """ The (name, value) pairs that are defined for this boundary condition. """
        return [(name, getattr(self, name)) for name in QUANTITIES
                if getattr(self, name) is not None]


def _counts(spec):
    if isinstance(spec, PeriodicMesh):
        return spec.counts
    if isinstance(spec, GridSpec):
        return spec.counts
    return GridSpec(spec).counts


def _check_bc(bc):
    if bc not in BOUNDARY_CONDITIONS:
        raise ValueError(f'Unknown boundary condition {bc!r}, expected one of '
                         f'{BOUNDARY_CONDITIONS}')


def neumann_dimension(counts):
    """ Faces minus the independent dice relations: one per cell in 2D, two in 3D. """
    n = int(np.prod(counts))
    if len(counts) == 2:
        nx, ny = counts
        return n + nx + ny
    nx, ny, nz = counts
    return n + nx * ny + ny * nz + nz * nx


def dim_formulas(spec, bc='periodic'):
    """ The predicted dimensions of the space and of the node basis kernels.

    With e(n) = 1 for even n and 0 otherwise, on a periodic grid

    - 2D: dim V = NxNy + e(Nx)e(Ny), dim ker B = e(Nx)e(Ny).
    - 3D: dim V = NxNyNz + s - e(Nx)e(Ny)e(Nz) and dim ker B = s - 2 e(Nx)e(Ny)e(Nz), where
      s = Nx e(Ny)e(Nz) + Ny e(Nx)e(Nz) + Nz e(Nx)e(Ny).

    The stiffness kernel adds the constants. Dirichlet grids have one function per interior
    node.

    Args:
        spec (GridSpec, PeriodicMesh or sequence): The grid or its cell counts.
        bc (str, optional): Boundary condition, default 'periodic'.
    Returns:
        DimensionRecord: The predicted dimensions.

    >>> dim_formulas((4, 4)).dim_space
    17
    """
    _check_bc(bc)
    counts = tuple(int(n) for n in _counts(spec))
    n = int(np.prod(counts))
    neumann = neumann_dimension(counts)

    if bc == 'neumann':
        return DimensionRecord(counts, bc, dim_space=neumann, n_essential=0)

    if bc == 'dirichlet':
        interior = int(np.prod([c - 1 for c in counts]))
        return DimensionRecord(counts, bc, dim_space=interior, n_essential=neumann - interior)

    if len(counts) == 2:
        nx, ny = counts
        overlap = even(nx) * even(ny)
        ker_b = overlap
        dim_space = n + overlap
    else:
        nx, ny, nz = counts
        eee = even(nx) * even(ny) * even(nz)
        surfaces = (nx * even(ny) * even(nz) +
                    ny * even(nx) * even(nz) +
                    nz * even(nx) * even(ny))
        ker_b = surfaces - 2 * eee
        dim_space = n + surfaces - eee

    return DimensionRecord(counts, bc,
                           dim_space=dim_space,
                           ker_representation=ker_b,
                           ker_stiffness=ker_b + 1,
                           node_span=n - ker_b,
                           n_essential=neumann - dim_space)


def _space_dimension(mesh, rtol):
    constraints = dice_constraint_matrix(mesh)
    if mesh.bc == 'dirichlet':
        constraints = constraints[:, np.flatnonzero(~mesh.is_boundary_face)]
    return constraints.shape[1] - numerical_rank(constraints, rtol=rtol)


def constraint_rank_oracle(spec, bc='periodic', rtol=1e-9, max_faces=20000):
    """ The dimensions of `dim_formulas` computed by dense ranks.

    The space dimension is the number of free face values minus the rank of the dice
    constraints (boundary faces are fixed to zero for Dirichlet). The kernel counts come from
    the rank of the node representation and of the node stiffness matrix.

    Args:
        spec (GridSpec, PeriodicMesh or sequence): The grid or its cell counts.
        bc (str, optional): Boundary condition, default 'periodic'.
        rtol (float, optional): Relative singular value threshold, default 1e-9.
        max_faces (int, optional): Refuse grids with more faces, default 20000.
    Returns:
        DimensionRecord: The computed dimensions.
    Raises:
        TooLargeError: If the grid has more than `max_faces` faces.
    """
    _check_bc(bc)
    counts = tuple(int(n) for n in _counts(spec))
    mesh = PeriodicMesh(GridSpec(counts), bc=bc)
    if mesh.n_raw_faces > max_faces:
        raise TooLargeError(f'{mesh} has {mesh.n_raw_faces} faces, the oracle cap is {max_faces}')

    logger.debug(f'Rank oracle on {mesh}')
    dim_space = _space_dimension(mesh, rtol)
    neumann = dim_space if bc == 'neumann' else \
        _space_dimension(PeriodicMesh(mesh.spec, bc='neumann'), rtol)

    if not mesh.is_periodic:
        return DimensionRecord(counts, bc, dim_space=dim_space, n_essential=neumann - dim_space)

    node_span = numerical_rank(node_representation(mesh), rtol=rtol)
    ker_stiffness = mesh.n_nodes - numerical_rank(node_stiffness(mesh), rtol=rtol)
    return DimensionRecord(counts, bc,
                           dim_space=dim_space,
                           ker_representation=mesh.n_nodes - node_span,
                           ker_stiffness=ker_stiffness,
                           node_span=node_span,
                           n_essential=neumann - dim_space)


def stiffness_rank_deficiency(spec, rtol=1e-9, max_faces=20000):
    """ dim ker of the periodic node stiffness matrix, by rank. """
    counts = tuple(int(n) for n in _counts(spec))
    mesh = PeriodicMesh(GridSpec(counts))
    if mesh.n_raw_faces > max_faces:
        raise TooLargeError(f'{mesh} has {mesh.n_raw_faces} faces, the oracle cap is {max_faces}')
    return mesh.n_nodes - numerical_rank(node_stiffness(mesh), rtol=rtol)


def dimension_sweep(grids, bcs=('periodic', ), verify=True, rtol=1e-9, max_faces=20000):
    """ Predicted (and optionally rank computed) dimensions over a list of grids.

    Args:
        grids (list): Cell counts, all of the same dimension.
        bcs (sequence, optional): Boundary conditions to sweep, default periodic only.
        verify (bool, optional): Also run the rank oracle, default True.
    Returns:
        astropy.table.Table: One row per grid, boundary condition and quantity, with the
            columns Nx, Ny[, Nz], bc, quantity, predicted and, when verifying, oracle, match.
    """
    grids = [tuple(int(n) for n in counts) for counts in grids]
    dims = {len(counts) for counts in grids}
    if len(dims) != 1:
        raise ValueError(f'All grids of a sweep need the same dimension, got {sorted(dims)}')
    axis_names = ['Nx', 'Ny', 'Nz'][:dims.pop()]

    rows = []
    for counts in grids:
        for bc in bcs:
            predicted = dim_formulas(counts, bc)
            computed = None
            if verify:
                computed = constraint_rank_oracle(counts, bc, rtol=rtol, max_faces=max_faces)
            for name, value in predicted.quantities():
                row = dict(zip(axis_names, counts), bc=bc, quantity=name, predicted=value)
                if verify:
                    row['oracle'] = getattr(computed, name)
                    row['match'] = bool(row['oracle'] == value)
                    if not row['match']:
                        logger.warning(f'{name} on {counts} {bc}: predicted {value}, '
                                       f'oracle {row["oracle"]}')
                rows.append(row)

    names = axis_names + ['bc', 'quantity', 'predicted'] + (['oracle', 'match'] if verify else [])
    if not rows:
        return Table(names=names)
    return Table([[row[name] for row in rows] for name in names], names=names)
