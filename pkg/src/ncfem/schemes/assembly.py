from dataclasses import dataclass

import numpy as np

from ncfem.element.quadrature import QuadratureRule, cell_moments
from ncfem.error import IncompatibleLoadError, MeshMismatchError
from ncfem.linalg.sparse import SparseMatrix, block_diag
from ncfem.space.operators import load_vector, mass_matrix, stiffness_matrix
from ncfem.utils.logger import logger


@dataclass(frozen=True)
class LoadData:
    """ Cell moments of a load and what was done to make it integrate to zero. """
    f0: np.ndarray
    f1: np.ndarray
    integral: float
    norm: float
    mean_removed: float = 0.


@dataclass(frozen=True)
class AssembledSystem:
    """ A stiffness system on a catalog, block diagonal between node and alternating parts.

    `modified_row` is set when a row of the node block was replaced by the zero mean row.
    """
    matrix: SparseMatrix
    rhs: np.ndarray
    catalog: object
    modified_row: int = None
    load: LoadData = None

    @property
    def size(self):
        return len(self.rhs)

    @property
    def node_slice(self):
        return self.catalog.node_slice

    @property
    def alternating_slice(self):
        return self.catalog.alternating_slice


def prepare_load(f, mesh, rule=None, mean_tolerance=1e-12, compatibility_tolerance=1e-6):
    """ Cell moments of f, with the quadrature mean removed.

    A periodic problem needs `int f = 0`. Manufactured loads satisfy it analytically but not
    under quadrature, so the discrete mean is subtracted once `|int f|` exceeds
    `mean_tolerance` relative to `|f|_0 |Omega|^(1/2)`.

    Args:
        f (callable or None): The load `f(x, y[, z])`; None means zero.
        mesh (PeriodicMesh): The mesh.
        rule (QuadratureRule, optional): The cell rule, default 3 point Gauss.
        mean_tolerance (float, optional): Relative mean above which it is removed.
        compatibility_tolerance (float, optional): Relative mean above which the load is
            refused.
    Returns:
        LoadData: The moments.
    Raises:
        IncompatibleLoadError: If the load is far from integrating to zero.
    """
    if f is None:
        zeros = np.zeros(mesh.n_cells)
        return LoadData(f0=zeros, f1=np.zeros((mesh.n_cells, mesh.dim)), integral=0., norm=0.)

    rule = rule or QuadratureRule.gauss(3, mesh.dim)
    f0, f1, f2 = cell_moments(f, mesh, rule)
    volume = mesh.n_cells * mesh.cell_volume
    integral = float(f0.sum())
    norm = float(np.sqrt(f2.sum()))
    scale = norm * np.sqrt(volume)

    mean_removed = 0.
    if abs(integral) > compatibility_tolerance * scale:
        raise IncompatibleLoadError(f'The load integrates to {integral:.3e} '
                                    f'(relative {abs(integral) / scale:.3e}) on {mesh}')
    if abs(integral) > mean_tolerance * scale:
        mean_removed = integral / volume
        f0 = f0 - mean_removed * mesh.cell_volume
        logger.debug(f'Removed the quadrature mean {mean_removed:.3e} of the load')

    return LoadData(f0=f0, f1=f1, integral=integral, norm=norm, mean_removed=mean_removed)


def _check_mesh(mesh, catalog):
    if catalog.mesh != mesh:
        raise MeshMismatchError(f'{catalog} does not live on {mesh}')


def _blocks(mesh, catalog, form):
    """ The node and alternating blocks of a bilinear form, assembled separately. """
    values = catalog.values
    blocks = []
    for part in (catalog.node_slice, catalog.alternating_slice):
        if part.stop > part.start:
            blocks.append(form(mesh, values[:, part]))
    return blocks


def assemble(mesh, catalog, f=None, rule=None, mean_tolerance=1e-12,
             compatibility_tolerance=1e-6):
    """ The stiffness matrix and load vector of a catalog.

    The node and alternating blocks are assembled on their own: `a_h(phi, psi) = 0` between
    a node based and an alternating function, so the coupling blocks are zero.

    Args:
        mesh (PeriodicMesh): The mesh.
        catalog (BasisCatalog): The trial and test functions.
        f (callable, optional): The load, default zero.
        rule (QuadratureRule, optional): Cell rule for the load.
    Returns:
        AssembledSystem: The system.
    """
    _check_mesh(mesh, catalog)
    if catalog.is_empty:
        raise ValueError(f'Nothing to assemble on the empty {catalog}')
    logger.debug(f'Assembling {catalog}')

    blocks = _blocks(mesh, catalog, stiffness_matrix)
    matrix = block_diag(*blocks) if len(blocks) > 1 else blocks[0]
    load = prepare_load(f, mesh, rule=rule, mean_tolerance=mean_tolerance,
                        compatibility_tolerance=compatibility_tolerance)
    rhs = load_vector(mesh, catalog.values, load.f0, load.f1)
    return AssembledSystem(matrix=matrix, rhs=rhs, catalog=catalog, load=load)


def assemble_mass(mesh, catalog):
    """ The mass matrix of a catalog, including the coupling blocks. """
    _check_mesh(mesh, catalog)
    return mass_matrix(mesh, catalog.values)


def with_zero_mean_row(system):
    """ Replace the last row of the node block by ones and its load entry by zero.

    The replaced row asks for the node coefficients to sum to zero, which on a uniform mesh
    is the zero mean condition.
    """
    n_nodes = system.catalog.n_node_members
    row = n_nodes - 1
    values = np.zeros(system.size)
    values[:n_nodes] = 1.
    rhs = system.rhs.copy()
    rhs[row] = 0.
    return AssembledSystem(matrix=system.matrix.with_row(row, values),
                           rhs=rhs,
                           catalog=system.catalog,
                           modified_row=row,
                           load=system.load)
