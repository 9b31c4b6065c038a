import os

import numpy as np
from astropy.table import Table

from ncfem.element.local import LocalLinear
from ncfem.error import MeshMismatchError
from ncfem.mesh.io import write_vtk
from ncfem.space.catalog import BasisCatalog
from ncfem.space.operators import difference_operator, mean_operator
from ncfem.utils.logger import logger

AXIS_NAMES = 'xyz'


class DiscreteSolution():
    """ A function of the nonconforming space given by its coefficients in a catalog. """

    def __init__(self, coefficients, catalog):
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape != (len(catalog), ):
            raise ValueError(f'Got {coefficients.shape} coefficients for {catalog}')
        self.coefficients = coefficients
        self.catalog = catalog
        self._face_values = None
        self._cell_linear = None

    def __repr__(self):
        return f'DiscreteSolution({self.catalog})'

    @property
    def mesh(self):
        return self.catalog.mesh

    @property
    def node_coefficients(self):
        return self.coefficients[self.catalog.node_slice]

    @property
    def alternating_coefficients(self):
        return self.coefficients[self.catalog.alternating_slice]

    def face_values(self):
        """ Midpoint values on all faces. """
        if self._face_values is None:
            self._face_values = np.asarray(self.catalog.values @ self.coefficients).ravel()
        return self._face_values

    def cell_linear(self):
        """ Cell means, shape (n_cells, ), and gradients, shape (n_cells, dim). """
        if self._cell_linear is None:
            values = self.face_values()
            means = mean_operator(self.mesh) @ values
            gradients = (difference_operator(self.mesh) @ values).reshape(-1, self.mesh.dim)
            self._cell_linear = (means, gradients)
        return self._cell_linear

    def local_linear(self, cell):
        """ The polynomial on one cell, in cell-local coordinates. """
        means, gradients = self.cell_linear()
        h = np.array(self.mesh.h)
        gradient = gradients[cell]
        return LocalLinear(np.concatenate([[means[cell] - gradient @ (h / 2)], gradient]), h)

    def evaluate(self, points):
        """ Values at arbitrary points, from the linear polynomial of the owning cell.

        Points on a face between two cells use the cell with the lower lattice index. The
        two cells only agree at the face midpoint.

        Args:
            points (array): Coordinates, shape (n, dim).
        Returns:
            numpy.ndarray: Values with shape (n, ).
        """
        mesh = self.mesh
        points = np.atleast_2d(np.asarray(points, dtype=float))
        cells = mesh.locate(points)
        if mesh.is_periodic:
            points = np.mod(points, np.array(mesh.spec.lengths))
        means, gradients = self.cell_linear()
        offsets = points - mesh.cell_centers[cells]
        return means[cells] + np.einsum('ij,ij->i', gradients[cells], offsets)

    def zero_mean_functional(self):
        """ The sum of the node coefficients.

        Every node function has the same integral and alternating functions integrate to
        zero, so on a uniform mesh this vanishes exactly when the mean of u does.
        """
        return float(self.node_coefficients.sum())

    def mean(self):
        """ The average of u over the domain. """
        means, _ = self.cell_linear()
        return float(means.mean())

    def restrict(self, part):
        """ The node part ('B') or the alternating part ('A') as a solution of its own. """
        if part not in ('B', 'A'):
            raise ValueError(f"Part must be 'B' or 'A', got {part!r}")
        catalog = self.catalog
        members = catalog.node_slice if part == 'B' else catalog.alternating_slice
        sub_catalog = BasisCatalog(kind=part,
                                   mesh=catalog.mesh,
                                   members=catalog.members[members],
                                   values=catalog.values[:, members])
        return DiscreteSolution(self.coefficients[members], sub_catalog)


def difference_norms(mesh, means, gradients):
    """ L2 and broken H1 norms of a per cell linear function.

    For a linear function `int_K v^2 = |K| (m^2 + sum_a h_a^2 / 12 g_a^2)`, which is also
    what any exact quadrature of the two linear pieces gives.
    """
    h = np.array(mesh.h)
    l2 = mesh.cell_volume * (means @ means + np.sum(gradients ** 2 * h ** 2 / 12))
    h1 = mesh.cell_volume * np.sum(gradients ** 2)
    return float(np.sqrt(l2)), float(np.sqrt(h1))


def compare_solutions(a, b):
    """ L2 and broken H1 norms of the difference of two solutions on the same mesh.

    Returns:
        tuple: (L2 difference, broken H1 difference).
    """
    if a.mesh != b.mesh:
        raise MeshMismatchError(f'Cannot compare solutions on {a.mesh} and {b.mesh}')
    means_a, gradients_a = a.cell_linear()
    means_b, gradients_b = b.cell_linear()
    return difference_norms(a.mesh, means_a - means_b, gradients_a - gradients_b)


def write_solution(solution, directory, stem):
    """ Write a solution as a legacy ASCII VTK file and a CSV of face values.

    The VTK file carries the cell means, the cell gradients and the face values of every
    cell in the local order [x-, x+, y-, y+, z-, z+]. The CSV has one row per face: face id,
    midpoint coordinates and value.

    Returns:
        dict: The paths written, keyed by 'vtk' and 'csv'.
    """
    os.makedirs(directory, exist_ok=True)
    mesh = solution.mesh
    means, gradients = solution.cell_linear()
    values = solution.face_values()

    vtk_path = write_vtk(mesh, os.path.join(directory, f'{stem}.vtk'),
                         title=f'{stem} on {mesh}',
                         cell_scalars={'mean': means},
                         cell_vectors={'gradient': gradients},
                         cell_fields={'face_values': values[mesh.cell_faces]})

    table = Table()
    table['face'] = np.arange(mesh.n_faces)
    for axis in range(mesh.dim):
        table[AXIS_NAMES[axis]] = mesh.face_midpoints[:, axis]
    table['value'] = values
    csv_path = os.path.join(directory, f'{stem}.csv')
    table.write(csv_path, format='ascii.csv', overwrite=True)

    logger.debug(f'Wrote {solution} to {vtk_path} and {csv_path}')
    return dict(vtk=vtk_path, csv=csv_path)
