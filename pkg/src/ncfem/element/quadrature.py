import itertools
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from ncfem.element.local import local_node_basis

DEFAULT_CHUNK_SIZE = 2 ** 14


@dataclass(frozen=True)
class QuadratureRule:
    """ Tensor product Gauss-Legendre rule on the unit cell [0, 1]^dim.

    With `order` points per axis it integrates polynomials of degree up to 2 order - 1 in
    each variable exactly.

    >>> rule = QuadratureRule.gauss(3, 2)
    >>> len(rule), round(float(rule.weights.sum()), 15)
    (9, 1.0)
    """
    order: int
    dim: int
    points: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.weights)

    @classmethod
    def gauss(cls, order=3, dim=2):
        if order < 1:
            raise ValueError(f'Quadrature order must be at least 1, got {order}')
        if dim not in (1, 2, 3):
            raise ValueError(f'Quadrature dimension must be 1, 2 or 3, got {dim}')
        nodes, weights = leggauss(int(order))
        nodes = (nodes + 1) / 2
        weights = weights / 2
        points = np.array(list(itertools.product(nodes, repeat=dim)))
        weights = np.prod(np.array(list(itertools.product(weights, repeat=dim))), axis=1)
        return cls(order=int(order), dim=dim, points=points, weights=weights)

    def local_points(self, h):
        """ Points on the cell [0, h]^dim. """
        return self.points * np.asarray(h, dtype=float)

    def local_weights(self, h):
        """ Weights on the cell [0, h]^dim, summing to the cell volume. """
        return self.weights * float(np.prod(np.broadcast_to(h, (self.dim, ))))

    def integrate(self, func, h):
        """ Integrate `func(*coords)` over the cell [0, h]^dim. """
        points = self.local_points(h)
        return float(self.local_weights(h) @ _evaluate(func, points))


def _evaluate(func, points):
    """ Call a scalar field `func(x, y[, z])` on an array of points (..., dim). """
    values = func(*np.moveaxis(points, -1, 0))
    return np.broadcast_to(np.asarray(values, dtype=float), points.shape[:-1])


def cell_chunks(mesh, chunk_size=DEFAULT_CHUNK_SIZE):
    """ Yield consecutive slices of cell ids, so quadrature arrays stay small. """
    for start in range(0, mesh.n_cells, chunk_size):
        yield slice(start, min(start + chunk_size, mesh.n_cells))


def cell_quadrature_points(mesh, rule, cells=slice(None)):
    """ Global quadrature points of the given cells, shape (n_cells, n_points, dim). """
    origins = mesh.cell_lattice[cells] * np.array(mesh.h)
    return origins[:, None, :] + rule.local_points(mesh.h)[None, :, :]


def cell_moments(f, mesh, rule, chunk_size=DEFAULT_CHUNK_SIZE):
    """ Per cell integrals of f needed to load any per cell linear test function.

    For a test function with cell mean m and gradient g, `int_K f v = m f0 + g . f1`.

    Args:
        f (callable): Scalar field `f(x, y[, z])`, vectorized.
        mesh (PeriodicMesh): The mesh.
        rule (QuadratureRule): The cell rule.
    Returns:
        tuple: f0 = int_K f with shape (n_cells, ), f1 = int_K f (x - x_K) with shape
            (n_cells, dim) and f2 = int_K f^2 with shape (n_cells, ).
    """
    f0 = np.empty(mesh.n_cells)
    f1 = np.empty((mesh.n_cells, mesh.dim))
    f2 = np.empty(mesh.n_cells)

    weights = rule.local_weights(mesh.h)
    offsets = rule.local_points(mesh.h) - np.array(mesh.h) / 2
    for cells in cell_chunks(mesh, chunk_size):
        values = _evaluate(f, cell_quadrature_points(mesh, rule, cells))
        f0[cells] = values @ weights
        f1[cells] = (values * weights) @ offsets
        f2[cells] = values ** 2 @ weights

    return f0, f1, f2


def local_load(f, mesh, cell, rule):
    """ The vector `int_K f phi_c` over the local corners c of one cell.

    Args:
        f (callable): Scalar field `f(x, y[, z])`.
        mesh (PeriodicMesh): The mesh.
        cell (int): The cell id.
        rule (QuadratureRule): The cell rule.
    Returns:
        numpy.ndarray: One entry per local corner.
    """
    points = rule.local_points(mesh.h)
    weights = rule.local_weights(mesh.h)
    origin = mesh.cell_lattice[cell] * np.array(mesh.h)
    values = _evaluate(f, origin + points)
    basis = np.array([local_node_basis(c, mesh.h, mesh.dim)(points)
                      for c in range(2 ** mesh.dim)])
    return basis @ (values * weights)
