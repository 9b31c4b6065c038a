import itertools

import numpy as np


def _cell_size(h, dim):
    h = np.broadcast_to(np.asarray(h, dtype=float), (dim, )).copy()
    if np.any(h <= 0):
        raise ValueError(f'Cell sizes must be positive, got {h}')
    return h


def local_corners(dim):
    """ Local corner bit patterns, lexicographic in (x, y[, z]). """
    return list(itertools.product((0, 1), repeat=dim))


def local_face_midpoints(h, dim):
    """ Midpoints of the local faces [x-, x+, y-, y+, z-, z+] of the cell [0, h]^dim. """
    h = _cell_size(h, dim)
    midpoints = np.tile(h / 2, (2 * dim, 1))
    for axis in range(dim):
        midpoints[2 * axis, axis] = 0
        midpoints[2 * axis + 1, axis] = h[axis]
    return midpoints


class LocalLinear():
    """ A linear polynomial `a + b x + c y (+ d z)` on one cell, in cell-local coordinates.

    The element is pinned by its face midpoint values, which must obey the dice rule: the sum
    of the values on each pair of opposite faces is the same for every pair.
    """

    def __init__(self, coeffs, h):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim != 1 or len(coeffs) not in (3, 4):
            raise ValueError(f'Expected 3 (2D) or 4 (3D) coefficients, got {coeffs!r}')
        self.coeffs = coeffs
        self.h = _cell_size(h, len(coeffs) - 1)

    def __repr__(self):
        return f'LocalLinear(coeffs={self.coeffs.tolist()!r}, h={self.h.tolist()!r})'

    def __call__(self, points):
        points = np.atleast_2d(points)
        return self.coeffs[0] + points @ self.coeffs[1:]

    @property
    def dim(self):
        return len(self.coeffs) - 1

    @property
    def gradient(self):
        return self.coeffs[1:]

    @property
    def mean(self):
        """ The cell average, which is the value at the cell center. """
        return float(self(self.h / 2)[0])

    def face_values(self):
        """ Values at the face midpoints in the local order [x-, x+, y-, y+, z-, z+]. """
        return self(local_face_midpoints(self.h, self.dim))

    def satisfies_dice_rule(self, rtol=1e-12):
        sums = self.face_values().reshape(self.dim, 2).sum(axis=1)
        scale = max(1.0, float(np.max(np.abs(sums))))
        return bool(np.ptp(sums) <= rtol * scale)

    @classmethod
    def from_face_values(cls, values, h, rtol=1e-12):
        """ The linear polynomial with the given face midpoint values.

        Args:
            values (array): 2 dim values in the local face order.
            h (float or array): The cell size, per axis or common.
            rtol (float, optional): Relative tolerance for the dice rule check.
        Raises:
            ValueError: If the values violate the dice rule.
        """
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or len(values) not in (4, 6):
            raise ValueError(f'Expected 4 (2D) or 6 (3D) face values, got {values!r}')
        dim = len(values) // 2
        h = _cell_size(h, dim)

        pairs = values.reshape(dim, 2)
        sums = pairs.sum(axis=1)
        scale = max(1.0, float(np.max(np.abs(values))))
        if np.ptp(sums) > rtol * scale:
            raise ValueError(f'Face values {values.tolist()} violate the dice rule')

        gradient = (pairs[:, 1] - pairs[:, 0]) / h
        center = sums.mean() / 2
        constant = center - gradient @ (h / 2)
        return cls(np.concatenate([[constant], gradient]), h)


def local_node_basis(corner, h, dim):
    """ The node based function of a cell corner.

    It takes the value 1/2 on the `dim` faces meeting the corner and 0 on the others.

    Args:
        corner (int or tuple): Index into `local_corners(dim)` or the corner bit pattern.
        h (float or array): The cell size.
        dim (int): 2 or 3.
    Returns:
        LocalLinear: The basis function.

    >>> local_node_basis(0, 1.0, 2).coeffs.tolist()
    [0.75, -0.5, -0.5]
    """
    corners = local_corners(dim)
    if isinstance(corner, (int, np.integer)):
        if not 0 <= corner < len(corners):
            raise ValueError(f'Corner index {corner} out of range for dim={dim}')
        bits = corners[corner]
    else:
        bits = tuple(int(b) for b in corner)
        if bits not in corners:
            raise ValueError(f'Invalid corner {corner!r} for dim={dim}')

    values = np.zeros(2 * dim)
    for axis, bit in enumerate(bits):
        values[2 * axis + bit] = 0.5
    return LocalLinear.from_face_values(values, h)


def node_basis_gradients(h, dim):
    """ Gradients of the local node basis, one row per corner. """
    return np.array([local_node_basis(c, h, dim).gradient for c in range(2 ** dim)])


def local_stiffness(h, dim):
    """ The element stiffness matrix of the node basis, indexed by local corners.

    In 2D on a square it is 1/2 on the diagonal, 0 between corners sharing an edge and -1/2
    between opposite corners, whatever the cell size.
    """
    h = _cell_size(h, dim)
    gradients = node_basis_gradients(h, dim)
    return np.prod(h) * gradients @ gradients.T


def local_mass(h, dim):
    """ The element mass matrix of the node basis.

    For linear functions `int_K u v = |K| (mean_u mean_v + sum_a h_a^2 / 12 du_a dv_a)`.
    """
    h = _cell_size(h, dim)
    basis = [local_node_basis(c, h, dim) for c in range(2 ** dim)]
    means = np.array([p.mean for p in basis])
    gradients = np.array([p.gradient for p in basis])
    return np.prod(h) * (np.outer(means, means) + (gradients * h ** 2 / 12) @ gradients.T)


def local_zero_patterns(dim):
    """ Corner vectors c with `sum_c c_c phi_c = 0` on a cell.

    In 2D this is the checkerboard. In 3D there are four: the checkerboard `A` and the
    patterns `X`, `Y`, `Z` that alternate on the faces normal to one axis.

    Returns:
        dict: name -> corner vector.
    """
    corners = np.array(local_corners(dim))
    if dim == 2:
        return {'checkerboard': (-1.) ** corners.sum(axis=1)}
    a, b, c = corners.T
    return {'A': (-1.) ** (a + b + c + 1),
            'X': -(-1.) ** (b + c),
            'Y': -(-1.) ** (a + c),
            'Z': -(-1.) ** (a + b)}
