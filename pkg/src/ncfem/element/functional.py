from dataclasses import dataclass

import numpy as np

from ncfem.element.local import local_face_midpoints
from ncfem.element.quadrature import QuadratureRule
from ncfem.error import FaceIndexError

FUNCTIONAL_KINDS = ('midpoint', 'average')


@dataclass(frozen=True)
class FaceFunctional:
    """ The midpoint value or the face average of a function on one face. """
    kind: str
    face: int

    def __post_init__(self):
        if self.kind not in FUNCTIONAL_KINDS:
            raise ValueError(f'Unknown functional kind {self.kind!r}, '
                             f'expected one of {FUNCTIONAL_KINDS}')


def _face_position(mesh, cell, face):
    positions = np.flatnonzero(mesh.cell_faces[cell] == face)
    if len(positions) == 0:
        raise FaceIndexError(f'Face {face} is not a face of cell {cell}')
    return int(positions[0])


def sigma(functional, u, cell=None):
    """ Apply a face functional to a per cell linear function.

    Args:
        functional (FaceFunctional): Which value and which face.
        u: Anything with a `mesh` and a `local_linear(cell)` method, e.g. a DiscreteSolution.
        cell (int, optional): Which incident cell to evaluate from. Defaults to the first
            incident cell; the value agrees from both sides for functions in the space.
    Returns:
        float: The value.
    """
    mesh = u.mesh
    face = functional.face
    if not 0 <= face < mesh.n_faces:
        raise FaceIndexError(f'Face {face} out of range for {mesh} with {mesh.n_faces} faces')

    if cell is None:
        cell = int(next(c for c in mesh.face_cells[face] if c >= 0))
    position = _face_position(mesh, cell, face)
    poly = u.local_linear(cell)

    dim = mesh.dim
    midpoint = local_face_midpoints(mesh.h, dim)[position]
    if functional.kind == 'midpoint':
        return float(poly(midpoint)[0])

    # Face average by a Gauss rule on the (dim - 1)-dimensional face.
    axis = position // 2
    tangent_axes = [a for a in range(dim) if a != axis]
    rule = QuadratureRule.gauss(2, dim - 1)
    points = np.tile(midpoint, (len(rule), 1))
    points[:, tangent_axes] = rule.points * np.array(mesh.h)[tangent_axes]
    return float(rule.weights @ poly(points))
