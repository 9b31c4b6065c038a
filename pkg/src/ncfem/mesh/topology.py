from dataclasses import dataclass

import numpy as np
from scipy import sparse

from ncfem.error import UnsupportedDimensionError

RED = 0
BLACK = 1


@dataclass(frozen=True)
class Coloring:
    """ A red/black coloring of the mesh nodes.

    `colors` is None when no 2-coloring exists on the identified mesh.
    """
    exists: bool
    colors: np.ndarray = None

    @property
    def n_red(self):
        return 0 if self.colors is None else int(np.count_nonzero(self.colors == RED))

    @property
    def n_black(self):
        return 0 if self.colors is None else int(np.count_nonzero(self.colors == BLACK))


@dataclass(frozen=True)
class Strip:
    """ The boundary of a layer of cells together with its signed relation.

    Summing the signed dice relations of all cells in the layer leaves exactly
    `sum(signs * v[faces])`, where `faces` are raw (unidentified) face ids. On a periodic mesh
    `canonical_faces` gives the identified ids, and the relation may collapse there.
    """
    axis: int
    position: int
    faces: np.ndarray
    signs: np.ndarray
    canonical_faces: np.ndarray

    def __len__(self):
        return len(self.faces)

    def raw_vector(self, mesh):
        """ The relation as a dense vector over raw faces. """
        vector = np.zeros(mesh.n_raw_faces)
        np.add.at(vector, self.faces, self.signs)
        return vector

    def vector(self, mesh):
        """ The relation as a dense vector over canonical faces. """
        vector = np.zeros(mesh.n_faces)
        np.add.at(vector, self.canonical_faces, self.signs)
        return vector


def red_black_coloring(mesh):
    """ Color the nodes by the parity of their lattice index sum.

    On a periodic mesh the coloring is only consistent with the identification when every
    cell count is even; otherwise the result has `exists=False`.

    >>> from ncfem.mesh import build_mesh
    >>> coloring = red_black_coloring(build_mesh((2, 2)))
    >>> coloring.exists, coloring.n_red, coloring.n_black
    (True, 2, 2)
    """
    if mesh.is_periodic and any(n % 2 for n in mesh.counts):
        return Coloring(exists=False)

    colors = mesh.node_lattice.sum(axis=1) % 2
    colors.setflags(write=False)
    return Coloring(exists=True, colors=colors)


def dice_constraint_matrix(mesh, raw=False):
    """ The dice rule of every cell as rows of a sparse matrix over faces.

    In 2D each cell contributes `v(x-) + v(x+) - v(y-) - v(y+)`. In 3D the rule is split into
    `x-pair - y-pair` and `y-pair - z-pair`, two rows per cell. Row `r` belongs to cell
    `r // (dim - 1)`.

    Args:
        mesh (PeriodicMesh): The mesh.
        raw (bool, optional): Use raw face ids instead of canonical ones, default False.
    Returns:
        scipy.sparse.csr_matrix: The constraint matrix.
    """
    cell_faces = mesh.raw_cell_faces if raw else mesh.cell_faces
    n_cols = mesh.n_raw_faces if raw else mesh.n_faces
    n_cells = mesh.n_cells
    rows_per_cell = mesh.dim - 1

    rows, cols, vals = [], [], []
    for k in range(rows_per_cell):
        row = np.arange(n_cells) * rows_per_cell + k
        first, second = k, k + 1
        for position, sign in ((2 * first, 1.), (2 * first + 1, 1.),
                               (2 * second, -1.), (2 * second + 1, -1.)):
            rows.append(row)
            cols.append(cell_faces[:, position])
            vals.append(np.full(n_cells, sign))

    return sparse.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                             shape=(n_cells * rows_per_cell, n_cols)).tocsr()


def _layer_relation(mesh, axis, position, first, second):
    """ Signed boundary of the cells at `position` along `axis` (or all cells if axis is None).

    The per-cell relation `v(first-) + v(first+) - v(second-) - v(second+)` is weighted by
    `(-1)^(i_first + i_second)`; interior faces cancel in pairs.
    """
    counts = mesh.counts
    faces, signs = [], []
    for normal, sign in ((first, 1), (second, -1)):
        other = second if normal == first else first
        n_normal, n_other = counts[normal], counts[other]
        for end in (0, n_normal):
            # The cell touching this end of the layer is 0 or n - 1 along `normal`.
            cell_index = 0 if end == 0 else n_normal - 1
            for j in range(n_other):
                lattice = np.zeros(mesh.dim, dtype=int)
                lattice[normal] = end
                lattice[other] = j
                if axis is not None:
                    lattice[axis] = position
                faces.append(int(mesh.raw_face_id(normal, lattice)))
                signs.append(sign * (-1) ** (cell_index + j))

    faces = np.array(faces)
    return Strip(axis=axis,
                 position=position,
                 faces=faces,
                 signs=np.array(signs, dtype=float),
                 canonical_faces=mesh.raw_face_to_canonical[faces])


def strips(mesh, axis):
    """ The strips perpendicular to `axis` of a 3D mesh, one per layer.

    A strip perpendicular to x holds the 2 Ny + 2 Nz boundary faces of its layer of cells.

    Args:
        mesh (PeriodicMesh): A 3D mesh.
        axis (int): 0, 1 or 2.
    Returns:
        list of Strip: The strips in layer order.
    """
    if mesh.dim != 3:
        raise UnsupportedDimensionError(f'Strips exist only on 3D meshes, got {mesh}')
    if axis not in (0, 1, 2):
        raise ValueError(f'Axis must be 0, 1 or 2, got {axis!r}')

    first, second = [(axis + 1) % 3, (axis + 2) % 3]
    return [_layer_relation(mesh, axis, position, first, second)
            for position in range(mesh.counts[axis])]


def boundary_relation(mesh):
    """ The alternating relation between boundary edge values of a 2D mesh.

    Every function in the nonconforming space satisfies `sum(signs * v[faces]) = 0` over the
    boundary edges. On a periodic mesh the relation is expressed on identified faces and is
    trivial in a direction with an even cell count.
    """
    if mesh.dim != 2:
        raise UnsupportedDimensionError(f'The boundary relation is a 2D notion, got {mesh}')
    return _layer_relation(mesh, None, None, 0, 1)
