import itertools
from dataclasses import dataclass, field

import numpy as np

from ncfem.error import InvalidGridSpecError

BOUNDARY_CONDITIONS = ('periodic', 'dirichlet', 'neumann')

# Dice numbering of the local face positions [x-, x+, y-, y+, z-, z+]: opposite faces sum to 7
# in 3D and to 5 in 2D.
FACE_LABELS = {2: (1, 4, 2, 3),
               3: (1, 6, 2, 5, 3, 4)}


@dataclass(frozen=True)
class GridSpec:
    """ Cell counts and side lengths of the box (0, l_1) x ... x (0, l_d).

    >>> spec = GridSpec((4, 2), lengths=(1.0, 0.5))
    >>> spec.dim, spec.h, spec.is_uniform
    (2, (0.25, 0.25), True)
    """
    counts: tuple
    lengths: tuple = field(default=None)

    def __post_init__(self):
        try:
            counts = tuple(int(n) for n in self.counts)
        except (TypeError, ValueError):
            raise InvalidGridSpecError(f'Cell counts must be integers, got {self.counts!r}')
        if any(int(n) != n for n in self.counts):
            raise InvalidGridSpecError(f'Cell counts must be integers, got {self.counts!r}')

        if len(counts) not in (2, 3):
            raise InvalidGridSpecError(f'Only 2D and 3D grids are supported, got {counts!r}')
        if any(n < 1 for n in counts):
            raise InvalidGridSpecError(f'All cell counts must be positive, got {counts!r}')

        lengths = self.lengths
        if lengths is None:
            lengths = (1.0, ) * len(counts)
        lengths = tuple(float(length) for length in lengths)
        if len(lengths) != len(counts):
            raise InvalidGridSpecError(f'Got {len(lengths)} lengths for {len(counts)} counts')
        if any(not np.isfinite(length) or length <= 0 for length in lengths):
            raise InvalidGridSpecError(f'All lengths must be positive, got {lengths!r}')

        object.__setattr__(self, 'counts', counts)
        object.__setattr__(self, 'lengths', lengths)

    @classmethod
    def from_h(cls, h, dim=2, length=1.0):
        """ A uniform grid of the cube (0, length)^dim with cell size h.

        Args:
            h (float): The cell size, e.g. `Fraction(1, 64)`.
            dim (int, optional): 2 or 3, default 2.
            length (float, optional): The side length, default 1.
        """
        h = float(h)
        if h <= 0:
            raise InvalidGridSpecError(f'Cell size must be positive, got {h}')
        n = int(round(length / h))
        if n < 1 or abs(n * h - length) > 1e-9 * length:
            raise InvalidGridSpecError(f'Cell size {h} does not divide the side length {length}')
        return cls((n, ) * dim, lengths=(length, ) * dim)

    @property
    def dim(self):
        return len(self.counts)

    @property
    def h(self):
        return tuple(length / n for length, n in zip(self.lengths, self.counts))

    @property
    def is_uniform(self):
        return bool(np.allclose(self.h, self.h[0], rtol=1e-12, atol=0))

    @property
    def cell_size(self):
        """ The common cell size of a uniform grid. """
        if not self.is_uniform:
            raise InvalidGridSpecError(f'Grid {self} is not uniform')
        return self.h[0]

    @property
    def n_cells(self):
        return int(np.prod(self.counts))


class PeriodicMesh():
    """ A structured grid of rectangular cells with face and node enumerations.

    For `bc='periodic'` nodes and faces on opposite sides of the box are identified and the
    canonical representative is the one with the minimal lattice index. For `dirichlet` and
    `neumann` no identification happens and boundary faces have a single incident cell.

    Canonical ids are lexicographic in (i, j, k) (last index fastest). Faces are numbered axis
    block by axis block: all faces normal to x, then y, then z. Cell faces are stored in the
    local order [x-, x+, y-, y+, z-, z+] and cell nodes in the local corner order given by
    `itertools.product((0, 1), repeat=dim)`.

    All arrays are read-only.
    """

    def __init__(self, spec, bc='periodic'):
        if bc not in BOUNDARY_CONDITIONS:
            raise InvalidGridSpecError(f'Unknown boundary condition {bc!r}, '
                                       f'expected one of {BOUNDARY_CONDITIONS}')
        self.spec = spec
        self.bc = bc

        counts = np.array(spec.counts)
        self._counts = counts
        self._h = np.array(spec.h)
        extra = 0 if self.is_periodic else 1

        self.node_shape = tuple(int(n) + extra for n in counts)
        self.raw_node_shape = tuple(int(n) + 1 for n in counts)
        self.face_shapes = tuple(self._axis_shape(a, extra) for a in range(self.dim))
        self.raw_face_shapes = tuple(self._axis_shape(a, 1) for a in range(self.dim))
        self._face_offsets = np.cumsum([0] + [np.prod(s) for s in self.face_shapes])
        self._raw_face_offsets = np.cumsum([0] + [np.prod(s) for s in self.raw_face_shapes])

        self.n_nodes = int(np.prod(self.node_shape))
        self.n_faces = int(self._face_offsets[-1])
        self.n_cells = spec.n_cells
        self.n_raw_faces = int(self._raw_face_offsets[-1])

        self.cell_lattice = self._lattice(spec.counts)
        self.cell_centers = (self.cell_lattice + 0.5) * self._h
        self.cell_nodes = np.stack([self.node_id(self.cell_lattice + np.array(corner))
                                    for corner in self.corners], axis=1)
        self.cell_faces = self._build_cell_faces(self.face_id)
        self.raw_cell_faces = self._build_cell_faces(self.raw_face_id)

        self.node_lattice = self._lattice(self.node_shape)
        self.node_coordinates = self.node_lattice * self._h

        self._build_faces()
        self._build_raw_maps()

        for name in ('cell_lattice', 'cell_centers', 'cell_nodes', 'cell_faces',
                     'raw_cell_faces', 'node_lattice', 'node_coordinates', 'face_axis',
                     'face_lattice', 'face_midpoints', 'face_cells', 'face_nodes',
                     'is_boundary_face', 'raw_node_to_canonical', 'raw_face_to_canonical',
                     'opposite_pairs'):
            getattr(self, name).setflags(write=False)

    def __str__(self):
        counts = 'x'.join(str(n) for n in self.counts)
        return f'PeriodicMesh({counts}, bc={self.bc})'

    def __repr__(self):
        return f'PeriodicMesh(spec={self.spec!r}, bc={self.bc!r})'

    def __eq__(self, other):
        if not isinstance(other, PeriodicMesh):
            return NotImplemented
        return self.spec == other.spec and self.bc == other.bc

    def __hash__(self):
        return hash((self.spec, self.bc))

    # Properties

    @property
    def dim(self):
        return self.spec.dim

    @property
    def counts(self):
        return self.spec.counts

    @property
    def h(self):
        return self.spec.h

    @property
    def is_periodic(self):
        return self.bc == 'periodic'

    @property
    def is_uniform(self):
        return self.spec.is_uniform

    @property
    def cell_volume(self):
        return float(np.prod(self._h))

    @property
    def corners(self):
        """ Local corner bit patterns in the local node order. """
        return list(itertools.product((0, 1), repeat=self.dim))

    @property
    def face_labels(self):
        """ Dice labels of the local face positions. """
        return FACE_LABELS[self.dim]

    # Methods

    def node_id(self, lattice):
        """ Canonical node ids of raw lattice indices with shape (..., dim). """
        lattice = np.asarray(lattice)
        if self.is_periodic:
            lattice = lattice % self._counts
        return np.ravel_multi_index(tuple(np.moveaxis(lattice, -1, 0)), self.node_shape)

    def face_id(self, axis, lattice):
        """ Canonical ids of the faces normal to `axis` at raw lattice indices (..., dim). """
        lattice = np.asarray(lattice)
        if self.is_periodic:
            lattice = lattice % self._counts
        local = np.ravel_multi_index(tuple(np.moveaxis(lattice, -1, 0)), self.face_shapes[axis])
        return self._face_offsets[axis] + local

    def raw_face_id(self, axis, lattice):
        """ Ids of the faces normal to `axis` before periodic identification. """
        lattice = np.asarray(lattice)
        local = np.ravel_multi_index(tuple(np.moveaxis(lattice, -1, 0)),
                                     self.raw_face_shapes[axis])
        return self._raw_face_offsets[axis] + local

    def cell_id(self, lattice):
        """ Cell ids of cell lattice indices (..., dim), wrapping periodically. """
        lattice = np.asarray(lattice) % self._counts
        return np.ravel_multi_index(tuple(np.moveaxis(lattice, -1, 0)), self.spec.counts)

    def faces_of_axis(self, axis):
        """ The canonical ids of all faces normal to `axis`. """
        return np.arange(self._face_offsets[axis], self._face_offsets[axis + 1])

    def raw_faces_of_axis(self, axis):
        return np.arange(self._raw_face_offsets[axis], self._raw_face_offsets[axis + 1])

    def locate(self, points):
        """ The owning cell of each point.

        Points on a face between two cells belong to the cell with the lower lattice index.
        Coordinates are wrapped into the box on periodic meshes and clipped otherwise.

        Args:
            points (array): Coordinates with shape (n, dim).
        Returns:
            numpy.ndarray: Cell ids with shape (n, ).
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        lengths = np.array(self.spec.lengths)
        if self.is_periodic:
            points = np.mod(points, lengths)
        index = np.ceil(points / self._h).astype(int) - 1
        index = np.clip(index, 0, self._counts - 1)
        return self.cell_id(index)

    # Private methods

    def _axis_shape(self, axis, extra):
        shape = [int(n) for n in self._counts]
        shape[axis] += extra
        return tuple(shape)

    @staticmethod
    def _lattice(shape):
        return np.stack(np.unravel_index(np.arange(int(np.prod(shape))), shape), axis=-1)

    def _build_cell_faces(self, face_id):
        faces = []
        for axis in range(self.dim):
            step = np.eye(self.dim, dtype=int)[axis]
            faces.append(face_id(axis, self.cell_lattice))
            faces.append(face_id(axis, self.cell_lattice + step))
        return np.stack(faces, axis=1)

    def _build_faces(self):
        dim = self.dim
        axes, lattices, midpoints, cells, nodes, boundary = [], [], [], [], [], []
        for axis in range(dim):
            lattice = self._lattice(self.face_shapes[axis])
            step = np.eye(dim, dtype=int)[axis]

            midpoint = (lattice + 0.5 - 0.5 * step) * self._h

            lower = self.cell_id(lattice - step)
            upper = self.cell_id(lattice)
            on_boundary = np.zeros(len(lattice), dtype=bool)
            if not self.is_periodic:
                at_min = lattice[:, axis] == 0
                at_max = lattice[:, axis] == self._counts[axis]
                lower = np.where(at_min, -1, lower)
                upper = np.where(at_max, -1, upper)
                on_boundary = at_min | at_max

            offsets = [np.array(bits) for bits in itertools.product((0, 1), repeat=dim)
                       if bits[axis] == 0]
            face_nodes = np.stack([self.node_id(lattice + offset) for offset in offsets], axis=1)

            axes.append(np.full(len(lattice), axis))
            lattices.append(lattice)
            midpoints.append(midpoint)
            cells.append(np.stack([lower, upper], axis=1))
            nodes.append(face_nodes)
            boundary.append(on_boundary)

        self.face_axis = np.concatenate(axes)
        self.face_lattice = np.concatenate(lattices)
        self.face_midpoints = np.concatenate(midpoints)
        self.face_cells = np.concatenate(cells)
        self.face_nodes = np.concatenate(nodes)
        self.is_boundary_face = np.concatenate(boundary)

    def _build_raw_maps(self):
        raw_nodes = self._lattice(self.raw_node_shape)
        self.raw_node_to_canonical = self.node_id(raw_nodes)

        to_canonical, pairs = [], []
        for axis in range(self.dim):
            lattice = self._lattice(self.raw_face_shapes[axis])
            to_canonical.append(self.face_id(axis, lattice))

            low = lattice[lattice[:, axis] == 0]
            high = low.copy()
            high[:, axis] = self._counts[axis]
            pairs.append(np.stack([self.raw_face_id(axis, low), self.raw_face_id(axis, high)],
                                  axis=1))

        self.raw_face_to_canonical = np.concatenate(to_canonical)
        self.opposite_pairs = np.concatenate(pairs)


def build_mesh(spec, bc='periodic'):
    """ Build the mesh of a grid specification.

    Args:
        spec (GridSpec or sequence): The grid, or just its cell counts on the unit box.
        bc (str, optional): One of `periodic`, `dirichlet` or `neumann`, default `periodic`.
    Returns:
        PeriodicMesh: The mesh.

    >>> mesh = build_mesh((2, 2))
    >>> mesh.n_nodes, mesh.n_faces, mesh.n_cells
    (4, 8, 4)
    """
    if not isinstance(spec, GridSpec):
        spec = GridSpec(spec)
    return PeriodicMesh(spec, bc=bc)
