from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from ncfem.error import (InvalidGridSpecError, NcfemError, ParityError,
                         UnsupportedDimensionError)
from ncfem.space.alternating import (AlternatingDescriptor, alternating_function,
                                     alternating_members)
from ncfem.space.operators import node_representation

CATALOG_KINDS = ('B', 'Bflat', 'A', 'Aflat', 'E', 'Eflat')


@dataclass(frozen=True)
class BasisCatalog:
    """ An ordered set of functions of the periodic space.

    Node based functions come first (members are node ids), then alternating functions
    (members are `AlternatingDescriptor`). `values` holds the face midpoint values of the
    members as columns.
    """
    kind: str
    mesh: object
    members: tuple
    dropped: tuple = field(default=())
    values: sparse.csr_matrix = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.members)

    def __str__(self):
        return f'BasisCatalog({self.kind}, {self.mesh}, {len(self)} members)'

    @property
    def dim(self):
        return self.mesh.dim

    @property
    def is_empty(self):
        return len(self.members) == 0

    @property
    def n_node_members(self):
        return sum(1 for m in self.members if not isinstance(m, AlternatingDescriptor))

    @property
    def node_slice(self):
        return slice(0, self.n_node_members)

    @property
    def alternating_slice(self):
        return slice(self.n_node_members, len(self))

    @property
    def node_members(self):
        return np.array(self.members[self.node_slice], dtype=int)

    @property
    def alternating_members(self):
        return list(self.members[self.alternating_slice])


def require_periodic(mesh, what):
    if not mesh.is_periodic:
        raise InvalidGridSpecError(f'{what} needs a periodic mesh, got {mesh}')


def _flat_nodes(mesh):
    """ Node ids of B flat: all but the highest id, on even/even 2D meshes only. """
    if mesh.dim == 3:
        raise UnsupportedDimensionError('B flat is only constructed in 2D')
    if any(n % 2 for n in mesh.counts):
        raise ParityError(f'B flat needs even N_x and N_y, got {mesh.counts}')
    return list(range(mesh.n_nodes - 1)), [mesh.n_nodes - 1]


def build_catalog(mesh, kind='B'):
    """ Build one of the function sets B, B flat, A, A flat, E = B + A or E flat.

    Requesting alternating functions on a mesh whose parities admit none gives an empty
    alternating part; check `is_empty` for the kinds A and A flat.

    Args:
        mesh (PeriodicMesh): A periodic mesh.
        kind (str, optional): One of `CATALOG_KINDS`, default 'B'.
    Returns:
        BasisCatalog: The catalog.

    >>> from ncfem.mesh import build_mesh
    >>> len(build_catalog(build_mesh((4, 4)), 'Eflat'))
    17
    """
    if kind not in CATALOG_KINDS:
        raise ValueError(f'Unknown catalog kind {kind!r}, expected one of {CATALOG_KINDS}')
    require_periodic(mesh, 'A function catalog')

    nodes, dropped = [], []
    if kind in ('B', 'E'):
        nodes = list(range(mesh.n_nodes))
    elif kind in ('Bflat', 'Eflat'):
        nodes, dropped = _flat_nodes(mesh)

    alternating = []
    if kind in ('A', 'E'):
        alternating, _ = alternating_members(mesh, flat=False)
    elif kind in ('Aflat', 'Eflat'):
        alternating, flat_dropped = alternating_members(mesh, flat=True)
        dropped = dropped + flat_dropped

    columns = []
    if nodes:
        columns.append(node_representation(mesh)[:, nodes])
    if alternating:
        columns.append(sparse.csr_matrix(np.column_stack([alternating_function(mesh, d)
                                                          for d in alternating])))
    if columns:
        values = sparse.hstack(columns, format='csr')
    else:
        values = sparse.csr_matrix((mesh.n_faces, 0))

    return BasisCatalog(kind=kind,
                        mesh=mesh,
                        members=tuple(nodes) + tuple(alternating),
                        dropped=tuple(dropped),
                        values=values)


def representation_matrix(catalog):
    """ The faces x members matrix of face midpoint values. """
    return catalog.values.copy()


def unity_representation(catalog, rtol=1e-12):
    """ The coefficients w with `w . B flat = 1` everywhere.

    With k the node checkerboard, `k . B = 0` and `1 . B = 1`, so `1 - k_last k` represents
    one and vanishes on the dropped node. Its entries are 0 on the nodes of the dropped
    node's color and 2 on the others. For an E flat catalog the alternating part is 0.

    Args:
        catalog (BasisCatalog): A 'Bflat' or 'Eflat' catalog.
    Returns:
        numpy.ndarray: One coefficient per member.
    """
    if catalog.kind not in ('Bflat', 'Eflat'):
        raise ValueError(f'Unity representation needs a B flat catalog, got {catalog.kind}')

    mesh = catalog.mesh
    checkerboard = (-1.) ** mesh.node_lattice.sum(axis=1)
    last = catalog.dropped[0]
    full = 1. - checkerboard[last] * checkerboard

    w = np.zeros(len(catalog))
    w[catalog.node_slice] = full[catalog.node_members]

    residual = np.abs(catalog.values @ w - 1.).max()
    if residual > rtol:
        raise NcfemError(f'Unity representation is off by {residual:.3e} on {mesh}')
    return w
