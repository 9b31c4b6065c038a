from dataclasses import dataclass

import numpy as np

from ncfem.space.catalog import require_periodic


@dataclass(frozen=True)
class KernelVectors:
    """ Node coefficient vectors c with `c . B = 0`, and the stiffness kernel built on them.

    Both are stored as columns. The stiffness kernel is the representation kernel plus the
    all ones vector, which represents the constant 1.
    """
    representation: np.ndarray
    stiffness: np.ndarray
    names: tuple = ()

    @property
    def n_representation(self):
        return self.representation.shape[1]

    @property
    def n_stiffness(self):
        return self.stiffness.shape[1]


def _single_surface_checkerboard(mesh, axis, position):
    """ `(-1)^(sum of the other lattice indices)` on the nodes of one surface, 0 elsewhere. """
    lattice = mesh.node_lattice
    others = [a for a in range(mesh.dim) if a != axis]
    return np.where(lattice[:, axis] == position, (-1.) ** lattice[:, others].sum(axis=1), 0.)


def kernel_vectors(mesh):
    """ A basis of the kernel of the node representation and of the node stiffness matrix.

    2D: the node checkerboard, present when both counts are even.

    3D: for each surface normal to an axis whose two transverse counts are even, the
    checkerboard on that surface. When all counts are even the alternating sums of the
    three families all equal the 3D checkerboard, so the last y and the last z surface are
    left out.

    Args:
        mesh (PeriodicMesh): A periodic mesh.
    Returns:
        KernelVectors: The kernel bases.
    """
    require_periodic(mesh, 'The kernel of the node representation')

    counts = mesh.counts
    columns, names = [], []
    if mesh.dim == 2:
        if all(n % 2 == 0 for n in counts):
            columns.append((-1.) ** mesh.node_lattice.sum(axis=1))
            names.append('checkerboard')
    else:
        all_even = all(n % 2 == 0 for n in counts)
        for axis, name in enumerate('XYZ'):
            if any(counts[a] % 2 for a in range(3) if a != axis):
                continue
            positions = range(counts[axis])
            if all_even and axis > 0:
                positions = positions[:-1]
            for position in positions:
                columns.append(_single_surface_checkerboard(mesh, axis, position))
                names.append(f'{name}_{position}')

    n = mesh.n_nodes
    representation = np.column_stack(columns) if columns else np.zeros((n, 0))
    stiffness = np.column_stack([representation, np.ones(n)])
    return KernelVectors(representation=representation,
                         stiffness=stiffness,
                         names=tuple(names) + ('ones', ))
