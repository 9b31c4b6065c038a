from dataclasses import dataclass

import numpy as np

from ncfem.error import NotRepresentableError

AXIS_NAMES = 'xyz'


def even(n):
    """ 1 if n is even, else 0. """
    return int(n % 2 == 0)


@dataclass(frozen=True, order=True)
class AlternatingDescriptor:
    """ Names an alternating function.

    In 2D only `value_axis` is used: psi_x (value_axis=0) is +-1 on the faces normal to x.
    In 3D the function is supported on the layer `layer` of cells along `layer_axis` and is
    +-1 on the faces normal to `value_axis` inside that layer.
    """
    value_axis: int
    layer_axis: int = None
    layer: int = None

    def __str__(self):
        value = AXIS_NAMES[self.value_axis]
        if self.layer_axis is None:
            return f'psi_{value}'
        return f'(psi^{AXIS_NAMES[self.layer_axis]}_{self.layer})_{value}'


def _check_representable(mesh, descriptor):
    if not mesh.is_periodic:
        raise NotRepresentableError(f'Alternating functions live on periodic meshes, got {mesh}')

    counts = mesh.counts
    value_axis = descriptor.value_axis
    if not 0 <= value_axis < mesh.dim:
        raise ValueError(f'Invalid value axis {value_axis} for {mesh}')

    if mesh.dim == 2:
        if descriptor.layer_axis is not None:
            raise ValueError(f'2D alternating functions have no layer, got {descriptor}')
        if counts[value_axis] % 2:
            raise NotRepresentableError(f'{descriptor} needs an even N_{AXIS_NAMES[value_axis]}, '
                                        f'got {counts}')
        return

    layer_axis = descriptor.layer_axis
    if layer_axis is None or layer_axis == value_axis or not 0 <= layer_axis < 3:
        raise ValueError(f'Invalid layer axis in {descriptor}')
    if not 0 <= descriptor.layer < counts[layer_axis]:
        raise ValueError(f'Layer {descriptor.layer} out of range for {mesh}')
    transverse = [a for a in range(3) if a != layer_axis]
    if any(counts[a] % 2 for a in transverse):
        names = ', '.join(f'N_{AXIS_NAMES[a]}' for a in transverse)
        raise NotRepresentableError(f'{descriptor} needs even {names}, got {counts}')


def alternating_function(mesh, descriptor):
    """ Face midpoint values of an alternating function.

    The values are `(-1)^(sum of lattice indices)` on the faces normal to the value axis
    (restricted to one layer in 3D) and 0 on every other face.

    Args:
        mesh (PeriodicMesh): A periodic mesh.
        descriptor (AlternatingDescriptor): Which function.
    Returns:
        numpy.ndarray: Values with shape (n_faces, ).
    """
    _check_representable(mesh, descriptor)

    faces = mesh.faces_of_axis(descriptor.value_axis)
    lattice = mesh.face_lattice[faces]
    signs = (-1.) ** lattice.sum(axis=1)
    if descriptor.layer_axis is not None:
        in_layer = lattice[:, descriptor.layer_axis] == descriptor.layer
        # The layer index is not part of the alternation.
        signs = np.where(in_layer, signs * (-1.) ** descriptor.layer, 0.)

    values = np.zeros(mesh.n_faces)
    values[faces] = signs
    return values


def alternating_family(mesh, value_axis):
    """ The 3D family A_value_axis: every layer function with values on `value_axis` faces. """
    return [AlternatingDescriptor(value_axis, layer_axis, layer)
            for layer_axis in range(3) if layer_axis != value_axis
            for layer in range(mesh.counts[layer_axis])]


def alternating_members(mesh, flat=False):
    """ Descriptors of the alternating set A (or A flat) that complements the node basis.

    2D: psi_x and psi_y when both counts are even, otherwise none.

    3D, all counts even: the three families A_x, A_y, A_z; A flat drops the last member of each
    family. Exactly one odd count N_i: the layer functions of the layers along axis i with both
    transverse value axes. Otherwise none.

    Returns:
        tuple: (members, dropped), two lists of descriptors.
    """
    counts = mesh.counts
    if mesh.dim == 2:
        if all(n % 2 == 0 for n in counts):
            return [AlternatingDescriptor(0), AlternatingDescriptor(1)], []
        return [], []

    odd = [a for a in range(3) if counts[a] % 2]
    if not odd:
        members, dropped = [], []
        for value_axis in range(3):
            family = alternating_family(mesh, value_axis)
            if flat:
                dropped.append(family.pop())
            members.extend(family)
        return members, dropped

    if len(odd) == 1:
        layer_axis = odd[0]
        members = [AlternatingDescriptor(value_axis, layer_axis, layer)
                   for value_axis in range(3) if value_axis != layer_axis
                   for layer in range(counts[layer_axis])]
        return members, []

    return [], []
