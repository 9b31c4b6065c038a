import os

import numpy as np

from ncfem.utils.logger import logger

VTK_QUAD = 9
VTK_HEXAHEDRON = 12

# Local corners in VTK order: counterclockwise in the bottom plane, then the top plane.
_VTK_CORNERS = {2: ((0, 0), (1, 0), (1, 1), (0, 1)),
                3: ((0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0),
                    (0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1))}


def _format_row(values):
    return ' '.join(f'{v:.16g}' for v in values)


def vtk_lines(mesh, title=None, cell_scalars=None, cell_vectors=None, cell_fields=None):
    """ The lines of a legacy ASCII unstructured grid file for the mesh.

    Points are the raw lattice nodes, so a periodic mesh is shown unfolded.

    Args:
        mesh (PeriodicMesh): The mesh.
        title (str, optional): The title line, default is the mesh description.
        cell_scalars (dict, optional): name -> array of shape (n_cells, ).
        cell_vectors (dict, optional): name -> array of shape (n_cells, dim); padded to 3
            components as the format requires.
        cell_fields (dict, optional): name -> array of shape (n_cells, k), written as a
            FIELD block.
    Returns:
        list of str: The lines, header first, then points, cells, cell types and data.
    """
    dim = mesh.dim
    raw_shape = mesh.raw_node_shape
    lattice = np.stack(np.unravel_index(np.arange(int(np.prod(raw_shape))), raw_shape), axis=-1)
    points = lattice * np.array(mesh.h)
    if dim == 2:
        points = np.hstack([points, np.zeros((len(points), 1))])

    corners = _VTK_CORNERS[dim]
    connectivity = np.stack([np.ravel_multi_index(tuple((mesh.cell_lattice + corner).T), raw_shape)
                             for corner in corners], axis=1)
    cell_type = VTK_QUAD if dim == 2 else VTK_HEXAHEDRON

    lines = ['# vtk DataFile Version 3.0',
             title or str(mesh),
             'ASCII',
             'DATASET UNSTRUCTURED_GRID',
             f'POINTS {len(points)} double']
    lines.extend(_format_row(p) for p in points)

    lines.append(f'CELLS {mesh.n_cells} {mesh.n_cells * (len(corners) + 1)}')
    lines.extend(f'{len(corners)} ' + ' '.join(str(i) for i in cell) for cell in connectivity)

    lines.append(f'CELL_TYPES {mesh.n_cells}')
    lines.extend([str(cell_type)] * mesh.n_cells)

    if cell_scalars or cell_vectors or cell_fields:
        lines.append(f'CELL_DATA {mesh.n_cells}')

    for name, values in (cell_scalars or dict()).items():
        lines.append(f'SCALARS {name} double 1')
        lines.append('LOOKUP_TABLE default')
        lines.extend(f'{v:.16g}' for v in np.asarray(values))

    for name, values in (cell_vectors or dict()).items():
        values = np.asarray(values)
        if values.shape[1] < 3:
            values = np.hstack([values, np.zeros((len(values), 3 - values.shape[1]))])
        lines.append(f'VECTORS {name} double')
        lines.extend(_format_row(v) for v in values)

    if cell_fields:
        lines.append(f'FIELD FieldData {len(cell_fields)}')
        for name, values in cell_fields.items():
            values = np.asarray(values)
            lines.append(f'{name} {values.shape[1]} {values.shape[0]} double')
            lines.extend(_format_row(v) for v in values)

    return lines


def write_vtk(mesh, path, **kwargs):
    """ Write the mesh (and optional cell data) as a legacy ASCII VTK file.

    Args:
        mesh (PeriodicMesh): The mesh.
        path (str): The output file name.
        **kwargs: Parsed to `vtk_lines`.
    Returns:
        str: The path written.
    """
    lines = vtk_lines(mesh, **kwargs)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w') as f:
        f.writelines(line + '\n' for line in lines)
    logger.debug(f'Wrote {mesh} to {path}')
    return path
