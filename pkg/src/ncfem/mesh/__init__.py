from ncfem.mesh.grid import BOUNDARY_CONDITIONS, FACE_LABELS, GridSpec, PeriodicMesh, build_mesh
from ncfem.mesh.io import vtk_lines, write_vtk
from ncfem.mesh.topology import (Coloring, Strip, boundary_relation, dice_constraint_matrix,
                                 red_black_coloring, strips)

__all__ = ('BOUNDARY_CONDITIONS', 'FACE_LABELS', 'GridSpec', 'PeriodicMesh', 'build_mesh',
           'vtk_lines', 'write_vtk', 'Coloring', 'Strip', 'boundary_relation',
           'dice_constraint_matrix', 'red_black_coloring', 'strips')
