from ncfem.element.functional import FUNCTIONAL_KINDS, FaceFunctional, sigma
from ncfem.element.local import (LocalLinear, local_corners, local_face_midpoints, local_mass,
                                 local_node_basis, local_stiffness, local_zero_patterns,
                                 node_basis_gradients)
from ncfem.element.quadrature import (QuadratureRule, cell_chunks, cell_moments,
                                      cell_quadrature_points, local_load)

__all__ = ('FUNCTIONAL_KINDS', 'FaceFunctional', 'sigma', 'LocalLinear', 'local_corners',
           'local_face_midpoints', 'local_mass', 'local_node_basis', 'local_stiffness',
           'local_zero_patterns', 'node_basis_gradients', 'QuadratureRule', 'cell_chunks',
           'cell_moments', 'cell_quadrature_points', 'local_load')
