from ncfem.space.alternating import (AlternatingDescriptor, alternating_family,
                                     alternating_function, alternating_members, even)
from ncfem.space.catalog import (CATALOG_KINDS, BasisCatalog, build_catalog,
                                 representation_matrix, require_periodic, unity_representation)
from ncfem.space.dimensions import (QUANTITIES, DimensionRecord, constraint_rank_oracle,
                                    dim_formulas, dimension_sweep, neumann_dimension,
                                    stiffness_rank_deficiency)
from ncfem.space.kernel import KernelVectors, kernel_vectors
from ncfem.space.operators import (difference_operator, integral_vector, load_vector,
                                   mass_matrix, mean_operator, node_representation,
                                   node_stiffness, stiffness_matrix)

__all__ = ('AlternatingDescriptor', 'alternating_family', 'alternating_function',
           'alternating_members', 'even', 'CATALOG_KINDS', 'BasisCatalog', 'build_catalog',
           'representation_matrix', 'require_periodic', 'unity_representation', 'QUANTITIES',
           'DimensionRecord', 'constraint_rank_oracle', 'dim_formulas', 'dimension_sweep',
           'neumann_dimension', 'stiffness_rank_deficiency', 'KernelVectors', 'kernel_vectors',
           'difference_operator', 'integral_vector', 'load_vector', 'mass_matrix',
           'mean_operator', 'node_representation', 'node_stiffness', 'stiffness_matrix')
