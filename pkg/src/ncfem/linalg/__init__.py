from ncfem.linalg.dense import (KrylovVerdict, core_nilpotent_split, drazin_inverse,
                                krylov_solution_check, matrix_index, nullity, numerical_rank)
from ncfem.linalg.krylov import (SolveReport, SolverConfig, as_operator, cg, check_consistency,
                                 gmres_restarted)
from ncfem.linalg.sparse import SparseMatrix, block_diag

__all__ = ('KrylovVerdict', 'core_nilpotent_split', 'drazin_inverse', 'krylov_solution_check',
           'matrix_index', 'nullity', 'numerical_rank', 'SolveReport', 'SolverConfig',
           'as_operator', 'cg', 'check_consistency', 'gmres_restarted', 'SparseMatrix',
           'block_diag')
