from ncfem.schemes.assembly import (AssembledSystem, LoadData, assemble, assemble_mass,
                                    prepare_load, with_zero_mean_row)
from ncfem.schemes.options import (OPTIONS, SOLVERS, alternating_gap, alternating_integrals,
                                   coupling_block, solve, solve_option1, solve_option2,
                                   solve_option3, solve_option4)
from ncfem.schemes.solution import (DiscreteSolution, compare_solutions, difference_norms,
                                    write_solution)

__all__ = ('AssembledSystem', 'LoadData', 'assemble', 'assemble_mass', 'prepare_load',
           'with_zero_mean_row', 'OPTIONS', 'SOLVERS', 'alternating_gap', 'alternating_integrals',
           'coupling_block', 'solve', 'solve_option1', 'solve_option2', 'solve_option3',
           'solve_option4', 'DiscreteSolution', 'compare_solutions', 'difference_norms',
           'write_solution')
