from ncfem.analysis.norms import error_norms
from ncfem.analysis.problems import (PROBLEMS, BumpProblem, ManufacturedProblem,
                                     SeparableProblem, SineProblem, SquareWaveProblem,
                                     ZeroProblem, bump_constant, get_problem)
from ncfem.analysis.runner import Runner
from ncfem.analysis.studies import (artifact_stem, check_against_published, convergence_study,
                                    halving_sequence, iteration_study, published_triples,
                                    rank_deficiency_study, scheme_equivalence_study)
from ncfem.analysis.tables import (ConvergenceTable, EquivalenceReport, RankDeficiencyTable,
                                   format_h, observed_order, write_table)

__all__ = ('error_norms', 'PROBLEMS', 'BumpProblem', 'ManufacturedProblem', 'SeparableProblem',
           'SineProblem', 'SquareWaveProblem', 'ZeroProblem', 'bump_constant', 'get_problem',
           'Runner', 'artifact_stem', 'check_against_published', 'convergence_study',
           'halving_sequence', 'iteration_study', 'published_triples', 'rank_deficiency_study',
           'scheme_equivalence_study', 'ConvergenceTable', 'EquivalenceReport',
           'RankDeficiencyTable', 'format_h', 'observed_order', 'write_table')
