import os

from ncfem.analysis import studies
from ncfem.analysis.problems import get_problem
from ncfem.analysis.tables import format_h, write_table
from ncfem.base import NcBase
from ncfem.element.quadrature import QuadratureRule
from ncfem.linalg.krylov import SolverConfig
from ncfem.mesh.grid import GridSpec, build_mesh
from ncfem.schemes.options import solve
from ncfem.schemes.solution import write_solution
from ncfem.space.dimensions import dimension_sweep


class Runner(NcBase):
    """ Runs the studies with settings from the config and writes their artifacts.

    Every artifact name carries a digest of the config, so identical settings write
    identical files.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.solver_config = SolverConfig.from_config(self.config)
        self.quadrature_order = self.get_config('quadrature.order', default=3)
        self.load_options = dict(
            mean_tolerance=self.get_config('load.mean_tolerance', default=1e-12),
            compatibility_tolerance=self.get_config('load.compatibility_tolerance',
                                                    default=1e-6))
        self.output_directory = self.get_config('output.directory', default='ncfem-output')
        self.formats = tuple(self.get_config('output.formats', default=['csv', 'md']))
        self.logger.debug(f'Runner writing to {self.output_directory} with {self.solver_config}')

    # Properties

    @property
    def published_tolerance(self):
        return self.get_config('analysis.published_tolerance', default=0.02)

    # Methods

    def stem(self, kind, problem=None, option=None, **settings):
        """ Artifact file stem for a run with the given extra settings. """
        run = dict(self.config, run=dict(kind=kind, problem=problem, option=option, **settings))
        run.pop('log', None)
        run.pop('output', None)
        return studies.artifact_stem(kind, problem, option, run)

    def dims(self, grids, bcs, verify=False):
        table = dimension_sweep(grids, bcs=bcs, verify=verify,
                                rtol=self.get_config('rank.relative_tolerance', default=1e-9),
                                max_faces=self.get_config('rank.max_faces', default=20000))
        stem = self.stem('dims', grids=[list(g) for g in grids], bcs=list(bcs), verify=verify)
        paths = write_table(table, self.output_directory, stem, formats=('csv', ))
        return table, paths

    def solve(self, problem, h, option):
        """ Solve one problem and write the solution files.

        Returns:
            tuple: (DiscreteSolution, SolveReport, dict of paths).
        """
        problem = get_problem(problem)
        mesh = build_mesh(GridSpec.from_h(h, dim=problem.dim))
        rule = QuadratureRule.gauss(self.quadrature_order, problem.dim)
        solution, report = solve(mesh, problem.f, option=option, config=self.solver_config,
                                 rule=rule, **self.load_options)
        stem = self.stem('solution', problem.name, option, h=format_h(h))
        paths = write_solution(solution, self.output_directory, stem)
        return solution, report, paths

    def convergence(self, problem, option, hs, check_published=False, plot=False):
        """ Run a convergence study and write its table.

        Returns:
            tuple: (ConvergenceTable, list of violations, list of paths).
        """
        problem = get_problem(problem)
        table = studies.convergence_study(problem, option, hs, config=self.solver_config,
                                          quadrature_order=self.quadrature_order,
                                          **self.load_options)
        stem = self.stem('convergence', problem.name, option, hs=[format_h(h) for h in hs])
        paths = table.write(self.output_directory, stem, formats=self.formats)
        if plot:
            paths.append(table.plot(os.path.join(self.output_directory, f'{stem}.png')))

        violations = studies.check_against_published(table, self.published_tolerance) \
            if check_published else []
        return table, violations, paths

    def rankdef(self, max_count=None, triples=None, check_published=False):
        max_count = max_count or self.get_config('analysis.rankdef_max', default=8)
        triples = triples or studies.published_triples(max_count)
        table = studies.rank_deficiency_study(
            triples,
            rtol=self.get_config('rank.relative_tolerance', default=1e-9),
            max_faces=self.get_config('rank.max_faces', default=20000))
        stem = self.stem('rankdef', max_count=max_count, triples=[list(t) for t in triples])
        paths = table.write(self.output_directory, stem, formats=self.formats)

        violations = [f'{counts}: rank deficiency formula disagrees with the rank'
                      for counts in table.mismatches()]
        if check_published:
            violations += studies.check_against_published(table)
        return table, violations, paths

    def equivalence(self, problem, hs):
        problem = get_problem(problem)
        report = studies.scheme_equivalence_study(problem, hs, config=self.solver_config,
                                                  quadrature_order=self.quadrature_order,
                                                  **self.load_options)
        stem = self.stem('equivalence', problem.name, hs=[format_h(h) for h in hs])
        paths = report.write(self.output_directory, stem, formats=self.formats)
        return report, paths

    def iterations(self, problem, h, options):
        problem = get_problem(problem)
        table = studies.iteration_study(problem, h, options=options, config=self.solver_config,
                                        quadrature_order=self.quadrature_order)
        for row in table:
            self.logger.info(f'Option {row["option"]} ({row["method"]}): {row["iterations"]} '
                             f'iterations in {row["wall_time"]:.3f} s')

        stem = self.stem('iterations', problem.name, h=format_h(h), options=list(options))
        # Wall times differ between runs and stay out of the file.
        table_out = table.copy()
        table_out.remove_column('wall_time')
        paths = write_table(table_out, self.output_directory, stem, formats=self.formats)
        return table, paths
