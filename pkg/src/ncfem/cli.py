from fractions import Fraction

import click

from ncfem.analysis.runner import Runner
from ncfem.analysis.studies import halving_sequence
from ncfem.analysis.tables import format_h
from ncfem.error import NcfemError, PublishedValuesError
from ncfem.mesh.grid import BOUNDARY_CONDITIONS
from ncfem.utils.config import get_config, load_config
from ncfem.utils.logger import get_logger, logger


class FractionType(click.ParamType):
    """ A positive mesh size written as `1/64` or `0.015625`. """
    name = 'h'

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            h = Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError):
            self.fail(f'{value!r} is not a fraction like 1/64', param, ctx)
        if h <= 0:
            self.fail(f'Mesh size must be positive, got {value!r}', param, ctx)
        return h


class HListType(click.ParamType):
    """ Mesh sizes as a halving range `1/8:1/256` or a comma list `1/8,1/16`. """
    name = 'h-list'

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return list(value)
        single = FractionType()
        text = str(value).strip()
        if ':' in text:
            coarse, fine = (single.convert(part, param, ctx) for part in text.split(':', 1))
            try:
                return halving_sequence(coarse, fine)
            except ValueError as err:
                self.fail(str(err), param, ctx)
        return [single.convert(part, param, ctx) for part in text.split(',') if part.strip()]


H = FractionType()
H_LIST = HListType()


def _fail(context, message):
    logger.error(message)
    click.echo(message, err=True)
    context.exit(1)


def _echo_table(table):
    click.echo('\n'.join(table.pformat(max_lines=-1, max_width=-1)))


@click.group()
@click.option('--verbose/--no-verbose', default=False, help='Log at DEBUG level, default False.')
@click.option('--config', 'config_file', default=None, type=click.Path(exists=True, dir_okay=False),
              help='A YAML file merged over the default config.')
@click.option('--output-dir', default=None, type=click.Path(file_okay=False),
              help='Directory for tables and exports. Overrides the config and NCFEM_OUTPUT_DIR.')
@click.pass_context
def entry_point(context, verbose=False, config_file=None, output_dir=None):
    context.ensure_object(dict)
    config = load_config(config_file=config_file,
                         overrides=dict(output=dict(directory=output_dir)))
    level = 'DEBUG' if verbose else get_config('log.level', default='INFO', config=config)
    get_logger(level=level, log_dir=get_config('log.directory', config=config))

    context.obj['config'] = config
    context.obj['runner'] = Runner(config=config)


@click.command('dims')
@click.option('--2d', 'counts_2d', nargs=2, type=click.IntRange(min=1), default=None,
              help='Cell counts NX NY of a 2D grid.')
@click.option('--3d', 'counts_3d', nargs=3, type=click.IntRange(min=1), default=None,
              help='Cell counts NX NY NZ of a 3D grid.')
@click.option('--bc', 'bcs', multiple=True, type=click.Choice(BOUNDARY_CONDITIONS),
              default=('periodic', ), show_default=True, help='Boundary condition, repeatable.')
@click.option('--verify/--no-verify', default=False,
              help='Also compute the dimensions by rank and compare.')
@click.pass_context
def dims(context, counts_2d=None, counts_3d=None, bcs=('periodic', ), verify=False):
    """ Print the dimension formulas of a grid, optionally checked by rank. """
    if bool(counts_2d) == bool(counts_3d):
        raise click.UsageError('Give exactly one of --2d and --3d.')
    counts = tuple(counts_2d or counts_3d)

    try:
        table, paths = context.obj['runner'].dims([counts], bcs, verify=verify)
    except NcfemError as err:
        _fail(context, f'dims failed: {err!r}')
    _echo_table(table)
    logger.info(f'Wrote {paths}')

    if verify and not all(table['match']):
        _fail(context, f'Dimension formulas disagree with the rank oracle on {counts}')


@click.command('solve')
@click.option('--example', default='ex1', show_default=True,
              help='Problem name (ex1, ex2, ex3, sine2d) or dotted class path.')
@click.option('--h', 'h', required=True, type=H, help='Mesh size, e.g. 1/64.')
@click.option('--option', type=click.IntRange(1, 4), default=4, show_default=True,
              help='Scheme option.')
@click.pass_context
def solve(context, example='ex1', h=None, option=4):
    """ Solve one problem, write the solution files and report the solve. """
    try:
        _, report, paths = context.obj['runner'].solve(example, h, option)
    except NcfemError as err:
        _fail(context, f'Option {option} on {example} with h={format_h(h)} failed: {err!r}')

    click.echo(str(report))
    for kind, path in paths.items():
        click.echo(f'{kind}: {path}')
    if not report.converged:
        _fail(context, f'Option {option} did not converge')


@click.command('convergence')
@click.option('--example', default='ex1', show_default=True, help='Problem name or class path.')
@click.option('--option', type=click.IntRange(1, 4), default=4, show_default=True,
              help='Scheme option.')
@click.option('--h', 'hs', type=H_LIST, default='1/8:1/64', show_default=True,
              help='Mesh sizes, `1/8:1/256` or `1/8,1/16`.')
@click.option('--check-paper/--no-check-paper', '--check-published/--no-check-published',
              'check_published', default=False, help='Compare with the published errors.')
@click.option('--plot/--no-plot', default=False, help='Also write a log-log plot.')
@click.pass_context
def convergence(context, example='ex1', option=4, hs=None, check_published=False, plot=False):
    """ Tabulate errors and observed orders over a sequence of mesh sizes. """
    try:
        table, violations, paths = context.obj['runner'].convergence(
            example, option, hs, check_published=check_published, plot=plot)
    except NcfemError as err:
        _fail(context, f'Convergence study failed: {err!r}')

    _echo_table(table.to_table())
    logger.info(f'Wrote {paths}')
    if violations:
        _fail(context, str(PublishedValuesError(msg='\n'.join(violations))))


@click.command('rankdef')
@click.option('--max', 'max_count', type=click.IntRange(min=2), default=None,
              help='Largest cell count of the published grids to check.')
@click.option('--check-paper/--no-check-paper', '--check-published/--no-check-published',
              'check_published', default=False, help='Compare with the published rank table.')
@click.pass_context
def rankdef(context, max_count=None, check_published=False):
    """ Stiffness rank deficiency in 3D, by rank and by formula. """
    try:
        table, violations, paths = context.obj['runner'].rankdef(max_count=max_count,
                                                                check_published=check_published)
    except NcfemError as err:
        _fail(context, f'Rank deficiency study failed: {err!r}')

    _echo_table(table.to_table())
    logger.info(f'Wrote {paths}')
    if violations:
        _fail(context, str(PublishedValuesError(msg='\n'.join(violations))))


@click.command('equivalence')
@click.option('--example', default='ex1', show_default=True, help='Problem name or class path.')
@click.option('--h', 'hs', type=H_LIST, default='1/8:1/64', show_default=True,
              help='Mesh sizes, `1/8:1/256` or `1/8,1/16`.')
@click.pass_context
def equivalence(context, example='ex1', hs=None):
    """ Compare the four options and fit the convergence of the option 3 / 4 gap. """
    try:
        report, paths = context.obj['runner'].equivalence(example, hs)
    except NcfemError as err:
        _fail(context, f'Equivalence study failed: {err!r}')

    _echo_table(report.to_table())
    slope_l2, slope_h1 = report.slopes()
    click.echo(f'Gap slopes: L2 {slope_l2:.3f}, H1 {slope_h1:.3f}')
    logger.info(f'Wrote {paths}')


@click.command('iterations')
@click.option('--example', default='ex2', show_default=True, help='Problem name or class path.')
@click.option('--h', 'h', type=H, default='1/64', show_default=True, help='Mesh size.')
@click.option('--option', 'options', multiple=True, type=click.IntRange(1, 4),
              default=(1, 2, 3, 4), show_default=True, help='Scheme option, repeatable.')
@click.pass_context
def iterations(context, example='ex2', h=None, options=(1, 2, 3, 4)):
    """ Iteration counts and wall times of the options on one mesh. """
    try:
        table, paths = context.obj['runner'].iterations(example, h, options)
    except NcfemError as err:
        _fail(context, f'Iteration study failed: {err!r}')

    _echo_table(table)
    logger.info(f'Wrote {paths}')


entry_point.add_command(dims)
entry_point.add_command(solve)
entry_point.add_command(convergence)
entry_point.add_command(rankdef)
entry_point.add_command(equivalence)
entry_point.add_command(iterations)
