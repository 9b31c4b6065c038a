import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from astropy.table import Table

from ncfem.utils.logger import logger

MARKDOWN_FORMAT = dict(format='ascii.fixed_width_two_line', delimiter='|', bookend=True,
                       position_char='-')


def format_h(h):
    """ '1/64' for a unit fraction, the float otherwise. """
    h = Fraction(h).limit_denominator(1 << 20)
    if h.numerator == 1:
        return f'1/{h.denominator}'
    return f'{float(h):g}'


def observed_order(e_coarse, e_fine, h_coarse, h_fine):
    """ `log(e_coarse / e_fine) / log(h_coarse / h_fine)`; log2 of the error ratio on halving. """
    if e_coarse <= 0 or e_fine <= 0:
        return math.nan
    return math.log(e_coarse / e_fine) / math.log(float(h_coarse) / float(h_fine))


def write_table(table, directory, stem, formats=('csv', 'md')):
    """ Write an astropy table as CSV and/or aligned markdown.

    Returns:
        list of str: The paths written.
    """
    os.makedirs(directory, exist_ok=True)
    paths = list()
    for fmt in formats:
        path = os.path.join(directory, f'{stem}.{fmt}')
        if fmt == 'csv':
            table.write(path, format='ascii.csv', overwrite=True)
        elif fmt == 'md':
            table.write(path, overwrite=True, **MARKDOWN_FORMAT)
        else:
            raise ValueError(f'Unknown table format {fmt!r}, expected csv or md')
        logger.debug(f'Wrote {path}')
        paths.append(path)
    return paths


@dataclass
class ConvergenceRow:
    h: Fraction
    h1: float
    l2: float
    iterations: int = None
    converged: bool = True


@dataclass
class ConvergenceTable:
    """ Errors of one problem and option over a sequence of mesh sizes.

    The order columns are recomputed from consecutive error entries.
    """
    problem: str
    option: int
    rows: list = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    def add(self, h, h1, l2, iterations=None, converged=True):
        self.rows.append(ConvergenceRow(Fraction(h).limit_denominator(1 << 20), h1, l2,
                                        iterations, converged))

    def orders(self, norm='h1'):
        """ Observed orders between consecutive rows, NaN for the first. """
        orders = [math.nan]
        for coarse, fine in zip(self.rows[:-1], self.rows[1:]):
            orders.append(observed_order(getattr(coarse, norm), getattr(fine, norm),
                                         coarse.h, fine.h))
        return orders

    def to_table(self):
        table = Table()
        table['h'] = [format_h(row.h) for row in self.rows]
        table['H1'] = [row.h1 for row in self.rows]
        table['H1 order'] = self.orders('h1')
        table['L2'] = [row.l2 for row in self.rows]
        table['L2 order'] = self.orders('l2')
        table['iterations'] = [-1 if row.iterations is None else row.iterations
                               for row in self.rows]
        table['converged'] = [bool(row.converged) for row in self.rows]

        for name in ('H1', 'L2'):
            table[name].format = '.3e'
        for name in ('H1 order', 'L2 order'):
            table[name].format = '.3f'
        table.meta['problem'] = self.problem
        table.meta['option'] = self.option
        return table

    def write(self, directory, stem, formats=('csv', 'md')):
        return write_table(self.to_table(), directory, stem, formats=formats)

    def plot(self, path):
        """ Log-log plot of both errors against h. """
        import matplotlib
        matplotlib.use('Agg')
        from matplotlib import pyplot as plt

        h = [float(row.h) for row in self.rows]
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.loglog(h, [row.h1 for row in self.rows], 'o-', label='broken H1')
        ax.loglog(h, [row.l2 for row in self.rows], 's-', label='L2')
        ax.set_xlabel('h')
        ax.set_ylabel('error')
        ax.set_title(f'{self.problem}, option {self.option}')
        ax.legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
        logger.debug(f'Wrote convergence plot {path}')
        return path


@dataclass
class RankDeficiencyTable:
    """ Stiffness rank deficiencies by rank computation and by formula, per grid. """
    entries: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def add(self, counts, computed, predicted):
        self.entries[tuple(counts)] = (computed, predicted)

    def mismatches(self):
        return [counts for counts, (computed, predicted) in self.entries.items()
                if computed is not None and computed != predicted]

    def to_table(self):
        """ One row per grid; `computed` and `match` are masked where the rank was skipped. """
        table = Table(names=('Nx', 'Ny', 'Nz', 'computed', 'predicted', 'match'),
                      dtype=(int, int, int, int, int, bool), masked=True)
        for counts, (computed, predicted) in sorted(self.entries.items()):
            skipped = computed is None
            table.add_row((*counts, 0 if skipped else computed, predicted,
                           not skipped and computed == predicted),
                          mask=(False, False, False, skipped, False, skipped))
        return table

    def write(self, directory, stem, formats=('csv', 'md')):
        return write_table(self.to_table(), directory, stem, formats=formats)


@dataclass
class EquivalenceRow:
    h: Fraction
    options_difference: float
    gap_l2: float
    gap_h1: float
    gap_prediction_error: float


@dataclass
class EquivalenceReport:
    """ Differences between the option solutions of one problem over mesh sizes.

    `options_difference` is the largest pairwise L2 difference among options 1 to 3 and the
    gap columns compare option 3 with option 4.
    """
    problem: str
    rows: list = field(default_factory=list)

    def slopes(self):
        """ Least squares log-log slopes of the option 3 / option 4 gap, (L2, H1). """
        if len(self.rows) < 2:
            return math.nan, math.nan
        h = np.log([float(row.h) for row in self.rows])
        slopes = []
        for name in ('gap_l2', 'gap_h1'):
            values = np.array([getattr(row, name) for row in self.rows])
            if np.any(values <= 0):
                slopes.append(math.nan)
                continue
            slopes.append(float(np.polyfit(h, np.log(values), 1)[0]))
        return tuple(slopes)

    def to_table(self):
        table = Table()
        table['h'] = [format_h(row.h) for row in self.rows]
        table['options 1-3 L2 difference'] = [row.options_difference for row in self.rows]
        table['gap L2'] = [row.gap_l2 for row in self.rows]
        table['gap H1'] = [row.gap_h1 for row in self.rows]
        table['gap prediction error'] = [row.gap_prediction_error for row in self.rows]
        for name in table.colnames[1:]:
            table[name].format = '.3e'
        slope_l2, slope_h1 = self.slopes()
        table.meta['problem'] = self.problem
        table.meta['slope_l2'] = slope_l2
        table.meta['slope_h1'] = slope_h1
        return table

    def write(self, directory, stem, formats=('csv', 'md')):
        return write_table(self.to_table(), directory, stem, formats=formats)
