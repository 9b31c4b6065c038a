from functools import lru_cache

import numpy as np
from scipy import integrate

from panoptes.utils.library import load_module

from ncfem.error import UnsupportedDimensionError


class ManufacturedProblem():
    """ A periodic Poisson problem `-Laplace u = f` on the unit box with known solution.

    Subclasses give u, its gradient and f as vectorized fields of the coordinates. Both u
    and f integrate to zero over the box.
    """
    name = None
    dim = 2
    description = ''

    def __repr__(self):
        return f'{type(self).__name__}(name={self.name!r}, dim={self.dim})'

    @property
    def lengths(self):
        return (1.0, ) * self.dim

    def u(self, *coords):
        raise NotImplementedError

    def grad(self, *coords):
        """ The gradient, stacked on the last axis. """
        raise NotImplementedError

    def f(self, *coords):
        raise NotImplementedError


class SeparableProblem(ManufacturedProblem):
    """ `u = s(x) s(y) [s(z)]` for a periodic profile s with zero mean on [0, 1]. """

    def s(self, t):
        raise NotImplementedError

    def ds(self, t):
        raise NotImplementedError

    def d2s(self, t):
        raise NotImplementedError

    def _check(self, coords):
        if len(coords) != self.dim:
            raise UnsupportedDimensionError(f'{self} takes {self.dim} coordinates, '
                                            f'got {len(coords)}')
        return [np.asarray(c, dtype=float) for c in coords]

    def u(self, *coords):
        coords = self._check(coords)
        return np.prod([self.s(c) for c in coords], axis=0)

    def grad(self, *coords):
        coords = self._check(coords)
        values = [self.s(c) for c in coords]
        components = []
        for axis, c in enumerate(coords):
            others = [v for i, v in enumerate(values) if i != axis]
            components.append(self.ds(c) * np.prod(others, axis=0))
        return np.stack(components, axis=-1)

    def f(self, *coords):
        coords = self._check(coords)
        values = [self.s(c) for c in coords]
        total = 0.
        for axis, c in enumerate(coords):
            others = [v for i, v in enumerate(values) if i != axis]
            total = total - self.d2s(c) * np.prod(others, axis=0)
        return total


class SquareWaveProblem(SeparableProblem):
    """ Three terms of the Fourier series of a square wave in each variable. """
    name = 'ex1'
    description = 'truncated Fourier series of a square wave'
    terms = 3

    def _modes(self):
        return 2 * np.arange(1, self.terms + 1) - 1

    def s(self, t):
        t = np.asarray(t, dtype=float)[..., None]
        m = self._modes()
        return np.sum(4 / (m * np.pi) * np.sin(2 * m * np.pi * t), axis=-1)

    def ds(self, t):
        t = np.asarray(t, dtype=float)[..., None]
        m = self._modes()
        return np.sum(8 * np.cos(2 * m * np.pi * t), axis=-1)

    def d2s(self, t):
        t = np.asarray(t, dtype=float)[..., None]
        m = self._modes()
        return np.sum(-16 * m * np.pi * np.sin(2 * m * np.pi * t), axis=-1)


@lru_cache(maxsize=None)
def bump_constant():
    """ The constant C that gives the bump profile zero mean on [0, 1]. """
    value, error = integrate.quad(lambda t: float(_bump(t) * (t ** 2 - t ** 3)), 0, 1,
                                  epsabs=1e-15, epsrel=1e-13, limit=200)
    return -value


def _bump(t):
    """ `exp(-1 / (4 t (1 - t)))` on (0, 1), zero at the ends. """
    t = np.asarray(t, dtype=float)
    q = 4 * t * (1 - t)
    with np.errstate(divide='ignore', over='ignore', invalid='ignore'):
        return np.where(q > 0, np.exp(-1 / np.where(q > 0, q, 1)), 0.)


class BumpProblem(SeparableProblem):
    """ A smooth bump times `t^2 (1 - t)`, shifted to zero mean. Flat at the periodic seam. """
    name = 'ex2'
    description = 'bump times t^2 (1 - t) plus a constant'

    @staticmethod
    def _parts(t):
        t = np.mod(np.asarray(t, dtype=float), 1.)
        q = 4 * t * (1 - t)
        inside = q > 0
        q_safe = np.where(inside, q, 1.)
        dq = 4 - 8 * t
        d2q = -8.

        b = _bump(t)
        db = np.where(inside, b * dq / q_safe ** 2, 0.)
        d2b = np.where(inside,
                       b * (dq ** 2 / q_safe ** 4 + d2q / q_safe ** 2 - 2 * dq ** 2 / q_safe ** 3),
                       0.)

        g = t ** 2 - t ** 3
        dg = 2 * t - 3 * t ** 2
        d2g = 2 - 6 * t
        return (b, db, d2b), (g, dg, d2g)

    def s(self, t):
        (b, _, _), (g, _, _) = self._parts(t)
        return b * g + bump_constant()

    def ds(self, t):
        (b, db, _), (g, dg, _) = self._parts(t)
        return db * g + b * dg

    def d2s(self, t):
        (b, db, d2b), (g, dg, d2g) = self._parts(t)
        return d2b * g + 2 * db * dg + b * d2g


class SineProblem(SeparableProblem):
    """ `sin(2 pi x) sin(2 pi y) [sin(2 pi z)]`, so `f = 4 dim pi^2 u`. """
    description = 'product of sines'

    def __init__(self, dim=2):
        if dim not in (2, 3):
            raise UnsupportedDimensionError(f'Sine problem needs dim 2 or 3, got {dim}')
        self.dim = dim
        self.name = 'ex3' if dim == 3 else 'sine2d'

    def s(self, t):
        return np.sin(2 * np.pi * np.asarray(t, dtype=float))

    def ds(self, t):
        return 2 * np.pi * np.cos(2 * np.pi * np.asarray(t, dtype=float))

    def d2s(self, t):
        return -4 * np.pi ** 2 * self.s(t)


class ZeroProblem(ManufacturedProblem):
    """ u = 0 and f = 0. """
    description = 'zero solution'

    def __init__(self, dim=2):
        self.dim = dim
        self.name = f'zero{dim}d'

    def u(self, *coords):
        return np.zeros(np.broadcast(*coords).shape)

    def grad(self, *coords):
        return np.zeros(np.broadcast(*coords).shape + (self.dim, ))

    def f(self, *coords):
        return np.zeros(np.broadcast(*coords).shape)


PROBLEMS = {
    'ex1': SquareWaveProblem,
    'ex2': BumpProblem,
    'ex3': lambda: SineProblem(dim=3),
    'sine2d': lambda: SineProblem(dim=2),
    'zero2d': lambda: ZeroProblem(dim=2),
    'zero3d': lambda: ZeroProblem(dim=3),
}


def get_problem(name, **kwargs):
    """ A problem by short name, or by the dotted path of a `ManufacturedProblem` subclass.

    Args:
        name (str): One of `PROBLEMS` or e.g. `mypackage.problems.MyProblem`.
        **kwargs: Parsed to the problem class when loading by path.
    Returns:
        ManufacturedProblem: The problem.
    """
    if isinstance(name, ManufacturedProblem):
        return name
    if name in PROBLEMS:
        return PROBLEMS[name]()

    problem_class = load_module(name)
    problem = problem_class(**kwargs)
    if not isinstance(problem, ManufacturedProblem):
        raise TypeError(f'{name} is not a ManufacturedProblem')
    return problem
