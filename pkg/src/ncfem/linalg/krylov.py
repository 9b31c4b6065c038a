import time
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from ncfem.error import InconsistentSystemError
from ncfem.linalg.sparse import SparseMatrix
from ncfem.utils.logger import logger


@dataclass(frozen=True)
class SolverConfig:
    """ Stopping rule of the Krylov solvers.

    `max_iter` defaults to `max_iter_factor` times the number of unknowns.
    """
    tolerance: float = 1e-10
    max_iter: int = None
    max_iter_factor: int = 10
    restart: int = 20
    consistency_tolerance: float = 1e-8

    def __post_init__(self):
        if not 0 < self.tolerance < 1:
            raise ValueError(f'Tolerance must lie in (0, 1), got {self.tolerance}')
        if self.restart < 1:
            raise ValueError(f'Restart length must be at least 1, got {self.restart}')
        if self.max_iter is not None and self.max_iter < 0:
            raise ValueError(f'max_iter must be non-negative, got {self.max_iter}')
        if self.max_iter_factor < 1:
            raise ValueError(f'max_iter_factor must be at least 1, got {self.max_iter_factor}')

    @classmethod
    def from_config(cls, config, **overrides):
        """ Build from the `solver` section of a config dict; keyword arguments win. """
        section = dict(config.get('solver', dict())) if config else dict()
        section.update({k: v for k, v in overrides.items() if v is not None})
        fields = ('tolerance', 'max_iter', 'max_iter_factor', 'restart', 'consistency_tolerance')
        return cls(**{k: section[k] for k in fields if k in section})

    def max_iter_for(self, n):
        return self.max_iter if self.max_iter is not None else self.max_iter_factor * n


@dataclass(frozen=True)
class SolveReport:
    """ Outcome of an iterative solve. The residual is relative to the norm of b. """
    method: str
    iterations: int
    residual: float
    converged: bool
    wall_time: float
    size: int

    def __str__(self):
        status = 'converged' if self.converged else 'NOT converged'
        return (f'{self.method}: {status} after {self.iterations} iterations, '
                f'relative residual {self.residual:.3e}, {self.wall_time:.3f} s, n={self.size}')


def as_operator(A):
    """ The matrix-vector product of a SparseMatrix, scipy sparse matrix or dense array. """
    if isinstance(A, SparseMatrix):
        return A.matvec, A.shape
    if sparse.issparse(A):
        return A.dot, A.shape
    A = np.asarray(A, dtype=float)
    return A.dot, A.shape


def check_consistency(b, kernel, rtol=1e-8):
    """ Raise if b has a component along the kernel of a symmetric matrix.

    Args:
        b (array): The right hand side.
        kernel (array): Kernel vectors as columns (n, m), or a list of vectors.
        rtol (float, optional): Allowed kernel component relative to the norm of b.
    Returns:
        float: The norm of the kernel component.
    """
    kernel = np.asarray(kernel, dtype=float)
    if kernel.ndim == 1:
        kernel = kernel[:, None]
    elif kernel.shape[0] != len(b):
        kernel = kernel.T
    if kernel.size == 0:
        return 0.
    basis, _ = np.linalg.qr(kernel)
    component = float(np.linalg.norm(basis.T @ b))
    if component > rtol * max(np.linalg.norm(b), np.finfo(float).tiny):
        raise InconsistentSystemError(f'Right hand side has a kernel component of norm '
                                      f'{component:.3e} (norm of b {np.linalg.norm(b):.3e})')
    return component


def cg(A, b, x0=None, config=None, kernel=None, callback=None):
    """ Conjugate gradients for a symmetric positive semi-definite system.

    On a consistent singular system the iterates stay in `x0 + Im A`, so a kernel component
    of the initial guess (e.g. its mean value) is carried through unchanged.

    Args:
        A: SparseMatrix, scipy sparse matrix or dense array.
        b (array): The right hand side.
        x0 (array, optional): Initial guess, default zero.
        config (SolverConfig, optional): Stopping rule, default `SolverConfig()`.
        kernel (array, optional): Kernel vectors of A; if given b is checked for consistency.
        callback (callable, optional): Called as `callback(iteration, x)` after every update.
    Returns:
        tuple: (x, SolveReport).
    """
    config = config or SolverConfig()
    matvec, shape = as_operator(A)
    b = np.asarray(b, dtype=float)
    n = len(b)
    if shape != (n, n):
        raise ValueError(f'Matrix of shape {shape} does not match a right hand side of length {n}')

    if kernel is not None:
        check_consistency(b, kernel, rtol=config.consistency_tolerance)

    start_time = time.perf_counter()
    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float)
    max_iter = config.max_iter_for(n)

    b_norm = np.linalg.norm(b)
    scale = b_norm if b_norm > 0 else 1.0

    r = b - matvec(x)
    residual = np.linalg.norm(r) / scale
    iteration = 0
    converged = residual <= config.tolerance

    p = r.copy()
    rr = r @ r
    while not converged and iteration < max_iter:
        Ap = matvec(p)
        pAp = p @ Ap
        if pAp <= 0:
            logger.warning(f'CG breakdown at iteration {iteration}: p.Ap = {pAp:.3e}')
            break

        alpha = rr / pAp
        x += alpha * p
        r -= alpha * Ap
        iteration += 1
        if callback is not None:
            callback(iteration, x)

        rr_new = r @ r
        residual = np.sqrt(rr_new) / scale
        if residual <= config.tolerance:
            # Confirm with the true residual and restart from it if the recursion drifted.
            r = b - matvec(x)
            rr_new = r @ r
            residual = np.sqrt(rr_new) / scale
            if residual <= config.tolerance:
                converged = True
                break
            p = r.copy()
        else:
            p = r + (rr_new / rr) * p
        rr = rr_new

    report = SolveReport(method='CG',
                         iterations=iteration,
                         residual=float(residual),
                         converged=bool(converged),
                         wall_time=time.perf_counter() - start_time,
                         size=n)
    if converged:
        logger.debug(str(report))
    else:
        logger.warning(str(report))
    return x, report


def gmres_restarted(A, b, x0=None, config=None):
    """ Restarted GMRES(m) with modified Gram-Schmidt Arnoldi and Givens rotations.

    The iteration count is the total number of Arnoldi steps over all cycles. A cycle that
    fails to reduce the residual ends the solve with `converged=False`.

    Args:
        A: SparseMatrix, scipy sparse matrix or dense array.
        b (array): The right hand side.
        x0 (array, optional): Initial guess, default zero.
        config (SolverConfig, optional): Stopping rule and restart length.
    Returns:
        tuple: (x, SolveReport).
    """
    config = config or SolverConfig()
    matvec, shape = as_operator(A)
    b = np.asarray(b, dtype=float)
    n = len(b)
    if shape != (n, n):
        raise ValueError(f'Matrix of shape {shape} does not match a right hand side of length {n}')

    start_time = time.perf_counter()
    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float)
    max_iter = config.max_iter_for(n)
    m = max(1, min(config.restart, n))
    tol = config.tolerance

    b_norm = np.linalg.norm(b)
    scale = b_norm if b_norm > 0 else 1.0

    r = b - matvec(x)
    beta = np.linalg.norm(r)
    residual = beta / scale
    iteration = 0
    converged = residual <= tol

    while not converged and iteration < max_iter:
        V = np.zeros((m + 1, n))
        H = np.zeros((m + 1, m))
        cs = np.zeros(m)
        sn = np.zeros(m)
        g = np.zeros(m + 1)
        g[0] = beta
        V[0] = r / beta

        steps = 0
        for j in range(m):
            w = matvec(V[j])
            for i in range(j + 1):
                H[i, j] = V[i] @ w
                w -= H[i, j] * V[i]
            h_next = np.linalg.norm(w)
            H[j + 1, j] = h_next

            for i in range(j):
                H[i, j], H[i + 1, j] = (cs[i] * H[i, j] + sn[i] * H[i + 1, j],
                                        -sn[i] * H[i, j] + cs[i] * H[i + 1, j])
            denom = np.hypot(H[j, j], H[j + 1, j])
            if denom == 0:
                break
            cs[j] = H[j, j] / denom
            sn[j] = H[j + 1, j] / denom
            H[j, j] = denom
            H[j + 1, j] = 0.
            g[j + 1] = -sn[j] * g[j]
            g[j] = cs[j] * g[j]

            steps = j + 1
            iteration += 1
            # Happy breakdown: the Krylov space is invariant and the solution is exact.
            happy = h_next <= 1e-14 * beta
            if abs(g[j + 1]) / scale <= tol or happy or iteration >= max_iter:
                break
            V[j + 1] = w / h_next

        if steps == 0:
            break

        y = np.linalg.solve(np.triu(H[:steps, :steps]), g[:steps])
        x += V[:steps].T @ y

        r = b - matvec(x)
        new_beta = np.linalg.norm(r)
        new_residual = new_beta / scale
        converged = new_residual <= tol
        if not converged and new_residual >= residual * (1 - 1e-14):
            residual = new_residual
            logger.warning(f'GMRES({m}) stagnated at iteration {iteration}')
            break
        beta, residual = new_beta, new_residual

    report = SolveReport(method=f'GMRES({m})',
                         iterations=iteration,
                         residual=float(residual),
                         converged=bool(converged),
                         wall_time=time.perf_counter() - start_time,
                         size=n)
    if converged:
        logger.debug(str(report))
    else:
        logger.warning(str(report))
    return x, report
