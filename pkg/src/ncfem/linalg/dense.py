""" Dense rank, index and Drazin inverse computations, used as test oracles on small systems. """
import itertools
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ncfem.error import RankUnstableError
from ncfem.linalg.krylov import SolverConfig, cg
from ncfem.linalg.sparse import SparseMatrix


def _dense(A):
    if isinstance(A, SparseMatrix):
        return A.to_dense()
    if hasattr(A, 'toarray'):
        return A.toarray()
    return np.asarray(A, dtype=float)


def numerical_rank(A, rtol=1e-9, tol=None, check_stability=True):
    """ Rank from the singular values, counting those above `rtol * sigma_max` (or `tol`).

    Args:
        A: Dense array, SparseMatrix or scipy sparse matrix.
        rtol (float, optional): Relative threshold, default 1e-9.
        tol (float, optional): Absolute threshold, overrides `rtol`.
        check_stability (bool, optional): Require the same rank for the threshold times 10
            and divided by 10, default True.
    Returns:
        int: The rank.
    """
    A = _dense(A)
    if A.size == 0:
        return 0
    singular_values = scipy.linalg.svdvals(A)
    if tol is None:
        tol = rtol * singular_values[0]
    if singular_values[0] == 0:
        return 0

    rank = int(np.count_nonzero(singular_values > tol))
    if check_stability:
        low = int(np.count_nonzero(singular_values > tol / 10))
        high = int(np.count_nonzero(singular_values > tol * 10))
        if not low == rank == high:
            raise RankUnstableError(f'Rank {rank} of a {A.shape} matrix changes to {low} / {high} '
                                    f'when the threshold {tol:.3e} is divided / multiplied by 10')
    return rank


def nullity(A, **kwargs):
    A = _dense(A)
    return A.shape[1] - numerical_rank(A, **kwargs)


def _kernel_chain(A, tol):
    """ Orthonormal bases of ker A, ker A^2, ... built without forming powers of A.

    x lies in ker A^(j+1) exactly when A x lies in ker A^j, so each basis is the null space
    of A with its output projected off the previous basis. Singular values below `tol` count
    as zero; round-off stays at the level of |A| instead of growing like |A|^j.
    """
    basis = np.zeros((A.shape[0], 0))
    while True:
        projected = A - basis @ (basis.T @ A)
        _, singular_values, Vh = scipy.linalg.svd(projected)
        basis = Vh[int(np.count_nonzero(singular_values > tol)):].T
        yield basis


def _index_and_kernel(A, rtol):
    n = A.shape[0]
    tol = rtol * scipy.linalg.norm(A, 2)
    kernel = np.zeros((n, 0))
    for k, basis in enumerate(itertools.islice(_kernel_chain(A, tol), n + 1)):
        if basis.shape[1] == kernel.shape[1]:
            return k, kernel
        kernel = basis
    return n, kernel


def matrix_index(A, rtol=1e-9):
    """ The smallest k >= 0 with rank(A^k) = rank(A^(k+1)).

    The kernels of the powers are nested and grow until the index, after which they stay
    the same; the index is the first step where the kernel dimension stops growing.

    >>> matrix_index([[0., 1.], [0., 0.]])
    2
    """
    A = _dense(A)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f'Matrix index needs a square matrix, got shape {A.shape}')
    if n == 0:
        return 0
    return _index_and_kernel(A, rtol)[0]


def core_nilpotent_split(A, rtol=1e-9):
    """ Orthonormal bases of Im A^k and ker A^k with k the index of A.

    Im A^k is the orthogonal complement of ker (A^T)^k, which comes from the same kernel
    chain run on A^T.

    Returns:
        tuple: (k, range basis (n, r), kernel basis (n, n - r)).
    """
    A = _dense(A)
    n = A.shape[0]
    k, kernel = _index_and_kernel(A, rtol)
    if k == 0:
        return 0, np.eye(n), np.zeros((n, 0))

    tol = rtol * scipy.linalg.norm(A, 2)
    left_kernel = next(itertools.islice(_kernel_chain(A.T, tol), k - 1, None))
    if left_kernel.shape[1] != kernel.shape[1]:
        raise RankUnstableError(f'ker A^{k} has dimension {kernel.shape[1]} but ker (A^T)^{k} '
                                f'has dimension {left_kernel.shape[1]}')
    if left_kernel.shape[1] == 0:
        return k, np.eye(n), kernel
    return k, scipy.linalg.null_space(left_kernel.T), kernel


def drazin_inverse(A, rtol=1e-9):
    """ The Drazin inverse by the core-nilpotent splitting.

    With P = [range basis, kernel basis] of A^k, `P^-1 A P = diag(C, N)` with C invertible and
    N nilpotent, and `A^D = P diag(C^-1, 0) P^-1`.

    >>> np.allclose(drazin_inverse(np.diag([2., 0.])), np.diag([0.5, 0.]))
    True
    """
    A = _dense(A)
    n = A.shape[0]
    k, range_basis, kernel_basis = core_nilpotent_split(A, rtol=rtol)
    if k == 0:
        return scipy.linalg.inv(A)

    r = range_basis.shape[1]
    if r == 0:
        return np.zeros((n, n))

    P = np.hstack([range_basis, kernel_basis])
    P_inv = scipy.linalg.inv(P)
    core = (P_inv @ A @ P)[:r, :r]
    inner = np.zeros((n, n))
    inner[:r, :r] = scipy.linalg.inv(core)
    return P @ inner @ P_inv


@dataclass(frozen=True)
class KrylovVerdict:
    """ Whether `Ax = b` has a Krylov solution, and how CG compares with `A^D b`. """
    has_krylov_solution: bool
    index: int
    x_drazin: np.ndarray = None
    x_krylov: np.ndarray = None
    difference: float = None


def krylov_solution_check(A, b, config=None, rtol=1e-8):
    """ Decide whether b lies in Im A^k and, if so, compare CG with the Drazin solution.

    Args:
        A: Small symmetric positive semi-definite matrix.
        b (array): The right hand side.
        config (SolverConfig, optional): CG stopping rule.
        rtol (float, optional): Relative size of the part of b outside Im A^k that still
            counts as inside.
    Returns:
        KrylovVerdict: The verdict.
    """
    A = _dense(A)
    b = np.asarray(b, dtype=float)
    k, range_basis, _ = core_nilpotent_split(A)

    outside = b - range_basis @ (range_basis.T @ b)
    b_norm = np.linalg.norm(b)
    if np.linalg.norm(outside) > rtol * max(b_norm, np.finfo(float).tiny):
        return KrylovVerdict(has_krylov_solution=False, index=k)

    x_drazin = drazin_inverse(A) @ b
    x_krylov, _ = cg(A, b, config=config or SolverConfig(tolerance=1e-12))
    scale = max(np.linalg.norm(x_drazin), 1.0)
    return KrylovVerdict(has_krylov_solution=True,
                         index=k,
                         x_drazin=x_drazin,
                         x_krylov=x_krylov,
                         difference=float(np.linalg.norm(x_krylov - x_drazin) / scale))
