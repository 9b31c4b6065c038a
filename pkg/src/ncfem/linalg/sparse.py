import numpy as np
from scipy import io as sio
from scipy import sparse

from ncfem.utils.logger import logger


class SparseMatrix():
    """ An immutable compressed sparse row matrix.

    Column ids are sorted and unique within each row. Solvers only rely on `matvec`; the
    product is scipy's serial CSR kernel, which reduces every row in a fixed order.
    """

    def __init__(self, matrix, symmetric=None, rtol=1e-14):
        """
        Args:
            matrix: Anything `scipy.sparse.csr_matrix` accepts.
            symmetric (bool, optional): Declare the matrix symmetric. If None the flag is
                detected; if True the claim is checked.
            rtol (float, optional): Relative tolerance of the symmetry check.
        """
        csr = sparse.csr_matrix(matrix, dtype=float, copy=True)
        csr.sum_duplicates()
        csr.sort_indices()
        if csr.shape[0] != csr.shape[1] and symmetric:
            raise ValueError(f'A non-square matrix of shape {csr.shape} cannot be symmetric')
        self._csr = csr

        detected = self.is_symmetric(rtol=rtol)
        if symmetric and not detected:
            raise ValueError('Matrix declared symmetric is not symmetric')
        self.symmetric = detected if symmetric is None else bool(symmetric)

    def __repr__(self):
        return f'SparseMatrix(shape={self.shape}, nnz={self.nnz}, symmetric={self.symmetric})'

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            return SparseMatrix(self._csr @ other._csr)
        return self.matvec(other)

    @classmethod
    def from_coo(cls, rows, cols, values, shape, **kwargs):
        """ Build from triplets; duplicate entries are summed. """
        coo = sparse.coo_matrix((np.asarray(values, dtype=float),
                                 (np.asarray(rows), np.asarray(cols))), shape=shape)
        return cls(coo, **kwargs)

    @classmethod
    def from_dense(cls, array, **kwargs):
        return cls(np.asarray(array, dtype=float), **kwargs)

    # Properties

    @property
    def shape(self):
        return self._csr.shape

    @property
    def nnz(self):
        return int(self._csr.nnz)

    @property
    def indptr(self):
        return self._csr.indptr.copy()

    @property
    def indices(self):
        return self._csr.indices.copy()

    @property
    def data(self):
        return self._csr.data.copy()

    # Methods

    def matvec(self, x):
        return self._csr @ np.asarray(x, dtype=float)

    def diagonal(self):
        return self._csr.diagonal()

    def to_dense(self):
        return self._csr.toarray()

    def to_scipy(self):
        """ A copy as a scipy CSR matrix. """
        return self._csr.copy()

    def is_symmetric(self, rtol=1e-14):
        if self.shape[0] != self.shape[1]:
            return False
        if self.nnz == 0:
            return True
        scale = np.max(np.abs(self._csr.data))
        diff = self._csr - self._csr.T
        return bool(diff.nnz == 0 or np.max(np.abs(diff.data)) <= rtol * scale)

    def row_sums(self):
        return np.asarray(self._csr.sum(axis=1)).ravel()

    def with_row(self, row, values):
        """ A copy with one row replaced by the dense vector `values`. """
        lil = self._csr.tolil()
        lil[row, :] = np.asarray(values, dtype=float)
        return SparseMatrix(lil.tocsr(), symmetric=False)

    def write_matrix_market(self, path, comment=''):
        """ Write in Matrix Market coordinate format; `.mtx` is appended if missing.

        Returns:
            str: The file name written.
        """
        path = str(path)
        if not path.endswith('.mtx'):
            path += '.mtx'
        symmetry = 'symmetric' if self.symmetric else 'general'
        target = sparse.tril(self._csr) if self.symmetric else self._csr
        sio.mmwrite(path, sparse.coo_matrix(target), comment=comment, symmetry=symmetry)
        logger.debug(f'Wrote {self!r} to {path}')
        return path

    @classmethod
    def read_matrix_market(cls, path, **kwargs):
        """ Read a Matrix Market file; symmetric storage is expanded to the full matrix. """
        return cls(sparse.csr_matrix(sio.mmread(str(path))), **kwargs)


def block_diag(*blocks):
    """ Block diagonal SparseMatrix of SparseMatrix or scipy blocks. """
    parts = [b.to_scipy() if isinstance(b, SparseMatrix) else sparse.csr_matrix(b)
             for b in blocks]
    symmetric = all(b.symmetric if isinstance(b, SparseMatrix) else False for b in blocks)
    return SparseMatrix(sparse.block_diag(parts, format='csr'),
                        symmetric=True if symmetric else None)
