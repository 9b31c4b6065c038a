""" Linear maps between face values, cell data and catalog coefficients.

A function of the nonconforming space is stored by its face midpoint values. Its restriction
to a cell is linear, so the cell mean and the cell gradient are linear in the face values;
every bilinear form of the method is assembled from those two maps.
"""
import numpy as np
from scipy import sparse

from ncfem.element.local import local_stiffness
from ncfem.linalg.sparse import SparseMatrix


def node_representation(mesh):
    """ Face values of the node based functions, shape (n_faces, n_nodes).

    The node function of z is 1/2 at the midpoint of every face that has z as a vertex.
    On a periodic mesh with a single cell along an axis a face may meet the same canonical
    node twice and the contributions add up.
    """
    n_face_nodes = mesh.face_nodes.shape[1]
    rows = np.repeat(np.arange(mesh.n_faces), n_face_nodes)
    cols = mesh.face_nodes.ravel()
    return sparse.coo_matrix((np.full(len(rows), 0.5), (rows, cols)),
                             shape=(mesh.n_faces, mesh.n_nodes)).tocsr()


def difference_operator(mesh):
    """ The cellwise gradient of a face value vector.

    Row `cell * dim + axis` holds `(v(axis+) - v(axis-)) / h_axis`.

    Returns:
        scipy.sparse.csr_matrix: Shape (n_cells * dim, n_faces).
    """
    dim = mesh.dim
    n_cells = mesh.n_cells
    h = np.array(mesh.h)

    rows, cols, vals = [], [], []
    for axis in range(dim):
        row = np.arange(n_cells) * dim + axis
        rows += [row, row]
        cols += [mesh.cell_faces[:, 2 * axis + 1], mesh.cell_faces[:, 2 * axis]]
        vals += [np.full(n_cells, 1 / h[axis]), np.full(n_cells, -1 / h[axis])]

    return sparse.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                             shape=(n_cells * dim, mesh.n_faces)).tocsr()


def mean_operator(mesh):
    """ The cell mean of a face value vector, the average over the 2 dim faces of a cell. """
    n_local = 2 * mesh.dim
    rows = np.repeat(np.arange(mesh.n_cells), n_local)
    cols = mesh.cell_faces.ravel()
    return sparse.coo_matrix((np.full(len(rows), 1 / n_local), (rows, cols)),
                             shape=(mesh.n_cells, mesh.n_faces)).tocsr()


def _as_csr(values):
    if isinstance(values, SparseMatrix):
        return values.to_scipy()
    return sparse.csr_matrix(values)


def stiffness_matrix(mesh, values):
    """ `a_h(psi_k, psi_j) = sum_K int_K grad psi_k . grad psi_j` for the given functions.

    Args:
        mesh (PeriodicMesh): The mesh.
        values: Face values of the functions as columns, shape (n_faces, n_functions).
    Returns:
        SparseMatrix: The symmetric stiffness matrix.
    """
    gradients = difference_operator(mesh) @ _as_csr(values)
    matrix = mesh.cell_volume * (gradients.T @ gradients)
    return SparseMatrix(_symmetrize(matrix), symmetric=True)


def mass_matrix(mesh, values):
    """ The L2 products of the given functions.

    On a cell a linear function with mean m and gradient g has
    `int_K u v = |K| (m_u m_v + sum_a h_a^2 / 12 g_u,a g_v,a)`.
    """
    values = _as_csr(values)
    means = mean_operator(mesh) @ values
    gradients = difference_operator(mesh) @ values

    weights = np.tile(np.array(mesh.h) ** 2 / 12, mesh.n_cells)
    matrix = means.T @ means + gradients.T @ sparse.diags(weights) @ gradients
    return SparseMatrix(_symmetrize(mesh.cell_volume * matrix), symmetric=True)


def load_vector(mesh, values, f0, f1):
    """ `int f psi` for the given functions from the cell moments of f.

    Args:
        mesh (PeriodicMesh): The mesh.
        values: Face values of the functions as columns.
        f0 (array): Per cell integrals of f, shape (n_cells, ).
        f1 (array): Per cell first moments `int_K f (x - x_K)`, shape (n_cells, dim).
    Returns:
        numpy.ndarray: One entry per function.
    """
    face_load = (mean_operator(mesh).T @ np.asarray(f0) +
                 difference_operator(mesh).T @ np.asarray(f1).ravel())
    return np.asarray(_as_csr(values).T @ face_load).ravel()


def integral_vector(mesh, values):
    """ `int psi` for the given functions. """
    face_weights = mean_operator(mesh).T @ np.full(mesh.n_cells, mesh.cell_volume)
    return np.asarray(_as_csr(values).T @ face_weights).ravel()


def node_stiffness(mesh):
    """ The node stiffness matrix assembled from the element matrices.

    Equal to `stiffness_matrix(mesh, node_representation(mesh))`; kept as the element by
    element reference assembly.
    """
    element = local_stiffness(mesh.h, mesh.dim)
    n_local = element.shape[0]
    rows = np.repeat(mesh.cell_nodes, n_local, axis=1).ravel()
    cols = np.tile(mesh.cell_nodes, (1, n_local)).ravel()
    vals = np.tile(element.ravel(), mesh.n_cells)
    return SparseMatrix.from_coo(rows, cols, vals, shape=(mesh.n_nodes, mesh.n_nodes),
                                 symmetric=True)


def _symmetrize(matrix):
    """ Remove the round-off asymmetry of a product `X^T Y` with X equal to Y. """
    matrix = sparse.csr_matrix(matrix)
    return (matrix + matrix.T) / 2
