import numpy as np

from ncfem.element.quadrature import QuadratureRule, cell_chunks, cell_quadrature_points


def error_norms(problem, solution, rule=None):
    """ L2 and broken H1 errors of a discrete solution against the exact one.

    Both are sums of per cell Gauss quadratures of the difference, using the linear
    polynomial of each cell for the discrete part.

    Args:
        problem (ManufacturedProblem): Gives the exact u and its gradient.
        solution (DiscreteSolution): The discrete solution.
        rule (QuadratureRule, optional): The cell rule, default 3 point Gauss per axis.
    Returns:
        tuple: (L2 error, broken H1 error).
    """
    mesh = solution.mesh
    if problem.dim != mesh.dim:
        raise ValueError(f'{problem} does not live on {mesh}')
    rule = rule or QuadratureRule.gauss(3, mesh.dim)

    means, gradients = solution.cell_linear()
    weights = rule.local_weights(mesh.h)

    l2, h1 = 0., 0.
    for cells in cell_chunks(mesh):
        points = cell_quadrature_points(mesh, rule, cells)
        coords = np.moveaxis(points, -1, 0)
        offsets = points - mesh.cell_centers[cells][:, None, :]

        discrete = means[cells][:, None] + np.einsum('cd,cqd->cq', gradients[cells], offsets)
        error = problem.u(*coords) - discrete
        l2 += float(np.sum(error ** 2 @ weights))

        gradient_error = problem.grad(*coords) - gradients[cells][:, None, :]
        h1 += float(np.sum(np.sum(gradient_error ** 2, axis=-1) @ weights))

    return float(np.sqrt(l2)), float(np.sqrt(h1))
