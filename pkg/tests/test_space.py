import numpy as np
import pytest

from ncfem.analysis.golden import RANK_DEFICIENCY
from ncfem.error import (InvalidGridSpecError, NotRepresentableError, ParityError,
                         TooLargeError, UnsupportedDimensionError)
from ncfem.linalg import numerical_rank
from ncfem.mesh import build_mesh, dice_constraint_matrix
from ncfem.schemes import alternating_integrals, coupling_block
from ncfem.space import (AlternatingDescriptor, alternating_function, alternating_members,
                         build_catalog, constraint_rank_oracle, dim_formulas, dimension_sweep,
                         kernel_vectors, mass_matrix, neumann_dimension, node_representation,
                         node_stiffness, representation_matrix, stiffness_matrix,
                         stiffness_rank_deficiency, unity_representation)

GRIDS_2D = [(2, 2), (2, 3), (3, 3), (4, 4), (4, 6), (5, 4)]
GRIDS_3D = [(2, 2, 2), (3, 2, 2), (3, 3, 2), (2, 3, 4), (3, 3, 3), (4, 4, 2)]


@pytest.mark.parametrize('counts,dim_space,ker', [
    ((4, 4), 17, 1),
    ((3, 4), 12, 0),
    ((2, 2, 2), 13, 4),
    ((4, 4, 2), 41, 8),
    ((3, 3, 3), 27, 0),
])
def test_dim_formulas_periodic(counts, dim_space, ker):
    record = dim_formulas(counts)
    assert record.dim_space == dim_space
    assert record.ker_representation == ker
    assert record.ker_stiffness == ker + 1
    assert record.node_span == np.prod(counts) - ker


def test_dim_formulas_boundary_conditions():
    neumann = dim_formulas((3, 4), 'neumann')
    assert neumann.dim_space == 12 + 3 + 4
    assert neumann.ker_representation is None
    assert dim_formulas((3, 4), 'dirichlet').dim_space == 2 * 3
    assert dim_formulas((3, 4, 5), 'dirichlet').dim_space == 2 * 3 * 4
    assert neumann_dimension((2, 3, 4)) == 24 + 6 + 12 + 8
    with pytest.raises(ValueError):
        dim_formulas((3, 4), 'robin')


@pytest.mark.parametrize('counts', GRIDS_2D + GRIDS_3D)
@pytest.mark.parametrize('bc', ['periodic', 'neumann', 'dirichlet'])
def test_formulas_match_rank_oracle(counts, bc):
    assert constraint_rank_oracle(counts, bc) == dim_formulas(counts, bc)


def test_rank_oracle_cap():
    with pytest.raises(TooLargeError):
        constraint_rank_oracle((10, 10, 10), max_faces=1000)
    with pytest.raises(TooLargeError):
        stiffness_rank_deficiency((10, 10, 10), max_faces=1000)


def test_published_rank_table_matches_formula():
    for counts, deficiency in RANK_DEFICIENCY.items():
        assert dim_formulas(counts).ker_stiffness == deficiency, counts


@pytest.mark.parametrize('counts', [(2, 2, 2), (3, 2, 2), (4, 3, 2), (4, 4, 3), (4, 4, 4)])
def test_stiffness_rank_deficiency(counts):
    assert stiffness_rank_deficiency(counts) == RANK_DEFICIENCY[counts]


def test_dimension_sweep():
    table = dimension_sweep([(4, 4), (3, 4)], bcs=('periodic', 'dirichlet'), verify=True)
    assert table.colnames == ['Nx', 'Ny', 'bc', 'quantity', 'predicted', 'oracle', 'match']
    assert all(table['match'])
    rows = table[(table['Nx'] == 4) & (table['bc'] == 'periodic') &
                 (table['quantity'] == 'dim_space')]
    assert list(rows['predicted']) == [17]

    table = dimension_sweep([(2, 2, 2)], verify=False)
    assert 'oracle' not in table.colnames
    assert 'Nz' in table.colnames
    with pytest.raises(ValueError):
        dimension_sweep([(2, 2), (2, 2, 2)])


@pytest.mark.parametrize('kind,size', [('B', 16), ('Bflat', 15), ('A', 2), ('Aflat', 2),
                                       ('E', 18), ('Eflat', 17)])
def test_catalog_sizes_2d(mesh_4x4, kind, size):
    assert len(build_catalog(mesh_4x4, kind)) == size


@pytest.mark.parametrize('kind,size', [('B', 8), ('A', 12), ('Aflat', 9), ('E', 20)])
def test_catalog_sizes_3d(mesh_2x2x2, kind, size):
    assert len(build_catalog(mesh_2x2x2, kind)) == size


def test_catalog_errors(mesh_odd, mesh_2x2x2):
    with pytest.raises(ParityError):
        build_catalog(mesh_odd, 'Bflat')
    with pytest.raises(UnsupportedDimensionError):
        build_catalog(mesh_2x2x2, 'Eflat')
    with pytest.raises(InvalidGridSpecError):
        build_catalog(build_mesh((4, 4), bc='neumann'))
    with pytest.raises(ValueError):
        build_catalog(mesh_odd, 'C')
    assert build_catalog(mesh_odd, 'A').is_empty


@pytest.mark.parametrize('counts,kind', [((4, 4), 'Eflat'), ((4, 6), 'Eflat'), ((4, 4), 'E'),
                                         ((3, 4), 'B'), ((2, 2, 2), 'E'), ((3, 2, 2), 'E')])
def test_catalog_spans_the_space(counts, kind):
    mesh = build_mesh(counts)
    catalog = build_catalog(mesh, kind)
    values = catalog.values.toarray()
    assert numerical_rank(values) == dim_formulas(counts).dim_space
    # Every member satisfies the dice rule.
    assert np.abs(dice_constraint_matrix(mesh) @ values).max() == pytest.approx(0)


def test_eflat_is_a_basis(mesh_4x4):
    catalog = build_catalog(mesh_4x4, 'Eflat')
    assert numerical_rank(catalog.values.toarray()) == len(catalog)
    assert catalog.dropped == (15, )
    assert catalog.n_node_members == 15
    assert len(catalog.alternating_members) == 2


def test_representation_matrix(mesh_4x4):
    catalog = build_catalog(mesh_4x4, 'B')
    matrix = representation_matrix(catalog)
    assert matrix.shape == (mesh_4x4.n_faces, mesh_4x4.n_nodes)
    assert matrix.toarray() == pytest.approx(node_representation(mesh_4x4).toarray())
    # Each face midpoint value is the mean of its two end nodes.
    assert np.asarray(matrix.sum(axis=1)).ravel() == pytest.approx(np.ones(mesh_4x4.n_faces))

    matrix.data[:] = 7.
    assert catalog.values.data == pytest.approx(np.full(catalog.values.nnz, 0.5))

    eflat = build_catalog(mesh_4x4, 'Eflat')
    assert representation_matrix(eflat).shape == (mesh_4x4.n_faces, len(eflat))


def test_unity_representation(mesh_4x4):
    catalog = build_catalog(mesh_4x4, 'Eflat')
    w = unity_representation(catalog)
    assert catalog.values @ w == pytest.approx(np.ones(mesh_4x4.n_faces))
    assert set(np.round(w[catalog.node_slice], 12)) == {0., 2.}
    assert w[catalog.alternating_slice] == pytest.approx(np.zeros(2))
    with pytest.raises(ValueError):
        unity_representation(build_catalog(mesh_4x4, 'B'))


@pytest.mark.parametrize('counts', GRIDS_2D + GRIDS_3D)
def test_kernel_vectors(counts):
    mesh = build_mesh(counts)
    kernel = kernel_vectors(mesh)
    assert kernel.n_representation == dim_formulas(counts).ker_representation
    assert kernel.n_stiffness == kernel.n_representation + 1

    B = node_representation(mesh)
    assert np.abs(B @ kernel.representation).max(initial=0) == pytest.approx(0)
    S = node_stiffness(mesh)
    for column in kernel.stiffness.T:
        assert S.matvec(column) == pytest.approx(np.zeros(mesh.n_nodes), abs=1e-12)
    assert numerical_rank(kernel.stiffness) == kernel.n_stiffness


def test_node_stiffness(mesh_4x4):
    S = node_stiffness(mesh_4x4)
    assert S.symmetric
    assert S.diagonal() == pytest.approx(np.full(16, 2.))
    assert S.row_sums() == pytest.approx(np.zeros(16))


@pytest.mark.parametrize('counts', [(3, 4), (2, 3, 2)])
def test_node_stiffness_matches_face_assembly(counts):
    mesh = build_mesh(counts)
    by_faces = stiffness_matrix(mesh, node_representation(mesh))
    assert by_faces.to_dense() == pytest.approx(node_stiffness(mesh).to_dense())


def test_alternating_members():
    members, dropped = alternating_members(build_mesh((4, 4)))
    assert members == [AlternatingDescriptor(0), AlternatingDescriptor(1)]
    assert dropped == []

    members, dropped = alternating_members(build_mesh((2, 4, 2)), flat=True)
    assert len(members) == (4 + 2) + (2 + 2) + (2 + 4) - 3
    assert len(dropped) == 3

    # One odd count: layers along the odd axis only.
    members, _ = alternating_members(build_mesh((3, 2, 4)))
    assert len(members) == 6
    assert {m.layer_axis for m in members} == {0}

    assert alternating_members(build_mesh((3, 3, 2))) == ([], [])


def test_alternating_function_values(mesh_4x4):
    values = alternating_function(mesh_4x4, AlternatingDescriptor(0))
    x_faces = mesh_4x4.faces_of_axis(0)
    assert np.abs(values[x_faces]) == pytest.approx(np.ones(16))
    assert values[mesh_4x4.faces_of_axis(1)] == pytest.approx(np.zeros(16))
    assert str(AlternatingDescriptor(0)) == 'psi_x'
    assert str(AlternatingDescriptor(2, 0, 1)) == '(psi^x_1)_z'


def test_alternating_not_representable(mesh_odd):
    with pytest.raises(NotRepresentableError):
        alternating_function(mesh_odd, AlternatingDescriptor(0))
    # N_y = 4 is even, so psi_y exists.
    assert np.abs(alternating_function(mesh_odd, AlternatingDescriptor(1))).sum() == 12
    with pytest.raises(NotRepresentableError):
        alternating_function(build_mesh((4, 4), bc='neumann'), AlternatingDescriptor(0))
    with pytest.raises(NotRepresentableError):
        alternating_function(build_mesh((3, 2, 2)), AlternatingDescriptor(0, 1, 0))
    with pytest.raises(ValueError):
        alternating_function(build_mesh((2, 2, 2)), AlternatingDescriptor(0, 0, 0))


@pytest.mark.parametrize('counts', [(4, 4), (6, 4), (2, 2, 2), (3, 2, 2)])
def test_alternating_functions_integrate_to_zero(counts):
    mesh = build_mesh(counts)
    assert alternating_integrals(mesh) == pytest.approx(np.zeros(len(build_catalog(mesh, 'A'))))


@pytest.mark.parametrize('counts', [(4, 4), (6, 4), (2, 2, 2), (4, 2, 2)])
def test_node_and_alternating_are_orthogonal(counts):
    block = coupling_block(build_mesh(counts))
    assert np.abs(block).max() == pytest.approx(0, abs=1e-12)


def test_alternating_stiffness_2d(mesh_4x4):
    catalog = build_catalog(mesh_4x4, 'A')
    S = stiffness_matrix(mesh_4x4, catalog.values)
    # 4 / h^2 on the diagonal.
    assert S.to_dense() == pytest.approx(64 * np.eye(2))


@pytest.mark.parametrize('counts', [(4, 4), (2, 2, 2), (4, 4, 4)])
def test_alternating_mass_is_scaled_stiffness(counts):
    mesh = build_mesh(counts)
    values = build_catalog(mesh, 'A').values
    h = mesh.h[0]
    assert mass_matrix(mesh, values).to_dense() == \
        pytest.approx(h ** 2 / 12 * stiffness_matrix(mesh, values).to_dense())
