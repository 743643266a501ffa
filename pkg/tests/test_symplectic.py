import pytest
from hypothesis import given, strategies as st

from src.algebra.linalg import ScalarMatrix, determinant, rank
from src.errors import NotLagrangianError, SympQuotError
from src.geometry.symplectic import (
    LagrangianSubspace,
    SymplecticMatrix,
    act_on_lagrangian,
    effectiveness_witness,
    generator_parameter_count,
    graph_lagrangian,
    identity_element,
    infinitesimal_action_rank,
    is_central,
    is_lagrangian,
    lagrangian_chart_dimension,
    lagrangian_tangent_dimension,
    random_lagrangian,
    random_symplectic,
    sp_lie_algebra_basis,
    standard_form,
    standard_lagrangian,
    upper_shear,
)

seeds = st.integers(0, 2**32 - 1)


def columns(*vectors):
    return ScalarMatrix.from_columns([list(v) for v in vectors], len(vectors[0]))


def test_standard_form():
    assert standard_form(1).J == ScalarMatrix.from_rows([[0, 1], [-1, 0]])
    space = standard_form(2)
    assert space.dimension == 4
    with pytest.raises(ValueError):
        standard_form(0)


def test_lagrangian_test():
    space = standard_form(2)
    assert is_lagrangian(columns([1, 0, 0, 0], [0, 1, 0, 0]), space)
    assert not is_lagrangian(columns([1, 0, 0, 0], [0, 0, 1, 0]), space)
    assert not is_lagrangian(columns([1, 0, 0, 0], [2, 0, 0, 0]), space)
    assert is_lagrangian(columns([1, 1]), standard_form(1))


def test_lagrangian_subspace_compares_spans():
    space = standard_form(2)
    a = LagrangianSubspace.from_basis(space, columns([1, 0, 0, 0], [0, 1, 0, 0]))
    b = LagrangianSubspace.from_basis(space, columns([1, 1, 0, 0], [1, -1, 0, 0]))
    assert a == b
    assert hash(a) == hash(b)
    assert a == standard_lagrangian(space)
    with pytest.raises(NotLagrangianError):
        LagrangianSubspace.from_basis(space, columns([1, 0, 0, 0], [0, 0, 1, 0]))


def test_graph_of_symmetric_matrix_is_lagrangian():
    space = standard_form(2)
    s = ScalarMatrix.from_rows([[1, 2], [2, -3]])
    assert is_lagrangian(graph_lagrangian(space, s), space)


@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_graph_is_lagrangian_exactly_when_symmetric(entries):
    space = standard_form(2)
    s = ScalarMatrix.from_rows([entries[:2], entries[2:]])
    assert is_lagrangian(graph_lagrangian(space, s), space) == (entries[1] == entries[2])


@pytest.mark.parametrize("r, expected", [(1, 1), (2, 3), (3, 6), (4, 10)])
def test_lagrangian_grassmannian_dimension(r, expected):
    assert lagrangian_chart_dimension(standard_form(r), seed=r) == expected


@pytest.mark.parametrize("r", [1, 2, 3])
def test_tangent_dimension_matches_chart(r):
    space = standard_form(r)
    v = random_lagrangian(space, 11)
    assert lagrangian_tangent_dimension(v) == lagrangian_chart_dimension(space) == r * (r + 1) // 2


@pytest.mark.parametrize("r", [1, 2, 3])
def test_lie_algebra_basis(r):
    space = standard_form(r)
    basis = sp_lie_algebra_basis(space)
    assert len(basis) == generator_parameter_count(space) == r * (2 * r + 1)
    for x in basis:
        assert (x.transpose() @ space.J + space.J @ x).is_zero()
    flat = ScalarMatrix.from_columns([[c for row in x.entries for c in row] for x in basis], 4 * r * r)
    assert rank(flat) == len(basis)


@pytest.mark.parametrize("r", [1, 2])
def test_infinitesimal_action(r):
    space = standard_form(r)
    one = [random_lagrangian(space, 3)]
    four = [random_lagrangian(space, seed) for seed in (5, 6, 7, 8)]
    assert infinitesimal_action_rank(one) == r * (r + 1) // 2
    assert infinitesimal_action_rank(four) == r * (2 * r + 1)


@given(seeds, st.integers(1, 3))
def test_random_symplectic_preserves_form(seed, r):
    space = standard_form(r)
    g = random_symplectic(space, seed)
    assert g.m.transpose() @ space.J @ g.m == space.J
    assert (g @ g.inverse()).m == ScalarMatrix.identity(2 * r)
    assert random_symplectic(space, seed).m == g.m


@pytest.mark.parametrize("r", [1, 2, 3])
def test_random_symplectic_has_unit_determinant(r):
    space = standard_form(r)
    for seed in range(20):
        assert determinant(random_symplectic(space, seed).m) == 1


def test_random_lagrangian_is_seeded():
    space = standard_form(2)
    assert random_lagrangian(space, 42) == random_lagrangian(space, 42)
    assert random_lagrangian(space, 42).basis == random_lagrangian(space, 42).basis
    assert len({random_lagrangian(space, seed) for seed in range(100)}) >= 2


def test_non_symplectic_matrix_rejected():
    space = standard_form(1)
    with pytest.raises(SympQuotError):
        SymplecticMatrix(space, ScalarMatrix.from_rows([[2, 0], [0, 1]]))


@given(seeds, seeds, seeds, st.integers(1, 3))
def test_action_is_a_group_action(s1, s2, s3, r):
    space = standard_form(r)
    g, h = random_symplectic(space, s1), random_symplectic(space, s2)
    v = random_lagrangian(space, s3)
    assert act_on_lagrangian(g @ h, v) == act_on_lagrangian(g, act_on_lagrangian(h, v))
    assert act_on_lagrangian(identity_element(space), v) == v


def test_center():
    space = standard_form(2)
    one = ScalarMatrix.identity(4)
    assert is_central(SymplecticMatrix(space, one))
    assert is_central(SymplecticMatrix(space, -one))
    assert not is_central(SymplecticMatrix(space, space.J))


def test_shear_has_a_witness():
    space = standard_form(1)
    shear = SymplecticMatrix(space, ScalarMatrix.from_rows([[1, 1], [0, 1]]))
    assert shear.m == upper_shear(space, ScalarMatrix.from_rows([[1]]))
    witness = effectiveness_witness(shear, 50, seed=0)
    assert witness is not None
    assert act_on_lagrangian(shear, witness) != witness


@pytest.mark.parametrize("sign", [1, -1])
def test_center_has_no_witness(sign):
    space = standard_form(2)
    m = SymplecticMatrix(space, ScalarMatrix.identity(4).scale(sign))
    assert effectiveness_witness(m, 50, seed=0) is None


def test_witness_needs_trials():
    with pytest.raises(ValueError):
        effectiveness_witness(identity_element(standard_form(1)), 0, seed=0)


@given(seeds, st.integers(1, 3))
def test_non_central_elements_move_something(seed, r):
    g = random_symplectic(standard_form(r), seed)
    witness = effectiveness_witness(g, 50, seed)
    assert (witness is None) == is_central(g)
