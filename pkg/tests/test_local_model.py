from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import diagonal_point
from src.algebra.exactnum import Jet
from src.algebra.linalg import JetMatrix, ScalarMatrix
from src.errors import (
    MembershipError,
    NonReducedDivisorError,
    NotLagrangianError,
    RepeatedSupportError,
)
from src.geometry.local_model import (
    DivisorMultiset,
    LocalModel,
    QuotPoint,
    SupportPoint,
    apply_group,
    canonical_form,
    divisor_map,
    from_lagrangians,
    is_in_q,
    is_in_tilde_q,
    is_reduced_member,
    lagrangians_from_fiber,
    local_colength,
    local_colengths,
    local_model_summary,
    local_multiplicity,
    perfect_pairing_check,
    same_subsheaf,
    split_by_support,
    total_colength,
)
from src.geometry.sampling import random_q_member, random_support_points, random_tilde_q_member
from src.geometry.symplectic import (
    LagrangianSubspace,
    SymplecticMatrix,
    graph_lagrangian,
    identity_element,
    random_lagrangian,
    random_symplectic,
    standard_form,
)

seeds = st.integers(0, 2**32 - 1)


def points(*coordinates):
    return [SupportPoint(Fraction(c)) for c in coordinates]


def graph(r, rows):
    space = standard_form(r)
    return LagrangianSubspace.from_basis(space, graph_lagrangian(space, ScalarMatrix.from_rows(rows)))


# ------------------------------------------------------------------
# Hand-computed examples
# ------------------------------------------------------------------
@pytest.mark.parametrize(
    "r, d, exponents, colength, divisor",
    [
        (1, 1, [1, 0], 1, [{"point": "0", "mult": 1}]),
        (1, 2, [1, 1], 2, [{"point": "0", "mult": 2}]),
        (1, 2, [2, 0], 2, [{"point": "0", "mult": 2}]),
    ],
)
def test_diagonal_members(r, d, exponents, colength, divisor):
    q = diagonal_point(r, d, exponents)
    assert total_colength(q) == colength
    assert is_in_tilde_q(q)
    assert is_in_q(q)
    assert divisor_map(q).to_records() == divisor
    assert perfect_pairing_check(q)


def test_wrong_colength_is_not_in_tilde_q():
    q = diagonal_point(2, 1, [1, 0, 0, 0])
    assert total_colength(q) == 1
    assert not is_in_tilde_q(q)
    assert not is_in_q(q)


def test_empty_point_is_not_a_member():
    q = QuotPoint(1, 1, ())
    assert not is_in_tilde_q(q)
    assert divisor_map(q).degree == 0


def test_non_lagrangian_quotient(non_lagrangian_point):
    q = non_lagrangian_point
    assert local_colength(q.models[0]) == 2
    assert local_multiplicity(q.models[0]) == 0
    assert is_in_tilde_q(q)
    assert not is_in_q(q)
    assert divisor_map(q).pairs == ()
    with pytest.raises(MembershipError):
        perfect_pairing_check(q)


def test_rank_deficient_model_is_not_a_member():
    q = diagonal_point(1, 1, [0, 3], order=3)
    assert local_colength(q.models[0]) == 3
    assert not is_in_tilde_q(q)
    assert local_model_summary(q)[0]["pivot_exponents"] is None


def test_summary_reports_pivots():
    summary = local_model_summary(diagonal_point(1, 1, [1, 0]))
    assert summary == [{"point": "0", "colength": 1, "multiplicity": 1, "pivot_exponents": [1, 0]}]


def test_repeated_support_rejected():
    model = diagonal_point(1, 2, [1, 0]).models[0]
    with pytest.raises(RepeatedSupportError):
        QuotPoint(1, 2, (model, model))


def test_models_are_sorted_by_point():
    a = diagonal_point(1, 2, [1, 0], at=3).models[0]
    b = diagonal_point(1, 2, [1, 0], at=-1).models[0]
    q = QuotPoint(1, 2, (a, b))
    assert [str(p) for p in q.points] == ["-1", "3"]


def test_divisor_multiset():
    divisor = DivisorMultiset(((SupportPoint(Fraction(2)), 1), (SupportPoint(Fraction(1, 2)), 3)))
    assert divisor.degree == 4
    assert not divisor.is_reduced()
    assert divisor.to_records() == [{"point": "1/2", "mult": 3}, {"point": "2", "mult": 1}]
    with pytest.raises(ValueError):
        DivisorMultiset(((SupportPoint(Fraction(0)), 0),))


# ------------------------------------------------------------------
# Fiber constructor and its inverse
# ------------------------------------------------------------------
def test_from_lagrangians_example():
    subspaces = [graph(2, [[1, 0], [0, 2]]), graph(2, [[0, 1], [1, 0]])]
    q = from_lagrangians(points(0, 1), subspaces)
    assert q.order == 2 * 2 * 2 + 1
    assert is_in_q(q)
    assert is_reduced_member(q)
    assert total_colength(q) == 4
    assert list(local_colengths(q).values()) == [2, 2]
    assert perfect_pairing_check(q)
    found_points, found = lagrangians_from_fiber(q)
    assert found_points == points(0, 1)
    assert found == subspaces


def test_from_lagrangians_rejects_bad_input():
    v = graph(1, [[1]])
    with pytest.raises(RepeatedSupportError):
        from_lagrangians(points(0, 0), [v, v])
    with pytest.raises(ValueError):
        from_lagrangians(points(0, 1), [v])
    with pytest.raises(NotLagrangianError) as info:
        from_lagrangians(points(0, 1), [graph(2, [[1, 0], [0, 1]]), v])
    assert info.value.index == 1


def test_inverse_refuses_non_reduced_divisor():
    with pytest.raises(NonReducedDivisorError):
        lagrangians_from_fiber(diagonal_point(1, 2, [2, 0]))


def test_inverse_refuses_non_members(non_lagrangian_point):
    with pytest.raises(MembershipError):
        lagrangians_from_fiber(non_lagrangian_point)


@given(seeds, st.integers(1, 2), st.integers(1, 3))
def test_fiber_round_trip(seed, r, d):
    space = standard_form(r)
    subspaces = [random_lagrangian(space, seed + k) for k in range(d)]
    q = from_lagrangians(points(*range(d)), subspaces)
    found_points, found = lagrangians_from_fiber(q)
    assert found == subspaces
    assert same_subsheaf(from_lagrangians(found_points, found), q)


# ------------------------------------------------------------------
# Laws on random members
# ------------------------------------------------------------------
@given(seeds, st.integers(1, 2), st.integers(1, 3))
def test_membership_laws(seed, r, d):
    q = random_q_member(r, d, seed)
    assert is_in_q(q)
    assert sum(local_multiplicity(m) for m in q.models) == d
    for model in q.models:
        assert local_colength(model) == r * local_multiplicity(model)
    assert divisor_map(q).degree == d
    assert perfect_pairing_check(q)


@given(seeds, st.integers(1, 3))
def test_rank_one_collapse(seed, d):
    q = random_tilde_q_member(1, d, seed)
    assert is_in_tilde_q(q)
    assert is_in_q(q)


@given(seeds, st.integers(1, 2), st.integers(1, 2))
def test_doubling_the_order_changes_nothing(seed, r, d):
    q = random_q_member(r, d, seed)
    wide = q.with_order(2 * q.order)
    assert divisor_map(wide) == divisor_map(q)
    assert local_colengths(wide) == local_colengths(q)
    assert is_in_q(wide)


@given(seeds, seeds, st.integers(1, 2), st.integers(1, 2))
def test_group_action_preserves_invariants(s1, s2, r, d):
    q = random_q_member(r, d, s1)
    g = random_symplectic(standard_form(r), s2)
    moved = apply_group(g, q)
    assert is_in_q(moved)
    assert divisor_map(moved) == divisor_map(q)
    assert total_colength(moved) == total_colength(q)
    assert same_subsheaf(apply_group(g.inverse(), moved), q)


def test_identity_and_center_act_trivially():
    q = random_q_member(2, 2, 5)
    space = standard_form(2)
    minus = SymplecticMatrix(space, -identity_element(space).m)
    assert canonical_form(apply_group(identity_element(space), q)) == canonical_form(q)
    assert same_subsheaf(apply_group(minus, q), q)


def test_split_by_support():
    q = random_q_member(2, 3, 9, reduced=False)
    parts = split_by_support(q)
    assert sum(part.d for part in parts) == 3
    assert all(is_in_q(part) for part in parts)
    assert [part.points[0] for part in parts] == [m.point for m in q.models if local_multiplicity(m) > 0]


def test_local_model_must_be_square():
    wide = JetMatrix.from_rows([[Jet.one(3), Jet.zero(3)]], 3)
    with pytest.raises(ValueError):
        LocalModel(SupportPoint(Fraction(0)), wide)


# ------------------------------------------------------------------
# Full-count sweeps
# ------------------------------------------------------------------
@pytest.mark.slow
def test_fiber_round_trip_sweep():
    space = standard_form(2)
    for seed in range(100):
        rng = np.random.default_rng(seed)
        chosen = random_support_points(rng, 3)
        subspaces = [random_lagrangian(space, rng) for _ in chosen]
        q = from_lagrangians(chosen, subspaces)
        found_points, found = lagrangians_from_fiber(q)
        expected = sorted(zip(chosen, subspaces), key=lambda pair: pair[0].coordinate)
        assert found_points == [p for p, _ in expected]
        assert found == [v for _, v in expected]
        assert same_subsheaf(from_lagrangians(found_points, found), q)


@pytest.mark.slow
def test_rank_one_collapse_sweep():
    for seed in range(100):
        q = random_tilde_q_member(1, 1 + seed % 3, seed)
        assert is_in_tilde_q(q)
        assert is_in_q(q)


@pytest.mark.slow
@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_membership_laws_sweep(r, d):
    for seed in range(10):
        q = random_q_member(r, d, 3000 + seed)
        assert sum(local_multiplicity(m) for m in q.models) == d
        for model in q.models:
            assert local_colength(model) == r * local_multiplicity(model)
