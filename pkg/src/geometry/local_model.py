"""
Points of the Quot schemes as finite families of local jet-matrix models.

The curve only enters through its local rings at support points, so it is
modeled as an affine chart with rational coordinates; at a point p the local
coordinate is t = x - p. A subsheaf F ⊂ E₀ = O^{2r} is recorded at each
support point by a full-rank 2r×2r jet matrix whose columns span the stalk F_p.
"""
# Importing dependencies.
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra.exactnum import Jet, scalar_to_str
from ..algebra.linalg import (
    JetMatrix,
    column_span_form,
    determinant,
    gram_matrix,
    jet_det_valuation,
    jet_hermite_form,
    rank,
    scalar_times_jet_matrix,
    standard_complement,
)
from ..config import Config
from ..errors import (
    MembershipError,
    NonReducedDivisorError,
    NotLagrangianError,
    RankDeficientError,
    RepeatedSupportError,
)
from .symplectic import (
    LagrangianSubspace,
    SymplecticMatrix,
    SymplecticSpace,
    is_lagrangian,
    standard_form,
)

logger = logging.getLogger(__name__)


# ------------------------------------------------------------------
# Domain types
# ------------------------------------------------------------------
@dataclass(frozen=True, order=True)
class SupportPoint:
    coordinate: Fraction

    def __str__(self) -> str:
        return scalar_to_str(self.coordinate)


@dataclass(frozen=True)
class LocalModel:
    point: SupportPoint
    matrix: JetMatrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise ValueError(f"local model at {self.point} is not square: {self.matrix.shape}")

    @property
    def order(self) -> int:
        return self.matrix.order


@dataclass(frozen=True)
class QuotPoint:
    """
    A candidate point of Q-tilde / Q: invariants (r, d) and local models at
    pairwise distinct support points, sorted by coordinate.
    """
    r: int
    d: int
    models: Tuple[LocalModel, ...]

    def __post_init__(self):
        if self.r < 1 or self.d < 1:
            raise ValueError(f"r and d must be positive, got r={self.r}, d={self.d}")
        points = [m.point for m in self.models]
        if len(set(points)) != len(points):
            raise RepeatedSupportError("support points must be pairwise distinct")
        for m in self.models:
            if m.matrix.shape != (2 * self.r, 2 * self.r):
                raise ValueError(
                    f"local model at {m.point} has shape {m.matrix.shape}, expected {2 * self.r}x{2 * self.r}"
                )
        if len({m.order for m in self.models}) > 1:
            raise ValueError("local models carry different truncation orders")
        object.__setattr__(self, "models", tuple(sorted(self.models, key=lambda m: m.point)))

    @property
    def order(self) -> int:
        if self.models:
            return self.models[0].order
        return Config.truncation_order(self.r, self.d)

    @property
    def space(self) -> SymplecticSpace:
        return standard_form(self.r)

    @property
    def points(self) -> List[SupportPoint]:
        return [m.point for m in self.models]

    def with_order(self, order: int) -> "QuotPoint":
        """The same point with every jet zero-padded to a larger truncation order."""
        return QuotPoint(
            self.r, self.d,
            tuple(LocalModel(m.point, m.matrix.extend(order)) for m in self.models),
        )


@dataclass(frozen=True)
class DivisorMultiset:
    """Effective divisor Σ m_p·p, stored as (point, multiplicity) pairs with m_p ≥ 1."""
    pairs: Tuple[Tuple[SupportPoint, int], ...]

    def __post_init__(self):
        if any(mult < 1 for _, mult in self.pairs):
            raise ValueError("divisor multiplicities must be positive")
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))

    @property
    def degree(self) -> int:
        return sum(mult for _, mult in self.pairs)

    def is_reduced(self) -> bool:
        return all(mult == 1 for _, mult in self.pairs)

    def as_dict(self) -> Dict[SupportPoint, int]:
        return dict(self.pairs)

    def to_records(self) -> List[Dict[str, object]]:
        return [{"point": str(p), "mult": mult} for p, mult in self.pairs]


# ------------------------------------------------------------------
# Local invariants
# ------------------------------------------------------------------
@lru_cache(maxsize=4096)
def local_colength(model: LocalModel) -> int:
    """Length of (E₀/F)_p = valuation of det(A_p); K means rank-deficient."""
    return jet_det_valuation(model.matrix)


@lru_cache(maxsize=4096)
def local_gram(model: LocalModel) -> JetMatrix:
    """A_pᵀ J A_p, the matrix of ω₀ restricted to F_p."""
    return gram_matrix(model.matrix, standard_form(model.matrix.rows // 2).J)


def local_multiplicity(model: LocalModel) -> int:
    """m_p: the largest m with ω₀(F_p ⊗ F_p) ⊂ t^m·O, capped at K."""
    return local_gram(model).min_valuation()


@lru_cache(maxsize=4096)
def local_hermite_form(model: LocalModel) -> JetMatrix:
    return jet_hermite_form(model.matrix)


def canonical_form(q: QuotPoint) -> Tuple[Tuple[SupportPoint, JetMatrix], ...]:
    """
    Pointwise Hermite forms; two presentations of one subsheaf give equal results.

    Raises:
        RankDeficientError: if some local matrix is not full rank
    """
    return tuple((m.point, local_hermite_form(m)) for m in q.models)


def same_subsheaf(a: QuotPoint, b: QuotPoint) -> bool:
    return (a.r, a.d) == (b.r, b.d) and canonical_form(a) == canonical_form(b)


# ------------------------------------------------------------------
# Fiber constructors
# ------------------------------------------------------------------
def from_lagrangians(
        points: Sequence[SupportPoint],
        subspaces: Sequence[LagrangianSubspace],
        order: Optional[int] = None,
) -> QuotPoint:
    """
    The point of the fiber of φ over Σ x_i given by Lagrangians (V_1, ..., V_d):
    at x_i the stalk is V_i + t·O^{2r}, presented as [B_i | t·C_i] with C_i the
    standard complement of the basis B_i.

    Raises:
        RepeatedSupportError: repeated support points
        NotLagrangianError: a subspace fails the Lagrangian test (index attached)
    """
    if len(points) != len(subspaces):
        raise ValueError(f"{len(points)} points but {len(subspaces)} Lagrangians")
    if not points:
        raise ValueError("at least one support point is required")
    if len(set(points)) != len(points):
        raise RepeatedSupportError("support points must be pairwise distinct")
    space = subspaces[0].space
    r, d = space.r, len(points)
    order = order or Config.truncation_order(r, d)
    models = []
    for index, (point, v) in enumerate(zip(points, subspaces)):
        if v.space != space or not is_lagrangian(v.basis, space):
            raise NotLagrangianError(f"subspace {index} is not Lagrangian in Q^{2 * r}", index=index)
        b, c = v.basis, standard_complement(v.basis)
        t = Jet.monomial(1, order)
        columns = [[Jet.constant(x, order) for x in col] for col in b.columns()]
        columns += [[Jet.constant(x, order) * t for x in col] for col in c.columns()]
        models.append(LocalModel(point, JetMatrix.from_columns(columns, order)))
    logger.debug("--- LOCAL MODEL: built fiber point with r=%d over %d points ---", r, d)
    return QuotPoint(r, d, tuple(models))


def lagrangians_from_fiber(q: QuotPoint) -> Tuple[List[SupportPoint], List[LagrangianSubspace]]:
    """
    Inverse of from_lagrangians on members with reduced divisor: at each support
    point V is the column span of A_p at t = 0.

    Raises:
        MembershipError: q is not a member of Q
        NonReducedDivisorError: some multiplicity exceeds 1
    """
    if not is_in_q(q):
        raise MembershipError("point is not a member of the symplectic Quot scheme")
    space = q.space
    points, subspaces = [], []
    for model in q.models:
        if local_colength(model) == 0:
            continue
        if local_multiplicity(model) != 1:
            raise NonReducedDivisorError(
                f"multiplicity {local_multiplicity(model)} at {model.point}; divisor is not reduced"
            )
        value = model.matrix.evaluate_at_zero()
        if rank(value) != space.r:
            raise MembershipError(f"fiber value at {model.point} has rank {rank(value)}, expected {space.r}")
        points.append(model.point)
        subspaces.append(LagrangianSubspace.from_basis(space, column_span_form(value)))
    return points, subspaces


# ------------------------------------------------------------------
# Membership and the divisor map
# ------------------------------------------------------------------
def local_colengths(q: QuotPoint) -> Dict[SupportPoint, int]:
    return {m.point: local_colength(m) for m in q.models}


def total_colength(q: QuotPoint) -> int:
    return sum(local_colength(m) for m in q.models)


def divisor_map(q: QuotPoint) -> DivisorMultiset:
    """
    φ(q) = Σ m_p·p with m_p the minimal valuation of A_pᵀ J A_p; points with
    m_p = 0 are omitted.
    """
    pairs = []
    for model in q.models:
        mult = local_multiplicity(model)
        if mult >= 1:
            pairs.append((model.point, mult))
    return DivisorMultiset(tuple(pairs))


def is_in_tilde_q(q: QuotPoint) -> bool:
    """Every local matrix full rank and total colength rd."""
    if any(local_colength(m) >= m.order for m in q.models):
        return False
    return total_colength(q) == q.r * q.d


def is_in_q(q: QuotPoint) -> bool:
    """
    Member of Q-tilde whose restricted form factors through O(-D) for some
    effective D of degree d, i.e. Σ_p m_p ≥ d.
    """
    if not is_in_tilde_q(q):
        return False
    return sum(local_multiplicity(m) for m in q.models) >= q.d


def perfect_pairing_check(q: QuotPoint) -> bool:
    """
    True iff at every support point (A_pᵀ J A_p)/t^{m_p} has invertible constant term.

    Raises:
        MembershipError: q is not a member of Q
    """
    if not is_in_q(q):
        raise MembershipError("perfect pairing check requires a member of Q")
    for model in q.models:
        gram = local_gram(model)
        mult = gram.min_valuation()
        if mult >= model.order:
            return False
        if determinant(gram.shift(mult).evaluate_at_zero()) == 0:
            logger.warning("--- LOCAL MODEL: pairing degenerates at %s ---", model.point)
            return False
    return True


def is_reduced_member(q: QuotPoint) -> bool:
    return is_in_q(q) and divisor_map(q).is_reduced()


# ------------------------------------------------------------------
# Group action and decomposition
# ------------------------------------------------------------------
def apply_group(m: SymplecticMatrix, q: QuotPoint) -> QuotPoint:
    """A_p ↦ m·A_p at every support point."""
    if m.space.r != q.r:
        raise ValueError(f"group element acts on r={m.space.r}, point has r={q.r}")
    return QuotPoint(
        q.r, q.d,
        tuple(LocalModel(model.point, scalar_times_jet_matrix(m.m, model.matrix)) for model in q.models),
    )


def split_by_support(q: QuotPoint) -> List[QuotPoint]:
    """
    Single-point constituents of a member of Q: the model at p becomes a point
    with invariants (r, m_p).

    Raises:
        MembershipError: q is not a member of Q
    """
    if not is_in_q(q):
        raise MembershipError("only members of Q split by support")
    parts = []
    for model in q.models:
        mult = local_multiplicity(model)
        if mult >= 1:
            parts.append(QuotPoint(q.r, mult, (model,)))
    return parts


def local_model_summary(q: QuotPoint) -> List[Dict[str, object]]:
    """Per-point invariants for diagnostics and text output."""
    rows = []
    for model in q.models:
        try:
            exponents = [int(local_hermite_form(model)[i, i].valuation()) for i in range(model.matrix.rows)]
        except RankDeficientError:
            exponents = None
        rows.append({
            "point": str(model.point),
            "colength": local_colength(model),
            "multiplicity": local_multiplicity(model),
            "pivot_exponents": exponents,
        })
    return rows
