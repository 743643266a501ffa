"""
Symplectic linear algebra on Q^{2r}: the standard form, Lagrangian subspaces,
the symplectic group and its (projective) action on the Lagrangian Grassmannian.
"""
# Importing dependencies.
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

import numpy as np

from ..algebra.exactnum import ONE, ZERO
from ..algebra.linalg import (
    ScalarMatrix,
    column_span_form,
    determinant,
    inverse,
    kernel_basis,
    rank,
    same_column_span,
    standard_complement,
)
from ..config import Config
from ..errors import NotLagrangianError, SympQuotError

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.Generator]


def as_generator(seed: SeedLike) -> np.random.Generator:
    """A numpy generator for an integer seed; generators pass through unchanged."""
    return np.random.default_rng(seed)


def draw_int(rng: np.random.Generator, bound: int) -> int:
    return int(rng.integers(-bound, bound + 1))


def random_scalar_matrix(rng: np.random.Generator, rows: int, cols: int, bound: int) -> ScalarMatrix:
    return ScalarMatrix.from_rows(
        [[draw_int(rng, bound) for _ in range(cols)] for _ in range(rows)], cols
    )


def random_symmetric(rng: np.random.Generator, n: int, bound: int) -> ScalarMatrix:
    upper = [[draw_int(rng, bound) for _ in range(n)] for _ in range(n)]
    return ScalarMatrix.from_rows(
        [[upper[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)], n
    )


def random_invertible(rng: np.random.Generator, n: int, bound: int) -> ScalarMatrix:
    while True:
        m = random_scalar_matrix(rng, n, n, bound)
        if determinant(m) != 0:
            return m


# ------------------------------------------------------------------
# Domain types
# ------------------------------------------------------------------
@dataclass(frozen=True)
class SymplecticSpace:
    """
    Q^{2r} with ω(x, y) = xᵀ J y, J = [[0, I_r], [-I_r, 0]].
    """
    r: int
    J: ScalarMatrix

    @property
    def dimension(self) -> int:
        return 2 * self.r


def standard_form(r: int) -> SymplecticSpace:
    """
    The matrix of ω' = Σ (e_i* ⊗ e_{i+r}* − e_{i+r}* ⊗ e_i*) in the basis e_1, ..., e_{2r}.
    """
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    n = 2 * r
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(r):
        rows[i][i + r] = ONE
        rows[i + r][i] = -ONE
    return SymplecticSpace(r, ScalarMatrix.from_rows(rows, n))


def is_lagrangian(basis: ScalarMatrix, space: SymplecticSpace) -> bool:
    """True iff the columns have rank r and span an isotropic subspace."""
    if basis.rows != space.dimension:
        return False
    if rank(basis) != space.r:
        return False
    return (basis.transpose() @ space.J @ basis).is_zero()


@dataclass(frozen=True, eq=False)
class LagrangianSubspace:
    """
    A point of the Lagrangian Grassmannian. Equality compares column spans.
    """
    space: SymplecticSpace
    basis: ScalarMatrix

    def __post_init__(self):
        if not is_lagrangian(self.basis, self.space):
            raise NotLagrangianError("basis does not span a Lagrangian subspace")

    @classmethod
    def from_basis(cls, space: SymplecticSpace, basis: ScalarMatrix) -> "LagrangianSubspace":
        """Stores the canonical basis of the column span of `basis`."""
        if basis.rows != space.dimension:
            raise NotLagrangianError(f"expected {space.dimension} rows, got {basis.rows}")
        return cls(space, column_span_form(basis))

    def span_key(self) -> ScalarMatrix:
        return column_span_form(self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LagrangianSubspace):
            return NotImplemented
        return self.space == other.space and same_column_span(self.basis, other.basis)

    def __hash__(self) -> int:
        return hash((self.space.r, self.span_key()))


def standard_lagrangian(space: SymplecticSpace) -> LagrangianSubspace:
    """span(e_1, ..., e_r)."""
    n, r = space.dimension, space.r
    return LagrangianSubspace.from_basis(
        space, ScalarMatrix.from_rows([[ONE if i == j else ZERO for j in range(r)] for i in range(n)], r)
    )


def graph_lagrangian(space: SymplecticSpace, s: ScalarMatrix) -> ScalarMatrix:
    """The graph {(x, Sx)} as a 2r×r basis [I; S]; Lagrangian iff S is symmetric."""
    return _stack(ScalarMatrix.identity(space.r), s)


def _stack(top: ScalarMatrix, bottom: ScalarMatrix) -> ScalarMatrix:
    return ScalarMatrix.from_rows(list(top.entries) + list(bottom.entries), top.cols)


def _block(a: ScalarMatrix, b: ScalarMatrix, c: ScalarMatrix, d: ScalarMatrix) -> ScalarMatrix:
    rows = [ra + rb for ra, rb in zip(a.entries, b.entries)]
    rows += [rc + rd for rc, rd in zip(c.entries, d.entries)]
    return ScalarMatrix.from_rows(rows, a.cols + b.cols)


@dataclass(frozen=True)
class SymplecticMatrix:
    space: SymplecticSpace
    m: ScalarMatrix

    def __post_init__(self):
        J = self.space.J
        if self.m.shape != J.shape or self.m.transpose() @ J @ self.m != J:
            raise SympQuotError("matrix does not preserve the symplectic form")

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return SymplecticMatrix(self.space, self.m @ other.m)

    def inverse(self) -> "SymplecticMatrix":
        # m⁻¹ = -J mᵀ J for symplectic m
        J = self.space.J
        return SymplecticMatrix(self.space, -(J @ self.m.transpose() @ J))


def identity_element(space: SymplecticSpace) -> SymplecticMatrix:
    return SymplecticMatrix(space, ScalarMatrix.identity(space.dimension))


def is_central(m: SymplecticMatrix) -> bool:
    """True for ±identity, the center of Sp(2r)."""
    one = ScalarMatrix.identity(m.space.dimension)
    return m.m == one or m.m == -one


# ------------------------------------------------------------------
# Generators of Sp(2r)
# ------------------------------------------------------------------
def block_generator(space: SymplecticSpace, a: ScalarMatrix) -> ScalarMatrix:
    """[[A, 0], [0, (Aᵀ)⁻¹]] for invertible A."""
    r = space.r
    zero = ScalarMatrix.zeros(r, r)
    return _block(a, zero, zero, inverse(a.transpose()))


def upper_shear(space: SymplecticSpace, s: ScalarMatrix) -> ScalarMatrix:
    """[[I, S], [0, I]] for symmetric S."""
    r = space.r
    return _block(ScalarMatrix.identity(r), s, ScalarMatrix.zeros(r, r), ScalarMatrix.identity(r))


def lower_shear(space: SymplecticSpace, s: ScalarMatrix) -> ScalarMatrix:
    """[[I, 0], [S, I]] for symmetric S."""
    r = space.r
    return _block(ScalarMatrix.identity(r), ScalarMatrix.zeros(r, r), s, ScalarMatrix.identity(r))


def symplectic_from_generators(space: SymplecticSpace, generators: Sequence[ScalarMatrix]) -> SymplecticMatrix:
    """Product of generator matrices in the given order; the empty product is the identity."""
    product = ScalarMatrix.identity(space.dimension)
    for g in generators:
        product = product @ g
    return SymplecticMatrix(space, product)


def generator_parameter_count(space: SymplecticSpace) -> int:
    """r² (block) + 2·r(r+1)/2 (two shears) = r(2r+1) = dim Sp(2r)."""
    r = space.r
    return r * r + r * (r + 1)


def random_symplectic(space: SymplecticSpace, seed: SeedLike, steps: int = 4) -> SymplecticMatrix:
    """
    A random product of `steps` generators: block, upper shear, lower shear or J.

    Deterministic in the seed.
    """
    rng = as_generator(seed)
    bound = Config.SAMPLE_BOUND
    r = space.r
    generators: List[ScalarMatrix] = []
    for _ in range(steps):
        kind = int(rng.integers(4))
        if kind == 0:
            generators.append(block_generator(space, random_invertible(rng, r, bound)))
        elif kind == 1:
            generators.append(upper_shear(space, random_symmetric(rng, r, bound)))
        elif kind == 2:
            generators.append(lower_shear(space, random_symmetric(rng, r, bound)))
        else:
            generators.append(space.J)
    return symplectic_from_generators(space, generators)


# ------------------------------------------------------------------
# Lagrangian Grassmannian
# ------------------------------------------------------------------
def random_lagrangian(space: SymplecticSpace, seed: SeedLike) -> LagrangianSubspace:
    """
    A graph-chart Lagrangian [I; S] moved by a random symplectic matrix, so every
    chart of the Grassmannian is reached. Deterministic in the seed.
    """
    rng = as_generator(seed)
    s = random_symmetric(rng, space.r, Config.SAMPLE_BOUND)
    g = random_symplectic(space, rng)
    return LagrangianSubspace.from_basis(space, g.m @ graph_lagrangian(space, s))


def act_on_lagrangian(m: SymplecticMatrix, v: LagrangianSubspace) -> LagrangianSubspace:
    if m.space != v.space:
        raise SympQuotError("symplectic matrix and Lagrangian live in different spaces")
    return LagrangianSubspace.from_basis(v.space, m.m @ v.basis)


def lagrangian_chart_dimension(space: SymplecticSpace, seed: SeedLike = 0) -> int:
    """
    Dimension of the Lagrangian Grassmannian through the graph chart.

    The chart S ↦ g·[I; S0 + S] has r(r+1)/2 free parameters; the returned value
    is the rank of its differential at a random point, which must agree.
    """
    rng = as_generator(seed)
    r = space.r
    g = random_symplectic(space, rng)
    zero_top = ScalarMatrix.zeros(r, r)
    columns = []
    for i in range(r):
        for j in range(i, r):
            e = [[ONE if {a, b} == {i, j} else ZERO for b in range(r)] for a in range(r)]
            direction = g.m @ _stack(zero_top, ScalarMatrix.from_rows(e, r))
            columns.append([x for row in direction.entries for x in row])
    free_parameters = r * (r + 1) // 2
    differential_rank = rank(ScalarMatrix.from_columns(columns, 2 * r * r))
    if differential_rank != free_parameters:
        logger.warning(
            "--- SYMPLECTIC: chart differential rank %d differs from parameter count %d ---",
            differential_rank, free_parameters,
        )
    return differential_rank


def lagrangian_tangent_dimension(v: LagrangianSubspace) -> int:
    """
    Dimension of {φ ∈ Hom(V, W/V) : ω(a, φ b) = ω(b, φ a)}, the tangent space of
    the Lagrangian Grassmannian at V.
    """
    space = v.space
    r = space.r
    b = v.basis
    c = standard_complement(b)
    x = b.transpose() @ space.J @ c  # ω(b_i, c_k)
    # unknown φ(b_j) = Σ_k y[k][j] c_k, flattened as k * r + j
    rows = []
    for i in range(r):
        for j in range(i + 1, r):
            row = [ZERO] * (r * r)
            for k in range(r):
                row[k * r + j] += x[i, k]
                row[k * r + i] -= x[j, k]
            rows.append(row)
    if not rows:
        return r * r
    return kernel_basis(ScalarMatrix.from_rows(rows, r * r)).cols


def sp_lie_algebra_basis(space: SymplecticSpace) -> List[ScalarMatrix]:
    """Basis X = J·S (S symmetric) of sp(2r); satisfies XᵀJ + JX = 0."""
    n = space.dimension
    basis = []
    for i in range(n):
        for j in range(i, n):
            s = ScalarMatrix.from_rows(
                [[ONE if {a, b} == {i, j} else ZERO for b in range(n)] for a in range(n)], n
            )
            basis.append(space.J @ s)
    return basis


def infinitesimal_action_rank(subspaces: Sequence[LagrangianSubspace]) -> int:
    """
    Rank of sp(2r) → ⊕_i T_{V_i}L, X ↦ (v ↦ X v mod V_i).

    One Lagrangian gives r(r+1)/2 (the action is transitive); four generic ones
    give r(2r+1) (the infinitesimal action on L^d is injective).
    """
    if not subspaces:
        return 0
    space = subspaces[0].space
    r = space.r
    frames = []
    for v in subspaces:
        frame = v.basis.hstack(standard_complement(v.basis))
        frames.append((v.basis, inverse(frame)))
    columns = []
    for x in sp_lie_algebra_basis(space):
        coords: List[Fraction] = []
        for basis, frame_inv in frames:
            moved = frame_inv @ x @ basis
            coords.extend(moved[k, j] for k in range(r, 2 * r) for j in range(r))
        columns.append(coords)
    return rank(ScalarMatrix.from_columns(columns, len(columns[0])))


def effectiveness_witness(m: SymplecticMatrix, trials: int, seed: SeedLike) -> Optional[LagrangianSubspace]:
    """
    A sampled Lagrangian V with span(m·V) ≠ span(V), or None after `trials` misses.

    The center ±I acts trivially and always returns None without sampling.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if is_central(m):
        return None
    rng = as_generator(seed)
    for _ in range(trials):
        v = random_lagrangian(m.space, rng)
        if act_on_lagrangian(m, v) != v:
            return v
    logger.info("--- SYMPLECTIC: no witness in %d trials ---", trials)
    return None
