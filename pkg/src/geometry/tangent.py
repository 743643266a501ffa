"""
Tangent spaces of Q-tilde and Q at a point.

T Q-tilde = Hom(F, E₀/F) is coordinatized pointwise: α is fixed by the images
α(v_j) of the 2r Hermite generators of F_p, each written in the monomial basis
{t^l e_i : l < a_i} of (E₀/F)_p.

T Q adds the divisor direction. With G = AᵀJA = t^m·G′ at p, a first order
deformation (α, δ) stays in Q iff for every generator pair

    ω(v_i, α v_j) − ω(v_j, α v_i) ≡ δ·G′_ij   (mod t^m)

where δ, a polynomial of degree < m, moves the local divisor t^m ↦ t^m + εδ.
Setting δ = 0 gives the tangent space of the fiber of φ.
"""
# Importing dependencies.
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Literal, Tuple

from ..algebra.exactnum import ZERO, Jet
from ..algebra.linalg import (
    JetMatrix,
    ScalarMatrix,
    gram_matrix,
    hermite_reduce,
    kernel_basis,
    monomial_basis,
    rank,
)
from ..errors import MembershipError
from .local_model import (
    LocalModel,
    QuotPoint,
    is_in_q,
    is_in_tilde_q,
    local_hermite_form,
    local_multiplicity,
    total_colength,
)
from .symplectic import standard_form

logger = logging.getLogger(__name__)

LiftRule = Literal["canonical", "perturbed"]


def expected_hom_dimension(r: int, d: int) -> int:
    return 2 * r * r * d


def expected_symplectic_dimension(r: int, d: int) -> int:
    return d * (r * r + r + 2) // 2


def expected_fiber_dimension(r: int, d: int) -> int:
    return d * r * (r + 1) // 2


@dataclass(frozen=True)
class TangentSystem:
    """
    Linear constraints on (α, δ). Columns: `ambient_dimension` hom coordinates
    followed by `divisor_dimension` divisor coordinates.
    """
    base: QuotPoint
    ambient_dimension: int
    divisor_dimension: int
    constraint_matrix: ScalarMatrix

    def fixed_divisor_matrix(self) -> ScalarMatrix:
        """The constraints with δ = 0 (hom columns only)."""
        return self.constraint_matrix.select_columns(range(self.ambient_dimension))

    def kernel_dimension(self) -> int:
        return self.constraint_matrix.cols - rank(self.constraint_matrix)

    def fixed_divisor_kernel_dimension(self) -> int:
        m = self.fixed_divisor_matrix()
        return m.cols - rank(m)


def _lift(h: JetMatrix, row: int, power: int, rule: LiftRule) -> Tuple[Jet, ...]:
    """
    A lift to E₀ of the basis residue t^power·e_row. "canonical" is the Hermite
    normal form of the residue; "perturbed" adds a fixed element of F to it.
    """
    order, n = h.order, h.rows
    vector = [Jet.monomial(power, order) if i == row else Jet.zero(order) for i in range(n)]
    vector = list(hermite_reduce(h, vector))
    if rule == "perturbed":
        for k in range(n):
            c = Jet.of([1 + (row + 2 * power + 3 * k) % 5, (row + k) % 3], order)
            vector = [x + c * y for x, y in zip(vector, h.column(k))]
    return tuple(vector)


def _pairing_row(space_j: ScalarMatrix, v: Tuple[Jet, ...], w: Tuple[Jet, ...]) -> Jet:
    """ω(v, w) = vᵀ J w."""
    order = v[0].order
    acc = Jet.zero(order)
    for i, x in enumerate(v):
        if x.is_zero():
            continue
        for k, y in enumerate(w):
            c = space_j[i, k]
            if c and not y.is_zero():
                acc = acc + (x * y).scale(c)
    return acc


def hom_space_dimension(q: QuotPoint) -> int:
    """
    dim ⊕_p Hom(F_p, (E₀/F)_p): 2r generators times the monomial basis size at each point.

    Raises:
        MembershipError: q is not a member of Q-tilde
    """
    if not is_in_tilde_q(q):
        raise MembershipError("hom space dimension requires a member of Q-tilde")
    n = 2 * q.r
    dimension = sum(n * len(monomial_basis(local_hermite_form(m))) for m in q.models)
    if dimension != n * total_colength(q):
        logger.warning("--- TANGENT: monomial basis disagrees with colength ---")
    return dimension


def _local_rows(
        model: LocalModel,
        hom_offset: int,
        divisor_offset: int,
        total_columns: int,
        rule: LiftRule,
) -> Tuple[List[List[Fraction]], int, int]:
    h = local_hermite_form(model)
    n = h.rows
    J = standard_form(n // 2).J
    basis = monomial_basis(h)
    size = len(basis)
    mult = local_multiplicity(model)
    gens = h.columns()
    lifts = [_lift(h, i, power, rule) for i, power in basis]
    # pairings[i][b] = ω(v_i, lift_b)
    pairings = [[_pairing_row(J, gens[i], lift) for lift in lifts] for i in range(n)]
    g_prime = gram_matrix(h, J).shift(mult)

    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for level in range(mult):
                row = [ZERO] * total_columns
                for b in range(size):
                    row[hom_offset + j * size + b] += pairings[i][b].coefficients[level]
                    row[hom_offset + i * size + b] -= pairings[j][b].coefficients[level]
                g_ij = g_prime[i, j].coefficients
                for mu in range(level + 1):
                    row[divisor_offset + mu] -= g_ij[level - mu]
                rows.append(row)
    return rows, n * size, mult


def build_tangent_system(q: QuotPoint, rule: LiftRule = "canonical") -> TangentSystem:
    """
    Constraint matrix of T Q inside T Q-tilde ⊕ T Sym^d.

    Raises:
        MembershipError: q is not a member of Q
    """
    if not is_in_q(q):
        raise MembershipError("tangent system requires a member of Q")
    n = 2 * q.r
    sizes = [n * len(monomial_basis(local_hermite_form(m))) for m in q.models]
    mults = [local_multiplicity(m) for m in q.models]
    ambient = sum(sizes)
    total_columns = ambient + sum(mults)

    rows: List[List[Fraction]] = []
    hom_offset, divisor_offset = 0, ambient
    for model, size, mult in zip(q.models, sizes, mults):
        local, _, _ = _local_rows(model, hom_offset, divisor_offset, total_columns, rule)
        rows.extend(local)
        hom_offset += size
        divisor_offset += mult
    matrix = ScalarMatrix.from_rows(rows, total_columns)
    logger.debug(
        "--- TANGENT: %d constraints on %d hom and %d divisor coordinates ---",
        matrix.rows, ambient, total_columns - ambient,
    )
    return TangentSystem(q, ambient, total_columns - ambient, matrix)


def symplectic_tangent_dimension(q: QuotPoint) -> int:
    """dim T_q Q; equals d(r²+r+2)/2 when the divisor of q is reduced."""
    return build_tangent_system(q).kernel_dimension()


def fiber_tangent_dimension(q: QuotPoint) -> int:
    """dim of the tangent space of φ⁻¹(φ(q)) at q; d·r(r+1)/2 on the reduced locus."""
    return build_tangent_system(q).fixed_divisor_kernel_dimension()


def tangent_kernel(q: QuotPoint, rule: LiftRule = "canonical") -> ScalarMatrix:
    """Canonical kernel basis of the tangent system, for lift-independence checks."""
    return kernel_basis(build_tangent_system(q, rule).constraint_matrix)
