"""
Seeded samplers for members of Q-tilde and Q.

Q-tilde, at one point:  A = U · diag(t^{a_1}, ..., t^{a_2r}) · W
Q, at one point:        A = S · diag(t^{a_1..a_r}, t^{m-a_1..m-a_r}) · W
with U, W random matrices of unit determinant and S a symplectic jet frame
(SᵀJS = J), so that AᵀJA = t^m · WᵀJW.
"""
# Importing dependencies.
import logging
from fractions import Fraction
from typing import List, Optional

import numpy as np

from ..algebra.exactnum import Jet
from ..algebra.linalg import JetMatrix, jet_matrix_mul
from ..config import Config
from .local_model import LocalModel, QuotPoint, SupportPoint, from_lagrangians
from .symplectic import (
    SeedLike,
    SymplecticSpace,
    as_generator,
    draw_int,
    random_invertible,
    random_lagrangian,
    random_symplectic,
    standard_form,
)

logger = logging.getLogger(__name__)


def random_support_points(rng: np.random.Generator, count: int) -> List[SupportPoint]:
    """`count` distinct integer coordinates."""
    bound = max(Config.SAMPLE_BOUND, count)
    values = rng.choice(np.arange(-bound, bound + 1), size=count, replace=False)
    return [SupportPoint(Fraction(int(v))) for v in values]


def random_composition(rng: np.random.Generator, total: int, parts: int, positive: bool = True) -> List[int]:
    """A random ordered composition of `total` into `parts` summands."""
    if positive:
        if parts > total:
            raise ValueError(f"cannot split {total} into {parts} positive parts")
        cuts = sorted(int(c) for c in rng.choice(np.arange(1, total), size=parts - 1, replace=False)) if parts > 1 else []
        edges = [0] + cuts + [total]
        return [edges[i + 1] - edges[i] for i in range(parts)]
    values = [0] * parts
    for _ in range(total):
        values[int(rng.integers(parts))] += 1
    return values


def random_jet(rng: np.random.Generator, order: int, constant: int) -> Jet:
    coeffs = [constant] + [draw_int(rng, Config.SAMPLE_BOUND) for _ in range(Config.JET_DEGREE)]
    return Jet.of(coeffs, order)


def random_unimodular(rng: np.random.Generator, n: int, order: int) -> JetMatrix:
    """A jet matrix whose constant term is a random invertible integer matrix."""
    base = random_invertible(rng, n, Config.SAMPLE_BOUND)
    return JetMatrix.from_rows(
        [[random_jet(rng, order, int(base[i, j])) for j in range(n)] for i in range(n)], order
    )


def _random_symmetric_jets(rng: np.random.Generator, r: int, order: int) -> List[List[Jet]]:
    upper = [[random_jet(rng, order, draw_int(rng, Config.SAMPLE_BOUND)) for _ in range(r)] for _ in range(r)]
    return [[upper[min(i, j)][max(i, j)] for j in range(r)] for i in range(r)]


def _jet_shear(space: SymplecticSpace, s: List[List[Jet]], order: int, upper: bool) -> JetMatrix:
    r = space.r
    zero = Jet.zero(order)
    ident = [[Jet.one(order) if i == j else zero for j in range(r)] for i in range(r)]
    zeros = [[zero] * r for _ in range(r)]
    top, bottom = (ident, s), (zeros, ident)
    if not upper:
        top, bottom = (ident, zeros), (s, ident)
    rows = [a + b for a, b in zip(*top)] + [a + b for a, b in zip(*bottom)]
    return JetMatrix.from_rows(rows, order)


def random_symplectic_frame(space: SymplecticSpace, rng: np.random.Generator, order: int) -> JetMatrix:
    """g₁ · [[I, S₁(t)], [0, I]] · [[I, 0], [S₂(t), I]] · g₂ with symmetric jet S_i; SᵀJS = J."""
    g1 = JetMatrix.from_scalar(random_symplectic(space, rng).m, order)
    g2 = JetMatrix.from_scalar(random_symplectic(space, rng).m, order)
    up = _jet_shear(space, _random_symmetric_jets(rng, space.r, order), order, upper=True)
    low = _jet_shear(space, _random_symmetric_jets(rng, space.r, order), order, upper=False)
    return jet_matrix_mul(jet_matrix_mul(g1, up), jet_matrix_mul(low, g2))


def random_tilde_q_local(rng: np.random.Generator, r: int, colength: int, order: int) -> JetMatrix:
    n = 2 * r
    exponents = random_composition(rng, colength, n, positive=False)
    diag = JetMatrix.diagonal([Jet.monomial(a, order) for a in exponents])
    return jet_matrix_mul(jet_matrix_mul(random_unimodular(rng, n, order), diag), random_unimodular(rng, n, order))


def random_q_local(rng: np.random.Generator, space: SymplecticSpace, multiplicity: int, order: int) -> JetMatrix:
    r = space.r
    low = [int(rng.integers(multiplicity + 1)) for _ in range(r)]
    exponents = low + [multiplicity - a for a in low]
    diag = JetMatrix.diagonal([Jet.monomial(a, order) for a in exponents])
    frame = random_symplectic_frame(space, rng, order)
    return jet_matrix_mul(jet_matrix_mul(frame, diag), random_unimodular(rng, 2 * r, order))


def random_tilde_q_member(r: int, d: int, seed: SeedLike, order: Optional[int] = None) -> QuotPoint:
    """A random member of Q-tilde: rd split over 1..rd distinct support points."""
    rng = as_generator(seed)
    order = order or Config.truncation_order(r, d)
    total = r * d
    count = int(rng.integers(1, total + 1))
    colengths = random_composition(rng, total, count)
    points = random_support_points(rng, count)
    models = tuple(
        LocalModel(p, random_tilde_q_local(rng, r, c, order)) for p, c in zip(points, colengths)
    )
    return QuotPoint(r, d, models)


def random_q_member(
        r: int,
        d: int,
        seed: SeedLike,
        reduced: Optional[bool] = None,
        order: Optional[int] = None,
) -> QuotPoint:
    """
    A random member of Q. `reduced=True` forces d distinct support points,
    `reduced=False` forces some multiplicity above 1 (when d ≥ 2), None draws either.
    """
    rng = as_generator(seed)
    order = order or Config.truncation_order(r, d)
    space = standard_form(r)
    if reduced is None:
        reduced = bool(rng.integers(2))
    if reduced or d == 1:
        multiplicities = [1] * d
    else:
        count = int(rng.integers(1, d))
        multiplicities = random_composition(rng, d, count)
    points = random_support_points(rng, len(multiplicities))
    models = tuple(
        LocalModel(p, random_q_local(rng, space, m, order)) for p, m in zip(points, multiplicities)
    )
    return QuotPoint(r, d, models)


def random_fiber_member(r: int, d: int, seed: SeedLike, order: Optional[int] = None) -> QuotPoint:
    """from_lagrangians on random distinct points and random Lagrangians."""
    rng = as_generator(seed)
    space = standard_form(r)
    points = random_support_points(rng, d)
    subspaces = [random_lagrangian(space, rng) for _ in range(d)]
    return from_lagrangians(points, subspaces, order=order)
