"""
Shared builders for hand-written local models.
"""
from fractions import Fraction
from typing import List, Sequence

import pytest
from hypothesis import HealthCheck, settings

from src.algebra.exactnum import Jet
from src.algebra.linalg import JetMatrix
from src.geometry.local_model import LocalModel, QuotPoint, SupportPoint

settings.register_profile(
    "default",
    max_examples=15,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def jet_matrix(rows: Sequence[Sequence[Sequence[int]]], order: int) -> JetMatrix:
    """Rows of coefficient lists, e.g. [[[0, 1], [0]], [[0], [1]]] is diag(t, 1)."""
    return JetMatrix.from_rows([[Jet.of(entry, order) for entry in row] for row in rows], order)


def diagonal_point(r: int, d: int, exponents: List[int], at: int = 0, order: int = 0) -> QuotPoint:
    """A single-point QuotPoint with local matrix diag(t^{e_1}, ..., t^{e_2r})."""
    order = order or 2 * r * d + 1
    diag = JetMatrix.diagonal([Jet.monomial(e, order) for e in exponents])
    return QuotPoint(r, d, (LocalModel(SupportPoint(Fraction(at)), diag),))


@pytest.fixture
def non_lagrangian_point() -> QuotPoint:
    """r=2, d=1: F = span(e2, e4) + t·O^4, the quotient by the non-Lagrangian span(e1, e3)."""
    order = 5
    columns = [
        [[0], [1], [0], [0]],
        [[0], [0], [0], [1]],
        [[0, 1], [0], [0], [0]],
        [[0], [0], [0, 1], [0]],
    ]
    rows = [[columns[j][i] for j in range(4)] for i in range(4)]
    return QuotPoint(2, 1, (LocalModel(SupportPoint(Fraction(0)), jet_matrix(rows, order)),))
