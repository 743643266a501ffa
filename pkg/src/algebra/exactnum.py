"""
Exact numeric substrate: rational scalars and truncated power series (jets).

Scalars are `fractions.Fraction`, which are always kept in lowest terms with a
positive denominator. A Jet is an element of Q[[t]]/(t^K), stored as its K
coefficients; ring operations run on sympy's sparse series over QQ and every
result is truncated at order K.
"""
# Importing dependencies.
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Tuple, Union

from sympy import QQ
from sympy.polys.ring_series import mul_xin, rs_mul, rs_series_inversion, rs_trunc
from sympy.polys.rings import PolyElement, ring

from ..errors import InputFormatError, NonUnitError, TruncationMismatchError

Scalar = Fraction
ScalarLike = Union[Fraction, int]

_SCALAR_PATTERN = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")

ZERO = Fraction(0)
ONE = Fraction(1)

# Q[t]; series are its elements read modulo t^K.
SERIES_RING, T = ring("t", QQ)


def to_qq(x: ScalarLike):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def scalar_to_str(x: ScalarLike) -> str:
    """Serializes a scalar as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(x))


def parse_scalar(value: Union[str, int]) -> Fraction:
    """
    Parses a "p/q" string (or a JSON integer) into an exact scalar.

    Decimal and exponent notations are refused: no floats cross any interface.
    Only the numerator may carry a sign.

    Raises:
        InputFormatError: for anything that is not an integer or a "p/q" string
    """
    if isinstance(value, bool):
        raise InputFormatError(f"expected a 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _SCALAR_PATTERN.match(value):
        raise InputFormatError(f"expected a 'p/q' string, got {value!r}")
    try:
        return Fraction(value.replace(" ", ""))
    except ZeroDivisionError as e:
        raise InputFormatError(f"zero denominator in {value!r}") from e
    except ValueError as e:
        raise InputFormatError(f"expected a 'p/q' string, got {value!r}") from e


@dataclass(frozen=True)
class Jet:
    """
    A truncated power series c_0 + c_1 t + ... + c_{K-1} t^{K-1}.
    """
    coefficients: Tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"truncation order must be positive, got {self.order}")
        if len(self.coefficients) != self.order:
            raise ValueError(
                f"expected {self.order} coefficients, got {len(self.coefficients)}"
            )

    # --- Constructors ---
    @classmethod
    def of(cls, coefficients: Iterable[ScalarLike], order: int) -> "Jet":
        """Builds a jet from a (possibly shorter or longer) coefficient list."""
        coeffs = [Fraction(c) for c in coefficients][:order]
        coeffs.extend([ZERO] * (order - len(coeffs)))
        return cls(tuple(coeffs), order)

    @classmethod
    def from_series(cls, p: PolyElement, order: int) -> "Jet":
        """Reads an element of SERIES_RING modulo t^order."""
        coeffs = [ZERO] * order
        for (k,), c in rs_trunc(p, T, order).items():
            coeffs[k] = from_qq(c)
        return cls(tuple(coeffs), order)

    @classmethod
    def constant(cls, value: ScalarLike, order: int) -> "Jet":
        return cls.of([value], order)

    @classmethod
    def zero(cls, order: int) -> "Jet":
        return cls((ZERO,) * order, order)

    @classmethod
    def one(cls, order: int) -> "Jet":
        return cls.constant(1, order)

    @classmethod
    def monomial(cls, power: int, order: int, coefficient: ScalarLike = 1) -> "Jet":
        """coefficient * t^power, which is zero once power >= order."""
        coeffs = [ZERO] * order
        if 0 <= power < order:
            coeffs[power] = Fraction(coefficient)
        return cls(tuple(coeffs), order)

    # --- Queries ---
    @cached_property
    def series(self) -> PolyElement:
        return SERIES_RING.from_dict(
            {(k,): to_qq(c) for k, c in enumerate(self.coefficients) if c}
        )

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def constant_term(self) -> Fraction:
        return self.coefficients[0]

    def valuation(self) -> int:
        return valuation(self)

    def extend(self, order: int) -> "Jet":
        """Zero-pads to a larger truncation order (a valid lift of the truncated series)."""
        if order < self.order:
            raise TruncationMismatchError(
                f"cannot extend a jet of order {self.order} down to {order}"
            )
        return Jet.from_series(self.series, order)

    def scale(self, c: ScalarLike) -> "Jet":
        return Jet.from_series(self.series * to_qq(c), self.order)

    # --- Operators ---
    def __add__(self, other: "Jet") -> "Jet":
        return jet_add(self, other)

    def __sub__(self, other: "Jet") -> "Jet":
        return jet_sub(self, other)

    def __mul__(self, other: "Jet") -> "Jet":
        return jet_mul(self, other)

    def __neg__(self) -> "Jet":
        return jet_neg(self)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*t^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{self.order})"


def _check_orders(a: Jet, b: Jet) -> int:
    if a.order != b.order:
        raise TruncationMismatchError(
            f"truncation orders differ: {a.order} vs {b.order}"
        )
    return a.order


def jet_add(a: Jet, b: Jet) -> Jet:
    order = _check_orders(a, b)
    return Jet.from_series(a.series + b.series, order)


def jet_sub(a: Jet, b: Jet) -> Jet:
    order = _check_orders(a, b)
    return Jet.from_series(a.series - b.series, order)


def jet_neg(a: Jet) -> Jet:
    return Jet.from_series(-a.series, a.order)


def jet_mul(a: Jet, b: Jet) -> Jet:
    order = _check_orders(a, b)
    return Jet.from_series(rs_mul(a.series, b.series, T, order), order)


def valuation(a: Jet) -> int:
    """
    Lowest power of t present; the truncation order K for the zero jet.
    """
    if a.is_zero():
        return a.order
    return min(k for (k,) in a.series.itermonoms())


def jet_unit_inverse(a: Jet) -> Jet:
    """
    Inverse of a unit of Q[[t]]/(t^K).

    Raises:
        NonUnitError: if the constant term vanishes
    """
    if not a.constant_term():
        raise NonUnitError(f"jet with valuation {valuation(a)} is not a unit")
    # Newton steps can overshoot t^K on tiny orders; from_series truncates.
    return Jet.from_series(rs_series_inversion(a.series, T, a.order), a.order)


def jet_shift(a: Jet, m: int) -> Jet:
    """
    Divides by t^m. The top m coefficients of the result are unknown and set to zero,
    so only coefficients below K - m are meaningful.

    Raises:
        ValueError: if valuation(a) < m
    """
    if m < 0:
        raise ValueError(f"shift must be non-negative, got {m}")
    if m and valuation(a) < m:
        raise ValueError(f"cannot divide a jet of valuation {valuation(a)} by t^{m}")
    return Jet.from_series(mul_xin(a.series, 0, -m), a.order)


def jet_quotient_by_power(a: Jet, m: int) -> Tuple[Jet, Jet]:
    """
    Splits a = low + t^m * high with deg(low) < m.

    Returns:
        (low, high): high is a jet whose top m coefficients are zero
    """
    low = rs_trunc(a.series, T, m)
    high = mul_xin(a.series - low, 0, -m)
    return Jet.from_series(low, a.order), Jet.from_series(high, a.order)
