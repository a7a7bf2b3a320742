from typing import Tuple

import sympy
from pydantic import BaseModel, ConfigDict, model_validator

from utils.groebner import GroebnerBasis, Ideal
from utils.polyring import S_VAR, SparsePolynomial, VariableId, make_monomial


def _divide_one_minus_s(coefficients: Tuple[int, ...]) -> Tuple[int, ...]:
    """Exact quotient p(s) / (1 - s) for p(1) = 0, coefficients lowest degree first."""
    high_first = list(reversed(coefficients))
    quotient = []
    carry = 0
    for a in high_first[:-1]:
        carry += a
        quotient.append(carry)
    # p = (s - 1) q' with q' read off above; (1 - s) q = p gives q = -q'.
    return tuple(-c for c in reversed(quotient))


def _trim(coefficients: Tuple[int, ...]) -> Tuple[int, ...]:
    values = list(coefficients)
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


class RationalSeries(BaseModel):
    """
    Hilbert series N(s) / (1 - s)^d with integer numerator coefficients (lowest degree first).

    Always stored canonically: the numerator is not divisible by (1 - s).
    """
    model_config = ConfigDict(frozen=True)

    coefficients: Tuple[int, ...]
    denominator_power: int

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data):
        if isinstance(data, dict):
            coefficients = _trim(tuple(data.get("coefficients", ())))
            power = int(data.get("denominator_power", 0))
            while coefficients and power > 0 and sum(coefficients) == 0:
                coefficients = _trim(_divide_one_minus_s(coefficients))
                power -= 1
            if not coefficients:
                power = 0
            data = {"coefficients": coefficients, "denominator_power": power}
        return data

    @property
    def numerator(self) -> SparsePolynomial:
        return SparsePolynomial({make_monomial({S_VAR: e}): c for e, c in enumerate(self.coefficients)})

    def to_sympy(self) -> sympy.Expr:
        s = sympy.Symbol("s")
        numerator = sum((c * s ** e for e, c in enumerate(self.coefficients)), sympy.Integer(0))
        return numerator / (1 - s) ** self.denominator_power

    def dimension_counts(self, up_to: int) -> Tuple[int, ...]:
        """Coefficients of the power series expansion in degrees 0..up_to."""
        counts = []
        for degree in range(up_to + 1):
            total = 0
            for e, c in enumerate(self.coefficients):
                if e > degree:
                    break
                rest = degree - e
                total += c * _multiset_count(self.denominator_power, rest)
            counts.append(total)
        return tuple(counts)

    def __str__(self) -> str:
        numerator = str(self.numerator)
        if self.denominator_power == 0:
            return numerator
        return f"({numerator})/(1 - s)^{self.denominator_power}"


def _multiset_count(d: int, k: int) -> int:
    """Number of monomials of degree k in d variables."""
    if d == 0:
        return 1 if k == 0 else 0
    return int(sympy.binomial(d + k - 1, k))


class GvdSplit(BaseModel):
    """
    The one-variable degeneration of an ideal: I' = init_y I with its cone ideal C
    and projection ideal P; is_gvd records whether I' = C meet P.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    y: VariableId
    I_prime: Ideal
    C: Ideal
    P: Ideal
    degrees: Tuple[int, ...]
    is_gvd: bool
    basis: GroebnerBasis

    def summary(self) -> dict:
        return {
            "y": str(self.y),
            "I_prime": [str(g) for g in self.I_prime.generators],
            "C": [str(g) for g in self.C.generators],
            "P": [str(g) for g in self.P.generators],
            "degrees": list(self.degrees),
            "is_gvd": self.is_gvd,
        }
