"""
Zariski decomposition D = P + sum a_i N_i of pseudoeffective classes.

P is nef, the N_i are (-1)-curves with negative definite intersection
matrix, a_i > 0, and P.N_i = 0 for every i. The support is grown by adding
every (-1)-curve that meets the current positive part negatively, solving
the orthogonality system exactly each round.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from sympy import Matrix, Rational, sympify

from delpezzo.core.errors import ContractError, NotPseudoeffectiveError, ZariskiInvariantError
from delpezzo.core.lattice import (
    ClassLike,
    DivisorClass,
    Number,
    RationalDivisorClass,
    as_rational,
    format_class,
    gram_matrix,
    intersect,
    pairing_numerators,
)
from delpezzo.services.enumeration import neg_curve_classes, neg_curve_matrix
from delpezzo.services.positivity import is_nef, is_pseudoeffective

logger = logging.getLogger(__name__)


def _to_sympy(value: Number) -> Rational:
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def _to_fraction(value) -> Fraction:
    value = sympify(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True, slots=True)
class ZariskiDecomposition:
    original: ClassLike
    positive_part: RationalDivisorClass
    negative_part: Tuple[Tuple[DivisorClass, Fraction], ...]

    @property
    def support(self) -> Tuple[DivisorClass, ...]:
        return tuple(curve for curve, _ in self.negative_part)

    def reconstruct(self) -> RationalDivisorClass:
        total = self.positive_part
        for curve, coefficient in self.negative_part:
            total = total + coefficient * curve
        return as_rational(total)

    def conditions(self) -> Dict[str, bool]:
        """The defining properties, each checked exactly."""
        return {
            "positive part nef": is_nef(self.positive_part),
            "positive part orthogonal to support": all(
                intersect(self.positive_part, curve) == 0 for curve in self.support
            ),
            "support negative definite": is_negative_definite(gram_matrix(self.support)),
            "coefficients positive": all(c > 0 for _, c in self.negative_part),
            "reconstructs input": self.reconstruct() == as_rational(self.original),
        }


def is_negative_definite(gram: Sequence[Sequence[Number]]) -> bool:
    """Leading principal minors alternate in sign, starting negative."""
    matrix = Matrix([[_to_sympy(x) for x in row] for row in gram]) if gram else Matrix(0, 0, [])
    if not matrix.is_square or not matrix.is_symmetric():
        raise ContractError("intersection matrix must be square and symmetric")
    for k in range(1, matrix.rows + 1):
        minor = matrix[:k, :k].det(method="bareiss")
        if (-1) ** k * minor <= 0:
            return False
    return True


def _solve_coefficients(D: ClassLike, support: Sequence[DivisorClass]) -> List[Fraction]:
    """a with (D - sum a_i N_i).N_j = 0 for all j, i.e. Gram(N) a = (D.N_j)."""
    gram = gram_matrix(support)
    if not is_negative_definite(gram):
        raise ZariskiInvariantError(
            "support is not negative definite: " + ", ".join(format_class(c) for c in support)
        )
    lhs = Matrix([[_to_sympy(x) for x in row] for row in gram])
    rhs = Matrix([_to_sympy(intersect(D, curve)) for curve in support])
    solution = lhs.LUsolve(rhs)
    return [_to_fraction(x) for x in solution]


def zariski_decompose(D: ClassLike) -> ZariskiDecomposition:
    """Also accepts rational classes, so a positive part can be decomposed again."""
    if not is_pseudoeffective(D):
        raise NotPseudoeffectiveError(f"{format_class(D)} is not pseudoeffective")

    curves = neg_curve_classes(D.surface)
    matrix = neg_curve_matrix(D.surface)
    support: List[DivisorClass] = []
    coefficients: List[Fraction] = []
    positive = as_rational(D)

    while True:
        values, _ = pairing_numerators(matrix, positive)
        negative = [curves[i] for i in range(len(curves)) if values[i] < 0]
        if not negative:
            break
        support.extend(c for c in negative if c not in support)
        coefficients = _solve_coefficients(D, support)
        positive = as_rational(D)
        for curve, coefficient in zip(support, coefficients):
            positive = as_rational(positive - coefficient * curve)
        logger.debug("%s: support of size %d", format_class(D), len(support))

    if any(c < 0 for c in coefficients):
        raise ZariskiInvariantError(f"negative coefficient in the decomposition of {format_class(D)}")
    negative_part = tuple((curve, c) for curve, c in zip(support, coefficients) if c != 0)
    return ZariskiDecomposition(original=D, positive_part=positive, negative_part=negative_part)

