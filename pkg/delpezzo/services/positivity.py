"""
Positivity of adjoint classes -(K + eps D).

On a del Pezzo surface of degree <= 7 the effective cone is generated by the
(-1)-curves and the nef cone by conics and hyperplane pullbacks, so every test
below is a finite list of exact intersection numbers. For a (-1)-curve E,
-(K + eps D).E = 1 - eps (D.E), hence the nef threshold is 1/mu with
mu = max D.E.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from delpezzo.core.errors import ContractError
from delpezzo.core.lattice import (
    ClassLike,
    DivisorClass,
    adjoint_class,
    format_class,
    pairing_numerators,
    self_intersection,
)
from delpezzo.services.enumeration import neg_curve_matrix, nef_generator_matrix

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class Verdict(str, Enum):
    """Behaviour of -(K + eps D) over the Campana weights eps = 1 - 1/m."""

    AMPLE_ALL_EPS = "AmpleAllEps"
    NEF_BIG_AT_HALF = "NefBigAtHalf"
    NEF_NOT_BIG_AT_HALF = "NefNotBigAtHalf"
    NEVER_NEF = "NeverNef"


# Most positive first; used to pick a cell verdict out of several forms.
VERDICT_ORDER = (
    Verdict.AMPLE_ALL_EPS,
    Verdict.NEF_BIG_AT_HALF,
    Verdict.NEF_NOT_BIG_AT_HALF,
    Verdict.NEVER_NEF,
)


@dataclass(frozen=True, slots=True)
class CampanaWeight:
    """Boundary multiplicity m >= 2 (None for infinite) and its weight eps = 1 - 1/m."""

    multiplicity: Optional[int]

    def __post_init__(self) -> None:
        if self.multiplicity is not None and self.multiplicity < 2:
            raise ContractError(f"Campana multiplicities start at 2, got {self.multiplicity}")

    @property
    def epsilon(self) -> Fraction:
        if self.multiplicity is None:
            return Fraction(1)
        return 1 - Fraction(1, self.multiplicity)


@dataclass(frozen=True, slots=True)
class PositivityVerdict:
    mu: int
    nef_threshold: Optional[Fraction]  # None means +infinity
    verdict: Optional[Verdict]  # None only for degenerate boundaries with mu <= 0
    adjoint_self_intersection_at_half: Fraction

    @property
    def threshold_label(self) -> str:
        return "inf" if self.nef_threshold is None else str(self.nef_threshold)


def is_nef(L: ClassLike) -> bool:
    """L.E >= 0 for every (-1)-curve E."""
    values, _ = pairing_numerators(neg_curve_matrix(L.surface), L)
    return bool((values >= 0).all())


def is_ample(L: ClassLike) -> bool:
    """L.E > 0 for every (-1)-curve E."""
    values, _ = pairing_numerators(neg_curve_matrix(L.surface), L)
    return bool((values > 0).all())


def is_big_given_nef(L: ClassLike) -> bool:
    if not is_nef(L):
        raise ContractError(f"{format_class(L)} is not nef")
    return self_intersection(L) > 0


def is_pseudoeffective(D: ClassLike) -> bool:
    """D.G >= 0 for every nef cone generator G."""
    values, _ = pairing_numerators(nef_generator_matrix(D.surface), D)
    return bool((values >= 0).all())


def max_neg_intersection(D: DivisorClass) -> int:
    values, _ = pairing_numerators(neg_curve_matrix(D.surface), D)
    return int(values.max())


def nef_threshold(D: DivisorClass) -> Optional[Fraction]:
    """Largest eps with -(K + eps D) nef; None stands for +infinity."""
    mu = max_neg_intersection(D)
    if mu <= 0:
        return None
    return Fraction(1, mu)


def adjoint_self_intersection(D: ClassLike, epsilon: Fraction) -> Fraction:
    """(-(K + eps D))^2."""
    return Fraction(self_intersection(adjoint_class(D, epsilon)))


def is_campana_nef(D: ClassLike, weight: CampanaWeight) -> bool:
    return is_nef(adjoint_class(D, weight.epsilon))


def classify_boundary(D: DivisorClass) -> PositivityVerdict:
    mu = max_neg_intersection(D)
    at_half = adjoint_self_intersection(D, HALF)
    verdict: Optional[Verdict]
    if mu <= 0:
        logger.warning("degenerate boundary %s: no (-1)-curve meets it positively", format_class(D))
        verdict = None
    elif mu == 1:
        verdict = Verdict.AMPLE_ALL_EPS
    elif mu == 2:
        verdict = Verdict.NEF_BIG_AT_HALF if at_half > 0 else Verdict.NEF_NOT_BIG_AT_HALF
    else:
        # 1/mu < 1/2, below every Campana weight
        verdict = Verdict.NEVER_NEF
    return PositivityVerdict(
        mu=mu,
        nef_threshold=None if mu <= 0 else Fraction(1, mu),
        verdict=verdict,
        adjoint_self_intersection_at_half=at_half,
    )


def most_positive(verdicts: Sequence[PositivityVerdict]) -> Optional[PositivityVerdict]:
    """The entry whose verdict ranks highest in VERDICT_ORDER (first one on ties)."""
    ranked = [v for v in verdicts if v.verdict is not None]
    if not ranked:
        return None
    return min(ranked, key=lambda v: VERDICT_ORDER.index(v.verdict))
