"""
Structural description of curve families.

Every family produced by the enumeration gets a tag naming how it arises:
a multiple of -K, the pullback of a simple class under a contraction
X -> X' of disjoint (-1)-curves, or -K plus such a pullback. Contractions are
recognised from invariants only (target degree, pushed-forward degree and
self-intersection, orthogonal conic classes); no explicit morphism is built.

The decision procedure below is tried in order and the first match wins.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Set, Tuple

from delpezzo.core.errors import ContractError, NotPseudoeffectiveError, SurfaceMismatchError
from delpezzo.core.lattice import (
    DivisorClass,
    SurfaceModel,
    anticanonical_degree,
    canonical_class,
    format_class,
    intersect,
    proportional_to_canonical,
    self_intersection,
)
from delpezzo.data.longtable import LONGTABLE
from delpezzo.services.enumeration import (
    CurveFamily,
    EnumerationQuery,
    are_pairwise_disjoint,
    conic_classes,
    contraction_sets,
    hyperplane_classes,
    irreducible_families,
    is_nef_class,
    neg_curve_classes,
)
from delpezzo.services.positivity import PositivityVerdict, classify_boundary, most_positive
from delpezzo.services.zariski import zariski_decompose

logger = logging.getLogger(__name__)

# Multiples of C tried when looking for a contraction through the Zariski
# decomposition of jC + K.
_ADJOINT_MULTIPLES = (3, 2, 1)


class TagKind(str, Enum):
    """Tag kinds, listed in precedence order."""

    NEG_CURVE = "NegCurve"
    ANTI_CANONICAL_MULTIPLE = "AntiCanonicalMultiple"
    CONIC = "Conic"
    ANTI_CANONICAL_PULLBACK = "AntiCanonicalPullback"
    MINUS_K_PLUS_CONIC = "MinusKPlusConic"
    MINUS_K_PLUS_2CONIC = "MinusKPlus2Conic"
    MINUS_K_PLUS_HYPERPLANE = "MinusKPlusHyperplane"
    MINUS_K_PLUS_QUADRIC_CLASS = "MinusKPlusQuadricClass"
    MINUS_K_PLUS_BLOWUP_CLASS = "MinusKPlusBlowupClass"
    HYPERPLANE_PULLBACK = "HyperplanePullback"
    PLANE_CURVE_PULLBACK = "PlaneCurvePullback"
    BLOWUP_CLASS_PULLBACK = "BlowupClassPullback"
    QUADRIC_CLASS_PULLBACK = "QuadricClassPullback"
    PULLBACK_MINUS_K_PLUS_CONIC = "PullbackMinusKPlusConic"
    PULLBACK_MINUS_K_PLUS_2CONIC = "PullbackMinusKPlus2Conic"
    NO_CURVE = "NoCurve"
    UNCLASSIFIED = "Unclassified"

    @property
    def precedence(self) -> int:
        return list(TagKind).index(self)


def _multiple(coefficient: int, symbol: str) -> str:
    return symbol if coefficient == 1 else f"{coefficient} {symbol}"


@dataclass(frozen=True, slots=True)
class StructuralTag:
    kind: TagKind
    params: Tuple[int, ...] = ()

    @property
    def label(self) -> str:
        """Kind with its parameters, e.g. "AntiCanonicalPullback(4)"."""
        if not self.params:
            return self.kind.value
        return f"{self.kind.value}({','.join(str(p) for p in self.params)})"

    @property
    def description(self) -> str:
        kind, params = self.kind, self.params
        if kind is TagKind.NEG_CURVE:
            return "(-1)-curve"
        if kind is TagKind.ANTI_CANONICAL_MULTIPLE:
            return "C in |-K|" if params[0] == 1 else f"C in |-{params[0]}K|"
        if kind is TagKind.CONIC:
            return "smooth conic"
        if kind is TagKind.ANTI_CANONICAL_PULLBACK:
            if params[0] == 9:
                return "C in |-pi*K'|, X' = P^2"
            return f"C in |-pi*K'|, X' of degree {params[0]}"
        if kind is TagKind.MINUS_K_PLUS_CONIC:
            return "C ~ -K + F"
        if kind is TagKind.MINUS_K_PLUS_2CONIC:
            return "C ~ -K + 2F"
        if kind is TagKind.MINUS_K_PLUS_HYPERPLANE:
            return "C ~ -K + pi*H', X' = P^2"
        if kind is TagKind.MINUS_K_PLUS_QUADRIC_CLASS:
            return "C ~ -K + pi*(1,1), X' = P^1 x P^1"
        if kind is TagKind.MINUS_K_PLUS_BLOWUP_CLASS:
            c, e = params
            return f"C ~ -K + {_multiple(c, 'pi*H')}' - {_multiple(e, 'pi*E')}, X' = F_1"
        if kind is TagKind.HYPERPLANE_PULLBACK:
            return "C in |pi*H'|, X' = P^2"
        if kind is TagKind.PLANE_CURVE_PULLBACK:
            return f"C in |{params[0]} pi*H'|, X' = P^2"
        if kind is TagKind.QUADRIC_CLASS_PULLBACK:
            return f"C in |pi*({params[0]},{params[1]})|, X' = P^1 x P^1"
        if kind is TagKind.BLOWUP_CLASS_PULLBACK:
            c, e = params
            return f"C in |{_multiple(c, 'pi*H')}' - {_multiple(e, 'pi*E')}|, X' = F_1"
        if kind is TagKind.PULLBACK_MINUS_K_PLUS_CONIC:
            return f"C ~ -pi*K' + pi*F', X' of degree {params[0]}"
        if kind is TagKind.PULLBACK_MINUS_K_PLUS_2CONIC:
            return f"C ~ -pi*K' + 2 pi*F', X' of degree {params[0]}"
        if kind is TagKind.NO_CURVE:
            return "no such curve exists"
        return "unclassified"

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.kind.precedence, self.params)


UNCLASSIFIED = StructuralTag(TagKind.UNCLASSIFIED)
NO_CURVE = StructuralTag(TagKind.NO_CURVE)


@dataclass(frozen=True, slots=True)
class ContractionInvariants:
    """Invariants of the pushforward C' of C under contracting k disjoint (-1)-curves."""

    contracted_count: int
    target_degree: int
    m: int
    n: int


# === Decompositions and contractions ===

def disjoint_neg_decomposition(D: DivisorClass) -> Optional[Tuple[DivisorClass, ...]]:
    """Pairwise disjoint (-1)-curves summing exactly to D, or None."""
    if D.is_zero():
        return ()
    # a sum of k disjoint (-1)-curves has -K.D = k and D^2 = -k
    k = anticanonical_degree(D)
    if k <= 0 or self_intersection(D) != -k or k > D.surface.blowup_points:
        return None
    # every summand N has D.N = -1
    candidates = [E for E in neg_curve_classes(D.surface) if intersect(D, E) < 0]
    if len(candidates) < k:
        return None
    for S in contraction_sets(D.surface, k, among=candidates):
        if _sum_classes(D.surface, S) == D:
            return S
    return None


def _sum_classes(surface: SurfaceModel, classes: Sequence[DivisorClass]) -> DivisorClass:
    total = DivisorClass.zero(surface)
    for c in classes:
        total = total + c
    return total


def contracted_invariants(C: DivisorClass, S: Sequence[DivisorClass]) -> ContractionInvariants:
    if not are_pairwise_disjoint(S):
        raise ContractError(
            "contraction set must consist of distinct pairwise disjoint (-1)-curves: "
            + ", ".join(format_class(c) for c in S)
        )
    d = C.surface.degree
    m = anticanonical_degree(C)
    n = self_intersection(C)
    meets = [intersect(C, N) for N in S]
    return ContractionInvariants(
        contracted_count=len(S),
        target_degree=d + len(S),
        m=m + sum(meets),
        n=n + sum(c * c for c in meets),
    )


def feasible_self_intersections(d: int, m: int) -> Set[int]:
    """n allowed by Hodge index (n <= m^2/d), integral genus (n = m mod 2) and genus >= 0."""
    SurfaceModel(d)
    if m < 1:
        raise ContractError(f"anticanonical degree must be at least 1, got {m}")
    low = max(-1, m - 2)
    high = (m * m) // d
    return {n for n in range(low, high + 1) if (n - m) % 2 == 0}


# === Classification of a single class ===

def _conic_multiple(R: DivisorClass) -> Optional[int]:
    """k in {1, 2} with R = k F for a conic class F."""
    conics = set(conic_classes(R.surface))
    if R in conics:
        return 1
    if all(x % 2 == 0 for x in R.coordinates):
        half = DivisorClass(R.surface, R.a // 2, tuple(x // 2 for x in R.b))
        if half in conics:
            return 2
    return None


def _adjoint_tag(C: DivisorClass) -> Optional[StructuralTag]:
    """C = -K + R with R a conic, twice a conic, or a pullback of a small class."""
    R = C + canonical_class(C.surface)
    multiple = _conic_multiple(R)
    if multiple == 1:
        return StructuralTag(TagKind.MINUS_K_PLUS_CONIC)
    if multiple == 2:
        return StructuralTag(TagKind.MINUS_K_PLUS_2CONIC)
    if R.is_zero() or not is_nef_class(R):
        return None
    shape = (anticanonical_degree(R), self_intersection(R))
    if shape == (3, 1) and R in set(hyperplane_classes(R.surface)):
        return StructuralTag(TagKind.MINUS_K_PLUS_HYPERPLANE)
    if shape == (4, 2):
        inner = classify_class(R)
        if inner == StructuralTag(TagKind.QUADRIC_CLASS_PULLBACK, (1, 1)):
            return StructuralTag(TagKind.MINUS_K_PLUS_QUADRIC_CLASS)
    if shape == (5, 3):
        inner = classify_class(R)
        if inner.kind is TagKind.BLOWUP_CLASS_PULLBACK:
            return StructuralTag(TagKind.MINUS_K_PLUS_BLOWUP_CLASS, inner.params)
    return None


def _orthogonal_conics(C: DivisorClass, S: Sequence[DivisorClass]) -> List[DivisorClass]:
    return [F for F in conic_classes(C.surface) if all(intersect(F, N) == 0 for N in S)]


def _plane_tag(inv: ContractionInvariants) -> Optional[StructuralTag]:
    """C' = e H' on P^2."""
    e, rest = divmod(inv.m, 3)
    if rest or e < 1 or inv.n != e * e:
        return None
    if e == 1:
        return StructuralTag(TagKind.HYPERPLANE_PULLBACK)
    return StructuralTag(TagKind.PLANE_CURVE_PULLBACK, (e,))


def _quadric_tag(C: DivisorClass, F1: DivisorClass, F2: DivisorClass) -> Optional[StructuralTag]:
    """C = p F1 + q F2 for the two rulings of P^1 x P^1."""
    p = intersect(C, F2)
    q = intersect(C, F1)
    if p < 1 or q < 1 or p * F1 + q * F2 != C:
        return None
    return StructuralTag(TagKind.QUADRIC_CLASS_PULLBACK, tuple(sorted((p, q))))


def _blowup_tag(C: DivisorClass, inv: ContractionInvariants, fibre: DivisorClass) -> Optional[StructuralTag]:
    """C' = c H' - e E on F_1, from m' = 3c - e and n' = c^2 - e^2."""
    m, n = inv.m, inv.n
    # 8c^2 - 6m c + (m^2 + n) = 0
    disc = 4 * m * m - 32 * n
    if disc < 0:
        return None
    root = math.isqrt(disc)
    if root * root != disc:
        return None
    for numerator in (6 * m + root, 6 * m - root):
        c, rest = divmod(numerator, 16)
        if rest:
            continue
        e = 3 * c - m
        if e >= 0 and c - e == intersect(C, fibre):
            return StructuralTag(TagKind.BLOWUP_CLASS_PULLBACK, (c, e))
    return None


def _pullback_tag(C: DivisorClass, S: Sequence[DivisorClass]) -> Optional[StructuralTag]:
    inv = contracted_invariants(C, S)
    if inv.target_degree == 9:
        return _plane_tag(inv)
    if inv.target_degree == 8:
        fibres = _orthogonal_conics(C, S)
        if len(fibres) == 2 and intersect(fibres[0], fibres[1]) == 1:
            return _quadric_tag(C, fibres[0], fibres[1])
        if len(fibres) == 1:
            return _blowup_tag(C, inv, fibres[0])
        return None
    # C = -pi*K' + pi*F' means C + K - sum N = pi*F'
    residual = C + canonical_class(C.surface) - _sum_classes(C.surface, S)
    multiple = _conic_multiple(residual)
    if multiple == 1:
        return StructuralTag(TagKind.PULLBACK_MINUS_K_PLUS_CONIC, (inv.target_degree,))
    if multiple == 2:
        return StructuralTag(TagKind.PULLBACK_MINUS_K_PLUS_2CONIC, (inv.target_degree,))
    return None


def _contraction_tag(C: DivisorClass) -> Optional[StructuralTag]:
    """Look for a contraction through the Zariski support of jC + K."""
    K = canonical_class(C.surface)
    for j in _ADJOINT_MULTIPLES:
        try:
            decomposition = zariski_decompose(j * C + K)
        except NotPseudoeffectiveError:
            continue
        S = decomposition.support
        if not S or any(intersect(C, N) != 0 for N in S) or not are_pairwise_disjoint(S):
            continue
        tag = _pullback_tag(C, S)
        if tag is not None:
            logger.debug("%s: contraction of %d curves via %dC + K", format_class(C), len(S), j)
            return tag
    return None


def classify_class(C: DivisorClass) -> StructuralTag:
    """Tag for a single irreducible class; Unclassified when no branch applies."""
    m = anticanonical_degree(C)
    n = self_intersection(C)
    if (m, n) == (1, -1):
        return StructuralTag(TagKind.NEG_CURVE)
    k = proportional_to_canonical(C)
    if k is not None:
        return StructuralTag(TagKind.ANTI_CANONICAL_MULTIPLE, (k,))
    if (m, n) == (2, 0):
        return StructuralTag(TagKind.CONIC)

    summands = disjoint_neg_decomposition(C + canonical_class(C.surface))
    if summands:
        return StructuralTag(TagKind.ANTI_CANONICAL_PULLBACK, (C.surface.degree + len(summands),))

    tag = _adjoint_tag(C)
    if tag is not None:
        return tag

    tag = _contraction_tag(C)
    if tag is not None:
        return tag

    logger.warning("no structural description for %s (m=%d, n=%d)", format_class(C), m, n)
    return UNCLASSIFIED


def structural_tag(d: int, family: CurveFamily) -> StructuralTag:
    if family.surface.degree != d:
        raise SurfaceMismatchError(
            f"family {family.form} lives on degree {family.surface.degree}, not {d}"
        )
    return classify_class(family.representative)


# === Cells ===

@dataclass(frozen=True, slots=True)
class CellClassification:
    """Every irreducible family of a (d, m, n) cell with its tag and verdict."""

    surface: SurfaceModel
    m: int
    n: int
    families: Tuple[CurveFamily, ...]
    family_tags: Tuple[StructuralTag, ...]
    family_verdicts: Tuple[PositivityVerdict, ...]
    tag: StructuralTag
    verdict: Optional[PositivityVerdict]

    @property
    def family_count(self) -> int:
        return sum(f.orbit_size for f in self.families)


def dominant_tag(families: Sequence[CurveFamily], tags: Sequence[StructuralTag]) -> StructuralTag:
    """Tag covering the most classes, ignoring Unclassified; ties go to precedence."""
    if not families:
        return NO_CURVE
    coverage: Dict[StructuralTag, int] = defaultdict(int)
    for family, tag in zip(families, tags):
        if tag.kind is not TagKind.UNCLASSIFIED:
            coverage[tag] += family.orbit_size
    if not coverage:
        return UNCLASSIFIED
    return min(coverage, key=lambda t: (-coverage[t], t.sort_key()))


def classify_cell(surface: SurfaceModel, m: int, n: int) -> CellClassification:
    families = irreducible_families(EnumerationQuery(surface, m, n))
    tags = tuple(structural_tag(surface.degree, f) for f in families)
    verdicts = tuple(classify_boundary(f.representative) for f in families)
    return CellClassification(
        surface=surface,
        m=m,
        n=n,
        families=families,
        family_tags=tags,
        family_verdicts=verdicts,
        tag=dominant_tag(families, tags),
        verdict=most_positive(verdicts),
    )


def table_discrepancy(d: int, m: int, n: int, tag: StructuralTag) -> Optional[str]:
    """Note when the computed cell tag differs from the published table entry."""
    published = LONGTABLE.get((d, m, n))
    if published is None:
        return None
    if published.kind == tag.kind.value and published.params == tag.params:
        return None
    note = (
        f"d={d} m={m} n={n}: table prints '{published.printed}', "
        f"computed {tag.label} ({tag.description})"
    )
    logger.info(note)
    return note


def family_notes(cell: CellClassification) -> List[str]:
    """One note per family whose own tag differs from the cell tag."""
    notes = []
    for family, tag in zip(cell.families, cell.family_tags):
        if tag != cell.tag:
            notes.append(
                f"d={cell.surface.degree} m={cell.m} n={cell.n}: {family.form} "
                f"({family.orbit_size} classes) is {tag.label} ({tag.description})"
            )
    return notes

