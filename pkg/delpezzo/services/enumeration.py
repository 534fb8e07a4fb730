"""
Enumeration of curve classes with prescribed anticanonical degree m and
self-intersection n.

For C = aH - sum b_i E_i on a surface with k = 9 - d blow-ups the two
conditions read

    3a - sum b_i   = m
    a^2 - sum b_i^2 = n

and Cauchy-Schwarz gives (3a - m)^2 <= k (a^2 - n), which bounds a. For each
admissible a the multiplicities are searched in non-increasing order and the
permutations are expanded afterwards.

Per-surface sets ((-1)-curves, conics, nef cone generators, the disjointness
graph) are cached with lru_cache and shared read-only.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from sympy.utilities.iterables import multiset_permutations

from delpezzo.core.errors import ContractError
from delpezzo.core.lattice import (
    DivisorClass,
    SurfaceModel,
    arithmetic_genus,
    form_matrix,
    intersect,
    pairing_numerators,
)

logger = logging.getLogger(__name__)

# Free index names used when printing a family, in the usual order.
INDEX_LETTERS = "ijklmnpq"


# === Domain types ===

@dataclass(frozen=True, slots=True)
class EnumerationQuery:
    """All classes with -K.C = m and C^2 = n on a given surface."""

    surface: SurfaceModel
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ContractError(f"anticanonical degree must be at least 1, got {self.m}")

    @property
    def hodge_feasible(self) -> bool:
        """Hodge index: m^2 >= d n. Infeasible queries simply come back empty."""
        return self.m * self.m >= self.surface.degree * self.n


@dataclass(frozen=True, slots=True)
class CurveFamily:
    """A canonical representative (b non-increasing) and the size of its permutation orbit."""

    surface: SurfaceModel
    representative: DivisorClass
    orbit_size: int
    m: int
    n: int

    @property
    def form(self) -> str:
        return format_form(self.representative)

    def members(self) -> Tuple[DivisorClass, ...]:
        """Every class in the orbit, in lexicographic order."""
        rep = self.representative
        return tuple(
            sorted(
                (DivisorClass(self.surface, rep.a, tuple(p)) for p in multiset_permutations(list(rep.b))),
                key=lambda c: c.coordinates,
            )
        )


# === Bounds and search ===

def coefficient_bounds(q: EnumerationQuery) -> range:
    """All integers a with (3a - m)^2 <= k (a^2 - n), as a (possibly empty) range."""
    d = q.surface.degree
    k = q.surface.blowup_points
    # equivalent to d a^2 - 6 m a + (m^2 + k n) <= 0
    A, B, C = d, -6 * q.m, q.m * q.m + k * q.n
    disc = B * B - 4 * A * C
    if disc < 0:
        return range(0)
    root = math.isqrt(disc)
    low = (-B - root - 1) // (2 * A)
    high = (-B + root + 1) // (2 * A) + 1

    def admissible(a: int) -> bool:
        return A * a * a + B * a + C <= 0

    while low <= high and not admissible(low):
        low += 1
    while high >= low and not admissible(high):
        high -= 1
    return range(low, high + 1)


def _sorted_multiplicities(slots: int, total: int, squares: int, ceiling: int) -> Iterator[Tuple[int, ...]]:
    """Non-increasing tuples of length `slots`, entries <= ceiling, with given sum and sum of squares."""
    if slots == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    if squares < 0 or total * total > slots * squares:
        return
    bound = math.isqrt(squares)
    top = min(ceiling, bound)
    # the head is the largest entry, so it is at least the mean
    bottom = max(-bound, -((-total) // slots))
    for head in range(top, bottom - 1, -1):
        rest_total = total - head
        if rest_total > (slots - 1) * head:
            break
        for tail in _sorted_multiplicities(slots - 1, rest_total, squares - head * head, head):
            yield (head, *tail)


def _canonical_solutions(q: EnumerationQuery) -> Iterator[DivisorClass]:
    """One representative (b non-increasing) per orbit, ordered by (a, b)."""
    k = q.surface.blowup_points
    for a in coefficient_bounds(q):
        squares = a * a - q.n
        if squares < 0:
            continue
        found = list(_sorted_multiplicities(k, 3 * a - q.m, squares, math.isqrt(squares)))
        for b in sorted(found):
            yield DivisorClass(q.surface, a, b)


def orbit_size(b: Sequence[int]) -> int:
    """Number of distinct permutations of b (multinomial coefficient)."""
    size = math.factorial(len(b))
    for count in Counter(b).values():
        size //= math.factorial(count)
    return size


def enumerate_raw(q: EnumerationQuery) -> Tuple[DivisorClass, ...]:
    """Every integral solution of the two equations, deduplicated, in lexicographic order."""
    classes: List[DivisorClass] = []
    for rep in _canonical_solutions(q):
        classes.extend(DivisorClass(q.surface, rep.a, tuple(p)) for p in multiset_permutations(list(rep.b)))
    return tuple(sorted(classes, key=lambda c: c.coordinates))


def canonical_form(C: DivisorClass) -> Tuple[DivisorClass, int]:
    """Representative with b sorted non-increasing, and the orbit size."""
    b = tuple(sorted(C.b, reverse=True))
    return DivisorClass(C.surface, C.a, b), orbit_size(b)


# === Per-surface caches ===

@lru_cache(maxsize=None)
def neg_curve_classes(surface: SurfaceModel) -> Tuple[DivisorClass, ...]:
    """The (-1)-curves: every class with m = 1 and n = -1."""
    curves = enumerate_raw(EnumerationQuery(surface, 1, -1))
    logger.debug("degree %d: %d (-1)-curves", surface.degree, len(curves))
    return curves


@lru_cache(maxsize=None)
def neg_curve_matrix(surface: SurfaceModel) -> np.ndarray:
    return form_matrix(surface, neg_curve_classes(surface))


def is_nef_class(C: DivisorClass) -> bool:
    """C.E >= 0 for every (-1)-curve E (they generate the effective cone for d <= 7)."""
    values, _ = pairing_numerators(neg_curve_matrix(C.surface), C)
    return bool((values >= 0).all())


def _is_irreducible_candidate(C: DivisorClass, q: EnumerationQuery) -> bool:
    genus = arithmetic_genus(C)
    if genus.denominator != 1 or genus < 0:
        return False
    if q.m == 1 and q.n == -1:
        return True
    return is_nef_class(C)


def irreducible_families(q: EnumerationQuery) -> Tuple[CurveFamily, ...]:
    """Canonical forms of classes that are (-1)-curves or nef, with integral genus >= 0."""
    families = []
    for rep in _canonical_solutions(q):
        # nefness and genus are invariant under relabelling the E_i
        if _is_irreducible_candidate(rep, q):
            families.append(CurveFamily(q.surface, rep, orbit_size(rep.b), q.m, q.n))
    return tuple(families)


def _expand(families: Sequence[CurveFamily]) -> Tuple[DivisorClass, ...]:
    classes: List[DivisorClass] = []
    for family in families:
        classes.extend(family.members())
    return tuple(sorted(classes, key=lambda c: c.coordinates))


@lru_cache(maxsize=None)
def conic_classes(surface: SurfaceModel) -> Tuple[DivisorClass, ...]:
    """Nef classes with m = 2, n = 0: fibres of the conic bundles."""
    conics = _expand(irreducible_families(EnumerationQuery(surface, 2, 0)))
    logger.debug("degree %d: %d conic classes", surface.degree, len(conics))
    return conics


@lru_cache(maxsize=None)
def hyperplane_classes(surface: SurfaceModel) -> Tuple[DivisorClass, ...]:
    """Nef classes with m = 3, n = 1: pullbacks of lines under contractions to P^2."""
    lines = _expand(irreducible_families(EnumerationQuery(surface, 3, 1)))
    logger.debug("degree %d: %d hyperplane pullbacks", surface.degree, len(lines))
    return lines


@lru_cache(maxsize=None)
def nef_cone_generators(surface: SurfaceModel) -> Tuple[DivisorClass, ...]:
    """Conics and hyperplane pullbacks generate the nef cone for d <= 7."""
    return conic_classes(surface) + hyperplane_classes(surface)


@lru_cache(maxsize=None)
def nef_generator_matrix(surface: SurfaceModel) -> np.ndarray:
    return form_matrix(surface, nef_cone_generators(surface))


# === Disjoint configurations of (-1)-curves ===

@lru_cache(maxsize=None)
def disjointness_graph(surface: SurfaceModel) -> nx.Graph:
    """(-1)-curves as nodes, joined when they do not meet."""
    curves = neg_curve_classes(surface)
    graph = nx.Graph()
    graph.add_nodes_from(curves)
    graph.add_edges_from((x, y) for x, y in combinations(curves, 2) if intersect(x, y) == 0)
    logger.debug(
        "degree %d: disjointness graph with %d edges", surface.degree, graph.number_of_edges()
    )
    return graph


def are_pairwise_disjoint(curves: Sequence[DivisorClass]) -> bool:
    """True if every entry is a (-1)-curve and no two of them meet."""
    if not curves:
        return True
    graph = disjointness_graph(curves[0].surface)
    if len(set(curves)) != len(curves) or any(c not in graph for c in curves):
        return False
    return all(graph.has_edge(x, y) for x, y in combinations(curves, 2))


def contraction_sets(
    surface: SurfaceModel, size: int, among: Optional[Sequence[DivisorClass]] = None
) -> Tuple[Tuple[DivisorClass, ...], ...]:
    """All sets of `size` pairwise disjoint (-1)-curves, i.e. the contractions of that many curves.

    With `among`, only sets drawn from those curves are returned.
    """
    if size < 0 or size > surface.blowup_points:
        return ()
    if size == 0:
        return ((),)
    found = []
    graph = disjointness_graph(surface)
    if among is not None:
        graph = graph.subgraph(among)
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) > size:
            break
        if len(clique) == size:
            found.append(tuple(sorted(clique, key=lambda c: c.coordinates)))
    return tuple(sorted(found, key=lambda s: [c.coordinates for c in s]))


# === Rendering ===

def format_form(representative: DivisorClass) -> str:
    """Index-free form of a family, e.g. "4H - 2E_i - 2E_j - E_k"."""
    terms: List[Tuple[int, str]] = []
    if representative.a != 0:
        terms.append((representative.a, "H"))
    letters = iter(INDEX_LETTERS)
    for value in representative.b:
        if value != 0:
            terms.append((-value, f"E_{next(letters)}"))
    if not terms:
        return "0"
    pieces = []
    for position, (coefficient, symbol) in enumerate(terms):
        body = symbol if abs(coefficient) == 1 else f"{abs(coefficient)}{symbol}"
        if position == 0:
            pieces.append(body if coefficient > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coefficient > 0 else f"- {body}")
    return " ".join(pieces)
