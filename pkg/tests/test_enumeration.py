import math
from collections import defaultdict
from itertools import product

import pytest

from delpezzo.core.errors import ContractError
from delpezzo.core.lattice import (
    DivisorClass,
    SurfaceModel,
    anticanonical_degree,
    arithmetic_genus,
    self_intersection,
)
from delpezzo.services.enumeration import (
    EnumerationQuery,
    are_pairwise_disjoint,
    canonical_form,
    coefficient_bounds,
    conic_classes,
    contraction_sets,
    enumerate_raw,
    format_form,
    hyperplane_classes,
    irreducible_families,
    is_nef_class,
    neg_curve_classes,
    nef_cone_generators,
    orbit_size,
)
from delpezzo.services.report import table_cells
from tests.conftest import VERIFIED_DEGREES, make_class


@pytest.mark.parametrize(
    "d,count", [(1, 240), (2, 56), (3, 27), (4, 16), (5, 10), (6, 6), (7, 3)]
)
def test_neg_curve_counts(d, count):
    assert len(neg_curve_classes(SurfaceModel(d))) == count


def test_neg_curve_orbits_on_degree_one():
    families = irreducible_families(EnumerationQuery(SurfaceModel(1), 1, -1))
    assert [f.orbit_size for f in families] == [8, 28, 56, 56, 56, 28, 8]
    assert [f.representative.a for f in families] == [0, 1, 2, 3, 4, 5, 6]


@pytest.mark.parametrize("d,count", [(3, 27), (4, 10), (5, 5)])
def test_conic_counts(d, count):
    assert len(conic_classes(SurfaceModel(d))) == count


def test_hyperplane_pullbacks_on_cubic_surface():
    assert len(hyperplane_classes(SurfaceModel(3))) == 72


def test_nef_generators_on_degree_five():
    assert len(nef_cone_generators(SurfaceModel(5))) == 10


def test_contractions_to_the_plane_match_hyperplane_pullbacks():
    s = SurfaceModel(3)
    full = contraction_sets(s, 6)
    assert len(full) == len(hyperplane_classes(s)) == 72
    assert contraction_sets(s, 0) == ((),)
    assert contraction_sets(s, 7) == ()
    assert all(are_pairwise_disjoint(group) for group in full)


def test_empty_cell():
    assert irreducible_families(EnumerationQuery(SurfaceModel(5), 10, 10)) == ()


def test_degree_five_neg_curves_forms():
    families = irreducible_families(EnumerationQuery(SurfaceModel(5), 1, -1))
    assert [f.form for f in families] == ["E_i", "H - E_i - E_j"]
    assert sum(f.orbit_size for f in families) == 10


def test_anticanonical_double_on_cubic_surface():
    families = irreducible_families(EnumerationQuery(SurfaceModel(3), 6, 12))
    assert len(families) == 1
    assert families[0].form == "6H - 2E_i - 2E_j - 2E_k - 2E_l - 2E_m - 2E_n"
    assert families[0].orbit_size == 1


def test_infeasible_query_is_empty():
    q = EnumerationQuery(SurfaceModel(3), 3, 4)
    assert not q.hodge_feasible
    assert coefficient_bounds(q) == range(0)
    assert enumerate_raw(q) == ()


def test_anticanonical_degree_must_be_positive():
    with pytest.raises(ContractError):
        EnumerationQuery(SurfaceModel(3), 0, 0)


def test_format_form():
    assert format_form(make_class(5, 4, 2, 2, 2)) == "4H - 2E_i - 2E_j - 2E_k"
    assert format_form(make_class(5, 0, -1)) == "E_i"
    assert format_form(make_class(5, 1, 1, -1)) == "H - E_i + E_j"


def test_family_members_cover_the_orbit():
    for family in irreducible_families(EnumerationQuery(SurfaceModel(4), 6, 4)):
        members = family.members()
        assert len(members) == family.orbit_size == len(set(members))
        assert all(canonical_form(c)[0] == family.representative for c in members)


def test_orbit_size():
    assert orbit_size((2, 1, 1, 0)) == 12
    assert orbit_size((1, 1, 1, 1)) == 1


def test_pairwise_disjoint():
    s = SurfaceModel(4)
    E1, E2 = DivisorClass.exceptional(s, 1), DivisorClass.exceptional(s, 2)
    L12 = make_class(4, 1, 1, 1)
    assert are_pairwise_disjoint([E1, E2])
    assert not are_pairwise_disjoint([E1, L12])
    assert not are_pairwise_disjoint([E1, E1])
    assert not are_pairwise_disjoint([make_class(4, 1)])
    assert are_pairwise_disjoint([])


# === Brute-force oracle ===

_RADIUS_SQUARED = 169


def _half_vectors(length):
    """Integer vectors of the given length with sum of squares <= 169, grouped by (sum, sumsq)."""
    groups = defaultdict(list)
    bound = math.isqrt(_RADIUS_SQUARED)
    for v in product(range(-bound, bound + 1), repeat=length):
        squares = sum(x * x for x in v)
        if squares <= _RADIUS_SQUARED:
            groups[(sum(v), squares)].append(v)
    return groups


@pytest.fixture(scope="module")
def half_tables():
    return {length: _half_vectors(length) for length in range(0, 5)}


def _oracle(d, m, n, half_tables):
    k = 9 - d
    left, right = half_tables[k // 2], half_tables[k - k // 2]
    found = set()
    for a in range(-12, 13):
        total, squares = 3 * a - m, a * a - n
        if squares < 0:
            continue
        for (s1, q1), heads in left.items():
            tails = right.get((total - s1, squares - q1))
            if not tails:
                continue
            for head in heads:
                for tail in tails:
                    found.add((a, *head, *tail))
    return found


@pytest.mark.parametrize("d", VERIFIED_DEGREES)
def test_enumeration_matches_brute_force(d, half_tables):
    s = SurfaceModel(d)
    for m, n in table_cells(d):
        expected = _oracle(d, m, n, half_tables)
        got = enumerate_raw(EnumerationQuery(s, m, n))
        assert {c.coordinates for c in got} == expected, (d, m, n)
        assert list(got) == sorted(got, key=lambda c: c.coordinates)


@pytest.mark.parametrize("d", VERIFIED_DEGREES)
def test_families_have_integral_nonnegative_genus(d):
    s = SurfaceModel(d)
    for m, n in table_cells(d):
        for family in irreducible_families(EnumerationQuery(s, m, n)):
            genus = arithmetic_genus(family.representative)
            assert genus.denominator == 1 and genus >= 0


def test_canonical_form_is_permutation_invariant(rng):
    s = SurfaceModel(2)
    classes = enumerate_raw(EnumerationQuery(s, 4, 2))
    for _ in range(1000):
        c = rng.choice(classes)
        order = list(range(s.blowup_points))
        rng.shuffle(order)
        assert canonical_form(c.permuted(order)) == canonical_form(c)
        assert c.permuted(order) in set(classes)


@pytest.mark.parametrize(
    "d,m,n,expected",
    [
        (5, 1, -1, range(0, 2)),
        (1, 2, 0, range(1, 12)),
        (3, 6, 12, range(6, 7)),
    ],
)
def test_coefficient_bounds(d, m, n, expected):
    assert coefficient_bounds(EnumerationQuery(SurfaceModel(d), m, n)) == expected


@pytest.mark.parametrize("d,m,n,forms", [(1, 2, 2, 7), (3, 3, 1, 5), (5, 10, 16, 3)])
def test_form_counts(d, m, n, forms):
    assert len(irreducible_families(EnumerationQuery(SurfaceModel(d), m, n))) == forms


def _passes_filter(C, m, n):
    genus = arithmetic_genus(C)
    if genus.denominator != 1 or genus < 0:
        return False
    return (m, n) == (1, -1) or is_nef_class(C)


@pytest.mark.parametrize("d", VERIFIED_DEGREES)
def test_families_obey_hodge_index_and_cover_the_filtered_classes(d):
    s = SurfaceModel(d)
    for m, n in table_cells(d):
        q = EnumerationQuery(s, m, n)
        families = irreducible_families(q)
        for family in families:
            C = family.representative
            assert anticanonical_degree(C) ** 2 >= d * self_intersection(C), family.form
        filtered = [C for C in enumerate_raw(q) if _passes_filter(C, m, n)]
        assert sum(f.orbit_size for f in families) == len(filtered), (d, m, n)


def test_contraction_sets_among_given_curves():
    s = SurfaceModel(4)
    E = [DivisorClass.exceptional(s, i) for i in range(1, 6)]
    line = make_class(4, 1, 1, 1)
    sets = contraction_sets(s, 2, among=E[:3] + [line])
    # H - E1 - E2 meets E1 and E2 but not E3
    assert {frozenset(S) for S in sets} == {
        frozenset({E[0], E[1]}),
        frozenset({E[0], E[2]}),
        frozenset({E[1], E[2]}),
        frozenset({E[2], line}),
    }
