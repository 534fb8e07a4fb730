import logging
from fractions import Fraction

import pytest

from delpezzo.core.errors import ContractError
from delpezzo.core.lattice import SurfaceModel, adjoint_class, canonical_class
from delpezzo.services.enumeration import (
    EnumerationQuery,
    irreducible_families,
    neg_curve_classes,
    nef_cone_generators,
)
from delpezzo.services.positivity import (
    CampanaWeight,
    Verdict,
    classify_boundary,
    is_ample,
    is_big_given_nef,
    is_campana_nef,
    is_nef,
    is_pseudoeffective,
    max_neg_intersection,
    most_positive,
    nef_threshold,
)
from delpezzo.services.report import table_cells
from tests.conftest import VERIFIED_DEGREES, make_class

A, B, NB = Verdict.AMPLE_ALL_EPS, Verdict.NEF_BIG_AT_HALF, Verdict.NEF_NOT_BIG_AT_HALF

# Cells whose most positive family is not NeverNef; every other cell is NeverNef.
POSITIVE_CELLS = {
    1: {(1, 1): A, (2, 4): NB},
    2: {(1, -1): B, (2, 0): NB, (2, 2): A, (4, 8): NB},
    3: {(1, -1): A, (3, 3): A, (2, 0): B, (3, 1): B, (4, 4): NB, (6, 12): NB},
    4: {
        (1, -1): A, (2, 0): A, (4, 4): A,
        (3, 1): B, (4, 2): B, (5, 5): B,
        (6, 8): NB, (8, 16): NB,
    },
    5: {
        (1, -1): A, (2, 0): A, (3, 1): A, (5, 5): A,
        (4, 2): B, (5, 3): B, (6, 6): B, (7, 9): B,
        (6, 4): NB, (8, 12): NB, (10, 20): NB,
    },
}


def _cell_verdict(d, m, n):
    families = irreducible_families(EnumerationQuery(SurfaceModel(d), m, n))
    best = most_positive([classify_boundary(f.representative) for f in families])
    return None if best is None else best.verdict


@pytest.mark.parametrize("d", VERIFIED_DEGREES)
def test_cell_verdicts(d):
    for m, n in table_cells(d):
        if (d, m, n) == (5, 10, 10):
            assert _cell_verdict(d, m, n) is None
            continue
        expected = POSITIVE_CELLS[d].get((m, n), Verdict.NEVER_NEF)
        assert _cell_verdict(d, m, n) == expected, (d, m, n)


def test_conic_on_degree_two():
    v = classify_boundary(make_class(2, 1, 1))
    assert v.mu == 2
    assert v.nef_threshold == Fraction(1, 2)
    assert v.threshold_label == "1/2"
    assert v.verdict is Verdict.NEF_NOT_BIG_AT_HALF
    assert v.adjoint_self_intersection_at_half == 0


def test_neg_curve_on_degree_one_is_never_nef():
    E = make_class(1, 0, -1)
    assert max_neg_intersection(E) == 3
    assert classify_boundary(E).verdict is Verdict.NEVER_NEF


def test_plane_curve_pullback_on_degree_five():
    v = classify_boundary(make_class(5, 2))
    assert v.verdict is Verdict.NEF_NOT_BIG_AT_HALF
    assert v.adjoint_self_intersection_at_half == 0


def test_degenerate_boundary_is_logged(caplog):
    with caplog.at_level(logging.WARNING, logger="delpezzo.services.positivity"):
        v = classify_boundary(make_class(4, -1))
    assert v.verdict is None
    assert v.nef_threshold is None
    assert v.threshold_label == "inf"
    assert "degenerate boundary" in caplog.text
    assert nef_threshold(make_class(4, -1)) is None


def test_nef_and_ample():
    K = canonical_class(SurfaceModel(4))
    assert is_ample(-K)
    assert is_nef(make_class(4, 1))
    assert not is_ample(make_class(4, 1))
    assert not is_nef(make_class(4, 0, -1))


def test_big_needs_nef():
    assert is_big_given_nef(make_class(3, 1))
    assert not is_big_given_nef(make_class(3, 1, 1))
    with pytest.raises(ContractError):
        is_big_given_nef(make_class(3, 0, -1))


def test_pseudoeffective():
    assert is_pseudoeffective(make_class(5, 0, -1))
    assert is_pseudoeffective(make_class(5, 1, 1, -1, -1))
    assert not is_pseudoeffective(make_class(5, -1))


def test_campana_weights():
    assert CampanaWeight(2).epsilon == Fraction(1, 2)
    assert CampanaWeight(5).epsilon == Fraction(4, 5)
    assert CampanaWeight(None).epsilon == 1
    with pytest.raises(ContractError):
        CampanaWeight(1)
    conic = make_class(4, 1, 1)
    assert is_campana_nef(conic, CampanaWeight(2))
    assert is_campana_nef(conic, CampanaWeight(100))


def test_most_positive_of_nothing():
    assert most_positive([]) is None


def test_nefness_is_monotone_in_epsilon(rng):
    pool = []
    for d in (2, 3, 4, 5):
        s = SurfaceModel(d)
        for m, n in table_cells(d):
            pool.extend(f.representative for f in irreducible_families(EnumerationQuery(s, m, n)))

    for _ in range(1000):
        D = rng.choice(pool)
        q = rng.randint(2, 12)
        small, large = sorted(Fraction(rng.randint(1, q - 1), q) for _ in range(2))
        if is_nef(adjoint_class(D, large)):
            assert is_nef(adjoint_class(D, small))
        threshold = nef_threshold(D)
        assert is_nef(adjoint_class(D, large)) == (threshold is None or large <= threshold)


@pytest.mark.parametrize("d", range(1, 8))
def test_anticanonical_class_is_ample(d):
    assert is_ample(-canonical_class(SurfaceModel(d)))


@pytest.mark.parametrize("d", VERIFIED_DEGREES)
def test_cones_are_dual(d):
    s = SurfaceModel(d)
    assert all(is_pseudoeffective(E) for E in neg_curve_classes(s))
    assert all(is_nef(G) for G in nef_cone_generators(s))
