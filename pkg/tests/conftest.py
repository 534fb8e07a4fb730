import random

import pytest

from delpezzo.core.lattice import DivisorClass, SurfaceModel
from delpezzo.services.report import build_report

VERIFIED_DEGREES = (1, 2, 3, 4, 5)


def make_class(d: int, a: int, *b: int) -> DivisorClass:
    """aH - sum b_i E_i on the degree d surface; missing b_i are zero."""
    surface = SurfaceModel(d)
    padded = tuple(b) + (0,) * (surface.blowup_points - len(b))
    return DivisorClass(surface, a, padded)


@pytest.fixture
def rng():
    return random.Random(20240521)


@pytest.fixture(scope="session")
def full_report():
    return build_report(VERIFIED_DEGREES, workers=1)
