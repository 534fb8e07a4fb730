"""
Picard lattice of a del Pezzo surface of degree d.

The surface is P^2 blown up at k = 9 - d general points, so Pic is Z^(10-d)
with basis H, E_1, ..., E_k and intersection form diag(1, -1, ..., -1).
A class is stored as (a; b_1, ..., b_k) meaning aH - sum b_i E_i, hence the
exceptional class E_i itself carries b_i = -1.

Everything here is exact: integer classes use Python ints, rational classes
use fractions.Fraction. Floats are rejected.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Integral
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from delpezzo.core.errors import SurfaceMismatchError, UnsupportedDegreeError

MIN_DEGREE = 1
MAX_DEGREE = 7

# int64 products stay exact below this magnitude; larger inputs fall back to
# Python integers inside object arrays.
_INT64_SAFE = 2**62

Number = Union[int, Fraction]


@dataclass(frozen=True, slots=True)
class SurfaceModel:
    """A del Pezzo surface of degree d, i.e. P^2 blown up at 9 - d points."""

    degree: int

    def __post_init__(self) -> None:
        if isinstance(self.degree, bool) or not isinstance(self.degree, Integral):
            raise TypeError(f"degree must be an integer, got {self.degree!r}")
        if not MIN_DEGREE <= self.degree <= MAX_DEGREE:
            raise UnsupportedDegreeError(
                f"degree {self.degree} is outside {MIN_DEGREE}..{MAX_DEGREE}"
            )

    @property
    def blowup_points(self) -> int:
        return 9 - self.degree

    @property
    def rank(self) -> int:
        return self.blowup_points + 1


class _LatticeVector:
    """Arithmetic shared by integral and rational classes."""

    __slots__ = ()

    surface: SurfaceModel
    a: Number
    b: Tuple[Number, ...]

    @property
    def coordinates(self) -> Tuple[Number, ...]:
        return (self.a, *self.b)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coordinates)

    def _check_surface(self, other: "_LatticeVector") -> None:
        if other.surface != self.surface:
            raise SurfaceMismatchError(
                f"classes live on degree {self.surface.degree} and "
                f"degree {other.surface.degree} surfaces"
            )

    def __add__(self, other: object) -> "ClassLike":
        if not isinstance(other, _LatticeVector):
            return NotImplemented
        self._check_surface(other)
        return _build(self.surface, [x + y for x, y in zip(self.coordinates, other.coordinates)])

    def __sub__(self, other: object) -> "ClassLike":
        if not isinstance(other, _LatticeVector):
            return NotImplemented
        self._check_surface(other)
        return _build(self.surface, [x - y for x, y in zip(self.coordinates, other.coordinates)])

    def __neg__(self) -> "ClassLike":
        return _build(self.surface, [-x for x in self.coordinates])

    def __mul__(self, scalar: object) -> "ClassLike":
        if isinstance(scalar, bool) or not isinstance(scalar, (Integral, Fraction)):
            return NotImplemented
        return _build(self.surface, [scalar * x for x in self.coordinates])

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_class(self)


@dataclass(frozen=True, slots=True)
class DivisorClass(_LatticeVector):
    """Integral class aH - sum b_i E_i."""

    surface: SurfaceModel
    a: int
    b: Tuple[int, ...]

    def __post_init__(self) -> None:
        coords = (self.a, *tuple(self.b))
        if len(coords) != self.surface.rank:
            raise SurfaceMismatchError(
                f"degree {self.surface.degree} classes need {self.surface.rank} "
                f"coordinates, got {len(coords)}"
            )
        for x in coords:
            if isinstance(x, bool) or not isinstance(x, Integral):
                raise TypeError(f"integral class coordinates must be integers, got {x!r}")
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))

    @classmethod
    def from_coordinates(cls, surface: SurfaceModel, coordinates: Sequence[int]) -> "DivisorClass":
        coords = tuple(coordinates)
        if len(coords) != surface.rank:
            raise SurfaceMismatchError(
                f"degree {surface.degree} classes need {surface.rank} coordinates, got {len(coords)}"
            )
        return cls(surface, coords[0], coords[1:])

    @classmethod
    def zero(cls, surface: SurfaceModel) -> "DivisorClass":
        return cls(surface, 0, (0,) * surface.blowup_points)

    @classmethod
    def hyperplane(cls, surface: SurfaceModel) -> "DivisorClass":
        return cls(surface, 1, (0,) * surface.blowup_points)

    @classmethod
    def exceptional(cls, surface: SurfaceModel, index: int) -> "DivisorClass":
        """E_index, with 1-based index."""
        if not 1 <= index <= surface.blowup_points:
            raise SurfaceMismatchError(
                f"E{index} does not exist on a degree {surface.degree} surface"
            )
        b = [0] * surface.blowup_points
        b[index - 1] = -1
        return cls(surface, 0, tuple(b))

    def permuted(self, order: Sequence[int]) -> "DivisorClass":
        """Relabel the exceptional curves: slot i receives the old slot order[i] (0-based)."""
        if sorted(order) != list(range(self.surface.blowup_points)):
            raise SurfaceMismatchError(f"{list(order)} is not a permutation of the blow-up indices")
        return DivisorClass(self.surface, self.a, tuple(self.b[j] for j in order))

    def to_rational(self) -> "RationalDivisorClass":
        return RationalDivisorClass(self.surface, Fraction(self.a), tuple(Fraction(x) for x in self.b))


@dataclass(frozen=True, slots=True)
class RationalDivisorClass(_LatticeVector):
    """Class with exact rational coordinates, e.g. -(K + eps D) or a Zariski positive part."""

    surface: SurfaceModel
    a: Fraction
    b: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = (self.a, *tuple(self.b))
        if len(coords) != self.surface.rank:
            raise SurfaceMismatchError(
                f"degree {self.surface.degree} classes need {self.surface.rank} "
                f"coordinates, got {len(coords)}"
            )
        for x in coords:
            if isinstance(x, bool) or not isinstance(x, (Integral, Fraction)):
                raise TypeError(f"rational class coordinates must be exact, got {x!r}")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))

    @property
    def denominator(self) -> int:
        """Least common denominator of the coordinates."""
        return lcm(*(x.denominator for x in self.coordinates))

    def is_integral(self) -> bool:
        return self.denominator == 1

    def to_integral(self) -> DivisorClass:
        if not self.is_integral():
            raise TypeError(f"{format_class(self)} is not integral")
        return DivisorClass(self.surface, int(self.a), tuple(int(x) for x in self.b))


ClassLike = Union[DivisorClass, RationalDivisorClass]


def _build(surface: SurfaceModel, coords: List[Number]) -> ClassLike:
    if all(isinstance(x, Integral) for x in coords):
        return DivisorClass(surface, coords[0], tuple(coords[1:]))
    return RationalDivisorClass(surface, Fraction(coords[0]), tuple(Fraction(x) for x in coords[1:]))


def as_rational(x: ClassLike) -> RationalDivisorClass:
    return x.to_rational() if isinstance(x, DivisorClass) else x


def _require_same_surface(x: ClassLike, y: ClassLike) -> None:
    if x.surface != y.surface:
        raise SurfaceMismatchError(
            f"cannot intersect a degree {x.surface.degree} class with a "
            f"degree {y.surface.degree} class"
        )


def intersect(x: ClassLike, y: ClassLike) -> Number:
    """x.a * y.a - sum x.b_i * y.b_i."""
    _require_same_surface(x, y)
    return x.a * y.a - sum(p * q for p, q in zip(x.b, y.b))


def self_intersection(x: ClassLike) -> Number:
    return intersect(x, x)


def canonical_class(surface: SurfaceModel) -> DivisorClass:
    """K = -3H + E_1 + ... + E_k."""
    return DivisorClass(surface, -3, (-1,) * surface.blowup_points)


def anticanonical_degree(C: ClassLike) -> Number:
    """-K.C = 3a - sum b_i."""
    return 3 * C.a - sum(C.b)


def arithmetic_genus(C: ClassLike) -> Fraction:
    """1 + (C^2 + K.C) / 2; half-integers are returned as they are."""
    K = canonical_class(C.surface)
    return 1 + Fraction(self_intersection(C) + intersect(K, C), 2)


def euler_characteristic(D: ClassLike) -> int:
    """Riemann-Roch on a rational surface: chi(D) = 1 + (D^2 - D.K) / 2."""
    if isinstance(D, RationalDivisorClass):
        if not D.is_integral():
            raise TypeError(f"euler_characteristic needs an integral class, got {format_class(D)}")
        D = D.to_integral()
    if not isinstance(D, DivisorClass):
        raise TypeError(f"expected a divisor class, got {D!r}")
    K = canonical_class(D.surface)
    twice = self_intersection(D) - intersect(D, K)
    # D^2 and D.K always have the same parity on this lattice
    return 1 + twice // 2


def proportional_to_canonical(C: DivisorClass) -> Optional[int]:
    """k > 0 with C = -kK, if there is one."""
    k, rest = divmod(C.a, 3)
    if rest or k <= 0:
        return None
    if all(x == k for x in C.b):
        return k
    return None


def adjoint_class(D: ClassLike, epsilon: Fraction) -> RationalDivisorClass:
    """-(K + eps D)."""
    K = canonical_class(D.surface)
    return as_rational(-(K + Fraction(epsilon) * D))


def gram_matrix(classes: Sequence[ClassLike]) -> List[List[Number]]:
    return [[intersect(x, y) for y in classes] for x in classes]


def form_matrix(surface: SurfaceModel, classes: Iterable[DivisorClass]) -> np.ndarray:
    """Rows (a, -b_1, ..., -b_k) so that row . coordinates(x) is the intersection with x."""
    rows = [(c.a, *(-x for x in c.b)) for c in classes]
    return np.array(rows, dtype=np.int64).reshape(len(rows), surface.rank)


def pairing_numerators(matrix: np.ndarray, x: ClassLike) -> Tuple[np.ndarray, int]:
    """Intersections of every row class with x as (numerators, common denominator)."""
    if isinstance(x, RationalDivisorClass):
        den = x.denominator
        ints = [int(v * den) for v in x.coordinates]
    else:
        den = 1
        ints = list(x.coordinates)
    if len(ints) != matrix.shape[1]:
        raise SurfaceMismatchError(
            f"expected {matrix.shape[1]} coordinates, got {len(ints)}"
        )
    largest = max((abs(v) for v in ints), default=0)
    entries = int(np.abs(matrix).max(initial=0))
    if largest * entries * len(ints) < _INT64_SAFE:
        return matrix @ np.array(ints, dtype=np.int64), den
    return matrix.astype(object) @ np.array(ints, dtype=object), den


def _format_coefficient(value: Number, symbol: str) -> str:
    magnitude = abs(value)
    if magnitude == 1:
        return symbol
    if isinstance(magnitude, Fraction) and magnitude.denominator != 1:
        return f"({magnitude}){symbol}"
    return f"{magnitude}{symbol}"


def format_class(x: ClassLike) -> str:
    """Human-readable form with explicit indices, e.g. "2H - E1 + E3"."""
    terms: List[Tuple[Number, str]] = []
    if x.a != 0:
        terms.append((x.a, "H"))
    for i, value in enumerate(x.b, start=1):
        if value != 0:
            terms.append((-value, f"E{i}"))
    if not terms:
        return "0"
    pieces = []
    for position, (coefficient, symbol) in enumerate(terms):
        body = _format_coefficient(coefficient, symbol)
        if position == 0:
            pieces.append(body if coefficient > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coefficient > 0 else f"- {body}")
    return " ".join(pieces)
