"""
Published description of every (d, m, n) cell for degrees 1..5.

Each entry records the structure printed for the cell as a tag kind name plus
parameters, together with the printed wording. Kind names match
delpezzo.services.structure.TagKind values; "ExplicitForms" marks the one
cell that only lists its classes.
"""

from dataclasses import dataclass
from typing import Dict, Tuple


@dataclass(frozen=True)
class LongtableCell:
    kind: str
    params: Tuple[int, ...] = ()
    printed: str = ""


def _cell(kind: str, *params: int, printed: str) -> LongtableCell:
    return LongtableCell(kind=kind, params=tuple(params), printed=printed)


NEG = _cell("NegCurve", printed="(-1)-curve")
CONIC = _cell("Conic", printed="smooth conic")
HYPERPLANE = _cell("HyperplanePullback", printed="C in |pi*H'|")
MINUS_K = _cell("AntiCanonicalMultiple", 1, printed="C in |-K|")
MINUS_2K = _cell("AntiCanonicalMultiple", 2, printed="C in |-2K|")
MINUS_K_PLUS_CONIC = _cell("MinusKPlusConic", printed="C ~ -K + F")
MINUS_K_PLUS_2CONIC = _cell("MinusKPlus2Conic", printed="C ~ -K + 2F")
MINUS_K_PLUS_HYPERPLANE = _cell("MinusKPlusHyperplane", printed="C ~ -K + pi*H'")
MINUS_K_PLUS_QUADRIC = _cell("MinusKPlusQuadricClass", printed="C ~ -K + pi*(1,1)")


def _pullback_of_anticanonical(target: int) -> LongtableCell:
    return _cell("AntiCanonicalPullback", target, printed=f"C in |-pi*K'|, deg X' = {target}")


def _quadric(p: int, q: int) -> LongtableCell:
    return _cell("QuadricClassPullback", p, q, printed=f"C in |pi*({p},{q})|")


def _blowup(c: int, e: int) -> LongtableCell:
    return _cell("BlowupClassPullback", c, e, printed=f"C in |{c}pi*H' - {e}pi*E|")


def _pullback_minus_k_plus_conic(target: int) -> LongtableCell:
    return _cell("PullbackMinusKPlusConic", target, printed=f"C ~ -pi*K' + pi*F, deg X' = {target}")


LONGTABLE: Dict[Tuple[int, int, int], LongtableCell] = {
    # degree 1
    (1, 1, -1): NEG,
    (1, 1, 1): MINUS_K,
    (1, 2, 0): CONIC,
    (1, 2, 2): _pullback_of_anticanonical(2),
    (1, 2, 4): MINUS_2K,
    # degree 2
    (2, 1, -1): NEG,
    (2, 2, 0): CONIC,
    (2, 2, 2): MINUS_K,
    (2, 3, 1): HYPERPLANE,
    (2, 3, 3): _pullback_of_anticanonical(3),
    (2, 4, 2): _quadric(1, 1),
    (2, 4, 4): _pullback_of_anticanonical(4),
    (2, 4, 6): MINUS_K_PLUS_CONIC,
    (2, 4, 8): MINUS_2K,
    # degree 3
    (3, 1, -1): NEG,
    (3, 2, 0): CONIC,
    (3, 3, 1): HYPERPLANE,
    (3, 3, 3): MINUS_K,
    (3, 4, 2): _quadric(1, 1),
    (3, 4, 4): _pullback_of_anticanonical(4),
    (3, 5, 3): _blowup(2, 1),
    (3, 5, 5): _pullback_of_anticanonical(5),
    (3, 5, 7): MINUS_K_PLUS_CONIC,
    (3, 6, 4): _quadric(1, 2),
    (3, 6, 6): _pullback_of_anticanonical(6),
    (3, 6, 8): _pullback_minus_k_plus_conic(4),
    (3, 6, 10): MINUS_K_PLUS_HYPERPLANE,
    (3, 6, 12): MINUS_2K,
    # degree 4
    (4, 1, -1): NEG,
    (4, 2, 0): CONIC,
    (4, 3, 1): HYPERPLANE,
    (4, 4, 2): _quadric(1, 1),
    (4, 4, 4): MINUS_K,
    (4, 5, 3): _blowup(2, 1),
    (4, 5, 5): _pullback_of_anticanonical(5),
    (4, 6, 4): _quadric(1, 2),
    (4, 6, 6): _pullback_of_anticanonical(6),
    (4, 6, 8): MINUS_K_PLUS_CONIC,
    (4, 7, 5): _blowup(3, 2),
    (4, 7, 7): _pullback_of_anticanonical(7),
    (4, 7, 9): _pullback_minus_k_plus_conic(5),
    (4, 7, 11): MINUS_K_PLUS_HYPERPLANE,
    (4, 8, 6): _quadric(1, 3),
    (4, 8, 8): _pullback_of_anticanonical(8),
    (4, 8, 10): _pullback_minus_k_plus_conic(6),
    (4, 8, 12): MINUS_K_PLUS_2CONIC,
    (4, 8, 14): MINUS_K_PLUS_QUADRIC,
    (4, 8, 16): MINUS_2K,
    # degree 5
    (5, 1, -1): NEG,
    (5, 2, 0): CONIC,
    (5, 3, 1): HYPERPLANE,
    (5, 4, 2): _quadric(1, 1),
    (5, 5, 3): _blowup(2, 1),
    (5, 5, 5): MINUS_K,
    (5, 6, 4): _quadric(1, 2),
    (5, 6, 6): _pullback_of_anticanonical(6),
    (5, 7, 5): _blowup(3, 2),
    (5, 7, 7): _pullback_of_anticanonical(7),
    (5, 7, 9): MINUS_K_PLUS_CONIC,
    (5, 8, 6): _quadric(1, 3),
    (5, 8, 8): _pullback_of_anticanonical(8),
    (5, 8, 10): _pullback_minus_k_plus_conic(6),
    (5, 8, 12): MINUS_K_PLUS_HYPERPLANE,
    (5, 9, 7): _blowup(4, 3),
    (5, 9, 9): _cell("AntiCanonicalPullback", 9, printed="C in |-pi*K'|, X' = P^2"),
    (5, 9, 11): _pullback_minus_k_plus_conic(7),
    (5, 9, 13): MINUS_K_PLUS_2CONIC,
    (5, 9, 15): MINUS_K_PLUS_QUADRIC,
    (5, 10, 8): _quadric(1, 4),
    (5, 10, 10): _cell("NoCurve", printed="no such curve exists"),
    (5, 10, 12): _blowup(4, 2),
    (5, 10, 14): _cell("PullbackMinusKPlus2Conic", 6, printed="C ~ -pi*K' + 2pi*F, deg X' = 6"),
    (5, 10, 16): _cell("ExplicitForms", printed="explicit forms"),
    (5, 10, 18): _cell("MinusKPlusBlowupClass", 1, 1, printed="C ~ -K + pi*H' - pi*E"),
    (5, 10, 20): MINUS_2K,
}
