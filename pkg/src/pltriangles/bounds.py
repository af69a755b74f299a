"""Upper bounds and known values for triangles in simple arrangements.

All formulas use integer arithmetic only.  The table of known values covers
3 <= n <= 30 for pseudo-lines in the affine and projective planes; values
for straight lines are derived from it (stretchable entries carry over, the
others only give an upper bound).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Literal

from .errors import NoData, OutOfDomain

Setting = Literal["affine", "projective"]
Kind = Literal["lines", "pseudolines"]


def formula_upper(n: int, setting: Setting = "affine") -> int:
    if n < 3:
        raise OutOfDomain(f"bounds are stated for n >= 3, got {n}")
    if setting == "affine":
        if n % 2:
            return n * (n - 2) // 3
        # floor(n (n - 7/3) / 3)
        return n * (3 * n - 7) // 9
    if setting == "projective":
        if n == 3:
            return 4
        if n % 2:
            return n * (n - 2) // 3
        if n % 6 == 2:
            return n * (n - 1) // 3 - 1
        return n * (n - 1) // 3
    raise ValueError(f"unknown setting {setting!r}")


# Extra lower bound noted for n = 0, 4 (mod 6): adding a line to a perfect
# affine arrangement of n - 1 lines gives at least n (n - 5/2) / 3 triangles.
def added_line_lower_note(n: int) -> str:
    return f"n={n}: adding one line to a perfect arrangement of {n - 1} lines gives >= n(n-5/2)/3"


@dataclass(frozen=True)
class TableEntry:
    lower: int
    upper: int
    stretchable: bool = False  # bold
    below_bound: bool = False  # underlined
    previously_known: bool = False  # grey cell
    upper_previously_known: bool = False  # grey only around the bound of a range


def _e(cell: str) -> TableEntry:
    """Parse a compact cell: ``"16 bug"`` -> value 16 bold, underlined, grey.

    Ranges are written ``"58-59 bu G"`` where ``G`` greys the bound only.
    """
    value, _, flags = cell.partition(" ")
    lo, _, hi = value.partition("-")
    return TableEntry(
        lower=int(lo),
        upper=int(hi or lo),
        stretchable="b" in flags,
        below_bound="u" in flags,
        previously_known="g" in flags,
        upper_previously_known="G" in flags,
    )


_PROJECTIVE = {
    3: "4 bg", 4: "4 bg", 5: "5 bg", 6: "10 bg", 7: "11 bg", 8: "16 bug", 9: "21 bg",
    10: "30 bg", 11: "32-33 bug", 12: "42 ug", 13: "47 b", 14: "58-59 bu G", 15: "65 bg",
    16: "80 bg", 17: "85 bg", 18: "102 bg", 19: "107", 20: "124-125 u G", 21: "133 g",
    22: "154 g", 23: "161 g", 24: "184 g", 25: "191 b", 26: "214-215 bu G", 27: "225 g",
    28: "252 g", 29: "261 b", 30: "290 b",
}

_AFFINE = {
    3: "1 bg", 4: "2 bg", 5: "5 bg", 6: "7 b", 7: "11 bg", 8: "14 bu", 9: "21 bg",
    10: "25 b", 11: "32 bu", 12: "37 bu", 13: "47 b", 14: "53 bu", 15: "65 bg",
    16: "72 b", 17: "85 bg", 18: "93-94 bu", 19: "107", 20: "116-117 u", 21: "133 g",
    22: "143-144 u", 23: "161 g", 24: "172-173 u", 25: "191 b", 26: "203-205 bu",
    27: "225 g", 28: "238-239 u", 29: "261 b", 30: "275-276 bu",
}

KNOWN_PSEUDOLINES: dict[Setting, dict[int, TableEntry]] = {
    "affine": {n: _e(s) for n, s in _AFFINE.items()},
    "projective": {n: _e(s) for n, s in _PROJECTIVE.items()},
}

# Maximum affine triangle counts reached by the computer search.
SEARCH_RESULTS = {
    3: 1, 4: 2, 5: 5, 6: 7, 7: 11, 8: 14, 9: 21, 10: 25, 11: 32, 12: 37, 13: 47,
    14: 53, 15: 65, 17: 85, 19: 107, 21: 133, 23: 161, 27: 225, 29: 261,
}


@dataclass(frozen=True)
class BoundRecord:
    n: int
    setting: Setting
    kind: Kind
    formula_upper: int
    known_lower: int | None
    known_upper: int | None
    exact: bool
    stretchable: bool = False
    below_bound: bool = False
    previously_known: bool = False


def known_values(n: int) -> list[BoundRecord]:
    if not 3 <= n <= 30:
        raise NoData(f"no tabulated values for n={n} (table covers 3..30)")
    out = []
    for setting in ("affine", "projective"):
        e = KNOWN_PSEUDOLINES[setting][n]
        f = formula_upper(n, setting)
        for kind in ("lines", "pseudolines"):
            if kind == "pseudolines" or e.stretchable:
                lo: int | None = e.lower
            else:
                lo = None
            out.append(BoundRecord(
                n=n, setting=setting, kind=kind, formula_upper=f,
                known_lower=lo, known_upper=e.upper,
                exact=lo is not None and lo == e.upper,
                stretchable=e.stretchable, below_bound=e.below_bound,
                previously_known=e.previously_known,
            ))
    return out


def known_record(n: int, setting: Setting = "affine", kind: Kind = "pseudolines") -> BoundRecord:
    for rec in known_values(n):
        if rec.setting == setting and rec.kind == kind:
            return rec
    raise NoData(f"no record for {n} {setting} {kind}")  # pragma: no cover


class Family(str, Enum):
    """Infinite families with an explicit triangle count."""

    A = "A"  # 14 * 2^t + 1 lines, perfect
    B = "B"  # 6 * 2^t + 1 lines
    C = "C"  # 18 * 2^t + 1 pseudo-lines
    D = "D"  # 2 * 2^t + 2 projective lines, perfect


def sequence_value(family: Family | str, t: int) -> tuple[int, int]:
    family = Family(family)
    if t < 0:
        raise OutOfDomain("t must be >= 0")
    if family is Family.A:
        n = 14 * 2**t + 1
        return n, n * (n - 2) // 3
    if family is Family.B:
        n = 6 * 2**t + 1
        return n, (n * (n - 2) - 2) // 3
    if family is Family.C:
        n = 18 * 2**t + 1
        return n, (n * (n - 2) - 2) // 3
    n = 2 * 2**t + 2
    return n, n * (n - 1) // 3


@dataclass(frozen=True)
class RelationCheck:
    n: int
    projective_perfect: bool | None
    affine_perfect: bool | None
    status: Literal["consistent", "inconsistent", "undetermined"]


def _is_value(target_num: int, entry: TableEntry | None) -> bool | None:
    """Whether the tabulated maximum equals ``target_num / 3``."""
    if target_num % 3:
        return False
    target = target_num // 3
    if entry is None:
        return None
    if entry.lower >= target:
        return True
    if entry.upper < target:
        return False
    return None


def affine_projective_relation(n: int) -> RelationCheck:
    """Check ``pbar(n) = n(n-1)/3  <=>  abar(n-1) = (n-1)(n-3)/3`` on the table."""
    if n < 4:
        raise OutOfDomain("relation is stated for n >= 4")
    p = _is_value(n * (n - 1), KNOWN_PSEUDOLINES["projective"].get(n))
    a = _is_value((n - 1) * (n - 3), KNOWN_PSEUDOLINES["affine"].get(n - 1))
    if p is None or a is None:
        status = "undetermined"
    else:
        status = "consistent" if p == a else "inconsistent"
    return RelationCheck(n, p, a, status)
