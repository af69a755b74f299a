"""Straight-line arrangements, the two seed constructions, and duplication.

A line is ``y = slope * (x - anchor)``; the horizontal axis has slope 0.
Parameters are exact reals (see :mod:`pltriangles.reals`); every order
decision is made on interval enclosures and raises
:class:`PrecisionInsufficient` when the enclosures do not separate.

Conversion to a wiring diagram uses the order of crossings along each line
(its local sequence) rather than a global x-sort, because the symmetric
constructions put several distinct crossings on the same vertical line.
"""

from __future__ import annotations

import functools
import logging
import os
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterator, Sequence, TypeVar

from mpmath import mp

from .diagram import WiringDiagram, is_leftmost_canonical
from .errors import (
    ConstructionFailed,
    InvalidArrangement,
    PreconditionFailed,
    PrecisionInsufficient,
)
from .faces import FaceReport, count_triangles
from .reals import Rat, Real, SinPi, TanPi, parse_real, real_min

log = logging.getLogger(__name__)

DEFAULT_PRECISION = int(os.environ.get("PLTRIANGLES_PRECISION", "256"))
MAX_PRECISION = 16384

HEX7_EPS = Fraction(1, 1000)
SIMMONS15_EPS = Fraction(1, 10000)

T = TypeVar("T")


@dataclass(frozen=True, eq=False)
class Line:
    slope: Real
    anchor: Real
    label: str = ""

    @classmethod
    def of(cls, slope, anchor, label: str = "") -> "Line":
        return cls(_real(slope), _real(anchor), label)

    def is_axis(self) -> bool:
        return self.slope.exact() == 0


def _real(x) -> Real:
    if isinstance(x, Real):
        return x
    if isinstance(x, str):
        return parse_real(x)
    return Rat(Fraction(x))


@dataclass(frozen=True, eq=False)
class LineArrangement:
    lines: tuple[Line, ...]
    precision: int = DEFAULT_PRECISION

    def __len__(self) -> int:
        return len(self.lines)

    def with_precision(self, prec: int) -> "LineArrangement":
        return replace(self, precision=prec)

    def axis_index(self) -> int:
        """Index of the unique slope-0 line."""
        idx = [i for i, ln in enumerate(self.lines) if ln.is_axis()]
        if len(idx) != 1:
            raise PreconditionFailed("axis", f"expected one slope-0 line, found {len(idx)}")
        return idx[0]


@dataclass(frozen=True)
class Crossing:
    i: int
    j: int
    x: object  # mpmath interval
    y: object


def crossing_x(a: Line, b: Line) -> Real:
    return (a.slope * a.anchor - b.slope * b.anchor) / (a.slope - b.slope)


def crossing_y(a: Line, b: Line) -> Real:
    return a.slope * b.slope * (a.anchor - b.anchor) / (a.slope - b.slope)


def crossing(A: LineArrangement, i: int, j: int) -> Crossing:
    p = A.precision
    a, b = A.lines[i], A.lines[j]
    return Crossing(i, j, crossing_x(a, b).interval(p), crossing_y(a, b).interval(p))


def _less(x: Real, y: Real, prec: int, what: str) -> bool:
    """Certified ``x < y``; ties and unresolved overlaps raise."""
    qx, qy = x.exact(), y.exact()
    if qx is not None and qy is not None:
        if qx == qy:
            raise InvalidArrangement(f"{what}: exact tie at {qx}")
        return qx < qy
    u, v = x.interval(prec), y.interval(prec)
    if u.b < v.a:
        return True
    if v.b < u.a:
        return False
    raise PrecisionInsufficient(f"{what}: cannot separate at {prec} bits")


def _certified_sort(keys: Sequence[Real], prec: int, what: str) -> list[int]:
    """Indices of ``keys`` in increasing order, every comparison certified."""
    def cmp(i: int, j: int) -> int:
        return -1 if _less(keys[i], keys[j], prec, what) else 1

    return sorted(range(len(keys)), key=functools.cmp_to_key(cmp))


@dataclass(frozen=True)
class Wiring:
    diagram: WiringDiagram
    wire_of_line: tuple[int, ...]  # 1-based wire of each line
    precision: int


def wiring(A: LineArrangement) -> Wiring:
    """Certified wiring diagram of ``A`` at its working precision."""
    prec = A.precision
    lines = A.lines
    k = len(lines)
    if k == 0:
        raise InvalidArrangement("empty arrangement")
    slopes = [ln.slope for ln in lines]
    for i in range(k):
        for j in range(i + 1, k):
            qi, qj = slopes[i].exact(), slopes[j].exact()
            if qi is not None and qj is not None and qi == qj:
                raise InvalidArrangement(f"lines {i} and {j} are parallel")
    # at x -> -inf a larger slope lies lower: ascending slope is top-to-bottom
    by_slope = _certified_sort(slopes, prec, "slope order")
    wire_of_line = [0] * k
    for pos, i in enumerate(by_slope):
        wire_of_line[i] = pos + 1

    seq: dict[int, list[int]] = {}
    for i in range(k):
        others = [j for j in range(k) if j != i]
        xs = [crossing_x(lines[i], lines[j]) for j in others]
        order = _certified_sort(xs, prec, f"crossings on line {i}")
        seq[wire_of_line[i]] = [wire_of_line[others[t]] for t in order]

    pos_wire = list(range(1, k + 1))
    ptr = {w: 0 for w in pos_wire}
    columns = []
    remaining = k * (k - 1) // 2
    while remaining:
        col = []
        for r in range(1, k):
            u, v = pos_wire[r - 1], pos_wire[r]
            su, sv = seq[u], seq[v]
            if ptr[u] < len(su) and ptr[v] < len(sv) and su[ptr[u]] == v and sv[ptr[v]] == u:
                col.append(r)
        if not col:
            raise InvalidArrangement("local sequences admit no sweep")
        for r in col:
            u, v = pos_wire[r - 1], pos_wire[r]
            ptr[u] += 1
            ptr[v] += 1
            pos_wire[r - 1], pos_wire[r] = v, u
        columns.append(tuple(col))
        remaining -= len(col)
    d = WiringDiagram(k, tuple(columns))
    assert is_leftmost_canonical(d)
    return Wiring(d, tuple(wire_of_line), prec)


def to_wiring(A: LineArrangement) -> WiringDiagram:
    return wiring(A).diagram


def with_retries(fn: Callable[[int], T], start: int = DEFAULT_PRECISION,
                 cap: int = MAX_PRECISION) -> T:
    """Call ``fn(prec)`` doubling ``prec`` on PrecisionInsufficient up to ``cap``."""
    prec = start
    while True:
        try:
            return fn(prec)
        except PrecisionInsufficient:
            if prec * 2 > cap:
                raise
            prec *= 2
            log.info("retrying at %d bits", prec)


def certified_wiring(A: LineArrangement, cap: int = MAX_PRECISION) -> Wiring:
    return with_retries(lambda p: wiring(A.with_precision(p)), A.precision, cap)


@dataclass(frozen=True)
class CountedArrangement:
    arrangement: LineArrangement
    wiring: Wiring
    report: FaceReport

    @property
    def triangles(self) -> int:
        return self.report.triangle_count

    def contact(self, line_index: int) -> int:
        return self.report.contact(self.wiring.wire_of_line[line_index])

    def axis_contact(self) -> int:
        return self.contact(self.arrangement.axis_index())


def count_arrangement(A: LineArrangement, cap: int = MAX_PRECISION) -> CountedArrangement:
    w = certified_wiring(A, cap)
    return CountedArrangement(A.with_precision(w.precision), w, count_triangles(w.diagram))


def _arrangement(rows, precision: int) -> LineArrangement:
    return LineArrangement(tuple(Line(_real(m), _real(a), f"L{i}") for i, (a, m) in
                                 enumerate(rows, start=1)), precision)


def _positive_eps(eps) -> Fraction:
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionFailed("eps", "must be > 0")
    return eps


def hexagonal7_lines(eps=HEX7_EPS, precision: int = DEFAULT_PRECISION) -> LineArrangement:
    eps = _positive_eps(eps)
    rows = [
        (TanPi(Fraction(-2, 6)), 3),
        (TanPi(Fraction(-1, 6)), 1),
        (TanPi(0), 0),
        (TanPi(Fraction(1, 6)), -1),
        (TanPi(Fraction(2, 6)), -3),
        (-eps, -7),
        (eps, 7),
    ]
    return _arrangement(rows, precision)


_SIMMONS_SLOPES = ["1.66", "4.4", "3.28", "14.4", "13.1", "-65", "0", "-52", "-12.4",
                   "-22", "-4.8", "-5.3", "-1.86"]


def simmons15_lines(eps=SIMMONS15_EPS, precision: int = DEFAULT_PRECISION) -> LineArrangement:
    eps = _positive_eps(eps)
    rows = [(TanPi(Fraction(k, 14)), s) for k, s in zip(range(-6, 7), _SIMMONS_SLOPES)]
    rows += [(-eps, 50), (eps, -45)]
    return _arrangement(rows, precision)


def _checked(A: LineArrangement, triangles: int, name: str) -> LineArrangement:
    try:
        c = count_arrangement(A)
    except InvalidArrangement as exc:
        raise ConstructionFailed(f"{name}: {exc}") from exc
    if c.triangles != triangles:
        raise ConstructionFailed(f"{name}: counted {c.triangles} triangles, expected {triangles}")
    n = len(A) - 1
    if c.axis_contact() != n - 1:
        raise ConstructionFailed(f"{name}: axis touches {c.axis_contact()} triangles, expected {n - 1}")
    return c.arrangement


def hexagonal7(eps=HEX7_EPS, precision: int = DEFAULT_PRECISION) -> LineArrangement:
    """The 7-line seed with 11 triangles; raises ConstructionFailed if eps is too large."""
    return _checked(hexagonal7_lines(eps, precision), 11, "hexagonal7")


def simmons15(eps=SIMMONS15_EPS, precision: int = DEFAULT_PRECISION) -> LineArrangement:
    """The perfect 15-line seed with 65 triangles."""
    return _checked(simmons15_lines(eps, precision), 65, "simmons15")


SEEDS = {"hexagonal7": hexagonal7, "hex7": hexagonal7, "simmons15": simmons15}


# -- duplication ---------------------------------------------------------------

@dataclass(frozen=True)
class DuplicationInputs:
    n: int
    axis: int
    near_negative: int
    near_positive: int
    side: int  # sign of y where the two near lines cross
    m_min: Real


def _mid_float(x: Real, prec: int) -> float:
    v = x.interval(prec)
    return float((mp.mpf(v.a) + mp.mpf(v.b)) / 2)


def _anchor_matches(anchor: Real, q: Fraction, prec: int) -> bool:
    if isinstance(anchor, TanPi):
        return anchor.q == q
    diff = (anchor - TanPi(q)).interval(prec)
    tol = Fraction(1, 2 ** (prec // 2))
    return -tol < diff.a and diff.b < tol


def duplication_inputs(A: LineArrangement, counted: CountedArrangement | None = None
                       ) -> DuplicationInputs:
    """Check the hypotheses for duplicating ``A`` and extract its parameters."""
    prec = A.precision
    total = len(A)
    n = total - 1
    if n < 2 or n % 2:
        raise PreconditionFailed("line count", f"need n + 1 lines with n even >= 2, got {total}")
    axis = A.axis_index()
    others = [i for i in range(total) if i != axis]
    for i in others:
        if A.lines[i].slope.sign(prec) is None or A.lines[i].slope.sign(prec) == 0:
            raise PreconditionFailed("slopes", f"line {i} must have a nonzero slope")

    bound = Fraction(1, n)
    near, far = [], []
    for i in others:
        a = A.lines[i].anchor
        if _less(-Rat(bound), a, prec, "anchor") and _less(a, Rat(bound), prec, "anchor"):
            near.append(i)
        else:
            far.append(i)
    if len(near) != 2:
        raise PreconditionFailed("near anchors", f"need two anchors in (-1/n, 1/n), found {len(near)}")
    signs = [A.lines[i].anchor.sign(prec) for i in near]
    if None in signs:
        raise PrecisionInsufficient("near-anchor sign")
    if sorted(signs) != [-1, 1]:
        raise PreconditionFailed("near anchors", "need one negative and one positive anchor")
    neg, pos = (near[0], near[1]) if signs[0] < 0 else (near[1], near[0])

    expected = sorted(Fraction(s * k, n) for k in range(1, n // 2) for s in (-1, 1))
    anchors = sorted(far, key=lambda i: _mid_float(A.lines[i].anchor, prec))
    if len(anchors) != len(expected) or not all(
            _anchor_matches(A.lines[i].anchor, q, prec) for i, q in zip(anchors, expected)):
        raise PreconditionFailed("anchors", "far anchors must be tan(k*pi/n) for 0 < |k| < n/2")

    counted = counted or count_arrangement(A)
    if counted.axis_contact() != n - 1:
        raise PreconditionFailed(
            "axis contact", f"axis touches {counted.axis_contact()} triangles, need {n - 1}")

    y = crossing_y(A.lines[neg], A.lines[pos])
    side = y.sign(prec)
    if side is None:
        raise PrecisionInsufficient("sign of the near-anchor crossing")
    if side == 0:
        raise PreconditionFailed("near anchors", "near lines meet on the axis")
    m_min = real_min(*[abs(A.lines[i].slope) for i in others])
    return DuplicationInputs(n, axis, neg, pos, side, m_min)


def new_lines(inp: DuplicationInputs) -> list[Line]:
    """The ``n`` added lines: shallow slopes anchored at ``tan(angle_k)``."""
    n = inp.n
    scale = inp.m_min * (Fraction(inp.side, n ** 10))
    out = []
    for k in range(1, n + 1):
        q = Fraction(-1, 2) + Fraction(2 * k - 1, 2 * n)  # angle_k / pi
        b = TanPi(q)
        slope = scale * (SinPi(2 * q) + 1 / (Rat(n ** 6) * b))
        out.append(Line(slope, b, f"M{k}"))
    return out


def _certify_new_lines(A: LineArrangement, inp: DuplicationInputs, ms: list[Line], prec: int) -> None:
    n = inp.n
    lo = inp.m_min / Rat(n ** 11)
    hi = inp.m_min * Fraction(2, n ** 10)
    for ln in ms:
        q = ln.anchor.q  # type: ignore[attr-defined]
        if not (_less(lo, abs(ln.slope), prec, "new slope lower bound") and _less(abs(ln.slope), hi, prec, "new slope upper bound")):
            raise ConstructionFailed(f"{ln.label}: slope outside (m_min/n^11, 2 m_min/n^10)")
        s_slope = ln.slope.sign(prec)
        s_sin = SinPi(2 * q).sign(prec)
        s_b = ln.anchor.sign(prec)
        if None in (s_slope, s_sin, s_b):
            raise PrecisionInsufficient("sign of a new slope")
        if not s_slope * inp.side == s_sin == s_b:
            raise ConstructionFailed(f"{ln.label}: slope, sin(2 angle) and anchor disagree in sign")
    ybound = inp.m_min * Fraction(3, n ** 9)
    for i, L in enumerate(A.lines):
        if i == inp.axis:
            continue
        for M in ms:
            if not _less(abs(crossing_y(L, M)), ybound, prec, "|y| of an old and a new line"):
                raise ConstructionFailed(f"{L.label} meets {M.label} too far from the axis")


@dataclass(frozen=True)
class DuplicationRound:
    arrangement: LineArrangement
    triangles: int
    axis_contact: int
    precision: int


def duplicate_counted(A: LineArrangement, cap: int = MAX_PRECISION) -> tuple[DuplicationRound, DuplicationRound]:
    """Duplicate ``A``; returns the certified rounds for ``A`` and its duplicate."""

    def attempt(prec: int):
        a = A.with_precision(prec)
        ca = count_arrangement(a, cap=prec)
        inp = duplication_inputs(a, ca)
        ms = new_lines(inp)
        _certify_new_lines(a, inp, ms, prec)
        b = LineArrangement(a.lines + tuple(ms), prec)
        cb = count_arrangement(b, cap=prec)
        return ca, cb, inp

    ca, cb, inp = with_retries(attempt, A.precision, cap)
    n = inp.n
    if cb.triangles != ca.triangles + n * n:
        raise ConstructionFailed(
            f"duplicate has {cb.triangles} triangles, expected {ca.triangles} + {n * n}")
    if cb.axis_contact() != 2 * n - 1:
        raise ConstructionFailed(f"axis touches {cb.axis_contact()} triangles, expected {2 * n - 1}")
    before = DuplicationRound(ca.arrangement, ca.triangles, ca.axis_contact(), ca.wiring.precision)
    after = DuplicationRound(cb.arrangement, cb.triangles, cb.axis_contact(), cb.wiring.precision)
    return before, after


def duplicate(A: LineArrangement, cap: int = MAX_PRECISION) -> LineArrangement:
    """Add ``n`` lines to an ``(n+1)``-line arrangement, gaining ``n**2`` triangles."""
    return duplicate_counted(A, cap)[1].arrangement


def default_eps(seed: str, t: int) -> Fraction:
    """Seed eps for ``t`` rounds: the seed default, or ``n_t**-3`` if smaller."""
    base, start = (SIMMONS15_EPS, 15) if seed == "simmons15" else (HEX7_EPS, 7)
    n_t = (start - 1) * 2 ** t + 1
    return min(base, Fraction(1, n_t ** 3))


def duplication_rounds(seed: str, t: int, eps=None, precision: int = DEFAULT_PRECISION,
                       cap: int = MAX_PRECISION) -> Iterator[DuplicationRound]:
    """Yield the certified seed and then each of ``t`` duplications."""
    if t < 0:
        raise PreconditionFailed("iterations", "t must be >= 0")
    name = "simmons15" if seed in ("simmons15", "simmons") else "hexagonal7"
    if seed not in SEEDS and seed != "simmons":
        raise PreconditionFailed("seed", f"unknown seed {seed!r}")
    eps = default_eps(name, t) if eps is None else Fraction(eps)
    A = SEEDS[name](eps, precision)
    if t == 0:
        c = count_arrangement(A, cap)
        yield DuplicationRound(c.arrangement, c.triangles, c.axis_contact(), c.wiring.precision)
        return
    for k in range(t):
        before, after = duplicate_counted(A, cap)
        if k == 0:
            yield before
        yield after
        A = after.arrangement


def iterate_duplication(seed: str, t: int, eps=None, precision: int = DEFAULT_PRECISION,
                        cap: int = MAX_PRECISION) -> LineArrangement:
    last = None
    for last in duplication_rounds(seed, t, eps, precision, cap):
        pass
    return last.arrangement


# -- file format ---------------------------------------------------------------

def write_arrangement(A: LineArrangement) -> str:
    out = [f"lines {len(A)} precision {A.precision}"]
    for ln in A.lines:
        out.append(f"{ln.slope.to_text(A.precision)} {ln.anchor.to_text(A.precision)}")
    return "\n".join(out) + "\n"


def read_arrangement(text: str) -> LineArrangement:
    from .errors import DiagramParseError

    rows = [(i, raw) for i, raw in enumerate(text.split("\n"), start=1)
            if raw.strip() and not raw.lstrip().startswith("#")]
    if not rows:
        raise DiagramParseError("missing header")
    lineno, header = rows[0]
    toks = header.split()
    if len(toks) != 4 or toks[0] != "lines" or toks[2] != "precision" \
            or not toks[1].isdigit() or not toks[3].isdigit():
        raise DiagramParseError(f"malformed header {header!r}", lineno)
    k, prec = int(toks[1]), int(toks[3])
    if len(rows) - 1 != k:
        raise DiagramParseError(f"expected {k} lines, found {len(rows) - 1}", lineno)
    lines = []
    for idx, (lineno, raw) in enumerate(rows[1:], start=1):
        parts = raw.split()
        if len(parts) != 2:
            raise DiagramParseError(f"expected 'slope anchor', got {raw!r}", lineno)
        try:
            lines.append(Line(parse_real(parts[0]), parse_real(parts[1]), f"L{idx}"))
        except ValueError as exc:
            raise DiagramParseError(str(exc), lineno) from None
    return LineArrangement(tuple(lines), prec)
