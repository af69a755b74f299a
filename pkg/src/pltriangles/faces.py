"""Bounded faces, triangles and segment usage of wiring diagrams.

Every bounded face lives in one gap between two neighbouring tracks.  In gap
``g`` a face opens at a cross on row ``g`` and closes at the next cross on row
``g``; each cross on row ``g - 1`` or ``g + 1`` in between adds one vertex to
its boundary.  A face is a triangle exactly when it opens, closes, and picks
up a single vertex in between.

Segments of a wire are numbered by how many crossings the wire has passed,
so wire ``w`` in a complete diagram owns segments ``0..n-1`` of which
``1..n-2`` are bounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .diagram import WiringDiagram, is_complete


class SegmentId(NamedTuple):
    wire: int
    index: int


@dataclass(frozen=True)
class FaceReport:
    n: int
    complete: bool
    triangle_count: int
    triangles: tuple[tuple[int, int], ...]  # (opening column, gap row), both 1-based
    used: frozenset[SegmentId]
    unused: frozenset[SegmentId]
    wire_contact: tuple[int, ...]  # wire_contact[w - 1] for wire w

    def contact(self, wire: int) -> int:
        return self.wire_contact[wire - 1]

    @property
    def bounded_segments(self) -> int:
        return self.n * (self.n - 2) if self.n >= 2 else 0

    @property
    def perfect(self) -> bool:
        return self.complete and not self.unused and self.n >= 3


def count_triangles(d: WiringDiagram) -> FaceReport:
    """Scan every gap of ``d`` and classify the faces closed so far.

    On an incomplete diagram only faces closed on both sides are counted, and
    ``unused`` holds the segments that are already provably unused.
    """
    n = d.n
    order = list(range(1, n + 1))
    ncross = [0] * (n + 1)
    # per gap: None before the first cross on that row, else (opening column, boundary segments)
    gap: list[tuple[int, list[SegmentId]] | None] = [None] * (n + 1)
    triangles: list[tuple[int, int]] = []
    used: set[SegmentId] = set()

    for k, col in enumerate(d.columns, start=1):
        for r in col:
            up, down = order[r - 1], order[r]
            face = gap[r]
            if face is not None and len(face[1]) == 3:
                triangles.append((face[0], r))
                used.update(face[1])
            order[r - 1], order[r] = down, up
            ncross[up] += 1
            ncross[down] += 1
            s_down = SegmentId(down, ncross[down])  # now on top of the new face
            s_up = SegmentId(up, ncross[up])
            gap[r] = (k, [s_down, s_up])
            if r - 1 >= 1 and gap[r - 1] is not None:
                gap[r - 1][1].append(s_down)
            if r + 1 <= n - 1 and gap[r + 1] is not None:
                gap[r + 1][1].append(s_up)

    contact = [0] * n
    for s in used:
        contact[s.wire - 1] += 1
    complete = is_complete(d)
    if complete:
        unused = frozenset(
            SegmentId(w, i) for w in range(1, n + 1) for i in range(1, n - 1)
        ) - used
    else:
        unused = frozenset(Sweep.from_diagram(d).unused_segments())
    return FaceReport(
        n=n,
        complete=complete,
        triangle_count=len(triangles),
        triangles=tuple(triangles),
        used=frozenset(used),
        unused=unused,
        wire_contact=tuple(contact),
    )


def partial_report(d: WiringDiagram) -> tuple[int, int]:
    """``(closed_triangles, provably_unused)`` for a possibly incomplete diagram.

    A bounded segment is provably unused once both faces beside it are known
    not to be triangles.  A face is known dead when it is unbounded, closed
    with more than one intermediate vertex, has collected two intermediate
    vertices, or has one intermediate vertex while its current top and bottom
    wires have already crossed (they can then never close it).  Both values
    only grow as columns are appended.
    """
    s = Sweep.from_diagram(d)
    return s.triangles, s.unused


_DEAD = 0  # shared face id for unbounded faces


class Sweep:
    """Incremental left-to-right sweep with undo, used by the search.

    Internally wires are 0-based and positions are 0-based; gap ``g`` sits
    above position ``g`` so gaps ``1..n-1`` are the rows of the diagram and
    gaps ``0`` and ``n`` are the unbounded top and bottom faces.
    """

    __slots__ = (
        "n", "order", "crossed", "ncross", "gface", "f_inter", "f_alive", "f_segs",
        "f_open", "seg_dead", "unused", "triangles", "tri_list", "columns", "_saved",
        "_seg_trail", "_kill_trail", "_inter_trail", "_append_trail",
    )

    def __init__(self, n: int):
        self.n = n
        self.order = list(range(n))
        self.crossed = [0] * n
        self.ncross = [0] * n
        self.gface = [_DEAD] * (n + 1)
        self.f_inter = [0]
        self.f_alive = [False]
        self.f_segs: list[list[int]] = [[]]
        self.f_open = [(0, 0)]
        self.seg_dead = [0] * (n * n)
        self.unused = 0
        self.triangles = 0
        self.tri_list: list[tuple[int, int]] = []
        self.columns: list[tuple[int, ...]] = []
        self._saved: list[tuple] = []
        self._seg_trail: list[int] = []
        self._kill_trail: list[int] = []
        self._inter_trail: list[int] = []
        self._append_trail: list[int] = []

    @classmethod
    def from_diagram(cls, d: WiringDiagram) -> "Sweep":
        s = cls(d.n)
        for col in d.columns:
            s.push(col)
        return s

    @property
    def crossings(self) -> int:
        return sum(self.ncross) // 2

    def can_cross(self, row: int) -> bool:
        o = self.order
        return not (self.crossed[o[row - 1]] >> o[row]) & 1

    def _kill(self, f: int) -> None:
        self.f_alive[f] = False
        self._kill_trail.append(f)
        seg_dead = self.seg_dead
        trail = self._seg_trail
        top = self.n - 2
        for s in self.f_segs[f]:
            seg_dead[s] += 1
            trail.append(s)
            if seg_dead[s] == 2 and 1 <= s % self.n <= top:
                self.unused += 1

    def _attach(self, f: int, s: int, top: int, bottom: int) -> None:
        # segment s joins the boundary of face f as a new intermediate vertex
        if not self.f_alive[f]:
            self.seg_dead[s] += 1
            self._seg_trail.append(s)
            return
        self.f_segs[f].append(s)
        self._append_trail.append(f)
        self.f_inter[f] += 1
        self._inter_trail.append(f)
        if self.f_inter[f] >= 2 or (self.crossed[top] >> bottom) & 1:
            self._kill(f)

    def push(self, col: tuple[int, ...]) -> None:
        """Append one column; the caller guarantees it is valid."""
        self._saved.append((
            self.order[:], self.crossed[:], self.ncross[:], self.gface[:],
            self.unused, self.triangles, len(self.tri_list), len(self.f_inter),
            len(self._seg_trail), len(self._kill_trail), len(self._inter_trail),
            len(self._append_trail),
        ))
        n = self.n
        order, crossed, ncross, gface = self.order, self.crossed, self.ncross, self.gface
        k = len(self.columns) + 1
        self.columns.append(col)
        for r in col:
            a, b = order[r - 1], order[r]
            f = gface[r]
            if self.f_alive[f]:
                # an alive face always carries exactly one intermediate vertex here
                self.triangles += 1
                self.tri_list.append((self.f_open[f][0], r))
            crossed[a] |= 1 << b
            crossed[b] |= 1 << a
            order[r - 1], order[r] = b, a
            ncross[a] += 1
            ncross[b] += 1
            sa = a * n + ncross[a]
            sb = b * n + ncross[b]
            nf = len(self.f_inter)
            self.f_inter.append(0)
            self.f_alive.append(True)
            self.f_segs.append([sb, sa])
            self.f_open.append((k, r))
            gface[r] = nf
            if r >= 2:
                self._attach(gface[r - 1], sb, order[r - 2], b)
            else:
                self.seg_dead[sb] += 1
                self._seg_trail.append(sb)
            if r <= n - 2:
                self._attach(gface[r + 1], sa, a, order[r + 1])
            else:
                self.seg_dead[sa] += 1
                self._seg_trail.append(sa)

    def pop(self) -> None:
        (order, crossed, ncross, gface, unused, triangles, ntri, nfaces,
         nseg, nkill, ninter, nappend) = self._saved.pop()
        self.columns.pop()
        self.order, self.crossed, self.ncross, self.gface = order, crossed, ncross, gface
        self.unused, self.triangles = unused, triangles
        del self.tri_list[ntri:]
        seg_dead, trail = self.seg_dead, self._seg_trail
        while len(trail) > nseg:
            seg_dead[trail.pop()] -= 1
        alive, kt = self.f_alive, self._kill_trail
        while len(kt) > nkill:
            alive[kt.pop()] = True
        inter, it = self.f_inter, self._inter_trail
        while len(it) > ninter:
            inter[it.pop()] -= 1
        segs, at = self.f_segs, self._append_trail
        while len(at) > nappend:
            segs[at.pop()].pop()
        del self.f_inter[nfaces:]
        del self.f_alive[nfaces:]
        del self.f_segs[nfaces:]
        del self.f_open[nfaces:]

    def unused_segments(self) -> list[SegmentId]:
        n = self.n
        return [
            SegmentId(s // n + 1, s % n)
            for s, dead in enumerate(self.seg_dead)
            if dead >= 2 and 1 <= s % n <= n - 2 and s % n <= self.ncross[s // n]
        ]
