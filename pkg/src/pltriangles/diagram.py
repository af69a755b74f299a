"""Wiring diagrams of affine pseudo-line arrangements.

A diagram on ``n`` wires is a sequence of columns.  Each column is the
ascending tuple of 1-based rows at which a cross happens; a cross at row
``i`` swaps whatever wires currently sit at vertical positions ``i`` and
``i + 1``.  Positions are numbered 1..n from the top, and wire ``w`` starts
at position ``w``.

Text format::

    # optional comments before the header
    n m
    <rows of column 1>
    ...
    <rows of column m>
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DiagramParseError, InvalidColumn, InvalidCrossing, InvalidParameter

Column = tuple[int, ...]


def check_column(n: int, rows: Sequence[int]) -> Column:
    """Validate one column against ``n`` wires and return it as a tuple."""
    col = tuple(rows)
    if not col:
        raise InvalidColumn("empty column")
    prev = None
    for r in col:
        if not isinstance(r, int) or isinstance(r, bool):
            raise InvalidColumn(f"row {r!r} is not an integer")
        if r < 1 or r > n - 1:
            raise InvalidColumn(f"row {r} outside 1..{n - 1}")
        if prev is not None:
            if r <= prev:
                raise InvalidColumn(f"rows not strictly ascending: {col}")
            if r - prev < 2:
                raise InvalidColumn(f"adjacent crosses at rows {prev} and {r}")
        prev = r
    return col


@dataclass(frozen=True)
class WireState:
    """Sweep state after a prefix of columns.

    ``order[p]`` is the wire at 0-based position ``p``; ``crossed[u][v]``
    (1-based wires, index 0 unused) tells whether wires ``u`` and ``v`` have met.
    """

    order: tuple[int, ...]
    crossed: tuple[tuple[bool, ...], ...]

    def has_crossed(self, u: int, v: int) -> bool:
        return self.crossed[u][v]


@dataclass(frozen=True)
class WiringDiagram:
    n: int
    columns: tuple[Column, ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidParameter(f"wire count must be >= 1, got {self.n!r}")
        cols = tuple(check_column(self.n, c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        _replay(self.n, cols)

    @property
    def crossings(self) -> int:
        return sum(len(c) for c in self.columns)

    @property
    def m(self) -> int:
        return len(self.columns)

    def final_order(self) -> tuple[int, ...]:
        return wire_state(self).order

    def prefix(self, k: int) -> "WiringDiagram":
        return WiringDiagram(self.n, self.columns[:k])

    def push(self, rows: Sequence[int]) -> "WiringDiagram":
        return push_column(self, rows)

    def __str__(self) -> str:
        return write_diagram(self)


def _replay(n: int, columns: Iterable[Column], upto: int | None = None) -> WireState:
    order = list(range(1, n + 1))
    crossed = [[False] * (n + 1) for _ in range(n + 1)]
    for k, col in enumerate(columns):
        if upto is not None and k >= upto:
            break
        for r in col:
            u, v = order[r - 1], order[r]
            if crossed[u][v]:
                raise InvalidCrossing(f"column {k + 1}: wires {u} and {v} already crossed")
            crossed[u][v] = crossed[v][u] = True
            order[r - 1], order[r] = v, u
    return WireState(tuple(order), tuple(tuple(row) for row in crossed))


def wire_state(d: WiringDiagram, upto: int | None = None) -> WireState:
    """Positions and crossed pairs after the first ``upto`` columns (all by default)."""
    return _replay(d.n, d.columns, upto)


def new_diagram(n: int) -> WiringDiagram:
    if not isinstance(n, int) or n < 1:
        raise InvalidParameter(f"wire count must be >= 1, got {n!r}")
    return WiringDiagram(n)


def push_column(d: WiringDiagram, rows: Sequence[int]) -> WiringDiagram:
    col = check_column(d.n, rows)
    state = wire_state(d)
    for r in col:
        u, v = state.order[r - 1], state.order[r]
        if state.crossed[u][v]:
            raise InvalidCrossing(f"wires {u} and {v} already crossed")
    # re-validation in __post_init__ is cheap at these sizes
    return WiringDiagram(d.n, d.columns + (col,))


def total_crossings(n: int) -> int:
    return n * (n - 1) // 2


def is_complete(d: WiringDiagram) -> bool:
    return d.crossings == total_crossings(d.n)


def is_leftmost_canonical(d: WiringDiagram) -> bool:
    """True when no cross can slide one column to the left.

    A cross at row ``i`` in column ``k`` is blocked iff column ``k - 1`` has a
    cross at row ``i - 1``, ``i`` or ``i + 1``.
    """
    for prev, col in zip(d.columns, d.columns[1:]):
        blocked = set()
        for r in prev:
            blocked.update((r - 1, r, r + 1))
        if any(r not in blocked for r in col):
            return False
    return True


def canonicalize(d: WiringDiagram) -> WiringDiagram:
    """Return the leftmost representative of the commutation class of ``d``.

    Every cross is pushed as far left as the crosses before it allow.
    """
    # column index of the latest cross touching each gap (1..n-1)
    n = d.n
    last = [0] * (n + 1)
    placed: list[list[int]] = []
    for col in d.columns:
        for r in col:
            k = max(last[r - 1] if r > 1 else 0, last[r], last[r + 1] if r + 1 < n else 0) + 1
            while len(placed) < k:
                placed.append([])
            placed[k - 1].append(r)
            last[r] = k
    return WiringDiagram(n, tuple(tuple(sorted(c)) for c in placed))


def read_diagram(text: str) -> WiringDiagram:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    i = 0
    while i < len(lines) and (lines[i].startswith("#") or not lines[i].strip()):
        i += 1
    if i >= len(lines):
        raise DiagramParseError("missing header")
    header = lines[i].split(" ")
    if len(header) != 2 or not all(tok.isdigit() for tok in header):
        raise DiagramParseError(f"malformed header {lines[i]!r}", i + 1)
    n, m = int(header[0]), int(header[1])
    if n < 1:
        raise DiagramParseError("wire count must be >= 1", i + 1)
    body = lines[i + 1:]
    if len(body) != m:
        raise DiagramParseError(f"expected {m} column lines, found {len(body)}", i + 1)
    state_order = list(range(1, n + 1))
    crossed = [[False] * (n + 1) for _ in range(n + 1)]
    columns = []
    for j, raw in enumerate(body):
        lineno = i + 2 + j
        toks = raw.split(" ")
        if not raw or not all(tok.isdigit() for tok in toks):
            raise DiagramParseError(f"malformed column {raw!r}", lineno)
        try:
            col = check_column(n, [int(t) for t in toks])
        except InvalidColumn as exc:
            raise DiagramParseError(str(exc), lineno) from None
        for r in col:
            u, v = state_order[r - 1], state_order[r]
            if crossed[u][v]:
                raise DiagramParseError(f"wires {u} and {v} cross twice", lineno)
            crossed[u][v] = crossed[v][u] = True
            state_order[r - 1], state_order[r] = v, u
        columns.append(col)
    return WiringDiagram(n, tuple(columns))


def write_diagram(d: WiringDiagram) -> str:
    out = [f"{d.n} {d.m}"]
    out.extend(" ".join(str(r) for r in col) for col in d.columns)
    return "\n".join(out) + "\n"
