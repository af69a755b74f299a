"""Depth-first search for wiring diagrams with many triangles.

Diagrams are grown one column at a time and only in leftmost-canonical
form, so each arrangement is met once.  A partial diagram is abandoned as
soon as its provably unused segments exceed the allowed budget: with
``n(n-2)`` bounded segments and three per triangle, a diagram with ``u``
unused segments has exactly ``(n(n-2) - u) / 3`` triangles.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .bounds import formula_upper
from .diagram import Column, WiringDiagram, total_crossings
from .errors import InvalidParameter
from .faces import Sweep, count_triangles

log = logging.getLogger(__name__)


def bounded_segments(n: int) -> int:
    return n * (n - 2) if n >= 2 else 0


def max_triangles(n: int) -> int:
    """Best upper bound on affine pseudo-line triangles known to the package."""
    if n < 3:
        return 0
    return formula_upper(n, "affine")


@dataclass(frozen=True)
class SearchConfig:
    n: int
    target: int | None = None
    budget: int | None = None
    exhaustive: bool = False
    max_columns: int | None = None
    parallel_width: int = 1
    split_depth: int = 2

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidParameter(f"n must be >= 1, got {self.n!r}")
        cap = bounded_segments(self.n) // 3
        if self.target is not None and not 0 <= self.target <= cap:
            raise InvalidParameter(f"target must lie in 0..{cap} for n={self.n}")
        if self.budget is not None and self.budget < 0:
            raise InvalidParameter("budget must be >= 0")
        if self.parallel_width < 1:
            raise InvalidParameter("parallel_width must be >= 1")

    @property
    def effective_budget(self) -> int | None:
        if self.budget is not None:
            return self.budget
        if self.target is not None:
            return bounded_segments(self.n) - 3 * self.target
        return None

    @property
    def column_cap(self) -> int:
        return self.max_columns if self.max_columns is not None else total_crossings(self.n)


@dataclass
class SearchResult:
    best_count: int
    witness: WiringDiagram | None
    nodes_visited: int
    complete: bool
    elapsed: float = 0.0
    levels: list[tuple[int, int]] = field(default_factory=list)  # (target tried, nodes)


def _candidate_rows(s: Sweep) -> list[int]:
    n = s.n
    if s.columns:
        allowed = set()
        for r in s.columns[-1]:
            allowed.update((r - 1, r, r + 1))
        rows = sorted(r for r in allowed if 1 <= r <= n - 1)
    else:
        rows = range(1, n)
    return [r for r in rows if s.can_cross(r)]


def _subsets(rows: list[int]) -> Iterator[Column]:
    """Non-empty subsets without two adjacent rows, in lexicographic order."""
    def grow(prefix: tuple[int, ...], start: int):
        for i in range(start, len(rows)):
            r = rows[i]
            if prefix and r - prefix[-1] < 2:
                continue
            col = prefix + (r,)
            yield col
            yield from grow(col, i + 1)
    yield from grow((), 0)


def _children(s: Sweep) -> list[Column]:
    return list(_subsets(_candidate_rows(s)))


def enumerate_children(d: WiringDiagram) -> list[Column]:
    """All columns that extend ``d`` to a valid leftmost-canonical diagram."""
    return _children(Sweep.from_diagram(d))


def iter_complete(n: int) -> Iterator[WiringDiagram]:
    """Every canonical complete diagram on ``n`` wires, without any pruning."""
    s = Sweep(n)
    total = total_crossings(n)

    def rec():
        if s.crossings == total:
            yield WiringDiagram(n, tuple(s.columns))
            return
        for col in _children(s):
            s.push(col)
            yield from rec()
            s.pop()
    yield from rec()


class _Stopped(Exception):
    pass


class _Explorer:
    """One single-threaded DFS; ``threshold`` is the unused-segment limit."""

    CHECK_EVERY = 4096

    def __init__(self, n: int, budget: int | None, stop_at: int | None,
                 column_cap: int, cancel=None):
        self.n = n
        self.nn = bounded_segments(n)
        self.total = total_crossings(n)
        self.budget = budget
        self.stop_at = stop_at
        self.column_cap = column_cap
        self.upper = max_triangles(n)
        self.cancel = cancel
        self.best = -1
        self.witness: tuple[Column, ...] | None = None
        self.nodes = 0
        self.finished = False

    def threshold(self) -> int:
        # only strictly better leaves are interesting
        t = self.nn - 3 * (self.best + 1)
        if self.budget is not None and self.budget < t:
            t = self.budget
        return t

    def run(self, prefix: tuple[Column, ...] = ()) -> None:
        s = Sweep(self.n)
        for col in prefix:
            s.push(col)
        try:
            if s.unused <= self.threshold():
                self._dfs(s)
            self.finished = True
        except _Stopped:
            self.finished = False

    def _dfs(self, s: Sweep) -> None:
        self.nodes += 1
        if self.cancel is not None and self.nodes % self.CHECK_EVERY == 0 and self.cancel.is_set():
            raise _Stopped
        if s.crossings == self.total:
            t = s.triangles
            if t > self.best:
                self.best = t
                self.witness = tuple(s.columns)
                if self.stop_at is not None and t >= self.stop_at:
                    raise _Stopped
            return
        if len(s.columns) >= self.column_cap or self.best >= self.upper:
            return
        for col in _children(s):
            s.push(col)
            # also enforces the forced moves once the budget is used up
            if s.unused <= self.threshold():
                self._dfs(s)
            s.pop()
            if self.best >= self.upper:
                return


def _frontier(n: int, depth: int, budget: int | None, column_cap: int) -> list[tuple[Column, ...]]:
    """Canonical prefixes at ``depth`` (or complete earlier) that survive the budget."""
    s = Sweep(n)
    total = total_crossings(n)
    out: list[tuple[Column, ...]] = []

    def rec(k: int):
        if k == depth or s.crossings == total or len(s.columns) >= column_cap:
            out.append(tuple(s.columns))
            return
        for col in _children(s):
            s.push(col)
            if budget is None or s.unused <= budget:
                rec(k + 1)
            s.pop()
    rec(0)
    return out


_worker_cancel = None


def _init_worker(event) -> None:
    global _worker_cancel
    _worker_cancel = event


def _run_prefix(args):
    n, budget, stop_at, cap, prefix = args
    ex = _Explorer(n, budget, stop_at, cap, cancel=_worker_cancel)
    ex.run(prefix)
    if ex.witness is not None and stop_at is not None and ex.best >= stop_at:
        _worker_cancel.set()
    return ex.best, ex.witness, ex.nodes, ex.finished


def _better(a: tuple[int, tuple | None], b: tuple[int, tuple | None]) -> bool:
    """Whether candidate ``a`` beats ``b``: more triangles, then the smaller witness."""
    if a[1] is None:
        return False
    if b[1] is None or a[0] > b[0]:
        return True
    return a[0] == b[0] and a[1] < b[1]


def _explore(n: int, budget: int | None, stop_at: int | None, cfg: SearchConfig):
    """Run one bounded search; returns (best, witness, nodes, finished)."""
    cap = cfg.column_cap
    if cfg.parallel_width == 1:
        ex = _Explorer(n, budget, stop_at, cap)
        ex.run()
        return ex.best, ex.witness, ex.nodes, ex.finished

    prefixes = _frontier(n, cfg.split_depth, budget, cap)
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    cancel = ctx.Event()
    best: tuple[int, tuple | None] = (-1, None)
    nodes, finished = 0, True
    with ProcessPoolExecutor(cfg.parallel_width, mp_context=ctx,
                             initializer=_init_worker, initargs=(cancel,)) as pool:
        jobs = [(n, budget, stop_at, cap, p) for p in prefixes]
        for b, w, k, done in pool.map(_run_prefix, jobs):
            nodes += k
            finished = finished and done
            if _better((b, w), best):
                best = (b, w)
    if cancel.is_set():
        finished = False
    return best[0], best[1], nodes, finished


def _make_result(n, best, witness, nodes, complete, t0, levels) -> SearchResult:
    wd = None
    if witness is not None:
        wd = WiringDiagram(n, witness)
        if count_triangles(wd).triangle_count != best:
            raise AssertionError("witness recount disagrees with the sweep")
    return SearchResult(
        best_count=max(best, 0),
        witness=wd,
        nodes_visited=nodes,
        complete=complete,
        elapsed=time.perf_counter() - t0,
        levels=levels,
    )


def depth_first_search(cfg: SearchConfig) -> SearchResult:
    """Search canonical diagrams on ``cfg.n`` wires for many triangles.

    With a target and ``exhaustive=False`` the search stops at the first
    diagram reaching the target.  With ``exhaustive=True`` it returns the
    maximum over all diagrams within the unused-segment budget; without a
    target this runs decreasing targets from the best known upper bound, so
    the first level that yields a diagram proves its optimality.
    """
    t0 = time.perf_counter()
    n = cfg.n
    budget = cfg.effective_budget
    levels: list[tuple[int, int]] = []

    if not cfg.exhaustive and cfg.target is not None:
        best, wit, nodes, finished = _explore(n, budget, cfg.target, cfg)
        levels.append((cfg.target, nodes))
        return _make_result(n, best, wit, nodes, finished, t0, levels)

    if cfg.target is not None:
        best, wit, nodes, finished = _explore(n, budget, None, cfg)
        levels.append((cfg.target, nodes))
        return _make_result(n, best, wit, nodes, finished, t0, levels)

    total_nodes = 0
    nn = bounded_segments(n)
    finished = True
    for target in range(max_triangles(n), -1, -1):
        level_budget = nn - 3 * target
        if budget is not None and level_budget > budget:
            break
        best, wit, nodes, finished = _explore(n, level_budget, target, cfg)
        total_nodes += nodes
        levels.append((target, nodes))
        log.info("n=%d target=%d nodes=%d found=%s", n, target, nodes, wit is not None)
        if wit is not None:
            return _make_result(n, best, wit, total_nodes, True, t0, levels)
        if not finished:
            break
    return _make_result(n, -1, None, total_nodes, finished, t0, levels)


def verify_witness(d: WiringDiagram, claimed: int) -> bool:
    from .diagram import is_complete

    try:
        d = WiringDiagram(d.n, d.columns)
    except Exception:
        return False
    return is_complete(d) and count_triangles(d).triangle_count == claimed
