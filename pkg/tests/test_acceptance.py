"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

The lines are collected by ``conftest.py`` and printed in the pytest
summary.  Running this file directly (``python tests/test_acceptance.py``)
prints them as each criterion finishes.
"""

import time
from pathlib import Path

from helpers import geometric_triangles, seeded_diagrams
from pltriangles.bounds import KNOWN_PSEUDOLINES, formula_upper
from pltriangles.diagram import read_diagram, write_diagram
from pltriangles.faces import count_triangles, partial_report
from pltriangles.geometry import (
    count_arrangement,
    duplicate_counted,
    duplication_rounds,
    hexagonal7,
    simmons15,
)
from pltriangles.search import SearchConfig, depth_first_search, iter_complete, verify_witness

DATA = Path(__file__).parent / "data"
RESULTS: list[str] = []


def report(criterion: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    RESULTS.append(line)
    print(line, flush=True)
    assert ok, line


def test_criterion_1_exhaustive_small_n():
    expected = {3: 1, 4: 2, 5: 5, 6: 7, 7: 11}
    got = {}
    for n in expected:
        res = depth_first_search(SearchConfig(n=n, exhaustive=True))
        got[n] = (res.best_count, res.complete, verify_witness(res.witness, res.best_count))
    t0 = time.perf_counter()
    r8 = depth_first_search(SearchConfig(n=8, exhaustive=True))
    secs = time.perf_counter() - t0
    ok = all(got[n] == (v, True, True) for n, v in expected.items())
    ok = ok and r8.best_count == 14 and r8.complete and verify_witness(r8.witness, 14)
    report(1, ok, f"n=3..7 best {[got[n][0] for n in expected]}, "
                  f"n=8 best {r8.best_count} complete={r8.complete} ({secs:.1f}s)")


def test_criterion_2_perfect_nine():
    t0 = time.perf_counter()
    res = depth_first_search(SearchConfig(n=9, target=21, budget=0))
    secs = time.perf_counter() - t0
    rep = count_triangles(res.witness) if res.witness else None
    ok = (res.best_count == 21 and secs < 60 and verify_witness(res.witness, 21)
          and len(rep.used) == 3 * 21 == 63 == rep.bounded_segments and not rep.unused)
    report(2, ok, f"n=9 budget 0 found {res.best_count} triangles, "
                  f"{len(rep.used) if rep else 0}/63 segments used in {secs:.2f}s")


def test_criterion_3_seed_arrangements():
    h = count_arrangement(hexagonal7())
    s = count_arrangement(simmons15())
    ok = (h.triangles == 11 and h.axis_contact() == 5
          and s.triangles == 65 and not s.report.unused)
    report(3, ok, f"hexagonal7 {h.triangles} triangles axis contact {h.axis_contact()}; "
                  f"simmons15 {s.triangles} triangles {len(s.report.unused)} unused")


def test_criterion_4_duplication():
    t0 = time.perf_counter()
    _, h13 = duplicate_counted(hexagonal7())
    _, s29 = duplicate_counted(simmons15())
    h_rounds = list(duplication_rounds("hexagonal7", 2))
    s_rounds = list(duplication_rounds("simmons15", 2))
    secs = time.perf_counter() - t0
    ok = (len(h13.arrangement) == 13 and h13.triangles == 47 and h13.axis_contact == 11
          and len(s29.arrangement) == 29 and s29.triangles == 261 and s29.axis_contact == 27)
    for rounds in (h_rounds, s_rounds):
        for r in rounds[1:]:
            total = len(r.arrangement)
            ok = ok and r.axis_contact == total - 2
    h25, s57 = h_rounds[-1], s_rounds[-1]
    ok = (ok and len(h25.arrangement) == 25 and h25.triangles == (25 * 23 - 2) // 3 == 191
          and len(s57.arrangement) == 57 and s57.triangles == 57 * 55 // 3 == 1045)
    report(4, ok, f"13 lines/{h13.triangles}, 29 lines/{s29.triangles}, "
                  f"25 lines/{h25.triangles} at {h25.precision} bits, "
                  f"57 lines/{s57.triangles} at {s57.precision} bits ({secs:.1f}s)")


def test_criterion_5_formula_matches_table():
    named = {("affine", 18): 94, ("affine", 20): 117, ("affine", 22): 144, ("affine", 24): 173,
             ("affine", 26): 205, ("affine", 28): 239, ("affine", 30): 276,
             ("projective", 14): 59, ("projective", 20): 125, ("projective", 26): 215}
    bad = [(s, n) for (s, n), v in named.items() if formula_upper(n, s) != v]
    checked = len(named)
    for setting, table in KNOWN_PSEUDOLINES.items():
        for n, e in table.items():
            f = formula_upper(n, setting)
            checked += 1
            # a range ends at the bound; a single value equals it unless marked below it
            if e.lower < e.upper:
                good = e.upper == f
            else:
                good = (e.upper < f) if e.below_bound else (e.upper == f)
            if not good:
                bad.append((setting, n))
    report(5, not bad, f"{checked} bound checks for n=3..30, mismatches {bad}")


def test_criterion_6_properties():
    failures = []
    total = 0
    for n in range(4, 10):
        bound = formula_upper(n, "affine")
        reversal = tuple(range(n, 0, -1))
        for d in seeded_diagrams(n, 1000, seed=n):
            total += 1
            rep = count_triangles(d)
            if not (3 * rep.triangle_count == len(rep.used) and rep.triangle_count <= bound
                    and d.final_order() == reversal and read_diagram(write_diagram(d)) == d):
                failures.append(d)
    oracle = 0
    for n in (3, 4, 5):
        for d in iter_complete(n):
            oracle += 1
            if count_triangles(d).triangle_count != geometric_triangles(d):
                failures.append(d)
    report(6, not failures, f"{total} random diagrams n=4..9 and {oracle} canonical diagrams "
                            f"n<=5 against the geometric oracle, {len(failures)} failures")


def test_criterion_7_prefix_monotonicity():
    bad = []
    files = sorted(DATA.glob("witness*.wd"))
    for path in files:
        d = read_diagram(path.read_text())
        prev = (0, 0)
        for k in range(d.m + 1):
            cur = partial_report(d.prefix(k))
            if cur[0] < prev[0] or cur[1] < prev[1]:
                bad.append((path.name, k))
            prev = cur
        rep = count_triangles(d)
        if prev != (rep.triangle_count, len(rep.unused)):
            bad.append((path.name, "final"))
    report(7, bool(files) and not bad, f"{len(files)} stored witnesses, violations {bad}")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
