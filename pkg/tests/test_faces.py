import pytest

from helpers import geometric_triangles
from pltriangles.bounds import formula_upper
from pltriangles.diagram import WiringDiagram, new_diagram
from pltriangles.faces import Sweep, count_triangles, partial_report
from pltriangles.search import iter_complete

FIVE = WiringDiagram(5, ((1, 3), (2,), (1, 3), (4,), (3,), (2,), (1, 3)))


def test_three_wires():
    rep = count_triangles(WiringDiagram(3, ((1,), (2,), (1,))))
    assert rep.triangle_count == 1
    assert len(rep.used) == 3 and not rep.unused
    assert rep.triangles == ((1, 1),)


def test_perfect_five():
    rep = count_triangles(FIVE)
    assert rep.triangle_count == 5
    assert len(rep.used) == 15 and rep.perfect


def test_four_wires_at_most_two():
    counts = [count_triangles(d).triangle_count for d in iter_complete(4)]
    assert max(counts) == 2


def test_two_wires():
    rep = count_triangles(WiringDiagram(2, ((1,),)))
    assert rep.triangle_count == 0 and rep.bounded_segments == 0


@pytest.mark.parametrize("n", [3, 4, 5])
def test_oracle_agrees_on_all_canonical_diagrams(n):
    best = 0
    for d in iter_complete(n):
        t = geometric_triangles(d)
        assert count_triangles(d).triangle_count == t, d.columns
        best = max(best, t)
    assert best == {3: 1, 4: 2, 5: 5}[n]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_report_invariants(n):
    for d in iter_complete(n):
        rep = count_triangles(d)
        assert 3 * rep.triangle_count == len(rep.used)
        assert len(rep.used) + len(rep.unused) == n * (n - 2)
        assert not rep.used & rep.unused
        assert sum(rep.wire_contact) == 3 * rep.triangle_count
        assert all(c <= n - 2 for c in rep.wire_contact)
        assert rep.triangle_count <= formula_upper(n, "affine")
        assert all(1 <= s.index <= n - 2 for s in rep.used | rep.unused)


def test_partial_empty():
    assert partial_report(new_diagram(6)) == (0, 0)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_partial_monotone_and_final(n):
    for d in iter_complete(n):
        prev = (0, 0)
        for k in range(d.m + 1):
            cur = partial_report(d.prefix(k))
            assert cur[0] >= prev[0] and cur[1] >= prev[1]
            prev = cur
        rep = count_triangles(d)
        assert prev == (rep.triangle_count, len(rep.unused))


def test_sweep_push_pop_restores():
    s = Sweep(5)
    snapshots = []
    for col in FIVE.columns:
        snapshots.append((s.triangles, s.unused, list(s.order)))
        s.push(col)
    assert (s.triangles, s.unused) == (5, 0)
    for _ in FIVE.columns:
        s.pop()
        assert (s.triangles, s.unused, list(s.order)) == snapshots.pop()


def test_incomplete_diagram_reports_from_sweep():
    d = FIVE.prefix(3)
    rep = count_triangles(d)
    assert not rep.complete
    assert rep.triangle_count == partial_report(d)[0]
