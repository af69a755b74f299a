"""Shared test helpers: random complete diagrams and a geometric face oracle."""

import random

from shapely.geometry import LineString
from shapely.ops import polygonize, unary_union

from pltriangles.diagram import WiringDiagram, canonicalize


def random_diagram(n: int, pick) -> WiringDiagram:
    """Swap a uniformly chosen uncrossed adjacent pair until the order is reversed.

    ``pick(k)`` returns an index in ``range(k)``; every complete diagram
    arises this way, and the result is put in canonical form.
    """
    order = list(range(1, n + 1))
    cols = []
    while True:
        rows = [r for r in range(1, n) if order[r - 1] < order[r]]
        if not rows:
            break
        r = rows[pick(len(rows))]
        order[r - 1], order[r] = order[r], order[r - 1]
        cols.append((r,))
    return canonicalize(WiringDiagram(n, tuple(cols)))


def seeded_diagrams(n: int, count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_diagram(n, rng.randrange)


def geometric_triangles(d: WiringDiagram) -> int:
    """Triangle count from an explicit planar subdivision of the drawn diagram.

    Wires are drawn as polylines with X switches; shapely nodes them and
    extracts bounded faces, and a face is a triangle when exactly three
    crossing points lie on its boundary.
    """
    order = list(range(1, d.n + 1))
    paths = {w: [(0.0, float(p))] for p, w in enumerate(order)}
    points = set()
    for k, col in enumerate(d.columns, start=1):
        new = order[:]
        for r in col:
            new[r - 1], new[r] = order[r], order[r - 1]
            points.add((float(k), r - 0.5))
        for p in range(d.n):
            w = order[p]
            q = new.index(w)
            if q != p:
                paths[w] += [(k - 0.5, float(p)), (k + 0.5, float(q))]
        order = new
    for p, w in enumerate(order):
        paths[w].append((d.m + 1.0, float(p)))
    merged = unary_union([LineString(pts) for pts in paths.values()])
    count = 0
    for poly in polygonize(merged):
        corners = {c for c in poly.exterior.coords if c in points}
        if len(corners) == 3:
            count += 1
    return count
