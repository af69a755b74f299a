"""Command line interface: ``pltriangles {search,count,bounds,duplicate,render}``.

Exit codes: 0 success, 1 target not met or construction failed, 2 usage or
input errors, 3 precision cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bounds import formula_upper, known_values
from .diagram import WiringDiagram, is_complete, read_diagram, write_diagram
from .errors import (
    ArrangementError,
    ConstructionFailed,
    DiagramParseError,
    NoData,
    PrecisionInsufficient,
)
from .faces import count_triangles, partial_report
from .geometry import (
    DEFAULT_PRECISION,
    MAX_PRECISION,
    LineArrangement,
    certified_wiring,
    duplication_rounds,
    read_arrangement,
    to_wiring,
    write_arrangement,
)
from .render import RenderOptions, render_arrangement, render_diagram
from .search import SearchConfig, depth_first_search

EXIT_OK, EXIT_TARGET, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str) -> WiringDiagram | LineArrangement:
    """Read a diagram or an arrangement file, telling them apart by the header."""
    text = Path(path).read_text()
    for raw in text.split("\n"):
        if raw.strip() and not raw.startswith("#"):
            if raw.split()[0] == "lines":
                return read_arrangement(text)
            break
    return read_diagram(text)


def _as_diagram(obj) -> WiringDiagram:
    if isinstance(obj, LineArrangement):
        return certified_wiring(obj).diagram
    return obj


def cmd_search(args) -> int:
    cfg = SearchConfig(
        n=args.n, target=args.target, budget=args.budget, exhaustive=args.exhaustive,
        max_columns=args.max_columns, parallel_width=args.threads,
    )
    res = depth_first_search(cfg)
    if args.out and res.witness is not None:
        Path(args.out).write_text(write_diagram(res.witness))
    if args.json:
        print(json.dumps({
            "n": cfg.n, "best": res.best_count, "nodes": res.nodes_visited,
            "complete": res.complete, "seconds": round(res.elapsed, 6),
            "witness": write_diagram(res.witness) if res.witness else None,
        }))
    else:
        print(f"best={res.best_count} nodes={res.nodes_visited} "
              f"time={res.elapsed:.3f}s complete={str(res.complete).lower()}")
    if cfg.target is not None and res.best_count < cfg.target:
        return EXIT_TARGET
    return EXIT_OK


def cmd_count(args) -> int:
    d = _as_diagram(_load(args.inp))
    if is_complete(d):
        rep = count_triangles(d)
        data = {
            "n": d.n, "complete": True, "triangles": rep.triangle_count,
            "used": len(rep.used), "unused": len(rep.unused),
            "contact": list(rep.wire_contact),
        }
        line = (f"triangles={rep.triangle_count} used={len(rep.used)} unused={len(rep.unused)}\n"
                f"contact={','.join(map(str, rep.wire_contact))}")
    else:
        closed, unused = partial_report(d)
        data = {"n": d.n, "complete": False, "closed_triangles": closed, "provably_unused": unused}
        line = f"incomplete closed_triangles={closed} provably_unused={unused}"
    print(json.dumps(data) if args.json else line)
    return EXIT_OK


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep or not lo.isdigit() or not hi.isdigit() or int(lo) > int(hi):
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    return range(int(lo), int(hi) + 1)


def _known_text(rec) -> str:
    if rec.known_lower is None:
        return f"<={rec.known_upper}"
    if rec.exact:
        return str(rec.known_lower)
    return f"{rec.known_lower}-{rec.known_upper}"


def cmd_bounds(args) -> int:
    ns = args.range if args.range else [args.n]
    rows = []
    for n in ns:
        row = {"n": n, "affine_upper": formula_upper(n, "affine"),
               "projective_upper": formula_upper(n, "projective")}
        try:
            recs = {(r.setting, r.kind): r for r in known_values(n)}
            for setting in ("affine", "projective"):
                for kind in ("pseudolines", "lines"):
                    row[f"{setting}_{kind}"] = _known_text(recs[(setting, kind)])
        except NoData:
            pass
        rows.append(row)
    if args.json:
        print(json.dumps(rows))
        return EXIT_OK
    print("n\taffine_upper\taffine_known\tprojective_upper\tprojective_known")
    for r in rows:
        print(f"{r['n']}\t{r['affine_upper']}\t{r.get('affine_pseudolines', '-')}\t"
              f"{r['projective_upper']}\t{r.get('projective_pseudolines', '-')}")
    return EXIT_OK


def cmd_duplicate(args) -> int:
    last = None
    for rnd in duplication_rounds(args.seed, args.iterations, args.eps, args.precision, args.max_precision):
        last = rnd
        print(f"n={len(rnd.arrangement)} triangles={rnd.triangles} "
              f"axis_contact={rnd.axis_contact} precision={rnd.precision}")
    if args.out:
        out = Path(args.out)
        out.write_text(write_arrangement(last.arrangement))
        wd = Path(args.diagram_out) if args.diagram_out else out.with_suffix(".wd")
        if wd == out:
            wd = out.with_name(out.name + ".wd")
        wd.write_text(write_diagram(to_wiring(last.arrangement)))
    return EXIT_OK


def cmd_render(args) -> int:
    obj = _load(args.inp)
    opts = RenderOptions(width=args.width, height=args.height, margin=args.margin,
                         label_wires=not args.no_labels, highlight_triangles=args.highlight)
    if isinstance(obj, LineArrangement) and not args.as_diagram:
        svg = render_arrangement(obj, opts)
    else:
        svg = render_diagram(_as_diagram(obj), opts)
    Path(args.out).write_text(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pltriangles", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("search", help="search wiring diagrams for many triangles")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--target", type=int)
    s.add_argument("--budget", type=int)
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--max-columns", type=int)
    s.add_argument("--out")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("count", help="count triangles of a diagram or arrangement file")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_count)

    b = sub.add_parser("bounds", help="upper bounds and known values")
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--range", type=_parse_range, help="inclusive range a..b")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)

    d = sub.add_parser("duplicate", help="iterate the duplication construction")
    d.add_argument("--seed", choices=["hex7", "hexagonal7", "simmons15"], required=True)
    d.add_argument("--iterations", type=int, default=1)
    d.add_argument("--eps")
    d.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    d.add_argument("--max-precision", type=int, default=MAX_PRECISION)
    d.add_argument("--out")
    d.add_argument("--diagram-out")
    d.set_defaults(func=cmd_duplicate)

    r = sub.add_parser("render", help="draw a diagram or arrangement as SVG")
    r.add_argument("--in", dest="inp", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--highlight", action="store_true")
    r.add_argument("--no-labels", action="store_true")
    r.add_argument("--as-diagram", action="store_true", help="draw an arrangement as its wiring diagram")
    r.add_argument("--width", type=int, default=640)
    r.add_argument("--height", type=int, default=320)
    r.add_argument("--margin", type=int, default=24)
    r.set_defaults(func=cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except PrecisionInsufficient as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ConstructionFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TARGET
    except (DiagramParseError, ArrangementError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
