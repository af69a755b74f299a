from fractions import Fraction

import pytest

from pltriangles.diagram import is_complete, is_leftmost_canonical
from pltriangles.errors import (
    ConstructionFailed,
    DiagramParseError,
    InvalidArrangement,
    PreconditionFailed,
    PrecisionInsufficient,
)
from pltriangles.faces import count_triangles
from pltriangles.geometry import (
    Line,
    LineArrangement,
    _certify_new_lines,
    count_arrangement,
    crossing_x,
    crossing_y,
    default_eps,
    duplicate,
    duplicate_counted,
    duplication_inputs,
    hexagonal7,
    iterate_duplication,
    new_lines,
    read_arrangement,
    simmons15,
    to_wiring,
    wiring,
    write_arrangement,
)
from pltriangles.reals import Rat, TanPi, fraction_text, parse_real


@pytest.fixture(scope="module")
def hex7():
    return hexagonal7()


@pytest.fixture(scope="module")
def s15():
    return simmons15()


def arrangement(rows, prec=256):
    return LineArrangement(tuple(Line.of(m, a) for m, a in rows), prec)


def test_three_lines():
    A = arrangement([(1, 0), (0, 0), (-1, 1)])
    d = to_wiring(A)
    assert d.crossings == 3 and is_complete(d)
    assert count_triangles(d).triangle_count == 1


def test_crossing_formulas():
    a, b = Line.of(2, 1), Line.of(-1, 4)
    x, y = crossing_x(a, b).exact(), crossing_y(a, b).exact()
    assert 2 * (x - 1) == y == -(x - 4)


def test_wire_order_ascending_slope():
    A = arrangement([(5, 0), (-2, 1), (1, 3)])
    assert wiring(A).wire_of_line == (3, 1, 2)


def test_parallel_lines_rejected():
    with pytest.raises(InvalidArrangement):
        to_wiring(arrangement([(1, 0), (1, 2), (0, 0)]))


def test_concurrent_lines_rejected():
    with pytest.raises(InvalidArrangement):
        to_wiring(arrangement([(1, 0), (-1, 0), (2, 0)]))
    # a slope-0 line is y = 0 whatever its anchor, so these meet at the origin
    with pytest.raises(InvalidArrangement):
        to_wiring(arrangement([(1, 0), (0, 1), (-1, 0)]))


def near_tie(prec):
    # two crossing x-coordinates about 5e-31 apart, both irrational
    t = TanPi(Fraction(1, 7))
    rows = [(Rat(1), t), (Rat(-1), t + Fraction(1, 10**30)), (Rat(2), t)]
    return LineArrangement(tuple(Line(m, a) for m, a in rows), prec)


def test_low_precision_is_reported():
    with pytest.raises(PrecisionInsufficient):
        to_wiring(near_tie(16))
    assert to_wiring(near_tie(256)).crossings == 3


def test_hexagonal7(hex7):
    d = to_wiring(hex7)
    assert d.crossings == 21 and is_leftmost_canonical(d)
    c = count_arrangement(hex7)
    assert c.triangles == 11 and c.axis_contact() == 5


def test_simmons15(s15):
    d = to_wiring(s15)
    assert d.crossings == 105
    rep = count_triangles(d)
    assert rep.triangle_count == 65 and len(rep.used) == 195 and not rep.unused
    assert count_arrangement(s15).axis_contact() == 13


def test_seed_eps_too_large():
    with pytest.raises(ConstructionFailed):
        hexagonal7(eps=1)
    with pytest.raises(ConstructionFailed):
        simmons15(eps=Fraction(1, 10))


def test_scaling_invariance(hex7):
    base = count_triangles(to_wiring(hex7)).triangle_count
    for s, t in [(3, 1), (Fraction(1, 7), 5), (2, Fraction(1, 3))]:
        scaled = LineArrangement(
            tuple(Line(ln.slope * s, ln.anchor * t) for ln in hex7.lines), hex7.precision)
        assert count_triangles(to_wiring(scaled)).triangle_count == base


def test_duplicate_hexagonal7(hex7):
    B = duplicate(hex7)
    assert len(B) == 13
    c = count_arrangement(B)
    assert c.triangles == 47 and c.axis_contact() == 2 * 6 - 1


def test_duplicate_simmons15(s15):
    before, after = duplicate_counted(s15)
    assert before.triangles == 65
    assert len(after.arrangement) == 29
    assert after.triangles == 65 + 14 ** 2 == 261
    assert after.axis_contact == 27


def test_new_line_inequalities(hex7):
    prec = hex7.precision
    inp = duplication_inputs(hex7)
    ms = new_lines(inp)
    n = inp.n
    for ln in ms:
        mu = abs(ln.slope).interval(prec)
        lo = (inp.m_min / Rat(n ** 11)).interval(prec)
        hi = (inp.m_min * Fraction(2, n ** 10)).interval(prec)
        assert lo.b < mu.a and mu.b < hi.a
        assert ln.slope.sign(prec) * inp.side == ln.anchor.sign(prec)
    ybound = (inp.m_min * Fraction(3, n ** 9)).interval(prec)
    for i, L in enumerate(hex7.lines):
        if i != inp.axis:
            for M in ms:
                assert abs(crossing_y(L, M)).interval(prec).b < ybound.a
    _certify_new_lines(hex7, inp, ms, prec)


def test_duplicate_precondition_axis_contact(hex7):
    # A steeper second line keeps every anchor in place but the axis then
    # touches only 3 triangles.
    lines = list(hex7.lines)
    lines[1] = Line(Rat(10), lines[1].anchor, lines[1].label)
    A = LineArrangement(tuple(lines), hex7.precision)
    with pytest.raises(PreconditionFailed) as exc:
        duplication_inputs(A)
    assert exc.value.clause == "axis contact"


def test_duplicate_precondition_line_count(hex7):
    A = LineArrangement(hex7.lines[:-1], hex7.precision)
    with pytest.raises(PreconditionFailed) as exc:
        duplicate(A)
    assert exc.value.clause == "line count"


def test_duplicate_precondition_anchors():
    A = arrangement([(3, "tan(-1/5*pi)"), (1, "tan(-1/6*pi)"), (0, 0), (-1, "tan(1/6*pi)"),
                     (-3, "tan(1/3*pi)"), (-7, "-1/1000"), (7, "1/1000")])
    with pytest.raises(PreconditionFailed) as exc:
        duplicate(A)
    assert exc.value.clause == "anchors"


def test_iterate_zero_and_one():
    assert len(iterate_duplication("hexagonal7", 0)) == 7
    B = iterate_duplication("hexagonal7", 1)
    assert len(B) == 13 and count_arrangement(B).triangles == 47


def test_default_eps_schedule():
    assert default_eps("hexagonal7", 0) == Fraction(1, 1000)
    assert default_eps("hexagonal7", 2) == Fraction(1, 25 ** 3)
    assert default_eps("simmons15", 1) == Fraction(1, 29 ** 3)


def test_precision_cap():
    with pytest.raises(PrecisionInsufficient):
        count_arrangement(near_tie(16), cap=64)
    assert count_arrangement(near_tie(16)).wiring.precision > 64


def test_arrangement_file_round_trip(hex7):
    text = write_arrangement(hex7)
    assert text.startswith("lines 7 precision ")
    assert "tan(-1/3*pi)" in text
    back = read_arrangement("# comment\n" + text)
    assert len(back) == 7
    assert to_wiring(back) == to_wiring(hex7)
    assert write_arrangement(back) == text


def test_arrangement_parse_errors():
    with pytest.raises(DiagramParseError) as exc:
        read_arrangement("lines 2 precision 64\n1 0\n")
    assert exc.value.line is not None
    with pytest.raises(DiagramParseError) as exc:
        read_arrangement("lines 1 precision 64\n1 bogus\n")
    assert exc.value.line == 2


def test_real_literals():
    assert parse_real("1.66").exact() == Fraction(166, 100)
    assert parse_real("-3/7").exact() == Fraction(-3, 7)
    assert parse_real("1e-4").exact() == Fraction(1, 10000)
    t = parse_real("tan(1/4*pi)")
    assert isinstance(t, TanPi)
    v = t.interval(128)
    assert v.a <= 1 <= v.b
    assert fraction_text(Fraction(-3, 8)) == "-0.375"
    assert fraction_text(Fraction(1, 3)) == "1/3"
    with pytest.raises(ValueError):
        parse_real("tan(1/2*pi)")
    with pytest.raises(ValueError):
        parse_real("pi")
