from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona.birmap import PlaneMap
from cremona.errors import ParseError, ShapeError
from cremona.exactfield import FieldKind, FunctionField
from cremona.moebius import MoebiusElt
from cremona.parsing import (
    Parser,
    detect_style,
    format_map,
    parse_element,
    parse_element_list,
    parse_map,
    parse_ratfunc,
    tokenize,
)

QQ = FieldKind.rationals()
F101 = FieldKind.prime(101)
CYCLO3 = FieldKind.cyclotomic(3)
K = FunctionField(QQ, "x")
x = K.gen()


def test_tokenizer_positions():
    toks = tokenize("(x, 12*y)")
    assert [t.text for t in toks] == ["(", "x", ",", "12", "*", "y", ")", ""]
    assert toks[3].pos == 4
    with pytest.raises(ParseError) as err:
        tokenize("x $ y")
    assert err.value.pos == 2


def test_element_parsing():
    assert parse_element("3/4 - 1", QQ) == Fraction(-1, 4)
    assert parse_element("2^-2", QQ) == Fraction(1, 4)
    assert parse_element("-(1/2)^3", QQ) == Fraction(-1, 8)
    assert parse_element("1/2", F101) == 51
    zeta = CYCLO3.gen()
    assert parse_element("zeta^2 + zeta", CYCLO3) == -1
    assert parse_element("zeta", CYCLO3) == zeta
    with pytest.raises(ParseError):
        parse_element("zeta", QQ)
    with pytest.raises(ParseError):
        parse_element("1/0", QQ)


def test_element_lists():
    assert parse_element_list("", QQ) == []
    assert parse_element_list("{}", QQ) == []
    assert parse_element_list("{0, 1/2, (3 - 5)}", QQ) == [0, Fraction(1, 2), -2]


def test_ratfunc_parsing():
    assert parse_ratfunc("(x^2 + x^-2)", QQ) == x * x + 1 / (x * x)


def test_map_parsing_and_printing():
    f = parse_map("(x, (x^2 + x^-2)/y)", QQ)
    assert format_map(f) == "(x, (x^4 + 1)/(x^2*y))"
    assert parse_map("(-z, t)", QQ) == parse_map("(x, -y)", QQ)
    assert format_map(parse_map("(x, -y)", QQ), "zt") == "(-z, t)"
    g = parse_map("(zeta*x, (-zeta - 1)*y)", CYCLO3)
    assert format_map(g) == "(zeta*x, (-zeta - 1)*y)"


def test_style_detection():
    node = Parser("(x, y)").parse_map()
    assert detect_style(node) == "xy"
    assert detect_style(Parser("(z, t)").parse_map()) == "zt"
    with pytest.raises(ParseError):
        detect_style(Parser("(x, t)").parse_map())


@pytest.mark.parametrize(
    "src",
    ["(y, x)", "(x^2, y)", "(x, y^2)", "(x, x)", "(1, y)", "(x + y, y)"],
)
def test_shape_errors(src):
    with pytest.raises(ShapeError):
        parse_map(src, QQ)


@pytest.mark.parametrize(
    "src, pos",
    [("(x, y", 5), ("(x y)", 3), ("x, y)", 0), ("(x, (y, x))", 6), ("(x, y) x", 7)],
)
def test_syntax_errors_report_position(src, pos):
    with pytest.raises(ParseError) as err:
        parse_map(src, QQ)
    assert err.value.pos == pos


# ---------------------------------------------------------------------------
# round trips

small = st.integers(-7, 7)
polys = st.lists(small, min_size=1, max_size=3).map(lambda cs: sum((c * x**i for i, c in enumerate(cs)), K.zero()))
laurent = st.tuples(polys, st.integers(0, 2)).map(lambda pe: pe[0] / x ** pe[1])


def _nonsingular(e):
    return bool(e[0] * e[3] - e[1] * e[2])


base = st.tuples(small, small, small, small).filter(_nonsingular).map(lambda e: MoebiusElt(*e, QQ))
fibre = st.tuples(laurent, laurent, laurent, laurent).filter(_nonsingular).map(lambda e: MoebiusElt(*e, K))
maps = st.builds(PlaneMap, base, fibre)


@settings(max_examples=200, deadline=None)
@given(maps, st.sampled_from(["xy", "zt"]))
def test_print_parse_round_trip(f, style):
    text = format_map(f, style)
    assert parse_map(text, QQ) == f
    assert format_map(parse_map(text, QQ), style) == text


# (text, exact value or None when the expression divides by zero)
leaves = st.integers(0, 9).map(lambda n: (str(n), Fraction(n)))


def _binary(t):
    (sa, va), op, (sb, vb) = t
    text = f"({sa}) {op} ({sb})"
    if va is None or vb is None or (op == "/" and vb == 0):
        return (text, None)
    return (text, {"+": va + vb, "-": va - vb, "*": va * vb, "/": va / vb if vb else None}[op])


def _power(t):
    (sa, va), n = t
    undefined = va is None or (va == 0 and n < 0)
    return (f"({sa})^{n}", None if undefined else va**n)


def _combine(children):
    ops = st.sampled_from(["+", "-", "*", "/"])
    return st.one_of(
        st.tuples(children, ops, children).map(_binary),
        children.map(lambda c: (f"-({c[0]})", None if c[1] is None else -c[1])),
        st.tuples(children, st.integers(-2, 3)).map(_power),
    )


expressions = st.recursive(leaves, _combine, max_leaves=8)


@settings(max_examples=200)
@given(expressions)
def test_expression_evaluation_matches_python(expr):
    text, value = expr
    if value is None:
        with pytest.raises(ParseError):
            parse_element(text, QQ)
    else:
        assert parse_element(text, QQ) == value
