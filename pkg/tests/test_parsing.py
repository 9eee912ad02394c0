from fractions import Fraction

import pytest
from hypothesis import given, settings

from operadiff.core import LinComb
from operadiff.free import Inj
from operadiff.operads import operad_by_name
from operadiff.parsing import (ParseError, atom_name, parse_expression, parse_linear, render_element,
                               render_linear)
from strategies import free_elements

COM, ASS, LIE, ABULLET = (operad_by_name(n) for n in ("com", "ass", "lie", "abullet"))


def roundtrip(P, el, layers):
    return parse_expression(P, render_element(P, el), layers=layers) == el


@pytest.mark.parametrize("text,expected", [
    ("x^2", "x^2"),
    ("y*x + x*y", "2*x*y"),
    ("1/2*x - x/1*1", None),
    ("(x + 1)^2", "1 + 2*x + x^2"),
    ("x^0", "1"),
    ("0", "0"),
    ("x*dx + dx*x", "2*x*dx"),
])
def test_com_examples(text, expected):
    if expected is None:
        with pytest.raises(ParseError):
            parse_expression(COM, text)
        return
    assert render_element(COM, parse_expression(COM, text)) == expected


def test_ass_keeps_order():
    e = parse_expression(ASS, "x*y - y*x")
    assert render_element(ASS, e) == "x*y - y*x"
    assert parse_expression(ASS, "(x*y)*z") == parse_expression(ASS, "x*(y*z)")


def test_lie_antisymmetry_and_jacobi():
    assert not parse_expression(LIE, "[x,y] + [y,x]")
    assert not parse_expression(LIE, "[x,x]")
    assert not parse_expression(LIE, "[x,[y,z]] + [y,[z,x]] + [z,[x,y]]")


def test_abullet_action():
    e = parse_expression(ABULLET, "t*m + 2*m")
    assert render_element(ABULLET, e) == "2*m + t*m"
    assert not parse_expression(ABULLET, "t*t*m")


def test_marked_variables():
    e = parse_expression(COM, "x*dx")
    assert {a for t in e for a in t.word} == {Inj(0, "x"), Inj(1, "x")}
    e = parse_expression(COM, "d2x + dx")
    assert {a for t in e for a in t.word} == {Inj(2, "x"), Inj(1, "x")}
    e = parse_expression(COM, "d'dx")
    assert {a for t in e for a in t.word} == {Inj(1, Inj(1, "x"))}
    # a variable literally named "dx" stays plain when declared
    e = parse_expression(COM, "dx", variables=["dx"])
    assert {a for t in e for a in t.word} == {"dx"}


def test_atom_names():
    assert atom_name(Inj(1, "x")) == "dx"
    assert atom_name(Inj(0, "x")) == "x"
    assert atom_name(Inj(1, Inj(1, "x"))) == "d'dx"


@pytest.mark.parametrize("P,text,where", [
    (COM, "x +", (1, 4)),
    (COM, "[x,y]", (1, 1)),
    (LIE, "x*y", (1, 3)),
    (LIE, "x^2", (1, 2)),
    (LIE, "3", (1, 1)),
    (ASS, "x^2", (1, 2)),
    (COM, "x\n + )", (2, 4)),
    (ABULLET, "m*t", (1, 1)),
])
def test_parse_errors_report_position(P, text, where):
    with pytest.raises(ParseError) as info:
        parse_expression(P, text)
    assert f"line {where[0]}, column {where[1]}" in str(info.value)


def test_unknown_variable_is_rejected():
    with pytest.raises(ParseError):
        parse_expression(COM, "x + z", variables=["x", "y"])


# -- round trips -------------------------------------------------------------------

PLAIN = ("x", "y", "z")
ONE = (Inj(0, "x"), Inj(1, "x"), Inj(0, "y"), Inj(2, "y"))
TWO = (Inj(0, Inj(0, "x")), Inj(1, Inj(0, "x")), Inj(0, Inj(1, "x")), Inj(1, Inj(1, "x")))
CASES = [(COM, 0), (ASS, 0), (LIE, 1), (ABULLET, 1)]


@pytest.mark.parametrize("P,min_arity", CASES, ids=lambda x: getattr(x, "name", str(x)))
@pytest.mark.parametrize("atoms,layers", [(PLAIN, 0), (ONE, 1), (TWO, 2)], ids=["plain", "marked", "iterated"])
def test_render_parse_round_trip(P, min_arity, atoms, layers):
    if P is ABULLET:
        atoms = {0: ("m", "n"), 1: (Inj(0, "m"), Inj(1, "m")), 2: TWO[:2]}[layers]

    @settings(max_examples=200)
    @given(free_elements(P, atoms, max_arity=4, max_terms=4, min_arity=min_arity))
    def check(el):
        assert roundtrip(P, el, layers)

    check()


def _expand_brackets(text):
    """[a,b] -> (a*b - b*a), innermost first."""
    while "[" in text:
        close = text.index("]")
        open_ = text.rindex("[", 0, close)
        inner = text[open_ + 1:close]
        comma = inner.index(",")
        a, b = inner[:comma], inner[comma + 1:]
        text = text[:open_] + f"(({a})*({b}) - ({b})*({a}))" + text[close + 1:]
    return text


def _nc_expand(sym, word):
    """Right-normed bracket as a dict word -> coefficient."""
    names = [word[i - 1] for i in sym]
    poly = {(names[-1],): 1}
    for n in reversed(names[:-1]):
        out = {}
        for w, c in poly.items():
            out[(n,) + w] = out.get((n,) + w, 0) + c
            out[w + (n,)] = out.get(w + (n,), 0) - c
        poly = out
    return poly


@settings(max_examples=200)
@given(free_elements(LIE, PLAIN, max_arity=4, max_terms=3, min_arity=1))
def test_lie_brackets_expand_to_commutators(el):
    via_render = parse_expression(ASS, _expand_brackets(render_element(LIE, el)))
    terms = []
    for t, c in el.items():
        for w, k in _nc_expand(t.op, t.word).items():
            terms.append(f"{Fraction(c) * k}*{'*'.join(w)}")
    oracle = parse_expression(ASS, " + ".join(terms).replace("+ -", "- ") if terms else "0")
    assert via_render == oracle


def test_parse_linear():
    v = parse_linear("2*x - 1/3*y + x^2", ["x", "y", "x^2"])
    assert v == LinComb({"x": 2, "y": Fraction(-1, 3), "x^2": 1})
    assert parse_linear(render_linear(v), ["x", "y", "x^2"]) == v
    assert parse_linear("0", ["x"]) == LinComb.zero()
    with pytest.raises(ValueError):
        parse_linear("2*w", ["x"])
