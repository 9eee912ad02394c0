import random

import pytest

from operadiff.free import diff_transform
from operadiff.operads import dual_numbers_data, make_ass, make_com, make_lie, make_pointed_operad
from operadiff.parsing import atom_name, parse_expression
from operadiff.ppoly import PPolyMap, check_cdc_properties, identity_map, ppoly_compose, ppoly_diff
from oracles import random_polynomial_text, sympy_of_com_element, sympy_total_derivative

COM = make_com()


def test_com_derivative_matches_sympy():
    rng = random.Random(11)
    for _ in range(30):
        nv = rng.randint(1, 3)
        variables = ["x", "y", "z"][:nv]
        text = random_polynomial_text(rng, variables)
        ours = diff_transform(COM, parse_expression(COM, text, variables))
        assert sympy_of_com_element(ours, atom_name) == sympy_total_derivative(text, variables), text


def test_worked_composite():
    f = PPolyMap(("x",), (parse_expression(COM, "x^2"),))
    g = PPolyMap(("y",), (parse_expression(COM, "y^2"),))
    gf = ppoly_compose(COM, g, f)
    assert gf.components[0] == parse_expression(COM, "x^4")
    Df = ppoly_diff(COM, f)
    lhs = ppoly_diff(COM, gf)
    rhs = ppoly_compose(COM, ppoly_diff(COM, g), PPolyMap(Df.source, f.components + Df.components))
    assert lhs == rhs
    assert lhs.components[0] == parse_expression(COM, "4*x^3*dx", ["x", "dx"])


def test_identity_is_linear():
    I = identity_map(COM, ("x", "y"))
    assert ppoly_diff(COM, I).components == (parse_expression(COM, "dx", ["dx"]), parse_expression(COM, "dy", ["dy"]))


def test_composition_shape_error():
    f = PPolyMap(("x",), (parse_expression(COM, "x"),))
    g = PPolyMap(("u", "v"), (parse_expression(COM, "u*v"),))
    with pytest.raises(ValueError):
        ppoly_compose(COM, g, f)


@pytest.mark.parametrize("P", [make_ass(), make_lie(), make_pointed_operad(dual_numbers_data())],
                         ids=lambda P: P.name)
def test_cdc_properties_small(P):
    assert check_cdc_properties(P, 10, seed=3).ok


def test_chain_rule_fails_for_a_broken_derivative():
    broken = lambda P, el: diff_transform(P, el).scale(2)
    rep = check_cdc_properties(COM, 10, seed=3, partial=broken)
    assert rep.status_of("chain-rule") == "fail"
