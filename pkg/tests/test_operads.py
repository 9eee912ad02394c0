import pytest
from hypothesis import given, strategies as st

from operadiff.core import LinComb, Permutation, all_permutations
from operadiff.operads import (TruncationError, abelianization, check_operad_axioms, check_operad_morphism,
                               dual_numbers_data, make_ass, make_com, make_lie, make_pointed_operad,
                               make_table_operad, partial_compose, sigma_act)

OPERADS = [make_com(), make_ass(), make_lie(), make_pointed_operad(dual_numbers_data())]


@pytest.mark.parametrize("P", OPERADS, ids=lambda P: P.name)
def test_operad_axioms(P):
    rep = check_operad_axioms(P, 4)
    assert rep.ok, rep.render()


def test_lie_dimensions_are_factorial():
    # dim Lie(n) = (n-1)!
    assert [make_lie().dim(n) for n in range(1, 6)] == [1, 1, 2, 6, 24]


def test_lie_antisymmetry_and_jacobi():
    L = make_lie()
    br = LinComb.single((1, 2))
    swap = Permutation((2, 1))
    assert sigma_act(L, br, swap) == -br
    inner = partial_compose(L, br, 2, br)          # [a1,[a2,a3]]
    cyc = Permutation((2, 3, 1))
    total = inner + sigma_act(L, inner, cyc) + sigma_act(L, sigma_act(L, inner, cyc), cyc)
    assert not total


def test_ass_composition_concatenates_words():
    A = make_ass()
    mu = LinComb.single(Permutation((2, 1)))
    nu = LinComb.single(Permutation((1, 2)))
    assert partial_compose(A, mu, 1, nu) == LinComb.single(Permutation((3, 1, 2)))


def test_abelianization_is_an_operad_morphism():
    assert check_operad_morphism(abelianization(), 4).ok


def test_table_operad_truncation_guard():
    spec = {"name": "t", "components": {1: ["id"], 2: ["m"]}, "unit": LinComb.single("id"),
            "action": {("m", (2, 1)): LinComb.single("m")},
            "composition": {("id", 1, "id"): LinComb.single("id"), ("id", 1, "m"): LinComb.single("m"),
                            ("m", 1, "id"): LinComb.single("m"), ("m", 2, "id"): LinComb.single("m")},
            "max_arity": 2}
    P = make_table_operad(spec)
    with pytest.raises(TruncationError):
        P.basis(3)


def test_pointed_operad_rejects_nonassociative_ring():
    bad = dual_numbers_data()
    bad.mult[("t", "t")] = LinComb.single("1")
    bad.mult[("1", "t")] = LinComb.zero()
    with pytest.raises(ValueError):
        make_pointed_operad(bad)


@given(st.sampled_from(all_permutations(4)), st.sampled_from(all_permutations(4)))
def test_lie_action_is_right_action(p, q):
    from operadiff.core import perm_compose
    L = make_lie()
    x = LinComb.single((2, 3, 1, 4))
    assert sigma_act(L, sigma_act(L, x, p), q) == sigma_act(L, x, perm_compose(p, q))
