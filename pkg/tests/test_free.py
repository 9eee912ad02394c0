
import pytest
from hypothesis import given

from operadiff.axioms import check_dc_axioms, check_lambda_axioms, check_monad_laws, check_counit
from operadiff.core import LinComb
from operadiff.free import (FreeTerm, Inj, basis_terms, canonical_term, counit_exists, diff_transform,
                            dist_law, dlinear_counit, eta, functor_map, monad_mult, partial_from_lambda,
                            proj, term_el)
from operadiff.operads import dual_numbers_data, make_ass, make_com, make_lie, make_pointed_operad
from oracles import com_pair_cell_dim, lie_pair_cell_dim
from strategies import free_elements

COM, ASS, LIE = make_com(), make_ass(), make_lie()
ABUL = make_pointed_operad(dual_numbers_data())
OPERADS = [COM, ASS, LIE, ABUL]


def test_basis_term_counts_match_oracles():
    # S(Com, {x,y}) in arity w: w+1 monomials; S(Lie, V×V) cells via Witt's formula
    for w in range(5):
        assert len(basis_terms(COM, ["x", "y"], w, w)) == com_pair_cell_dim(1, 0, w) * (w + 1)
    atoms = [Inj(j, v) for j in (0, 1) for v in "xy"]
    for w in range(1, 4):
        terms = basis_terms(LIE, atoms, w, w)
        for k in range(w + 1):
            got = sum(1 for t in terms if sum(a.k for a in t.word) == k)
            assert got == lie_pair_cell_dim(2, k, w)


def test_com_canonical_form_sorts_word():
    assert canonical_term(COM, 2, ("y", "x")) == term_el(2, ("x", "y"))


def test_ass_words_do_not_commute():
    xy = monad_mult(ASS, term_el(ASS.basis(2)[0], (FreeTerm(ASS.basis(1)[0], ("x",)),
                                                   FreeTerm(ASS.basis(1)[0], ("y",)))))
    yx = monad_mult(ASS, term_el(ASS.basis(2)[1], (FreeTerm(ASS.basis(1)[0], ("x",)),
                                                   FreeTerm(ASS.basis(1)[0], ("y",)))))
    assert xy != yx


@pytest.mark.parametrize("P", OPERADS, ids=lambda P: P.name)
def test_partial_from_lambda_round_trip(P):
    @given(free_elements(P))
    def prop(el):
        assert partial_from_lambda(P, el) == diff_transform(P, el)
    prop()


@pytest.mark.parametrize("P", OPERADS, ids=lambda P: P.name)
def test_diff_euler_identity(P):
    # folding the two copies back together counts each term once per slot
    @given(free_elements(P))
    def prop(el):
        fold = lambda a: LinComb.single(a.x)
        scaled = LinComb((t, c * t.arity) for t, c in el.items())
        assert functor_map(P, fold, diff_transform(P, el)) == scaled
        assert not functor_map(P, proj(0), diff_transform(P, el))
    prop()


@pytest.mark.parametrize("P", OPERADS, ids=lambda P: P.name)
def test_lambda_first_component_is_point_projection(P):
    @given(free_elements(P))
    def prop(el):
        lifted = functor_map(P, lambda x: LinComb.single(Inj(0, x)), el)
        first, second = dist_law(P, lifted)
        assert first == el and not second
    prop()


def test_counit_exists_iff_p1_is_a_line():
    assert counit_exists(COM)[0] and counit_exists(ASS)[0] and counit_exists(LIE)[0]
    assert not counit_exists(ABUL)[0]
    x = eta(COM, "x")
    assert dlinear_counit(COM, x + term_el(2, ("x", "y"))) == LinComb.single("x")
    with pytest.raises(ValueError):
        dlinear_counit(ABUL, eta(ABUL, "m"))


def test_counit_suite():
    for P in (COM, ASS, LIE):
        assert check_counit(P).ok


# -- mutations: broken ∂ or λ must be caught -------------------------------

def _doubled(P, el):
    return diff_transform(P, el).scale(2)


def _first_slot_only(P, el):
    out = []
    for t, c in el.items():
        if t.arity:
            word = (Inj(1, t.word[0]),) + tuple(Inj(0, x) for x in t.word[1:])
            out.append(canonical_term(P, t.op, word).scale(c))
    return sum(out, LinComb.zero())


def _with_point_copy(P, el):
    return diff_transform(P, el) + functor_map(P, lambda x: LinComb.single(Inj(0, x)), el)


@pytest.mark.parametrize("mutant", [_doubled, _first_slot_only, _with_point_copy])
@pytest.mark.parametrize("P", [COM, LIE], ids=lambda P: P.name)
def test_dc_suite_rejects_mutants(P, mutant):
    rep = check_dc_axioms(P, 3, 30, seed=1, partial=mutant)
    assert not rep.ok
    assert any(c.counterexample for c in rep.checks if not c.ok)


def test_lambda_suite_rejects_swapped_components():
    swapped = lambda P, el: tuple(reversed(dist_law(P, el)))
    assert not check_lambda_axioms(COM, 3, 20, seed=1, lam=swapped).ok


def test_monad_laws_small():
    for P in OPERADS:
        assert check_monad_laws(P, 3, 20).ok
