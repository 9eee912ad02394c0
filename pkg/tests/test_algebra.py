import itertools
import random

import pytest
from hypothesis import given, strategies as st

from operadiff.algebra import (STANDARD_MAPS, check_algebra_axioms, check_differential_object_alg,
                               check_morphism, check_tangent_equations, check_tangent_lift,
                               derivation_bracket, derivation_from_vector_field, derivation_space,
                               is_derivation, tangent_bundle, tangent_power, vector_field_bracket,
                               vector_field_from_derivation)
from operadiff.catalog import (abelian_lie, borel_lie, dual_module, dual_numbers, random_morphisms,
                               trivial_module, truncated_poly, upper_triangular, zero_algebra)
from operadiff.core import LinComb
from operadiff.free import Inj
from operadiff.operads import make_lie
from oracles import truncated_poly_der_dim

TANGENT_CASES = [dual_numbers(), truncated_poly(3), upper_triangular(), borel_lie()]
ALL = TANGENT_CASES + [abelian_lie(2), dual_module(), trivial_module()]
ids = lambda A: A.name


@pytest.mark.parametrize("A", ALL, ids=ids)
def test_catalog_algebras_satisfy_axioms(A):
    assert check_algebra_axioms(A).ok


@pytest.mark.parametrize("A", ALL, ids=ids)
def test_semidirect_product_is_the_lifted_structure(A):
    assert check_tangent_lift(A).ok
    assert check_algebra_axioms(tangent_bundle(A), arity_bound=3, max_instances=3000).ok


def test_dual_numbers_tangent_table():
    T = tangent_bundle(dual_numbers())
    # (a, b)(a', b') = (aa', ab' + ba')
    assert T.table("mul", (Inj(0, "x"), Inj(1, "1"))) == LinComb.single(Inj(1, "x"))
    assert T.table("mul", (Inj(0, "x"), Inj(1, "x"))) == LinComb.zero()
    assert T.table("mul", (Inj(1, "1"), Inj(1, "1"))) == LinComb.zero()
    assert T.table("mul", (Inj(0, "x"), Inj(0, "x"))) == LinComb.zero()


@pytest.mark.parametrize("A", TANGENT_CASES, ids=ids)
def test_tangent_equations(A):
    morphs = random_morphisms(A, 8, random.Random(5))
    assert all(check_morphism(f).ok for f in morphs)
    rep = check_tangent_equations(A, morphisms=morphs)
    assert rep.ok, rep.render()


# Single-map corruptions.  Rescaling l by a nonzero scalar gives an isomorphic
# tangent structure and is deliberately not in this list.
def _mutants():
    pz = lambda a: LinComb.single(a.x)
    return {
        "p": pz,
        "z": lambda b: LinComb({Inj(0, b): 1, Inj(1, b): 1}),
        "s": lambda a: LinComb.single(Inj(0, a.x)) if a.k in (0, 2) else LinComb.single(a),
        "q1": lambda a: LinComb.single(Inj(0, a.x)) if a.k == 0 else LinComb.single(Inj(1, a.x)) if a.k == 2 else LinComb.zero(),
        "q2": lambda a: LinComb.single(Inj(0, a.x)) if a.k in (0, 1) else LinComb.zero(),
        "l": lambda a: LinComb.single(Inj(1, Inj(0, a.x))) if a.k == 1 else LinComb.single(Inj(0, Inj(0, a.x))),
        "c": lambda a: LinComb.single(a),
        "n": lambda a: LinComb.single(a),
    }


@pytest.mark.parametrize("name", sorted(STANDARD_MAPS))
@pytest.mark.parametrize("A", TANGENT_CASES, ids=ids)
def test_single_map_mutation_is_reported(A, name):
    rep = check_tangent_equations(A, overrides={name: _mutants()[name]})
    assert not rep.ok
    bad = [c for c in rep.checks if not c.ok]
    assert bad and all(c.counterexample for c in bad)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_derivation_dimension_matches_hand_count(n):
    A = truncated_poly(n)
    ders = derivation_space(A)
    assert len(ders) == truncated_poly_der_dim(n)
    assert all(is_derivation(A, D.map)[0] for D in ders)


def test_derivation_dims_of_other_algebras():
    # UT2: inner derivations ad(e12), ad(e11) span; b2: ad(h), ad(e); abelian: gl(2)
    assert len(derivation_space(upper_triangular())) == 2
    assert len(derivation_space(borel_lie())) == 2
    assert len(derivation_space(abelian_lie(2))) == 4
    assert len(derivation_space(zero_algebra(make_lie()))) == 0


@pytest.mark.parametrize("A", ALL, ids=ids)
def test_commutators_close_and_satisfy_jacobi(A):
    ders = derivation_space(A)
    for D1, D2 in itertools.product(ders, repeat=2):
        assert is_derivation(A, derivation_bracket(D1, D2).map)[0]
    for D1, D2, D3 in itertools.product(ders, repeat=3):
        br = derivation_bracket
        total = br(D1, br(D2, D3)).map + br(D2, br(D3, D1)).map + br(D3, br(D1, D2)).map
        assert all(not col for col in total.columns.values())


def test_non_derivation_is_rejected():
    A = dual_numbers()
    from operadiff.core import LinearMap
    bad = LinearMap(A.carrier, A.carrier, {"1": LinComb.single("1"), "x": LinComb.zero()})
    ok, wit = is_derivation(A, bad)
    assert not ok and wit is not None


@pytest.mark.parametrize("A", ALL, ids=ids)
def test_vector_field_round_trips(A):
    for D in derivation_space(A):
        v = vector_field_from_derivation(D)
        assert derivation_from_vector_field(v) == D
        assert vector_field_from_derivation(derivation_from_vector_field(v)) == v
    ders = derivation_space(A)
    for D1, D2 in itertools.product(ders, repeat=2):
        v, w = vector_field_from_derivation(D1), vector_field_from_derivation(D2)
        assert derivation_from_vector_field(vector_field_bracket(v, w)) == derivation_bracket(D1, D2)


@pytest.mark.parametrize("A,expected", [(dual_numbers(), False), (truncated_poly(3), False),
                                        (upper_triangular(), False), (borel_lie(), False),
                                        (abelian_lie(2), True), (dual_module(), True), (trivial_module(), True)],
                         ids=lambda x: getattr(x, "name", str(x)))
def test_differential_object_criteria_agree(A, expected):
    ok, info = check_differential_object_alg(A)
    assert info["agree"]
    assert ok == expected


@given(st.integers(1, 4))
def test_tangent_power_dimension(k):
    A = borel_lie()
    assert tangent_power(A, k).dim == (k + 1) * A.dim
