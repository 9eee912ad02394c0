import itertools

import pytest

from operadiff.adjoint import (DUAL, MonoMap, POINT, abullet_closed_dims, adjoint_bundle, adjoint_tangent_maps,
                               adjoint_vf_bracket, adjoint_vf_flat, adjoint_vf_sharp, check_adjoint_equations,
                               check_adjoint_maps_well_defined, check_adjunction, check_free_adjunction,
                               check_free_differential_object, check_tau_multiplicative, com_closed_dims,
                               com_correspondence, diff_object_from_p0_module, free_module_closed_dims,
                               free_over_module_presentation, hom_transpose_flat, hom_transpose_sharp,
                               kahler_truncated, regular_module, square_zero_extension, tangent_n,
                               tau_free_iso)
from operadiff.algebra import (derivation_space, is_morphism, vector_field_bracket,
                               vector_field_from_derivation)
from operadiff.catalog import (borel_lie, dual_module, dual_numbers, trivial_module,
                               truncated_poly, upper_triangular)
from operadiff.core import LinComb
from operadiff.operads import operad_by_name
from oracles import (ass_pair_cell_dim, com_pair_cell_dim, lie_pair_cell_dim, lyndon_words,
                     truncated_poly_sym_dims, witt_dim)

FINITE = [dual_numbers(), truncated_poly(3), upper_triangular(), borel_lie()]
ids = lambda A: A.name


# -- adjoint bundles of finite algebras ------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
def test_com_generic_dims_match_symmetric_powers(n):
    A = truncated_poly(n)
    pres = adjoint_bundle(A, 4, 2).presentation
    dims = [pres.cell((k,)).dim for k in range(3)]
    assert dims == truncated_poly_sym_dims(n, 2) == com_closed_dims(A, 2)
    assert all(pres.stable(k) for k in range(3))
    for k in (1, 2):
        killed, rank = com_correspondence(pres, A, k)
        assert killed and rank == dims[k]


def test_low_weight_bound_is_flagged_unstable():
    pres = adjoint_bundle(truncated_poly(3), 3, 2).presentation
    assert pres.cell((2,)).dim == 3
    assert pres.stable(2) is False


@pytest.mark.parametrize("A", [dual_module(), trivial_module()], ids=ids)
def test_abullet_bundle_is_m_times_m(A):
    pres = adjoint_bundle(A, 3, 2).presentation
    assert [pres.cell((k,)).dim for k in range(3)] == abullet_closed_dims(A, 2)


def test_kahler_dimensions():
    assert kahler_truncated(dual_numbers()).dim == 1
    assert kahler_truncated(truncated_poly(3)).dim == 2
    for A in (dual_numbers(), truncated_poly(3)):
        assert kahler_truncated(A, backend="closed").dim == kahler_truncated(A, backend="generic").dim
    ut = kahler_truncated(upper_triangular())
    assert ut.dim == 6 and ut.stable and not ut.exact
    assert kahler_truncated(dual_module()).dim == 2


@pytest.mark.parametrize("A", FINITE, ids=ids)
def test_d_is_a_derivation(A):
    assert adjoint_bundle(A, 3, 1).check_d_derivation().ok


# -- tau on free algebras --------------------------------------------------------

TAU_CASES = [("com", ["x"], 4, 4), ("com", ["x", "y"], 4, 4), ("ass", ["x"], 4, 4),
             ("ass", ["x", "y"], 4, 4), ("lie", ["x", "y"], 3, 3)]
ORACLE = {"com": com_pair_cell_dim, "ass": ass_pair_cell_dim, "lie": lie_pair_cell_dim}


@pytest.mark.parametrize("name,atoms,W,D", TAU_CASES)
def test_tau_is_an_isomorphism_on_every_cell(name, atoms, W, D):
    P = operad_by_name(name)
    pres, cells = tau_free_iso(P, atoms, W, D)
    assert cells
    for c in cells:
        k, w = c.key
        assert c.target_dim == ORACLE[name](len(atoms), k, w), c
        assert c.iso, c
    assert check_tau_multiplicative(P, pres, 60, seed=3)


def test_witt_formula_counts_lyndon_words():
    for n in range(1, 7):
        words = lyndon_words("ab", n)
        by_content = {}
        for w in words:
            by_content[w.count("a")] = by_content.get(w.count("a"), 0) + 1
        for a, count in by_content.items():
            assert witt_dim((a, n - a)) == count


@pytest.mark.parametrize("name,atoms,W,D", TAU_CASES)
def test_triangle_identities_on_free_algebras(name, atoms, W, D):
    assert check_free_adjunction(operad_by_name(name), atoms, min(W, 3), 1).ok


@pytest.mark.parametrize("A", FINITE, ids=ids)
def test_adjunction_on_finite_algebras(A):
    assert check_adjunction(A, 3, 1).ok


@pytest.mark.parametrize("A", FINITE, ids=ids)
def test_hom_transposes_are_inverse(A):
    bundle = adjoint_bundle(A, 3, 1)
    # tangent-valued morphisms coming from vector fields
    for D in derivation_space(A):
        g = vector_field_from_derivation(D).morphism
        h = hom_transpose_sharp(g, bundle, A)
        assert h.well_defined()[0]
        back = hom_transpose_flat(h)
        assert is_morphism(back) and back.map == g.map


# -- the adjoint structure maps --------------------------------------------------

def test_adjoint_equations_hold():
    rep = check_adjoint_equations()
    assert rep.ok, rep.render()
    assert len(rep.checks) == 16


def _override(name, src, tgt, table):
    return MonoMap(name, src, tgt, {m: LinComb(v) for m, v in table.items()})


def _adjoint_mutants():
    T1, T2 = DUAL, tangent_n(2)
    I2 = adjoint_tangent_maps()["c"].src
    return {
        "n": _override("n", T1, T1, {(): {(): 1}, (1,): {(1,): 1}}),
        "c": _override("c", I2, I2, {m: {m: 1} for m in I2.monomials}),
        "s": _override("s", T1, T2, {(): {(): 1}, (1,): {(1,): 1}}),
        "z": _override("z", T1, POINT, {(): {(): 1}, (1,): {(): 1}}),
        "q2": _override("q2", T1, T2, {(): {(): 1}, (1,): {(1,): 1}}),
    }


@pytest.mark.parametrize("name", sorted(_adjoint_mutants()))
def test_adjoint_mutation_is_reported(name):
    maps = adjoint_tangent_maps({name: _adjoint_mutants()[name]})
    rep = check_adjoint_equations(maps)
    assert not rep.ok
    assert all(c.counterexample for c in rep.checks if not c.ok)


@pytest.mark.parametrize("A", FINITE + [dual_module()], ids=ids)
def test_adjoint_maps_are_well_defined(A):
    assert check_adjoint_maps_well_defined(A, 3).ok


# -- vector fields through the adjunction ----------------------------------------

@pytest.mark.parametrize("A", FINITE, ids=ids)
def test_adjoint_vector_fields_round_trip(A):
    bundle = adjoint_bundle(A, 3, 1)
    vs = [vector_field_from_derivation(D) for D in derivation_space(A)]
    sharp = [adjoint_vf_sharp(v, bundle) for v in vs]
    for v, s in zip(vs, sharp):
        assert s.well_defined()[0]
        assert adjoint_vf_flat(s) == v
    for (v, s), (w, t) in itertools.product(list(zip(vs, sharp)), repeat=2):
        assert adjoint_vf_flat(adjoint_vf_bracket(s, t)) == vector_field_bracket(v, w)


# -- free modules and differential objects ----------------------------------------

def test_free_over_regular_module_is_polynomial():
    A = dual_numbers()
    mb, act = regular_module(A)
    pres = free_over_module_presentation(square_zero_extension(A, mb, act, "A"), 3, 2)
    assert [pres.cell((k,)).dim for k in range(3)] == [2, 2, 2]


def test_free_abullet_module_is_m_times_n():
    M = dual_module()
    E = square_zero_extension(M, ["n"], {"act": {("1", "n"): LinComb.single("n")}}, "N")
    pres = free_over_module_presentation(E, 3, 2)
    assert [pres.cell((k,)).dim for k in range(3)] == free_module_closed_dims(M, 1, 2)


@pytest.mark.parametrize("name,atoms", [("com", ["x", "y"]), ("ass", ["x", "y"]), ("lie", ["x", "y"]),
                                        ("abullet", ["m"])])
def test_free_differential_object(name, atoms):
    assert check_free_differential_object(operad_by_name(name), atoms, 3).ok


@pytest.mark.parametrize("name", ["com", "ass", "lie"])
def test_literal_lift_rule_is_not_a_morphism(name):
    rep = check_free_differential_object(operad_by_name(name), ["x", "y"], 3, literal=True)
    assert "l° is well defined" in rep.failed()


def test_literal_lift_rule_is_fine_for_modules():
    assert check_free_differential_object(operad_by_name("abullet"), ["m"], 3, literal=True).ok


def test_p0_module_differential_objects():
    assert diff_object_from_p0_module(operad_by_name("com"), ["v", "w"]).ok
    assert diff_object_from_p0_module(operad_by_name("abullet"), ["m"]).ok
    with pytest.raises(ValueError):
        diff_object_from_p0_module(operad_by_name("lie"), ["v"])
