"""One test per acceptance criterion; each prints a ``criterion N: pass|fail`` line."""

import itertools
import random
import subprocess
import sys
import time

from operadiff import adjoint as adj
from operadiff.algebra import (check_differential_object_alg, check_tangent_equations, derivation_bracket,
                               derivation_from_vector_field, derivation_space, is_derivation,
                               vector_field_from_derivation)
from operadiff.axioms import DEFAULT_SEED, check_dc_axioms, check_lambda_axioms, check_monad_laws, check_naturality
from operadiff.catalog import (abelian_lie, borel_lie, dual_module, dual_numbers, random_morphisms,
                               trivial_module, truncated_poly, upper_triangular)
from operadiff.free import Inj, diff_transform, partial_from_lambda, random_free_element
from operadiff.operads import operad_by_name
from operadiff.parsing import atom_name, parse_expression, render_element
from operadiff.ppoly import PPolyMap, check_cdc_properties, ppoly_compose, ppoly_diff
from oracles import (ass_pair_cell_dim, com_pair_cell_dim, lie_pair_cell_dim, lyndon_words,
                     random_polynomial_text, sympy_of_com_element, sympy_total_derivative,
                     truncated_poly_der_dim, truncated_poly_sym_dims, witt_dim)
from test_algebra import _mutants

OPERADS = [operad_by_name(n) for n in ("com", "ass", "lie", "abullet")]
TANGENT_CASES = [dual_numbers(), truncated_poly(3), upper_triangular(), borel_lie()]


def verdict(n: int, ok: bool, detail: str = "") -> None:
    print(f"criterion {n}: {'pass' if ok else 'fail'}" + (f" ({detail})" if detail else ""))
    assert ok, detail


def test_criterion_01_dc_suite():
    t = time.perf_counter()
    reps = [check_dc_axioms(P, 4, 200, seed=DEFAULT_SEED) for P in OPERADS]
    dt = time.perf_counter() - t
    failed = [f"{r.operad}:{c}" for r in reps for c in r.failed()]
    names = {c.name for r in reps for c in r.checks}
    verdict(1, not failed and dt < 60 and len(names) == 7, f"{dt:.1f}s, failed={failed}")


def test_criterion_02_lambda_suite():
    reps = [check_lambda_axioms(P, 4, 200, seed=DEFAULT_SEED) for P in OPERADS]
    failed = [f"{r.operad}:{c}" for r in reps for c in r.failed()]
    rng = random.Random(DEFAULT_SEED)
    mismatch = 0
    for P in OPERADS:
        lo = 1 if P.name != "com" and P.name != "ass" else 0
        for _ in range(200):
            el = random_free_element(P, ("x", "y", "z"), rng, 4, 4, lo)
            mismatch += partial_from_lambda(P, el) != diff_transform(P, el)
    verdict(2, not failed and mismatch == 0, f"failed={failed}, mismatches={mismatch}")


def test_criterion_03_monad_laws_and_naturality():
    t = time.perf_counter()
    ok = all(check_monad_laws(P, 4, 50).ok for P in OPERADS)
    per = 25
    ok = ok and all(check_naturality(P, maps=per, arity_bound=4, trials=5).ok for P in OPERADS)
    dt = time.perf_counter() - t
    verdict(3, ok and dt < 30, f"{dt:.1f}s for {per * len(OPERADS)} maps")


def test_criterion_04_sympy_oracle():
    rng = random.Random(DEFAULT_SEED)
    com = OPERADS[0]
    bad = []
    for i in range(100):
        variables = ["x", "y", "z"][: 1 + i % 3]
        text = random_polynomial_text(rng, variables, max_degree=5)
        ours = diff_transform(com, parse_expression(com, text, variables))
        if sympy_of_com_element(ours, atom_name) != sympy_total_derivative(text, variables):
            bad.append(text)
    verdict(4, not bad, f"mismatches={bad[:3]}")


def test_criterion_05_tangent_equations_and_mutations():
    ok = True
    notes = []
    for A in TANGENT_CASES:
        morphs = random_morphisms(A, 8, random.Random(5))
        if not check_tangent_equations(A, morphisms=morphs).ok:
            ok = False
            notes.append(f"{A.name} fails")
        for name, mutant in _mutants().items():
            rep = check_tangent_equations(A, overrides={name: mutant})
            caught = not rep.ok and all(c.counterexample for c in rep.checks if not c.ok)
            if not caught:
                ok = False
                notes.append(f"{A.name}: mutation of {name} missed")
    verdict(5, ok, "; ".join(notes))


def test_criterion_06_derivations():
    dims = [len(derivation_space(truncated_poly(n))) for n in (2, 3)]
    ok = dims == [1, 2] == [truncated_poly_der_dim(2), truncated_poly_der_dim(3)]
    for A in TANGENT_CASES + [abelian_lie(2), dual_module(), trivial_module()]:
        ders = derivation_space(A)
        ok = ok and all(is_derivation(A, D.map)[0] for D in ders)
        for D1, D2 in itertools.product(ders, repeat=2):
            ok = ok and is_derivation(A, derivation_bracket(D1, D2).map)[0]
        br = derivation_bracket
        for D1, D2, D3 in itertools.product(ders, repeat=3):
            total = br(D1, br(D2, D3)).map + br(D2, br(D3, D1)).map + br(D3, br(D1, D2)).map
            ok = ok and all(not col for col in total.columns.values())
    verdict(6, ok, f"dims={dims}")


def test_criterion_07_vector_fields():
    ok = True
    for A in TANGENT_CASES + [abelian_lie(2), dual_module(), trivial_module()]:
        for D in derivation_space(A):
            v = vector_field_from_derivation(D)
            ok = ok and derivation_from_vector_field(v) == D
            ok = ok and vector_field_from_derivation(derivation_from_vector_field(v)) == v
    verdict(7, ok)


def test_criterion_08_tau_and_triangles():
    cases = [("com", ["x"], 4, 4, com_pair_cell_dim), ("com", ["x", "y"], 4, 4, com_pair_cell_dim),
             ("ass", ["x"], 4, 4, ass_pair_cell_dim), ("ass", ["x", "y"], 4, 4, ass_pair_cell_dim),
             ("lie", ["x", "y"], 3, 3, lie_pair_cell_dim)]
    ok = True
    ncells = 0
    for name, atoms, W, D, oracle in cases:
        P = operad_by_name(name)
        _, cells = adj.tau_free_iso(P, atoms, W, D)
        for c in cells:
            ncells += 1
            ok = ok and c.iso and c.target_dim == oracle(len(atoms), *c.key)
        ok = ok and adj.check_free_adjunction(P, atoms, min(W, 3), 1).ok
    # the Witt formula behind the Lie oracle agrees with a direct Lyndon count
    for n in range(1, 7):
        words = lyndon_words("ab", n)
        for a in range(n + 1):
            ok = ok and witt_dim((a, n - a)) == sum(w.count("a") == a for w in words)
    verdict(8, ok, f"{ncells} cells")


def test_criterion_09_closed_form_agreement():
    ok = True
    for M in (dual_module(), trivial_module()):
        pres = adj.adjoint_bundle(M, 3, 2).presentation
        ok = ok and [pres.cell((k,)).dim for k in range(3)] == adj.abullet_closed_dims(M, 2)
    found = {}
    for n in (2, 3):
        A = truncated_poly(n)
        pres = adj.adjoint_bundle(A, 4, 2).presentation
        dims = [pres.cell((k,)).dim for k in range(3)]
        found[n] = dims
        ok = ok and dims == truncated_poly_sym_dims(n, 2) == adj.com_closed_dims(A, 2)
        ok = ok and all(pres.stable(k) for k in range(3))
    verdict(9, ok, f"Com dims {found}")


def test_criterion_10_differential_objects():
    cases = [(dual_numbers(), False), (truncated_poly(3), False), (upper_triangular(), False),
             (borel_lie(), False), (abelian_lie(2), True), (dual_module(), True), (trivial_module(), True)]
    ok = True
    for A, expected in cases:
        res, info = check_differential_object_alg(A)
        ok = ok and info["agree"] and res == expected
    for name in ("com", "ass", "lie"):
        ok = ok and adj.check_free_differential_object(operad_by_name(name), ["x", "y"], 3).ok
    verdict(10, ok)


def test_criterion_11_cdc():
    ok = all(check_cdc_properties(P, 100, seed=DEFAULT_SEED).ok for P in OPERADS)
    com = OPERADS[0]
    f = PPolyMap(("x",), (parse_expression(com, "x^2"),))
    g = PPolyMap(("y",), (parse_expression(com, "y^2"),))
    lhs = ppoly_diff(com, ppoly_compose(com, g, f))
    Df = ppoly_diff(com, f)
    rhs = ppoly_compose(com, ppoly_diff(com, g), PPolyMap(Df.source, f.components + Df.components))
    target = parse_expression(com, "4*x^3*dx", ["x", "dx"])
    ok = ok and lhs.components == rhs.components == (target,)
    verdict(11, ok, render_element(com, lhs.components[0]))


DOCUMENTED = [
    (["differentiate", "--operad", "com", "x^2"], "2*x*dx\n"),
    (["check-dc", "--operad", "lie", "--arity", "4", "--trials", "200", "--seed", "7"], None),
    (["derivations", "--algebra", "dualnumbers.toml"], "dim Der = 1; basis: D(x)=x\n"),
]


def test_criterion_12_cli_and_round_trip(tmp_path):
    ok = True
    for argv, expected in DOCUMENTED:
        proc = subprocess.run([sys.executable, "-m", "operadiff.cli", *argv], capture_output=True,
                              text=True, cwd=tmp_path)
        ok = ok and proc.returncode == 0
        if expected is None:
            lines = proc.stdout.splitlines()
            ok = ok and lines[-1] == "PASS: 7/7 checks passed" and all("[PASS]" in l for l in lines[1:-1])
        else:
            ok = ok and proc.stdout == expected
    rng = random.Random(DEFAULT_SEED)
    atoms = {0: ("x", "y", "z"), 1: (Inj(0, "x"), Inj(1, "x"), Inj(2, "y"))}
    misses = 0
    for P in OPERADS:
        lo = 0 if P.name in ("com", "ass") else 1
        for i in range(200):
            layers = i % 2
            use = atoms[layers] if P.name != "abullet" else (("m",) if layers == 0 else (Inj(0, "m"), Inj(1, "m")))
            el = random_free_element(P, use, rng, 4, 4, lo)
            misses += parse_expression(P, render_element(P, el), layers=layers) != el
    verdict(12, ok and misses == 0, f"round-trip misses={misses}")
