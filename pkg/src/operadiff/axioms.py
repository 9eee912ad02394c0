"""Verification suites for the monad laws, ∂ (DC axioms) and λ.

Each suite instantiates the axioms as exact equalities of free-algebra
elements on every basis term up to an arity bound plus seeded random
combinations.  The ∂ used by the DC suite can be swapped out, which is how
the mutation tests feed in deliberately broken transformations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Hashable, List, Sequence, Tuple

from .core import LinComb, lsum
from .free import (FreeTerm, Inj, basis_terms, component_map, counit_exists, diff_transform,
                   dist_law, dlinear_counit, eta, functor_map, monad_mult, monad_unit,
                   partial_from_lambda, random_free_element, random_linear_map)
from .operads import Operad
from .report import Report

DEFAULT_SEED = 20240607
DEFAULT_ATOMS = ("x", "y")


@dataclass(frozen=True)
class SuiteConfig:
    arity_bound: int = 4
    trials: int = 200
    seed: int = DEFAULT_SEED
    atoms: Tuple[Hashable, ...] = DEFAULT_ATOMS
    inner_arity: int = 2
    outer_arity: int = 2


def _pair_map(f):
    """f × f on a product of two copies."""
    return lambda a: f(a.x).map_keys(lambda y: Inj(a.k, y))


def _lift_pair(pair: Tuple[LinComb, LinComb]) -> LinComb:
    """An element of S(V)×S(V) written over the atoms Inj(k, term)."""
    a, b = pair
    return a.map_keys(lambda t: Inj(0, t)) + b.map_keys(lambda t: Inj(1, t))


def sample_elements(P: Operad, atoms: Sequence[Hashable], bound: int, trials: int,
                    rng: random.Random, min_arity: int = 0) -> List[LinComb]:
    els = [LinComb.single(t) for t in basis_terms(P, atoms, bound, min_arity)]
    for _ in range(trials):
        els.append(random_free_element(P, atoms, rng, max_arity=bound, min_arity=min_arity))
    return els


def sample_nested(P: Operad, atoms: Sequence[Hashable], cfg: SuiteConfig, rng: random.Random,
                  trials: int) -> List[LinComb]:
    """Elements of S(S(V)): basis terms over a pool of small inner terms, plus random ones."""
    pool = basis_terms(P, atoms, cfg.inner_arity)
    out = [LinComb.single(t) for t in basis_terms(P, pool, cfg.outer_arity)]
    for _ in range(trials):
        inner = [t for t in random_free_element(P, atoms, rng, max_arity=cfg.inner_arity)]
        inner = inner or pool[:1]
        out.append(random_free_element(P, inner, rng, max_arity=cfg.outer_arity + 1))
    return out


# ---------------------------------------------------------------------------
# DC axioms

def check_dc_axioms(P: Operad, arity_bound: int = 4, trials: int = 200, seed: int = DEFAULT_SEED,
                    partial: Callable[[Operad, LinComb], LinComb] = diff_transform,
                    atoms: Sequence[Hashable] = DEFAULT_ATOMS) -> Report:
    cfg = SuiteConfig(arity_bound, trials, seed, tuple(atoms))
    rng = random.Random(seed)
    rep = Report("check-dc", operad=P.name, seed=seed,
                 bounds={"arity": arity_bound, "trials": trials})
    d = lambda el: partial(P, el)

    # ∂ on V×V: apply the (possibly mutated) transformation to the pair module
    p_dc2_a = component_map([[1, 0], [0, 1], [0, 1]])
    p_dc2_b = component_map([[1, 0], [0, 1], [0, 0]])
    p_dc2_c = component_map([[1, 0], [0, 0], [0, 1]])
    p14 = component_map([[1, 0, 0, 0], [0, 0, 0, 1]], nested_in=True)
    p1324 = component_map([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
                          nested_in=True, nested_out=True)
    pneg = component_map([[1, 0], [0, -1]])

    for el in sample_elements(P, cfg.atoms, arity_bound, trials, rng):
        de = d(el)
        rep.record("DC.1", not functor_map(P, _first_only, de), el, "DC.1")
        lhs = functor_map(P, p_dc2_a, de)
        rhs = functor_map(P, p_dc2_b, de) + functor_map(P, p_dc2_c, de)
        rep.record("DC.2", lhs == rhs, el, "DC.2")
        dde = d(de)
        rep.record("DC.5", functor_map(P, p14, dde) == de, el, "DC.5")
        rep.record("DC.6", functor_map(P, p1324, dde) == dde, el, "DC.6")
        rep.record("DC.N", functor_map(P, pneg, de) == -de, el, "DC.N")

    for x in cfg.atoms:
        lhs = d(eta(P, x))
        rhs = eta(P, Inj(1, x))
        rep.record("DC.3", lhs == rhs, x, "DC.3")
    for _ in range(min(trials, 50)):
        v = LinComb((x, rng.randint(-3, 3)) for x in cfg.atoms)
        lhs = d(monad_unit(P, v))
        rhs = monad_unit(P, v.map_keys(lambda x: Inj(1, x)))
        rep.record("DC.3", lhs == rhs, v, "DC.3")

    # DC.4: ∂ ∘ γ = γ_{V×V} ∘ S(S(⟨1,0⟩)∘π₁ + ∂∘π₂) ∘ ∂_{S(V)}
    def h(a):
        t = LinComb.single(a.x)
        if a.k == 0:
            return functor_map(P, lambda x: LinComb.single(Inj(0, x)), t)
        return d(t)

    for X in sample_nested(P, cfg.atoms, cfg, rng, trials):
        lhs = d(monad_mult(P, X))
        rhs = monad_mult(P, functor_map(P, h, d(X)))
        rep.record("DC.4", lhs == rhs, X, "DC.4")
    return rep


def _first_only(a):
    return LinComb.single(a.x) if a.k == 0 else LinComb.zero()


# ---------------------------------------------------------------------------
# λ / tangent-monad axioms

def _pair_atoms(atoms, k=2):
    return [Inj(i, x) for i in range(k) for x in atoms]


def _nested_atoms(atoms):
    return [Inj(o, Inj(i, x)) for o in range(2) for i in range(2) for x in atoms]


def check_lambda_axioms(P: Operad, arity_bound: int = 4, trials: int = 200,
                        seed: int = DEFAULT_SEED, atoms: Sequence[Hashable] = DEFAULT_ATOMS,
                        lam: Callable[[Operad, LinComb], Tuple[LinComb, LinComb]] = dist_law) -> Report:
    cfg = SuiteConfig(arity_bound, trials, seed, tuple(atoms))
    rng = random.Random(seed + 1)
    rep = Report("check-lambda", operad=P.name, seed=seed,
                 bounds={"arity": arity_bound, "trials": trials})
    L = lambda el: lam(P, el)
    pair = _pair_atoms(cfg.atoms)
    triple = _pair_atoms(cfg.atoms, 3)
    quad = _nested_atoms(cfg.atoms)

    # λ ∘ η = η × η
    for a in pair:
        lhs = L(eta(P, a))
        rhs = (eta(P, a.x), LinComb.zero()) if a.k == 0 else (LinComb.zero(), eta(P, a.x))
        rep.record("lambda-unit", lhs == rhs, a, "tangent-monad-unit")

    p1 = _first_only
    z = lambda x: LinComb.single(Inj(0, x))
    n_map = component_map([[1, 0], [0, -1]])
    s_map = component_map([[1, 0, 0], [0, 1, 1]])
    q = [component_map([[1, 0, 0], [0, 1, 0]]), component_map([[1, 0, 0], [0, 0, 1]])]
    l_map = lambda a: LinComb.single(Inj(0, Inj(0, a.x)) if a.k == 0 else Inj(1, Inj(1, a.x)))
    c_map = lambda a: LinComb.single(Inj(a.x.k, Inj(a.k, a.x.x)))

    def lam_lam(el):
        e0, e1 = L(el)
        return L(e0) + L(e1)

    for el in sample_elements(P, pair, arity_bound, trials, rng):
        a, b = L(el)
        rep.record("p-lambda", a == functor_map(P, p1, el), el, "p-lambda")
        na, nb = L(functor_map(P, n_map, el))
        rep.record("n-lambda", (na, nb) == (a, -b), el, "n-lambda")
        lhs = (a, LinComb.zero(), LinComb.zero(), b)
        rhs = lam_lam(functor_map(P, l_map, el))
        rep.record("l-lambda", lhs == rhs, el, "l-lambda")

    for el in sample_elements(P, cfg.atoms, arity_bound, trials // 2, rng):
        rep.record("z-lambda", L(functor_map(P, z, el)) == (el, LinComb.zero()), el, "z-lambda")

    for el in sample_elements(P, triple, min(arity_bound, 3), trials, rng):
        lhs = L(functor_map(P, s_map, el))
        b1 = L(functor_map(P, q[0], el))[1]
        b2 = L(functor_map(P, q[1], el))[1]
        rhs = (functor_map(P, p1, el), b1 + b2)
        rep.record("s-lambda", lhs == rhs, el, "s-lambda")

    for el in sample_elements(P, quad, min(arity_bound, 3), trials, rng):
        a, b, c, dd = lam_lam(el)
        lhs = (a, c, b, dd)
        rhs = lam_lam(functor_map(P, c_map, el))
        rep.record("c-lambda", lhs == rhs, el, "c-lambda")

    # λ ∘ γ = (γ × γ) ∘ λ_{S(V)} ∘ S(λ)
    for X in sample_nested(P, pair, SuiteConfig(inner_arity=2, outer_arity=2), rng, trials):
        lhs = L(monad_mult(P, X))
        lifted = functor_map(P, lambda t: _lift_pair(L(LinComb.single(t))), X)
        u, v = L(lifted)
        rhs = (monad_mult(P, u), monad_mult(P, v))
        rep.record("lambda-mult", lhs == rhs, X, "tangent-monad-mult")

    # round trip with ∂
    for el in sample_elements(P, cfg.atoms, arity_bound, trials, rng):
        rep.record("partial-from-lambda", partial_from_lambda(P, el) == diff_transform(P, el), el,
                   "lambda-partial-round-trip")
    return rep


# ---------------------------------------------------------------------------
# monad laws, naturality, counit

def check_monad_laws(P: Operad, arity_bound: int = 4, trials: int = 200, seed: int = DEFAULT_SEED,
                     atoms: Sequence[Hashable] = DEFAULT_ATOMS) -> Report:
    rng = random.Random(seed + 2)
    rep = Report("check-monad", operad=P.name, seed=seed, bounds={"arity": arity_bound, "trials": trials})
    for el in sample_elements(P, atoms, arity_bound, trials, rng):
        rep.record("mult-after-S-unit", monad_mult(P, functor_map(P, lambda x: eta(P, x), el)) == el,
                   el, "monad-unit-right")
        wrapped = lsum(eta(P, t).scale(c) for t, c in el.items())
        rep.record("mult-after-unit", monad_mult(P, wrapped) == el, el, "monad-unit-left")
    for _ in range(trials // 4 + 1):
        # elements of S(S(S(V))) assembled from small random layers
        lvl1 = [t for t in random_free_element(P, atoms, rng, max_arity=2)] or basis_terms(P, atoms, 1)
        lvl2 = [t for t in random_free_element(P, lvl1, rng, max_arity=2)] or [FreeTerm(next(iter(P.unit)), (lvl1[0],))]
        X = random_free_element(P, lvl2, rng, max_arity=2)
        lhs = monad_mult(P, functor_map(P, lambda t: monad_mult(P, LinComb.single(t)), X))
        rhs = monad_mult(P, monad_mult(P, X))
        rep.record("mult-associative", lhs == rhs, X, "monad-assoc")
    return rep


def check_naturality(P: Operad, maps: int = 20, arity_bound: int = 3, trials: int = 20,
                     seed: int = DEFAULT_SEED, atoms: Sequence[Hashable] = DEFAULT_ATOMS,
                     targets: Sequence[Hashable] = ("u", "v", "w")) -> Report:
    rng = random.Random(seed + 3)
    rep = Report("check-naturality", operad=P.name, seed=seed, bounds={"maps": maps})
    for _ in range(maps):
        table = random_linear_map(atoms, targets, rng)
        f = lambda x, table=table: table[x]
        ff = _pair_map(f)
        for el in sample_elements(P, atoms, arity_bound, trials, rng):
            lhs = diff_transform(P, functor_map(P, f, el))
            rhs = functor_map(P, ff, diff_transform(P, el))
            rep.record("partial-natural", lhs == rhs, el, "partial-naturality")
        for el in sample_elements(P, _pair_atoms(atoms), arity_bound, trials, rng):
            lhs = dist_law(P, functor_map(P, ff, el))
            a, b = dist_law(P, el)
            rhs = (functor_map(P, f, a), functor_map(P, f, b))
            rep.record("lambda-natural", lhs == rhs, el, "lambda-naturality")
        nested = sample_nested(P, atoms, SuiteConfig(inner_arity=2, outer_arity=2), rng, trials)
        for X in nested[-trials:]:
            lhs = monad_mult(P, functor_map(P, lambda t: functor_map(P, f, LinComb.single(t)), X))
            rhs = functor_map(P, f, monad_mult(P, X))
            rep.record("mult-natural", lhs == rhs, X, "monad-naturality")
    return rep


def check_counit(P: Operad, arity_bound: int = 4, trials: int = 100, seed: int = DEFAULT_SEED,
                 atoms: Sequence[Hashable] = DEFAULT_ATOMS) -> Report:
    rng = random.Random(seed + 4)
    rep = Report("check-counit", operad=P.name, seed=seed, bounds={"arity": arity_bound})
    ok, wit = counit_exists(P)
    if not ok:
        rep.record("counit-exists", False, wit, "counit")
        return rep
    for x in atoms:
        rep.record("DU.1", dlinear_counit(P, eta(P, x)) == LinComb.single(x), x, "DU.1")
    p2 = lambda a: LinComb.single(a.x) if a.k == 1 else LinComb.zero()
    for el in sample_elements(P, atoms, arity_bound, trials, rng):
        lhs = monad_unit(P, dlinear_counit(P, el))
        rhs = functor_map(P, p2, diff_transform(P, el))
        rep.record("DU.2", lhs == rhs, el, "DU.2")
    return rep
