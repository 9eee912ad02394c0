"""P-polynomial maps and their differential combinator.

A map n → m is an m-tuple of elements of S(P, R^n), with the n source
variables named explicitly.  Composition substitutes components through
``functor_map`` followed by ``monad_mult``.  ``D[f]`` doubles the source:
variables ``x`` keep their names and the tangent copies get a ``d`` prefix
(``d'`` when ``d`` would clash, so second derivatives read x, dx, d'x, d'dx).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

from .core import LinComb, lsum
from .free import diff_transform, eta, functor_map, monad_mult, random_free_element
from .operads import Operad, TruncationError
from .report import Report

DEFAULT_ARITY_CAP = 10


@dataclass(frozen=True)
class PPolyMap:
    source: Tuple[str, ...]
    components: Tuple[LinComb, ...]

    def __post_init__(self):
        names = set(self.source)
        if len(names) != len(self.source):
            raise ValueError("source variable names must be distinct")
        for comp in self.components:
            for t in comp:
                bad = [x for x in t.word if x not in names]
                if bad:
                    raise ValueError(f"component uses undeclared variables {bad}")

    @property
    def n(self) -> int:
        return len(self.source)

    @property
    def m(self) -> int:
        return len(self.components)

    def max_arity(self) -> int:
        return max((t.arity for c in self.components for t in c), default=0)


def identity_map(P: Operad, names: Sequence[str]) -> PPolyMap:
    return PPolyMap(tuple(names), tuple(eta(P, x) for x in names))


def projection_map(P: Operad, names: Sequence[str], picks: Sequence[int]) -> PPolyMap:
    return PPolyMap(tuple(names), tuple(eta(P, names[i]) for i in picks))


def pairing(*maps: PPolyMap) -> PPolyMap:
    src = maps[0].source
    if any(f.source != src for f in maps):
        raise ValueError("pairing needs a common source")
    return PPolyMap(src, tuple(c for f in maps for c in f.components))


def ppoly_add(f: PPolyMap, g: PPolyMap) -> PPolyMap:
    if f.source != g.source or f.m != g.m:
        raise ValueError("sum needs maps of the same shape")
    return PPolyMap(f.source, tuple(a + b for a, b in zip(f.components, g.components)))


def ppoly_compose(P: Operad, g: PPolyMap, f: PPolyMap, cap: int = DEFAULT_ARITY_CAP) -> PPolyMap:
    """Kleisli composite ``g ∘ f``; g's i-th variable receives f's i-th component."""
    if g.n != f.m:
        raise ValueError(f"cannot compose: g takes {g.n} inputs, f gives {f.m}")
    bound = max((sum(_comp_arity(f, g.source.index(x)) for x in t.word)
                 for c in g.components for t in c), default=0)
    if bound > cap:
        raise TruncationError(f"composite arity up to {bound} exceeds the cap {cap}")
    subst = {x: f.components[i] for i, x in enumerate(g.source)}
    comps = tuple(monad_mult(P, functor_map(P, lambda x: subst[x], c)) for c in g.components)
    return PPolyMap(f.source, comps)


def _comp_arity(f: PPolyMap, i: int) -> int:
    return max((t.arity for t in f.components[i]), default=0)


def tangent_names(names: Sequence[str]) -> Tuple[str, ...]:
    used = set(names)
    prefix = "d"
    while any(prefix + x in used for x in names):
        prefix += "'"
    return tuple(prefix + x for x in names)


def ppoly_diff(P: Operad, f: PPolyMap,
               partial: Callable[[Operad, LinComb], LinComb] = diff_transform) -> PPolyMap:
    dnames = tangent_names(f.source)
    ren = {x: dx for x, dx in zip(f.source, dnames)}
    flat = lambda a: LinComb.single(a.x if a.k == 0 else ren[a.x])
    comps = tuple(functor_map(P, flat, partial(P, c)) for c in f.components)
    return PPolyMap(f.source + dnames, comps)


def random_ppoly(P: Operad, names: Sequence[str], m: int, rng: random.Random,
                 max_arity: int = 2) -> PPolyMap:
    comps = tuple(random_free_element(P, list(names), rng, max_arity=max_arity) for _ in range(m))
    return PPolyMap(tuple(names), comps)


def check_cdc_properties(P: Operad, trials: int = 100, seed: int = 0,
                         partial: Callable[[Operad, LinComb], LinComb] = diff_transform) -> Report:
    """Derived differential-category identities on random P-polynomial maps."""
    rng = random.Random(seed)
    rep = Report("check-cdc", operad=P.name, seed=seed, bounds={"trials": trials, "max_arity": 2})
    D = lambda f: ppoly_diff(P, f, partial)
    comp = lambda g, f: ppoly_compose(P, g, f)
    for _ in range(trials):
        n, m, k = rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 2)
        xs = ("x", "y")[:n]
        ys = ("u", "v")[:m]
        f = random_ppoly(P, xs, m, rng)
        g = random_ppoly(P, ys, k, rng)
        h = random_ppoly(P, ("p", "q")[:k], rng.randint(1, 2), rng, max_arity=1)

        Df = D(f)
        lifted = PPolyMap(Df.source, f.components + Df.components)
        lhs = D(comp(g, f))
        rhs = comp(D(g), lifted)
        rep.record("chain-rule", lhs == rhs, (f, g), "chain-rule")

        rep.record("identity-law", comp(f, identity_map(P, xs)) == f
                   and comp(identity_map(P, ys), f) == f, f, "category")
        rep.record("associativity", comp(h, comp(g, f)) == comp(comp(h, g), f), (f, g, h), "category")

        fg = pairing(f, identity_map(P, xs))
        first = projection_map(P, ys + tuple(f"z{i}" for i in range(n)), range(m))
        rep.record("product-projection", comp(first, fg) == f, f, "products")

        # additivity in the tangent slot: D[f](x, a+b) = D[f](x,a) + D[f](x,b)
        a_names = tuple("a" + x for x in xs)
        b_names = tuple("b" + x for x in xs)
        src = xs + a_names + b_names
        both = PPolyMap(src, tuple(eta(P, x) for x in xs)
                        + tuple(eta(P, a) + eta(P, b) for a, b in zip(a_names, b_names)))
        only_a = projection_map(P, src, list(range(n)) + list(range(n, 2 * n)))
        only_b = projection_map(P, src, list(range(n)) + list(range(2 * n, 3 * n)))
        rep.record("tangent-additivity",
                   comp(Df, both) == ppoly_add(comp(Df, only_a), comp(Df, only_b)), f, "DC.2")

        # second derivative: symmetry under the middle swap and the lift identity
        DDf = D(Df)
        swap = projection_map(P, DDf.source, [i for blk in (range(n), range(2 * n, 3 * n),
                                                            range(n, 2 * n), range(3 * n, 4 * n)) for i in blk])
        rep.record("second-derivative-symmetry", comp(DDf, swap) == DDf, f, "DC.6")
        zero = LinComb.zero()
        lift = PPolyMap(Df.source, tuple(eta(P, x) for x in xs) + (zero,) * (2 * n)
                        + tuple(eta(P, d) for d in Df.source[n:]))
        rep.record("lift-identity", comp(DDf, lift) == Df, f, "DC.5")

        # a map induced by a linear map differentiates to itself on the tangent slot
        lin = PPolyMap(xs, tuple(lsum(eta(P, x).scale(rng.randint(-3, 3)) for x in xs) for _ in range(m)))
        Dlin = D(lin)
        tangent_only = PPolyMap(Dlin.source, tuple(
            functor_map(P, lambda x, ren=dict(zip(xs, Dlin.source[n:])): LinComb.single(ren[x]), c)
            for c in lin.components))
        rep.record("linear-maps", Dlin == tangent_only, lin, "DC.3")
    return rep
