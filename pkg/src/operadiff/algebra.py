"""Finite-dimensional P-algebras, their tangent bundles, and derivations.

An algebra is given on generating operations only:

* Com / Ass: ``tables["unit"][()]`` and ``tables["mul"][(a, b)]``
* Lie: ``tables["bracket"][(a, b)]``
* A•: ``tables["act"][(r, m)]`` for r in the basis of the ring
* table operads: ``tables[sym][inputs]`` for every basis symbol

Higher operations are evaluated through operad composition (left folds of
the binary operation, permuted for Ass and right-normed for Lie).  Missing
table entries are zero.  The tangent bundle lives on the carrier with
atoms ``Inj(0, b)`` (point) and ``Inj(1, b)`` (tangent).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .core import BasedModule, LinComb, LinearMap, lsum, solve_kernel
from .free import Inj, basis_terms, canonical_term, diff_transform, dist_law, functor_map
from .operads import (AssOperad, ComOperad, LieOperad, Operad, PointedOperad, TableOperad,
                      _perm_sample, complete_compose, sigma_act)
from .report import Report

Atom = Hashable


@dataclass(eq=False)
class PAlgebra:
    operad: Operad
    carrier: BasedModule
    tables: Mapping[str, Mapping[Tuple, LinComb]]
    name: str = "A"
    _cache: Dict = field(default_factory=dict, repr=False)

    @property
    def basis(self) -> Tuple[Atom, ...]:
        return self.carrier.basis

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def table(self, op: str, inputs: Tuple) -> LinComb:
        return self.tables.get(op, {}).get(tuple(inputs), LinComb.zero())

    def generators(self) -> List[Tuple[str, int]]:
        """Generating operations as (table name, arity)."""
        P = self.operad
        if isinstance(P, (ComOperad, AssOperad)):
            return [("unit", 0), ("mul", 2)]
        if isinstance(P, LieOperad):
            return [("bracket", 2)]
        if isinstance(P, PointedOperad):
            return [(r, 1) for r in P.A.basis]
        if isinstance(P, TableOperad):
            return [(s, n) for n in range(P.max_arity + 1) for s in P.basis(n)]
        raise TypeError(f"unsupported operad {P!r}")

    def gen_apply(self, op: str, args: Sequence[LinComb]) -> LinComb:
        """Value of a generating operation on arbitrary vectors (multilinear)."""
        if isinstance(self.operad, PointedOperad):
            return _multilinear(lambda b: self.table("act", (op,) + b), args)
        return _multilinear(lambda b: self.table(op, b), args)

    def __repr__(self):
        return f"<PAlgebra {self.name} over {self.operad.name}, dim {self.dim}>"


def _multilinear(f: Callable[[Tuple], LinComb], args: Sequence[LinComb]) -> LinComb:
    if any(not a for a in args):
        return LinComb.zero()
    out = []
    for combo in itertools.product(*(list(a.items()) for a in args)):
        c = 1
        for _, ca in combo:
            c = c * ca
        out.append(f(tuple(b for b, _ in combo)).scale(c))
    return lsum(out)


# ---------------------------------------------------------------------------
# evaluation

def eval_basis(A: PAlgebra, op: Hashable, args: Tuple[Atom, ...]) -> LinComb:
    """Value of a basis operation on basis elements."""
    key = (op, args)
    hit = A._cache.get(key)
    if hit is not None:
        return hit
    P = A.operad
    vecs = [LinComb.single(a) for a in args]
    if isinstance(P, ComOperad):
        out = _fold(A, "mul", vecs)
    elif isinstance(P, AssOperad):
        out = _fold(A, "mul", [vecs[j - 1] for j in op.images])
    elif isinstance(P, LieOperad):
        out = vecs[op[-1] - 1]
        for l in reversed(op[:-1]):
            out = A.gen_apply("bracket", [vecs[l - 1], out])
    elif isinstance(P, PointedOperad):
        out = A.table("act", (op, args[0]))
    elif isinstance(P, TableOperad):
        out = A.table(op, args)
    else:
        raise TypeError(f"unsupported operad {P!r}")
    A._cache[key] = out
    return out


def _fold(A: PAlgebra, op: str, vecs: List[LinComb]) -> LinComb:
    if not vecs:
        return A.table("unit", ())
    acc = vecs[0]
    for v in vecs[1:]:
        acc = A.gen_apply(op, [acc, v])
    return acc


def evaluate(A: PAlgebra, mu: LinComb, args: Sequence[LinComb]) -> LinComb:
    """μ(a_1, ..., a_n) for an operad element μ and carrier vectors."""
    out = []
    for s, c in mu.items():
        if A.operad.arity(s) != len(args):
            raise ValueError("wrong number of arguments")
        out.append(_multilinear(lambda b, s=s: eval_basis(A, s, b), args).scale(c))
    return lsum(out)


def theta(A: PAlgebra, el: LinComb) -> LinComb:
    """The structure map S(P, A) → A on a free-algebra element over A's basis."""
    return lsum(eval_basis(A, t.op, t.word).scale(c) for t, c in el.items())


# ---------------------------------------------------------------------------
# axioms and morphisms

def _compositions(total_max: int, k: int):
    """Arity tuples (n_1..n_k) with sum at most total_max."""
    if k == 0:
        yield ()
        return
    for n in range(total_max + 1):
        for rest in _compositions(total_max - n, k - 1):
            yield (n,) + rest


def check_algebra_axioms(A: PAlgebra, arity_bound: int = 3, max_instances: int = 20000,
                         seed: int = 0) -> Report:
    """θ∘η = id, θ∘S(θ) = θ∘γ and Σ-invariance on basis tuples up to the bound."""
    P = A.operad
    rng = random.Random(seed)
    rep = Report("check-algebra", operad=P.name, instance=A.name, bounds={"arity": arity_bound})
    for b in A.basis:
        rep.record("unit", evaluate(A, P.unit, [LinComb.single(b)]) == LinComb.single(b), b, "algebra-unit")
    for n in range(arity_bound + 1):
        tuples = _tuples(A.basis, n, max_instances // 10, rng)
        for s in P.basis(n):
            for p in _perm_sample(n):
                moved = sigma_act(P, LinComb.single(s), p)
                for args in tuples:
                    lhs = evaluate(A, moved, [LinComb.single(a) for a in args])
                    rhs = eval_basis(A, s, tuple(args[p(j) - 1] for j in range(1, n + 1)))
                    rep.record("equivariance", lhs == rhs, (s, p.images, args), "algebra-equivariance")
    for k in range(1, arity_bound + 1):
        for arities in _compositions(arity_bound, k):
            for mu in P.basis(k):
                for nus in itertools.product(*(P.basis(n) for n in arities)):
                    comp = complete_compose(P, LinComb.single(mu), [LinComb.single(v) for v in nus])
                    total = sum(arities)
                    for args in _tuples(A.basis, total, max(1, max_instances // 50), rng):
                        parts, pos = [], 0
                        for n in arities:
                            parts.append(args[pos:pos + n])
                            pos += n
                        inner = [eval_basis(A, v, part) for v, part in zip(nus, parts)]
                        lhs = evaluate(A, LinComb.single(mu), inner)
                        rhs = evaluate(A, comp, [LinComb.single(a) for a in args])
                        rep.record("associativity", lhs == rhs, (mu, nus, args), "algebra-assoc")
    return rep


def _tuples(basis: Sequence[Atom], n: int, limit: int, rng: random.Random) -> List[Tuple]:
    total = len(basis) ** n
    if total <= limit:
        return list(itertools.product(basis, repeat=n))
    return [tuple(rng.choice(basis) for _ in range(n)) for _ in range(limit)]


@dataclass(eq=False)
class AlgebraMorphism:
    source: PAlgebra
    target: PAlgebra
    map: LinearMap
    name: str = "f"

    def __call__(self, v: LinComb) -> LinComb:
        return self.map(v)

    def compose(self, inner: "AlgebraMorphism") -> "AlgebraMorphism":
        return AlgebraMorphism(inner.source, self.target, self.map.compose(inner.map),
                               f"{self.name}∘{inner.name}")


def morphism(source: PAlgebra, target: PAlgebra, f: Callable[[Atom], LinComb], name: str = "f") -> AlgebraMorphism:
    return AlgebraMorphism(source, target, LinearMap.from_function(source.carrier, target.carrier, f), name)


def check_morphism(f: AlgebraMorphism, arity_bound: int = 3, max_tuples: int = 3000, seed: int = 0) -> Report:
    """f(μ(a..)) = μ(f a..) on generating operations and on basis operations up to the bound."""
    A, B = f.source, f.target
    rng = random.Random(seed)
    rep = Report("check-morphism", operad=A.operad.name, instance=f.name, bounds={"arity": arity_bound})
    for op, n in A.generators():
        for args in _tuples(A.basis, n, max_tuples, rng):
            vecs = [LinComb.single(a) for a in args]
            lhs = f(A.gen_apply(op, vecs))
            rhs = B.gen_apply(op, [f(v) for v in vecs])
            rep.record("generators", lhs == rhs, (op, args), "morphism")
    for n in range(arity_bound + 1):
        for s in A.operad.basis(n):
            for args in _tuples(A.basis, n, max_tuples // 10, rng):
                lhs = f(eval_basis(A, s, args))
                rhs = evaluate(B, LinComb.single(s), [f(LinComb.single(a)) for a in args])
                rep.record("operations", lhs == rhs, (s, args), "morphism")
    return rep


def is_morphism(f: AlgebraMorphism, arity_bound: int = 3) -> bool:
    return check_morphism(f, arity_bound).ok


# ---------------------------------------------------------------------------
# tangent bundles

def _tangent_tables(A: PAlgebra, k: int) -> Dict[str, Dict[Tuple, LinComb]]:
    """Generating tables of A ⋉ A^k on the carrier of atoms Inj(c, b), c = 0..k."""
    tables: Dict[str, Dict[Tuple, LinComb]] = {}
    atoms = [Inj(c, b) for c in range(k + 1) for b in A.basis]
    pointed = isinstance(A.operad, PointedOperad)
    for op, n in A.generators():
        tab: Dict[Tuple, LinComb] = {}
        for ins in itertools.product(atoms, repeat=n):
            marks = [a.k for a in ins if a.k != 0]
            if len(marks) > 1:
                continue
            val = A.gen_apply(op, [LinComb.single(a.x) for a in ins])
            c = marks[0] if marks else 0
            val = val.map_keys(lambda b, c=c: Inj(c, b))
            if val:
                tab[ins] = val
        if pointed:
            for ins, val in tab.items():
                tables.setdefault("act", {})[(op,) + ins] = val
        else:
            tables[op] = tab
    return tables


def tangent_power(A: PAlgebra, k: int) -> PAlgebra:
    """A ⋉ A^k: point component 0 and k tangent components."""
    carrier = BasedModule(tuple(Inj(c, b) for c in range(k + 1) for b in A.basis), A.carrier.field)
    name = f"T({A.name})" if k == 1 else f"T_{k}({A.name})"
    return PAlgebra(A.operad, carrier, _tangent_tables(A, k), name)


def tangent_bundle(A: PAlgebra) -> PAlgebra:
    cache = A._cache.setdefault("__tangent__", {})
    if "T" not in cache:
        cache["T"] = tangent_power(A, 1)
    return cache["T"]


def lifted_tangent_value(A: PAlgebra, op: Hashable, ins: Tuple[Inj, ...]) -> LinComb:
    """(θ×θ)∘λ applied to the free term (op; ins), as a vector of A⋉A."""
    u, v = dist_law(A.operad, canonical_term(A.operad, op, tuple(ins)))
    return theta(A, u).map_keys(lambda b: Inj(0, b)) + theta(A, v).map_keys(lambda b: Inj(1, b))


def check_tangent_lift(A: PAlgebra, arity_bound: int = 3) -> Report:
    """The semi-direct product structure equals the monad lift (θ×θ)∘λ."""
    TA = tangent_bundle(A)
    rep = Report("check-tangent-lift", operad=A.operad.name, instance=A.name, bounds={"arity": arity_bound})
    rng = random.Random(0)
    for n in range(arity_bound + 1):
        for s in A.operad.basis(n):
            for ins in _tuples(TA.basis, n, 2000, rng):
                rep.record("semidirect-equals-lift", eval_basis(TA, s, ins) == lifted_tangent_value(A, s, ins),
                           (s, ins), "tangent-lift")
    return rep


# the structure maps, as atom functions on carriers

def _p(a):
    return LinComb.single(a.x) if a.k == 0 else LinComb.zero()


def _z(b):
    return LinComb.single(Inj(0, b))


def _s(a):
    return LinComb.single(Inj(min(a.k, 1), a.x))


def _q(j):
    def f(a):
        if a.k == 0:
            return LinComb.single(Inj(0, a.x))
        if a.k == j:
            return LinComb.single(Inj(1, a.x))
        return LinComb.zero()
    return f


def _l(a):
    return LinComb.single(Inj(0, Inj(0, a.x)) if a.k == 0 else Inj(1, Inj(1, a.x)))


def _c(a):
    return LinComb.single(Inj(a.x.k, Inj(a.k, a.x.x)))


def _n(a):
    return LinComb.single(a) if a.k == 0 else LinComb.single(a, -1)


STANDARD_MAPS: Dict[str, Callable] = {"p": _p, "z": _z, "s": _s, "q1": _q(1), "q2": _q(2),
                                      "l": _l, "c": _c, "n": _n}


def T_of(f: Callable[[Atom], LinComb]) -> Callable[[Atom], LinComb]:
    """T(f) = f × f on atoms Inj(k, b)."""
    return lambda a: f(a.x).map_keys(lambda y: Inj(a.k, y))


class TangentStructure:
    """The tangent structure maps on ALG_P, optionally with mutated components."""

    def __init__(self, overrides: Optional[Mapping[str, Callable]] = None):
        self.fns = dict(STANDARD_MAPS)
        if overrides:
            self.fns.update(overrides)

    def _lin(self, dom: PAlgebra, cod: PAlgebra, f) -> LinearMap:
        return LinearMap.from_function(dom.carrier, cod.carrier, f)

    def p(self, A):
        return self._lin(tangent_bundle(A), A, self.fns["p"])

    def z(self, A):
        return self._lin(A, tangent_bundle(A), self.fns["z"])

    def s(self, A):
        return self._lin(tangent_power(A, 2), tangent_bundle(A), self.fns["s"])

    def q(self, A, j):
        return self._lin(tangent_power(A, 2), tangent_bundle(A), self.fns[f"q{j}"])

    def l(self, A):
        TA = tangent_bundle(A)
        return self._lin(TA, tangent_bundle(TA), self.fns["l"])

    def c(self, A):
        TTA = tangent_bundle(tangent_bundle(A))
        return self._lin(TTA, TTA, self.fns["c"])

    def n(self, A):
        TA = tangent_bundle(A)
        return self._lin(TA, TA, self.fns["n"])

    def T(self, f: LinearMap, dom: PAlgebra, cod: PAlgebra) -> LinearMap:
        return LinearMap.from_function(tangent_bundle(dom).carrier, tangent_bundle(cod).carrier, T_of(f.image))


def _pair(f: LinearMap, g: LinearMap, T2: PAlgebra) -> LinearMap:
    """⟨f, g⟩ : X → T_2 A for maps f, g : X → TA over the same base."""
    def img(b):
        out = LinComb((Inj(0, a.x), c) for a, c in f.image(b).items() if a.k == 0)
        out += LinComb((Inj(1, a.x), c) for a, c in f.image(b).items() if a.k == 1)
        return out + LinComb((Inj(2, a.x), c) for a, c in g.image(b).items() if a.k == 1)
    return LinearMap.from_function(f.domain, T2.carrier, img)


def tangent_maps(A: PAlgebra, overrides: Optional[Mapping[str, Callable]] = None) -> Dict[str, AlgebraMorphism]:
    ts = TangentStructure(overrides)
    TA = tangent_bundle(A)
    T2 = tangent_power(A, 2)
    TTA = tangent_bundle(TA)
    return {
        "p": AlgebraMorphism(TA, A, ts.p(A), "p"),
        "z": AlgebraMorphism(A, TA, ts.z(A), "z"),
        "s": AlgebraMorphism(T2, TA, ts.s(A), "s"),
        "q1": AlgebraMorphism(T2, TA, ts.q(A, 1), "q1"),
        "q2": AlgebraMorphism(T2, TA, ts.q(A, 2), "q2"),
        "l": AlgebraMorphism(TA, TTA, ts.l(A), "l"),
        "c": AlgebraMorphism(TTA, TTA, ts.c(A), "c"),
        "n": AlgebraMorphism(TA, TA, ts.n(A), "n"),
    }


def check_tangent_equations(A: PAlgebra, overrides: Optional[Mapping[str, Callable]] = None,
                            morphisms: Sequence[AlgebraMorphism] = (), arity_bound: int = 2) -> Report:
    """The tangent-category equalities as identities of linear maps on finite carriers."""
    ts = TangentStructure(overrides)
    rep = Report("tangent-check", operad=A.operad.name, instance=A.name,
                 bounds={"morphisms": len(morphisms)})
    TA = tangent_bundle(A)
    T2 = tangent_power(A, 2)
    T3 = tangent_power(A, 3)
    TTA = tangent_bundle(TA)
    I = LinearMap.identity
    lin = lambda d, c, f: LinearMap.from_function(d.carrier, c.carrier, f)

    p, z, s, n = ts.p(A), ts.z(A), ts.s(A), ts.n(A)
    q1, q2 = ts.q(A, 1), ts.q(A, 2)
    l, c = ts.l(A), ts.c(A)
    pT, cT, lT = ts.p(TA), ts.c(TA), ts.l(TA)
    Tp = ts.T(p, TA, A)
    Tc = ts.T(c, TTA, TTA)
    Tl = ts.T(l, TA, TTA)

    def eq(name, lhs, rhs, ref):
        diff = [b for b in lhs.domain.basis if lhs.image(b) != rhs.image(b)]
        rep.record(name, not diff, diff[:1] and (diff[0], lhs.image(diff[0]), rhs.image(diff[0])), ref)

    eq("p.z = 1", p @ z, I(A.carrier), "tangent-projection-zero")
    eq("p.s = p.q1", p @ s, p @ q1, "tangent-additive-bundle")
    eq("p.q1 = p.q2", p @ q1, p @ q2, "tangent-additive-bundle")
    # the section ι = ⟨1, z∘p⟩ : TA → T2A determined by the pullback
    iota = lin(TA, T2, lambda a: LinComb.single(Inj(a.k, a.x)))
    eq("q1.iota = 1", q1 @ iota, I(TA.carrier), "tangent-pullback")
    eq("q2.iota = z.p", q2 @ iota, z @ p, "tangent-pullback")
    eq("s unit", s @ iota, I(TA.carrier), "tangent-additive-bundle")
    swap = lin(T2, T2, lambda a: LinComb.single(Inj({0: 0, 1: 2, 2: 1}[a.k], a.x)))
    eq("s commutative", s @ swap, s, "tangent-additive-bundle")
    s12 = lin(T3, T2, lambda a: LinComb.single(Inj({0: 0, 1: 1, 2: 1, 3: 2}[a.k], a.x)))
    s23 = lin(T3, T2, lambda a: LinComb.single(Inj({0: 0, 1: 1, 2: 2, 3: 2}[a.k], a.x)))
    eq("s associative", s @ s12, s @ s23, "tangent-additive-bundle")
    eq("p_T.l = z.p", pT @ l, z @ p, "tangent-lift")
    eq("T(p).l = z.p", Tp @ l, z @ p, "tangent-lift")
    eq("c.c = 1", c @ c, I(TTA.carrier), "tangent-flip")
    eq("c.l = l", c @ l, l, "tangent-flip")
    eq("T(c).c_T.T(c) = c_T.T(c).c_T", Tc @ cT @ Tc, cT @ Tc @ cT, "tangent-flip")
    eq("T(l).l = l_T.l", Tl @ l, lT @ l, "tangent-lift")
    eq("T(p).c = p_T", Tp @ c, pT, "tangent-flip")
    eq("s.<1,n> = z.p", s @ _pair(I(TA.carrier), n, T2), z @ p, "tangent-negation")

    for name, f in tangent_maps(A, overrides).items():
        mrep = check_morphism(f, arity_bound)
        rep.record(f"{name} is a morphism", mrep.ok, f"{name}: {mrep.failed()}", "tangent-maps")

    for f in morphisms:
        B = f.target
        fm = f.map
        Tf = ts.T(fm, f.source, B)
        T2f = lin(T2, tangent_power(B, 2), T_of(fm.image))
        TTf = ts.T(Tf, TA, tangent_bundle(B))
        pB, zB, sB, nB = ts.p(B), ts.z(B), ts.s(B), ts.n(B)
        eq("natural p", pB @ Tf, fm @ p, "naturality")
        eq("natural z", zB @ fm, Tf @ z, "naturality")
        eq("natural s", sB @ T2f, Tf @ s, "naturality")
        eq("natural q1", ts.q(B, 1) @ T2f, Tf @ q1, "naturality")
        eq("natural q2", ts.q(B, 2) @ T2f, Tf @ q2, "naturality")
        eq("natural l", ts.l(B) @ Tf, TTf @ l, "naturality")
        eq("natural c", ts.c(B) @ TTf, TTf @ c, "naturality")
        eq("natural n", nB @ Tf, Tf @ n, "naturality")
    return rep


# ---------------------------------------------------------------------------
# derivations and vector fields

@dataclass(eq=False)
class Derivation:
    base: PAlgebra
    map: LinearMap

    def __call__(self, v: LinComb) -> LinComb:
        return self.map(v)

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.map == other.map

    def render(self) -> str:
        parts = [f"D({b})={_render_vec(self.map.image(b))}" for b in self.base.basis if self.map.image(b)]
        return ", ".join(parts) if parts else "D=0"


def _render_vec(v: LinComb) -> str:
    from .parsing import render_linear
    return render_linear(v)


def _leibniz_defect(A: PAlgebra, D: Callable[[LinComb], LinComb], op: str, args: Tuple) -> LinComb:
    vecs = [LinComb.single(a) for a in args]
    lhs = D(A.gen_apply(op, vecs))
    rhs = lsum(A.gen_apply(op, vecs[:i] + [D(vecs[i])] + vecs[i + 1:]) for i in range(len(vecs)))
    return lhs - rhs


def is_derivation(A: PAlgebra, D: LinearMap, spot_arity: int = 3) -> Tuple[bool, Any]:
    for op, n in A.generators():
        for args in itertools.product(A.basis, repeat=n):
            if _leibniz_defect(A, D, op, args):
                return False, (op, args)
    for s in A.operad.basis(spot_arity):
        for args in _tuples(A.basis, spot_arity, 200, random.Random(0)):
            vecs = [LinComb.single(a) for a in args]
            lhs = D(eval_basis(A, s, args))
            rhs = lsum(evaluate(A, LinComb.single(s), vecs[:i] + [D(vecs[i])] + vecs[i + 1:])
                       for i in range(len(vecs)))
            if lhs != rhs:
                return False, (s, args)
    return True, None


def derivation_space(A: PAlgebra) -> List[Derivation]:
    """Basis of Der(A), from the Leibniz system on the generating operations."""
    unknowns = tuple((b, c) for b in A.basis for c in A.basis)
    dom = BasedModule(unknowns)

    def column(u):
        b, c = u
        D = lambda v: LinComb.single(c, v.coeff(b))
        eqs = {}
        for op, n in A.generators():
            for args in itertools.product(A.basis, repeat=n):
                for r, coef in _leibniz_defect(A, D, op, args).items():
                    eqs[(op, args, r)] = coef
        return LinComb(eqs)

    cols = {u: column(u) for u in unknowns}
    rows = sorted({k for col in cols.values() for k in col}, key=repr)
    cod = BasedModule(tuple(rows))
    kernel = solve_kernel(LinearMap(dom, cod, cols))
    out = []
    for vec in kernel:
        imgs = {b: LinComb((c, vec.coeff((b, c))) for c in A.basis) for b in A.basis}
        out.append(Derivation(A, LinearMap(A.carrier, A.carrier, imgs)))
    return out


def derivation_bracket(D1: Derivation, D2: Derivation) -> Derivation:
    return Derivation(D1.base, D1.map @ D2.map - D2.map @ D1.map)


@dataclass(eq=False)
class VectorField:
    base: PAlgebra
    morphism: AlgebraMorphism

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.morphism.map == other.morphism.map


def vector_field_from_derivation(D: Derivation, check: bool = True) -> VectorField:
    A = D.base
    if check:
        ok, wit = is_derivation(A, D.map)
        if not ok:
            raise ValueError(f"not a derivation: Leibniz fails at {wit}")
    f = lambda b: LinComb.single(Inj(0, b)) + D.map.image(b).map_keys(lambda c: Inj(1, c))
    return VectorField(A, morphism(A, tangent_bundle(A), f, "v_D"))


def derivation_from_vector_field(v: VectorField, check: bool = True) -> Derivation:
    A = v.base
    m = v.morphism.map
    if check:
        sec = LinearMap.from_function(tangent_bundle(A).carrier, A.carrier, _p) @ m
        if sec != LinearMap.identity(A.carrier):
            raise ValueError("not a section of the projection")
        if not is_morphism(v.morphism):
            raise ValueError("vector field is not an algebra morphism")
    imgs = {b: LinComb((a.x, c) for a, c in m.image(b).items() if a.k == 1) for b in A.basis}
    return Derivation(A, LinearMap(A.carrier, A.carrier, imgs))


def vector_field_bracket(v: VectorField, w: VectorField) -> VectorField:
    Dv, Dw = derivation_from_vector_field(v, False), derivation_from_vector_field(w, False)
    return vector_field_from_derivation(derivation_bracket(Dv, Dw), check=False)


# ---------------------------------------------------------------------------
# differential objects in ALG_P

def check_differential_object_alg(A: PAlgebra, arity_bound: int = 3) -> Tuple[bool, Dict[str, Any]]:
    """Both criteria: vanishing of operations of arity ≠ 1, and the S-algebra equalities."""
    P = A.operad
    rng = random.Random(0)
    crit1, wit1 = True, None
    for n in range(arity_bound + 1):
        if n == 1:
            continue
        for s in P.basis(n):
            for args in _tuples(A.basis, n, 500, rng):
                if eval_basis(A, s, args):
                    crit1, wit1 = False, (s, args)
                    break
            if not crit1:
                break
        if not crit1:
            break

    crit2, wit2 = True, None
    p1 = lambda a: LinComb.single(a.x) if a.k == 0 else LinComb.zero()
    p2 = lambda a: LinComb.single(a.x) if a.k == 1 else LinComb.zero()
    plus = lambda a: LinComb.single(a.x)
    zero = lambda a: LinComb.zero()
    for t in basis_terms(P, A.basis, arity_bound):
        el = LinComb.single(t)
        if theta(A, el) != theta(A, functor_map(P, p2, diff_transform(P, el))):
            crit2, wit2 = False, ("alpha = alpha.S(p2).d", t)
            break
        if theta(A, functor_map(P, zero, el)):
            crit2, wit2 = False, ("alpha.S(0) = 0", t)
            break
    if crit2:
        pair_atoms = [Inj(k, b) for k in (0, 1) for b in A.basis]
        for t in basis_terms(P, pair_atoms, arity_bound):
            el = LinComb.single(t)
            lhs = theta(A, functor_map(P, plus, el))
            rhs = theta(A, functor_map(P, p1, el)) + theta(A, functor_map(P, p2, el))
            if lhs != rhs:
                crit2, wit2 = False, ("alpha.S(p1+p2) additive", t)
                break
    agree = crit1 == crit2
    return crit1 and crit2, {"vanishing": crit1, "monadic": crit2, "agree": agree,
                            "witness": wit1 or wit2}
