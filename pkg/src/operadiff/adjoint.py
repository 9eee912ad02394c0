"""Adjoint tangent bundles by truncated generators-and-relations presentations.

A presentation is a quotient of a free algebra S(P, G) on a set of graded
generators.  Generators carry a d-degree (number of d-marks, or M-degree)
and a weight.  The quotient is computed cell by cell:

* graded mode (free algebras, weight = number of V-letters): relations are
  homogeneous, so a cell (k, w) is a finite, exact computation;
* filtered mode (finite-dimensional A, weight = slot count): relations mix
  weights, so a cell k is the span of terms of weight ≤ W modulo the ideal
  elements that stay inside that bound.  These answers are truncations and
  are flagged as such; ``stable`` compares against the bound W + 1.

Generators of T°_C(A) are atoms ``Inj(m, a)`` where ``m`` is a square-free
monomial in the infinitesimals of C, written as a sorted tuple of marks:
``()`` is a, ``(1,)`` is d(a), ``(2,)`` is d'(a) or d₂(a), ``(1, 2)`` is d'd(a).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import (AlgebraMorphism, PAlgebra, VectorField, eval_basis, evaluate,
                      is_morphism, morphism, tangent_bundle)
from .core import BasedModule, LinComb, LinearMap, Reducer, lsum, sort_key
from .free import (FreeTerm, Inj, basis_terms, canonical_term, canonicalize, diff_transform, eta,
                   functor_map, monad_mult, proj, term_el)
from .operads import (ComOperad, Operad, PointedOperad, TruncationError, partial_compose)
from .parsing import render_element, render_monomial
from .report import Report

Mono = Tuple[int, ...]


# ---------------------------------------------------------------------------
# infinitesimal algebras C with T_C(A) = A ⊗ C

class Infinitesimals:
    """A commutative algebra spanned by square-free monomials in marks."""

    def __init__(self, marks: Sequence[int], pairwise_zero: bool, names: Mapping[int, str], label: str):
        self.marks = tuple(marks)
        self.pairwise_zero = pairwise_zero
        self.names = dict(names)
        self.label = label
        if pairwise_zero:
            monos = [()] + [(m,) for m in self.marks]
        else:
            monos = [c for r in range(len(self.marks) + 1) for c in itertools.combinations(self.marks, r)]
        self.monomials: Tuple[Mono, ...] = tuple(monos)
        self._set = set(monos)

    def mul(self, a: Mono, b: Mono) -> Optional[Mono]:
        if set(a) & set(b):
            return None
        m = tuple(sorted(a + b))
        return m if m in self._set else None

    def decompositions(self, c: Mono, n: int) -> List[Tuple[Mono, ...]]:
        """Ordered n-tuples of monomials whose product is c."""
        if n == 0:
            return [()] if c == () else []
        out = []
        for assign in itertools.product(range(n), repeat=len(c)):
            slots = [[] for _ in range(n)]
            for mark, s in zip(c, assign):
                slots[s].append(mark)
            parts = tuple(tuple(s) for s in slots)
            if all(p in self._set for p in parts):
                out.append(parts)
        return out

    def render(self, m: Mono, a: Any) -> str:
        if not m:
            return str(a)
        a = str(a)
        return "".join(self.names[k] for k in reversed(m)) + (a if a.isalnum() else f"({a})")

    def __repr__(self):
        return f"<C {self.label}>"


POINT = Infinitesimals((), True, {}, "Q")
DUAL = Infinitesimals((1,), True, {1: "d"}, "Q[e]/(e^2)")


def tangent_n(n: int) -> Infinitesimals:
    """C for T°_n: ε_i ε_j = 0 for all i, j."""
    if n == 1:
        return DUAL
    return Infinitesimals(range(1, n + 1), True, {j: f"d{j}" for j in range(1, n + 1)}, f"T_{n}")


def iterated(k: int) -> Infinitesimals:
    """C for T°^k: ε_i² = 0, distinct marks multiply."""
    if k == 1:
        return DUAL
    return Infinitesimals(range(1, k + 1), False, {j: "d" + "'" * (j - 1) for j in range(1, k + 1)}, f"T^{k}")


def degree_of(m) -> int:
    return len(m) if isinstance(m, tuple) else int(m != 0)


# ---------------------------------------------------------------------------
# algebra sources: what relations are generated from

class FiniteSource:
    """A finite-dimensional algebra, every basis element of weight 1."""

    graded = False

    def __init__(self, A: PAlgebra):
        self.A = A
        self.operad = A.operad
        self.name = A.name

    def elements(self, max_weight: int) -> Tuple:
        return self.A.basis if max_weight >= 1 else ()

    def weight(self, b) -> int:
        return 1

    def value(self, op, args) -> LinComb:
        return eval_basis(self.A, op, tuple(args))

    def constants(self) -> Dict:
        return {}


class FreeSource:
    """The free algebra S(P, V), graded by the number of letters."""

    graded = True

    def __init__(self, P: Operad, atoms: Sequence[Hashable]):
        self.operad = P
        self.atoms = tuple(atoms)
        self.name = f"S({P.name},{','.join(map(str, atoms))})"
        self._cache: Dict[int, List[FreeTerm]] = {}

    def elements(self, max_weight: int) -> List[FreeTerm]:
        if max_weight not in self._cache:
            self._cache[max_weight] = basis_terms(self.operad, self.atoms, max_weight, min_arity=1)
        return self._cache[max_weight]

    def weight(self, t: FreeTerm) -> int:
        return t.arity

    def value(self, op, args) -> LinComb:
        return monad_mult(self.operad, term_el(op, tuple(args)))

    def constants(self) -> Dict:
        return {FreeTerm(op, ()): op for op in _ops(self.operad, 0)}


def _ops(P: Operad, n: int) -> Tuple:
    try:
        return tuple(P.basis(n))
    except TruncationError:
        return ()


# ---------------------------------------------------------------------------
# presentations

@dataclass
class Cell:
    key: Tuple
    ambient: List[FreeTerm]
    reducer: Reducer
    n_relations: int

    @property
    def reps(self) -> List[FreeTerm]:
        return [t for t in self.ambient if t not in self.reducer.pivots]

    @property
    def dim(self) -> int:
        return len(self.ambient) - self.reducer.rank

    def reduce(self, v: LinComb) -> LinComb:
        return self.reducer.reduce(v)


class Presentation:
    """S(P, G) modulo the ideal generated by ``relations``, computed per cell."""

    def __init__(self, operad: Operad, generators: Mapping[Hashable, Tuple[int, int]],
                 relations: Iterable[LinComb], weight_bound: int, max_degree: int, graded: bool,
                 name: str = "", exact: bool = False, render: Optional[Callable] = None):
        self.operad = operad
        self.gens = dict(generators)
        self.gen_list = sorted(self.gens, key=sort_key)
        self.weight_bound = weight_bound
        self.max_degree = max_degree
        self.graded = graded
        self.name = name
        self.exact = exact
        self.render_gen = render or repr
        self.relations: List[Tuple[LinComb, int, int, int]] = []
        for r in relations:
            if not r:
                continue
            degs = {self.term_degree(t) for t in r}
            wts = {self.term_weight(t) for t in r}
            if len(degs) != 1:
                raise AssertionError(f"relation not homogeneous in d-degree: {r!r}")
            if graded and len(wts) != 1:
                raise AssertionError(f"relation not homogeneous in weight: {r!r}")
            self.relations.append((r, degs.pop(), min(wts), max(wts)))
        self._cells: Dict[Tuple, Cell] = {}
        self._pc: Dict[Tuple, LinComb] = {}
        self.rebuild: Optional[Callable[[int], "Presentation"]] = None

    # grading
    def term_degree(self, t: FreeTerm) -> int:
        return sum(self.gens[g][0] for g in t.word)

    def term_weight(self, t: FreeTerm) -> int:
        return sum(self.gens[g][1] for g in t.word)

    def cell_key(self, t: FreeTerm) -> Tuple:
        k = self.term_degree(t)
        return (k, self.term_weight(t)) if self.graded else (k,)

    def cell_keys(self) -> List[Tuple]:
        if self.graded:
            return [(k, w) for k in range(self.max_degree + 1) for w in range(self.weight_bound + 1)]
        return [(k,) for k in range(self.max_degree + 1)]

    # enumeration
    def _multisets(self, deg: int, wmin: int, wmax: int, size_max: int):
        """Sorted generator multisets with degree exactly deg and weight in [wmin, wmax]."""
        gens = [g for g in self.gen_list if self.gens[g][0] <= deg and self.gens[g][1] <= wmax]
        out = []

        def rec(start, chosen, d, w):
            if d == deg and wmin <= w:
                out.append(tuple(chosen))
            if len(chosen) >= size_max:
                return
            for i in range(start, len(gens)):
                g = gens[i]
                gd, gw = self.gens[g]
                if d + gd > deg or w + gw > wmax:
                    continue
                chosen.append(g)
                rec(i, chosen, d + gd, w + gw)
                chosen.pop()

        rec(0, [], 0, 0)
        return out

    def _size_max(self, wmax: int) -> int:
        positive = min((self.gens[g][1] for g in self.gen_list), default=1)
        return wmax // max(positive, 1) if positive else wmax

    def ambient(self, key: Tuple) -> List[FreeTerm]:
        k = key[0]
        wmin, wmax = (key[1], key[1]) if self.graded else (0, self.weight_bound)
        seen = {}
        for ms in self._multisets(k, wmin, wmax, self._size_max(wmax)):
            for op in _ops(self.operad, len(ms)):
                for t in canonical_term(self.operad, op, ms):
                    seen[t] = None
        return sorted(seen, key=sort_key)

    def _pcompose(self, mu, nu) -> LinComb:
        key = (mu, nu)
        hit = self._pc.get(key)
        if hit is None:
            hit = partial_compose(self.operad, LinComb.single(mu), 1, LinComb.single(nu))
            self._pc[key] = hit
        return hit

    def plug(self, mu, r: LinComb, rest: Tuple) -> LinComb:
        """γ(μ; r, g_2, ..., g_m) for a relation r and generators g_j."""
        out = []
        for t, c in r.items():
            comp = self._pcompose(mu, t.op)
            if comp:
                out.append(canonicalize(self.operad, comp, t.word + rest).scale(c))
        return lsum(out)

    def instances(self, key: Tuple) -> List[LinComb]:
        k = key[0]
        out = []
        for r, dr, wlo, whi in self.relations:
            if dr > k:
                continue
            if self.graded:
                budget_lo = budget_hi = key[1] - wlo
                if budget_lo < 0:
                    continue
            else:
                budget_lo, budget_hi = 0, self.weight_bound - whi
                if budget_hi < 0:
                    continue
            for rest in self._multisets(k - dr, budget_lo, budget_hi, self._size_max(budget_hi)):
                for mu in _ops(self.operad, len(rest) + 1):
                    inst = self.plug(mu, r, rest)
                    if inst:
                        out.append(inst)
        return out

    def cell(self, key: Tuple) -> Cell:
        key = tuple(key)
        c = self._cells.get(key)
        if c is None:
            amb = self.ambient(key)
            inst = self.instances(key)
            c = Cell(key, amb, Reducer(inst, order=amb[::-1]), len(inst))
            self._cells[key] = c
        return c

    def reduce(self, v: LinComb) -> LinComb:
        groups: Dict[Tuple, List] = {}
        for t, c in v.items():
            groups.setdefault(self.cell_key(t), []).append((t, c))
        out = []
        for key, items in groups.items():
            if self.graded and key[1] > self.weight_bound or key[0] > self.max_degree:
                raise TruncationError(f"term outside the computed bounds: {key}")
            if not self.graded and self.term_weight(items[0][0]) > self.weight_bound:
                raise TruncationError(f"term outside the computed bounds: weight > {self.weight_bound}")
            out.append(self.cell(key).reduce(LinComb(items)))
        return lsum(out)

    def is_zero(self, v: LinComb) -> bool:
        return not self.reduce(v)

    def dims(self) -> Dict[Tuple, int]:
        return {key: self.cell(key).dim for key in self.cell_keys()}

    def filtered_dims(self, k: int) -> List[int]:
        """dim of the image of terms with weight ≤ w, for w = 0..W (filtered mode)."""
        cell = self.cell((k,))
        out = []
        for w in range(self.weight_bound + 1):
            red = Reducer(order=[t for t in cell.reps])
            for t in cell.ambient:
                if self.term_weight(t) <= w:
                    red.add(cell.reduce(LinComb.single(t)))
            out.append(red.rank)
        return out

    def stable(self, k: int) -> Optional[bool]:
        """Filtered mode: whether cell k is the same at bound W + 1.

        That needs both the bound-W terms to keep their rank there and the
        heavier terms to add nothing.  Graded cells are exact and return True; None when no rebuild is available.
        """
        if self.graded:
            return True
        if self.rebuild is None:
            return None
        return _stable(self, self.rebuild(self.weight_bound + 1), k)

    def gen(self, g, coeff=1) -> LinComb:
        return eta(self.operad, g).scale(coeff)

    def extend(self, genmap: Callable[[Hashable], LinComb], el: LinComb, operad: Optional[Operad] = None) -> LinComb:
        """The algebra map defined on generators, applied to ambient terms."""
        P = operad or self.operad
        return monad_mult(P, functor_map(P, genmap, el))

    def render(self, v: LinComb) -> str:
        return render_element(self.operad, v, self.render_gen)


def _lin_gens(v: LinComb, mono) -> LinComb:
    return LinComb((Inj(mono, b), c) for b, c in v.items())


def _gen_terms(P: Operad, v: LinComb) -> LinComb:
    """A combination of generators as an element of S(P, G)."""
    return lsum(eta(P, g).scale(c) for g, c in v.items())


def tcirc_presentation(source, C: Infinitesimals = DUAL, weight_bound: int = 3,
                       max_degree: int = 2) -> Presentation:
    """T°_C(A): generators g(a, m) modulo g(μ(a), c) = Σ_{c_1⋯c_n = c} (μ; g(a_1,c_1), ..., g(a_n,c_n))."""
    P = source.operad
    W = weight_bound
    elems = list(source.elements(W))
    gens = {Inj(m, b): (len(m), source.weight(b)) for b in elems for m in C.monomials
            if len(m) <= max_degree}
    consts = source.constants()
    # weight-0 generators (constants of a free algebra) are eliminated up front
    elim = {}
    for t, op in consts.items():
        for m in C.monomials:
            elim[Inj(m, t)] = term_el(op, ()) if m == () else LinComb.zero()

    def g_of(v: LinComb, m) -> LinComb:
        out = []
        for b, c in v.items():
            g = Inj(m, b)
            if g in elim:
                out.append(elim[g].scale(c))
            elif g in gens:
                out.append(eta(P, g).scale(c))
            else:
                raise TruncationError(f"generator {g!r} beyond the weight bound")
        return lsum(out)

    rels = []
    for n in range(0, W + 1):
        ops = _ops(P, n)
        if not ops:
            continue
        for args in _arg_multisets(source, elems, n, W):
            for mu in ops:
                if n == 1 and LinComb.single(mu) == P.unit:
                    continue
                val = source.value(mu, args)
                for c in C.monomials:
                    if len(c) > max_degree:
                        continue
                    lhs = g_of(val, c)
                    rhs = lsum(canonical_term(P, mu, tuple(Inj(ci, a) for ci, a in zip(dec, args)))
                               for dec in C.decompositions(c, n))
                    rels.append(lhs - rhs)
    if source.graded:
        render = lambda g: C.render(g.k, render_monomial(P, g.x)) if g.k else _wrap(render_monomial(P, g.x))
    else:
        render = lambda g: C.render(g.k, g.x)
    pres = Presentation(P, gens, rels, W, max_degree, source.graded,
                        name=f"T°_{C.label}({source.name})", exact=source.graded, render=render)
    pres.rebuild = lambda W2: tcirc_presentation(source, C, W2, max_degree)
    return pres


def _wrap(text: str) -> str:
    return text if text.isalnum() else f"({text})"


def _arg_multisets(source, elems, n, W):
    if not source.graded:
        return itertools.combinations_with_replacement(elems, n) if n <= W else []
    out = []
    ws = {e: source.weight(e) for e in elems}
    for combo in itertools.combinations_with_replacement(elems, n):
        if sum(ws[e] for e in combo) <= W:
            out.append(combo)
    return out


def free_over_module_presentation(E: PAlgebra, weight_bound: int = 3, max_degree: int = 2) -> Presentation:
    """Free_A(M) from the square-zero extension E = A ⋉ M (carrier Inj(0,a) ∪ Inj(1,m)).

    Relations: g(μ_E(e_1..e_n)) = (μ; g(e_1), ..., g(e_n)) whenever at most one e_i lies in M.
    """
    P = E.operad
    W = weight_bound
    gens = {b: (b.k, 1) for b in E.basis}
    rels = []
    for n in range(0, W + 1):
        ops = _ops(P, n)
        for args in itertools.combinations_with_replacement(E.basis, n):
            if sum(a.k for a in args) > 1:
                continue
            for mu in ops:
                if n == 1 and LinComb.single(mu) == P.unit:
                    continue
                lhs = _gen_terms(P, eval_basis(E, mu, args))
                rels.append(lhs - canonical_term(P, mu, args))
    pres = Presentation(P, gens, rels, W, max_degree, False, name=f"Free({E.name})")
    pres.rebuild = lambda W2: free_over_module_presentation(E, W2, max_degree)
    return pres


def square_zero_extension(A: PAlgebra, module_basis: Sequence[str], action: Mapping[str, Mapping],
                          name: str = "M") -> PAlgebra:
    """A ⋉ M for an operadic A-module M, as an algebra on Inj(0, a) ∪ Inj(1, m).

    ``action`` holds the tables that involve one module input: ``"left"``
    (a, m) and ``"right"`` (m, a) for Com/Ass (Com uses left for both),
    ``"bracket"`` [a, m] for Lie, ``"act"`` (r, m) for A•.
    """
    P = A.operad
    lift = lambda v, k: v.map_keys(lambda b: Inj(k, b))
    tables: Dict[str, Dict] = {}
    basis = tuple(Inj(0, a) for a in A.basis) + tuple(Inj(1, m) for m in module_basis)
    for op, n in A.generators():
        tab = {}
        for ins in itertools.product(basis, repeat=n):
            marks = sum(x.k for x in ins)
            if marks > 1:
                continue
            if marks == 0:
                val = lift(A.gen_apply(op, [LinComb.single(x.x) for x in ins]), 0)
            elif isinstance(P, PointedOperad):
                val = lift(action["act"].get((op, ins[0].x), LinComb.zero()), 1)
            elif op == "bracket":
                a, b = ins
                if a.k == 0:
                    val = lift(action["bracket"].get((a.x, b.x), LinComb.zero()), 1)
                else:
                    val = lift(-action["bracket"].get((b.x, a.x), LinComb.zero()), 1)
            else:
                a, b = ins
                if a.k == 0:
                    val = lift(action["left"].get((a.x, b.x), LinComb.zero()), 1)
                else:
                    side = "right" if "right" in action else "left"
                    key = (a.x, b.x) if side == "right" else (b.x, a.x)
                    val = lift(action[side].get(key, LinComb.zero()), 1)
            if val:
                tab[ins] = val
        if isinstance(P, PointedOperad):
            for ins, v in tab.items():
                tables.setdefault("act", {})[(op,) + ins] = v
        else:
            tables[op] = tab
    return PAlgebra(P, BasedModule(basis), tables, f"{A.name}⋉{name}")


def regular_module(A: PAlgebra) -> Tuple[Tuple, Dict]:
    """A as a module over itself (Com/Ass)."""
    left = {(a, b): A.table("mul", (a, b)) for a in A.basis for b in A.basis}
    return A.basis, {"left": left, "right": dict(left)}


# ---------------------------------------------------------------------------
# adjoint bundles and Kähler differentials

@dataclass
class AdjointBundle:
    base: Any
    presentation: Presentation
    C: Infinitesimals = DUAL

    def point(self, a) -> LinComb:
        return self.presentation.gen(Inj((), a))

    def d(self, a) -> LinComb:
        return self.presentation.gen(Inj((1,), a))

    def d_of(self, v: LinComb) -> LinComb:
        """d applied to an element of A (linear)."""
        return lsum(self.d(b).scale(c) for b, c in v.items())

    def check_d_derivation(self, arity_bound: int = 2) -> Report:
        """d(μ(a..)) - Σ μ(a.., d a_i, ..) projects to zero in every computed cell."""
        pres = self.presentation
        P = pres.operad
        A = self.base
        rep = Report("d-derivation", operad=P.name, instance=pres.name)
        for n in range(arity_bound + 1):
            for mu in _ops(P, n):
                for args in itertools.combinations_with_replacement(A.basis, n):
                    lhs = self.d_of(eval_basis(A, mu, args))
                    rhs = lsum(canonical_term(P, mu, tuple(Inj((1,) if j == i else (), a) for j, a in enumerate(args)))
                               for i in range(n))
                    try:
                        ok = pres.is_zero(lhs - rhs)
                    except TruncationError:
                        continue
                    rep.record("d is a derivation", ok, (mu, args), "adjoint-d")
        return rep


def adjoint_bundle(A: PAlgebra, weight_bound: int = 4, max_degree: int = 2) -> AdjointBundle:
    return AdjointBundle(A, tcirc_presentation(FiniteSource(A), DUAL, weight_bound, max_degree))


@dataclass
class KahlerResult:
    dim: int
    basis: List[str]
    exact: bool
    stable: Optional[bool]
    backend: str


def kahler_truncated(A: PAlgebra, weight_bound: int = 4, backend: str = "auto") -> KahlerResult:
    """Ω_A as the d-degree 1 cell of T°(A).

    ``backend="closed"`` uses the classical Kähler module (Com) or Ω_M = M (A•);
    ``"generic"`` the truncated presentation; ``"auto"`` the closed form when one exists.
    """
    P = A.operad
    if backend == "auto":
        backend = "closed" if isinstance(P, (ComOperad, PointedOperad)) else "generic"
    if backend == "closed":
        if isinstance(P, PointedOperad):
            return KahlerResult(A.dim, [f"d{b}" for b in A.basis], True, True, "closed")
        if isinstance(P, ComOperad):
            cf = com_sym_closed(A, 1)
            return KahlerResult(cf.dim, cf.render_reps(), True, True, "closed")
        raise ValueError(f"no closed form for {P.name}")
    pres = tcirc_presentation(FiniteSource(A), DUAL, weight_bound, 1)
    cell = pres.cell((1,))
    stable = pres.stable(1)
    return KahlerResult(cell.dim, [pres.render(LinComb.single(t)) for t in cell.reps], False, stable, "generic")


def _stable(pres: Presentation, bigger: Presentation, k: int) -> bool:
    """Whether cell k at bound W maps isomorphically onto cell k at bound W + 1."""
    small = pres.cell((k,))
    big = bigger.cell((k,))
    if small.dim != big.dim:
        return False
    red = Reducer()
    for t in small.ambient:
        red.add(big.reduce(LinComb.single(t)))
    return red.rank == small.dim


# ---------------------------------------------------------------------------
# closed forms

@dataclass
class ComClosedForm:
    """Sym^k_A(Ω_A) by classical commutative algebra: A ⊗ Sym^k(dA) modulo Leibniz."""

    A: PAlgebra
    k: int
    ambient: List[Tuple]
    reducer: Reducer

    @property
    def dim(self) -> int:
        return len(self.ambient) - self.reducer.rank

    def reps(self) -> List[Tuple]:
        return [t for t in self.ambient if t not in self.reducer.pivots]

    def render_reps(self) -> List[str]:
        out = []
        for a, ds in self.reps():
            body = "*".join(DUAL.render((1,), b) for b in ds)
            out.append(body if a == "1" else f"{a}*{body}" if body else a)
        return out

    def reduce(self, v: LinComb) -> LinComb:
        return self.reducer.reduce(v)


def _mult(A: PAlgebra, a, b) -> LinComb:
    return A.table("mul", (a, b))


def com_sym_closed(A: PAlgebra, k: int) -> ComClosedForm:
    basis = list(A.basis)
    ambient = [(a, ds) for a in basis for ds in itertools.combinations_with_replacement(basis, k)]

    def key(a, ds):
        return (a, tuple(sorted(ds, key=basis.index)))

    rels = []
    if k >= 1:
        for a0 in basis:
            for rest in itertools.combinations_with_replacement(basis, k - 1):
                for b, c in itertools.combinations_with_replacement(basis, 2):
                    r = {}
                    for e, coef in _mult(A, b, c).items():
                        kk = key(a0, rest + (e,))
                        r[kk] = r.get(kk, 0) + coef
                    for x, y in ((b, c), (c, b)):
                        for f, coef in _mult(A, a0, x).items():
                            kk = key(f, rest + (y,))
                            r[kk] = r.get(kk, 0) - coef
                    rels.append(LinComb(r))
    return ComClosedForm(A, k, ambient, Reducer(rels, order=ambient))


def com_closed_dims(A: PAlgebra, max_degree: int) -> List[int]:
    return [com_sym_closed(A, k).dim for k in range(max_degree + 1)]


def com_correspondence(pres: Presentation, A: PAlgebra, k: int) -> Tuple[bool, int]:
    """Map the generic cell k to Sym^k_A(Ω_A): (c_n; a.., d b..) ↦ (Π a) ⊗ Π db.

    Returns (relations are killed, rank of the induced map on the quotient).
    """
    cf = com_sym_closed(A, k)
    unit = A.table("unit", ())
    basis = list(A.basis)

    def image(t: FreeTerm) -> LinComb:
        coef = unit
        ds = []
        for g in t.word:
            if g.k == ():
                coef = lsum(_mult(A, a, g.x).scale(c) for a, c in coef.items())
            else:
                ds.append(g.x)
        ds = tuple(sorted(ds, key=basis.index))
        return LinComb(((a, ds), c) for a, c in coef.items())

    cell = pres.cell((k,))
    killed = True
    for inst in pres.instances((k,)):
        v = lsum(image(t).scale(c) for t, c in inst.items())
        if cf.reduce(v):
            killed = False
            break
    red = Reducer()
    for t in cell.reps:
        red.add(cf.reduce(image(t)))
    return killed, red.rank


def abullet_closed_dims(M: PAlgebra, max_degree: int) -> List[int]:
    """T°(M) = M × M."""
    return [M.dim if k <= 1 else 0 for k in range(max_degree + 1)]


def free_module_closed_dims(M: PAlgebra, N_dim: int, max_degree: int) -> List[int]:
    """Free_M(N) = M × N over A•."""
    return [M.dim if k == 0 else (N_dim if k == 1 else 0) for k in range(max_degree + 1)]


# ---------------------------------------------------------------------------
# τ : T°(S(P,V)) ≅ S(P, V×V)

def tau_generator(P: Operad, g: Inj) -> LinComb:
    """g(t, 1) ↦ S(⟨1,0⟩)(t), g(t, ε) ↦ ∂(t)."""
    t = LinComb.single(g.x)
    if g.k == ():
        return functor_map(P, lambda v: LinComb.single(Inj(0, v)), t)
    if g.k == (1,):
        return diff_transform(P, t)
    raise ValueError("τ is defined on T° generators only")


def target_cell(P: Operad, atoms: Sequence[Hashable], k: int, w: int) -> List[FreeTerm]:
    pair = [Inj(j, v) for j in (0, 1) for v in atoms]
    return [t for t in basis_terms(P, pair, w, min_arity=w) if sum(a.k for a in t.word) == k]


@dataclass
class TauCell:
    key: Tuple[int, int]
    source_dim: int
    target_dim: int
    well_defined: bool
    rank: int

    @property
    def iso(self) -> bool:
        return self.well_defined and self.rank == self.source_dim == self.target_dim


def tau_free_iso(P: Operad, atoms: Sequence[Hashable], weight_bound: int = 3,
                 max_degree: int = 2) -> Tuple[Presentation, List[TauCell]]:
    pres = tcirc_presentation(FreeSource(P, atoms), DUAL, weight_bound, max_degree)
    tau = lambda g: tau_generator(P, g)
    cells = []
    for key in pres.cell_keys():
        k, w = key
        cell = pres.cell(key)
        tgt = target_cell(P, atoms, k, w)
        wd = all(not pres.extend(tau, inst) for inst in pres.instances(key))
        red = Reducer(order=tgt)
        for t in cell.reps:
            red.add(pres.extend(tau, LinComb.single(t)))
        cells.append(TauCell(key, cell.dim, len(tgt), wd, red.rank))
    return pres, cells


def check_tau_multiplicative(P: Operad, pres: Presentation, samples: int = 100, seed: int = 0) -> bool:
    """τ(μ(x_1..x_n)) = μ(τ x_1, ..., τ x_n) on random products of cell representatives."""
    rng = random.Random(seed)
    tau = lambda g: tau_generator(P, g)
    reps = [t for key in pres.cell_keys() for t in pres.cell(key).reps if t.arity > 0]
    for _ in range(samples):
        n = rng.choice([1, 2])
        xs = [rng.choice(reps) for _ in range(n)]
        if sum(pres.term_weight(x) for x in xs) > pres.weight_bound:
            continue
        if sum(pres.term_degree(x) for x in xs) > pres.max_degree:
            continue
        ops = _ops(P, n)
        if not ops:
            continue
        mu = rng.choice(ops)
        lhs = pres.extend(tau, monad_mult(P, term_el(mu, tuple(xs))))
        rhs = _compose_linear(P, mu, [pres.extend(tau, LinComb.single(x)) for x in xs])
        if lhs != rhs:
            return False
    return True


def _single_term(v: LinComb) -> FreeTerm:
    (t, c), = v.items()
    return t


def _compose_linear(P: Operad, mu, els: Sequence[LinComb]) -> LinComb:
    """γ(μ; e_1, ..., e_n) for free-algebra elements e_i (multilinear)."""
    out = []
    for combo in itertools.product(*(list(e.items()) for e in els)):
        c = 1
        for _, ci in combo:
            c = c * ci
        out.append(monad_mult(P, term_el(mu, tuple(t for t, _ in combo))).scale(c))
    return lsum(out)


# ---------------------------------------------------------------------------
# the adjunction T° ⊣ T on finite algebras

def tangent_atom(b: Inj) -> Tuple[int, Any]:
    return b.k, b.x


def counit_generator(A: PAlgebra, g: Inj) -> LinComb:
    """ε_A(g((a,b), 1)) = a and ε_A(g((a,b), ε)) = b on atoms of T°(A⋉A)."""
    m, b = g.k, g.x
    if (m == () and b.k == 0) or (m == (1,) and b.k == 1):
        return LinComb.single(b.x)
    return LinComb.zero()


def unit_map(bundle: AdjointBundle) -> Callable[[Hashable], LinComb]:
    """η_A(a) = (a, d a) in T°(A) ⋉ T°(A), as a pair of elements."""
    return lambda a: (bundle.point(a), bundle.d(a))


def extend_into(A: PAlgebra, genmap: Callable[[Hashable], LinComb], el: LinComb) -> LinComb:
    """A morphism S(P, G) → A given on generators, applied to ambient terms."""
    out = []
    for t, c in el.items():
        out.append(evaluate(A, LinComb.single(t.op), [genmap(g) for g in t.word]).scale(c))
    return lsum(out)


def check_adjunction(A: PAlgebra, weight_bound: int = 3, max_degree: int = 1) -> Report:
    """η and ε are morphisms on the computed cells and both triangle composites are identities."""
    P = A.operad
    rep = Report("check-adjunction", operad=P.name, instance=A.name,
                 bounds={"weight": weight_bound, "degree": max_degree})
    bundle = adjoint_bundle(A, weight_bound, max_degree)
    pres = bundle.presentation
    eta_A = unit_map(bundle)

    # η is a morphism A → T°A ⋉ T°A: both components agree modulo the relations
    for n in range(weight_bound + 1):
        for mu in _ops(P, n):
            for args in itertools.combinations_with_replacement(A.basis, n):
                val = eval_basis(A, mu, args)
                first = lsum(bundle.point(b).scale(c) for b, c in val.items())
                second = bundle.d_of(val)
                base = tuple(Inj((), a) for a in args)
                mu_first = canonical_term(P, mu, base)
                mu_second = lsum(canonical_term(P, mu, base[:i] + (Inj((1,), args[i]),) + base[i + 1:])
                                 for i in range(n))
                ok = pres.is_zero(first - mu_first) and (max_degree < 1 or pres.is_zero(second - mu_second))
                rep.record("unit is a morphism", ok, (mu, args), "adjunction-unit")

    # ε kills every relation of T°(A⋉A)
    TA = tangent_bundle(A)
    tpres = tcirc_presentation(FiniteSource(TA), DUAL, min(weight_bound, 2), 1)
    for r, _, _, _ in tpres.relations:
        rep.record("counit kills relations", not extend_into(A, lambda g: counit_generator(A, g), r), r,
                   "adjunction-counit")

    # triangle 1: ε_{T°A} ∘ T°(η_A) = 1 on T°(A), computed through labelled generators
    def t_eta(g):
        first, second = eta_A(g.x)
        label = LinComb.single(Inj(0, _single_term(first))) + LinComb.single(Inj(1, _single_term(second)))
        return lsum(LinComb.single(Inj(g.k, lab)).scale(c) for lab, c in label.items())

    def eps_T(g):
        m, lab = g.k, g.x
        if (m == () and lab.k == 0) or (m == (1,) and lab.k == 1):
            return LinComb.single(lab.x)
        return LinComb.zero()

    for key in pres.cell_keys():
        for t in pres.cell(key).ambient:
            mid = functor_map(P, t_eta, LinComb.single(t))
            back = monad_mult(P, functor_map(P, eps_T, mid))
            rep.record("triangle eps_T.T(eta) = 1", pres.is_zero(back - LinComb.single(t)), t, "adjunction-triangle")

    # triangle 2: T(ε_A) ∘ η_{TA} = 1 on A⋉A
    tb = AdjointBundle(TA, tpres)
    for b in TA.basis:
        first, second = tb.point(b), tb.d(b)
        u = extend_into(A, lambda g: counit_generator(A, g), first)
        v = extend_into(A, lambda g: counit_generator(A, g), second)
        out = u.map_keys(lambda x: Inj(0, x)) + v.map_keys(lambda x: Inj(1, x))
        rep.record("triangle T(eps).eta_T = 1", out == LinComb.single(b), b, "adjunction-triangle")
    return rep


def check_free_adjunction(P: Operad, atoms: Sequence[Hashable], weight_bound: int = 3,
                          max_degree: int = 1) -> Report:
    """Triangle identities on free-algebra cells, with τ as the identification."""
    rep = Report("check-adjunction", operad=P.name, instance=f"S({','.join(map(str, atoms))})",
                 bounds={"weight": weight_bound})
    pres, cells = tau_free_iso(P, atoms, weight_bound, max_degree)
    for c in cells:
        rep.record("tau iso", c.iso, c, "adjoint-tau")
    tau = lambda g: tau_generator(P, g)

    # η(t) = (t, d t); under τ, the second component is ∂t and the first S(⟨1,0⟩)t
    src = FreeSource(P, atoms)
    for t in src.elements(weight_bound):
        first = pres.extend(tau, pres.gen(Inj((), t)))
        second = pres.extend(tau, pres.gen(Inj((1,), t)))
        rep.record("unit under tau", second == diff_transform(P, LinComb.single(t))
                   and first == functor_map(P, lambda v: LinComb.single(Inj(0, v)), LinComb.single(t)),
                   t, "adjunction-unit")

    def t_eta(g):
        return LinComb.single(Inj(g.k, Inj(0 if g.k == () else 1, g.x)))

    def eps_T(g):
        m, lab = g.k, g.x
        if (m == () and lab.k == 0) or (m == (1,) and lab.k == 1):
            return pres.gen(Inj(m, lab.x))
        return LinComb.zero()

    for key in pres.cell_keys():
        for t in pres.cell(key).ambient:
            mid = functor_map(P, t_eta, LinComb.single(t))
            back = monad_mult(P, functor_map(P, eps_T, mid))
            rep.record("triangle eps_T.T(eta) = 1", pres.is_zero(back - LinComb.single(t)), t, "adjunction-triangle")
    for t in src.elements(weight_bound):
        for k in (0, 1):
            b = Inj(k, t)
            u = LinComb.single(t) if k == 0 else LinComb.zero()
            v = LinComb.single(t) if k == 1 else LinComb.zero()
            out = u.map_keys(lambda x: Inj(0, x)) + v.map_keys(lambda x: Inj(1, x))
            rep.record("triangle T(eps).eta_T = 1", out == LinComb.single(b), b, "adjunction-triangle")
    return rep


# ---------------------------------------------------------------------------
# hom transposition

@dataclass
class PresentedMorphism:
    """A morphism T°(A) → A' given by its values on generators."""

    source: AdjointBundle
    target: PAlgebra
    on_point: LinearMap
    on_d: LinearMap

    def genmap(self, g: Inj) -> LinComb:
        if g.k == ():
            return self.on_point.image(g.x)
        if g.k == (1,):
            return self.on_d.image(g.x)
        raise ValueError(f"unexpected generator {g!r}")

    def __call__(self, el: LinComb) -> LinComb:
        return extend_into(self.target, self.genmap, el)

    def well_defined(self) -> Tuple[bool, Any]:
        pres = self.source.presentation
        for r, _, _, _ in pres.relations:
            if self(r):
                return False, r
        return True, None


def hom_transpose_flat(f: PresentedMorphism) -> AlgebraMorphism:
    """f♭(a) = (f(a), f(d a)) : A → A' ⋉ A'."""
    ok, wit = f.well_defined()
    if not ok:
        raise ValueError(f"not a morphism on T°(A): relation {wit!r} is not killed")
    A = f.source.base
    B = f.target
    img = lambda a: f.on_point.image(a).map_keys(lambda x: Inj(0, x)) + f.on_d.image(a).map_keys(lambda x: Inj(1, x))
    return morphism(A, tangent_bundle(B), img, "f_flat")


def hom_transpose_sharp(g: AlgebraMorphism, bundle: AdjointBundle, target: PAlgebra) -> PresentedMorphism:
    """g♯(a) = g₁(a), g♯(d a) = g₂(a) for g = (g₁, g₂) : A → A' ⋉ A'."""
    if not is_morphism(g):
        raise ValueError("input is not an algebra morphism")
    A = g.source
    Bmod = target.carrier
    g1 = LinearMap.from_function(A.carrier, Bmod, lambda a: LinComb((b.x, c) for b, c in g(LinComb.single(a)).items() if b.k == 0))
    g2 = LinearMap.from_function(A.carrier, Bmod, lambda a: LinComb((b.x, c) for b, c in g(LinComb.single(a)).items() if b.k == 1))
    return PresentedMorphism(bundle, target, g1, g2)


# ---------------------------------------------------------------------------
# adjoint structure maps, on generators

@dataclass
class MonoMap:
    """A map T°_C(A) → T°_{C'}(A) fixing A and sending g(a, m) ↦ Σ ψ(m)_{m'} g(a, m')."""

    name: str
    src: Infinitesimals
    tgt: Infinitesimals
    psi: Mapping[Mono, LinComb]

    def __call__(self, m: Mono) -> LinComb:
        return self.psi.get(m, LinComb.zero())

    def compose(self, inner: "MonoMap") -> "MonoMap":
        """self ∘ inner."""
        out = {m: inner(m).apply(self) for m in inner.src.monomials}
        return MonoMap(f"{self.name}∘{inner.name}", inner.src, self.tgt, out)

    def __matmul__(self, inner):
        return self.compose(inner)

    def __eq__(self, other):
        return all(self(m) == other(m) for m in self.src.monomials)

    def genmap(self, P: Operad) -> Callable[[Inj], LinComb]:
        return lambda g: lsum(eta(P, Inj(m2, g.x)).scale(c) for m2, c in self(g.k).items())


def _mono_map(name, src, tgt, f) -> MonoMap:
    return MonoMap(name, src, tgt, {m: f(m) for m in src.monomials})


def _one(m):
    return LinComb.single(m)


def relabel(m: Mono, table: Mapping[int, int]) -> Mono:
    return tuple(sorted(table[x] for x in m))


def adjoint_tangent_maps(overrides: Optional[Mapping[str, MonoMap]] = None) -> Dict[str, MonoMap]:
    """p°, q°_j, s°, z°, l°, c°, n° and the helpers used by the equation list."""
    T0, T1, T2, T3 = POINT, DUAL, tangent_n(2), tangent_n(3)
    I2, I3 = iterated(2), iterated(3)
    zero = LinComb.zero()
    maps = {
        "p": _mono_map("p°", T0, T1, _one),
        "z": _mono_map("z°", T1, T0, lambda m: _one(()) if m == () else zero),
        "s": _mono_map("s°", T1, T2, lambda m: _one(()) if m == () else LinComb({(1,): 1, (2,): 1})),
        "q1": _mono_map("q°1", T1, T2, lambda m: _one(m)),
        "q2": _mono_map("q°2", T1, T2, lambda m: _one(()) if m == () else _one((2,))),
        "l": _mono_map("l°", I2, T1, lambda m: {(): _one(()), (1, 2): _one((1,))}.get(m, zero)),
        "c": _mono_map("c°", I2, I2, lambda m: _one(relabel(m, {1: 2, 2: 1}))),
        "n": _mono_map("n°", T1, T1, lambda m: _one(()) if m == () else LinComb.single((1,), -1)),
    }
    if overrides:
        maps.update(overrides)
    # functorial images and maps at T°A, built from the above on marks
    maps["p_T"] = _mono_map("p°_T", T1, I2, _one)                      # inner generators of T°(T°A)
    maps["T(p)"] = _mono_map("T°(p°)", T1, I2, lambda m: _one(relabel(m, {1: 2})))
    maps["iota"] = _mono_map("ι°", T2, T1, lambda m: {(): _one(()), (1,): _one((1,))}.get(m, zero))
    maps["swap"] = _mono_map("σ°", T2, T2, lambda m: _one(relabel(m, {1: 2, 2: 1})))
    maps["s12"] = _mono_map("s°12", T2, T3, lambda m: {(): _one(()), (1,): LinComb({(1,): 1, (2,): 1}),
                                                        (2,): _one((3,))}[m])
    maps["s23"] = _mono_map("s°23", T2, T3, lambda m: {(): _one(()), (1,): _one((1,)),
                                                        (2,): LinComb({(2,): 1, (3,): 1})}[m])
    n = maps["n"]
    maps["pair_n"] = _mono_map("⟨1,n⟩°", T2, T1, lambda m: {(): _one(()), (1,): _one((1,)),
                                                            (2,): n((1,))}[m])
    # on T°³ with marks 1 (innermost) .. 3 (outermost)
    c = maps["c"]
    l = maps["l"]
    maps["T(c)"] = _lift3(c, I3, I3, inner=True)
    maps["c_T"] = _lift3(c, I3, I3, inner=False)
    maps["T(l)"] = _lift3(l, I3, I2, inner=True)
    maps["l_T"] = _lift3(l, I3, I2, inner=False)
    return maps


def _lift3(f: MonoMap, src: Infinitesimals, tgt: Infinitesimals, inner: bool) -> MonoMap:
    """Apply a map on two marks either to marks (1,2) keeping 3, or to marks (2,3) keeping 1."""
    def img(m):
        if inner:
            part = tuple(x for x in m if x in (1, 2))
            rest = tuple(x for x in m if x == 3)
            out = {}
            for pm, c in f(part).items():
                shift = {3: max(tgt.marks)} if rest else {}
                mm = tuple(sorted(pm + tuple(shift.get(x, x) for x in rest)))
                out[mm] = out.get(mm, 0) + c
            return LinComb(out)
        part = tuple(x - 1 for x in m if x in (2, 3))
        rest = tuple(x for x in m if x == 1)
        out = {}
        for pm, c in f(part).items():
            mm = tuple(sorted(rest + tuple(x + 1 for x in pm)))
            out[mm] = out.get(mm, 0) + c
        return LinComb(out)
    return _mono_map(f"lift({f.name})", src, tgt, img)


def check_adjoint_equations(maps: Optional[Mapping[str, MonoMap]] = None) -> Report:
    """The dual tangent equations, on generators (both sides fix A)."""
    M = maps or adjoint_tangent_maps()
    rep = Report("adjoint-tangent-equations")
    one = lambda C: _mono_map("1", C, C, _one)

    def eq(name, lhs, rhs, ref):
        bad = [m for m in lhs.src.monomials if lhs(m) != rhs(m)]
        rep.record(name, not bad, bad[:1] and (bad[0], lhs(bad[0]), rhs(bad[0])), ref)

    p, z, s, q1, q2, l, c, n = (M[k] for k in ("p", "z", "s", "q1", "q2", "l", "c", "n"))
    eq("z.p = 1", z @ p, one(POINT), "adjoint-projection-zero")
    eq("s.p = q1.p", s @ p, q1 @ p, "adjoint-additive")
    eq("q1.p = q2.p", q1 @ p, q2 @ p, "adjoint-additive")
    eq("iota.q1 = 1", M["iota"] @ q1, one(DUAL), "adjoint-pushout")
    eq("iota.q2 = p.z", M["iota"] @ q2, p @ z, "adjoint-pushout")
    eq("s unit", M["iota"] @ s, one(DUAL), "adjoint-additive")
    eq("s commutative", M["swap"] @ s, s, "adjoint-additive")
    eq("s associative", M["s12"] @ s, M["s23"] @ s, "adjoint-additive")
    eq("l.p_T = p.z", l @ M["p_T"], p @ z, "adjoint-lift")
    eq("l.T(p) = p.z", l @ M["T(p)"], p @ z, "adjoint-lift")
    eq("c.c = 1", c @ c, one(iterated(2)), "adjoint-flip")
    eq("l.c = l", l @ c, l, "adjoint-flip")
    eq("Yang-Baxter", M["T(c)"] @ M["c_T"] @ M["T(c)"], M["c_T"] @ M["T(c)"] @ M["c_T"], "adjoint-flip")
    eq("l.T(l) = l.l_T", l @ M["T(l)"], l @ M["l_T"], "adjoint-lift")
    eq("c.T(p) = p_T", c @ M["T(p)"], M["p_T"], "adjoint-flip")
    eq("<1,n>.s = p.z", M["pair_n"] @ s, p @ z, "adjoint-negation")
    return rep


def check_adjoint_maps_well_defined(A: PAlgebra, weight_bound: int = 3,
                                    maps: Optional[Mapping[str, MonoMap]] = None) -> Report:
    """Each structure map sends every relation instance to zero in the target presentation."""
    M = maps or adjoint_tangent_maps()
    P = A.operad
    src = FiniteSource(A)
    rep = Report("adjoint-maps", operad=P.name, instance=A.name, bounds={"weight": weight_bound})
    pres: Dict[str, Presentation] = {}

    def get(C):
        if C.label not in pres:
            pres[C.label] = tcirc_presentation(src, C, weight_bound, len(C.marks))
        return pres[C.label]

    for name in ("p", "z", "s", "q1", "q2", "l", "c", "n"):
        f = M[name]
        if f.tgt is POINT:
            gm = lambda g, f=f: lsum(LinComb.single(g.x).scale(c) for m2, c in f(g.k).items())
            ok = all(not extend_into(A, gm, r) for r, _, _, _ in get(f.src).relations)
        else:
            S, T = get(f.src), get(f.tgt)
            gm = f.genmap(P)
            ok = True
            for r, _, _, _ in S.relations:
                if f.src is POINT:
                    continue
                if not T.is_zero(T.extend(gm, r)):
                    ok = False
                    break
            if f.src is POINT:
                # p° on A: relations of A hold in T°(A) (degree-0 cell)
                for n_ in range(weight_bound + 1):
                    for mu in _ops(P, n_):
                        for args in itertools.combinations_with_replacement(A.basis, n_):
                            v = _gen_terms(P, _lin_gens(eval_basis(A, mu, args), ()))
                            w = canonical_term(P, mu, tuple(Inj((), a) for a in args))
                            if not T.is_zero(v - w):
                                ok = False
        rep.record(f"{name}° well defined", ok, name, "adjoint-maps")
    return rep


# ---------------------------------------------------------------------------
# adjoint vector fields

def adjoint_vf_sharp(v: VectorField, bundle: AdjointBundle) -> PresentedMorphism:
    """v♯ = ε_A ∘ T°(v): a ↦ a and d a ↦ D_v(a)."""
    A = v.base
    # T°(v) relabels generators by v(a) ∈ A⋉A; ε_A then picks the matching component
    def through(m):
        return lambda a: lsum(counit_generator(A, Inj(m, b)).scale(c) for b, c in v.morphism(LinComb.single(a)).items())
    on_point = LinearMap.from_function(A.carrier, A.carrier, through(()))
    on_d = LinearMap.from_function(A.carrier, A.carrier, through((1,)))
    return PresentedMorphism(bundle, A, on_point, on_d)


def adjoint_vf_flat(w: PresentedMorphism) -> VectorField:
    """w♭ = T(w) ∘ η_A: a ↦ (w(a), w(d a))."""
    A = w.source.base
    if w.on_point != LinearMap.identity(A.carrier):
        raise ValueError("w must restrict to the identity on A")
    ok, wit = w.well_defined()
    if not ok:
        raise ValueError(f"w does not respect relation {wit!r}")
    img = lambda a: LinComb.single(Inj(0, a)) + w.on_d.image(a).map_keys(lambda x: Inj(1, x))
    return VectorField(A, morphism(A, tangent_bundle(A), img, "w_flat"))


def adjoint_vf_bracket(v: PresentedMorphism, w: PresentedMorphism) -> PresentedMorphism:
    """[v, w](a) = a, [v, w](d a) = D_v D_w a − D_w D_v a."""
    D = v.on_d @ w.on_d - w.on_d @ v.on_d
    return PresentedMorphism(v.source, v.target, v.on_point, D)


# ---------------------------------------------------------------------------
# differential objects in ALG_P^op

def ell_generator(P: Operad, g: Inj, literal: bool = False) -> LinComb:
    """ℓ° on T°(S(P,V)) generators: ℓ°(t) = ζ°(t)_A and ℓ°(d t) = S(π₂)(∂ t).

    With ``literal=True`` the rule ℓ°(d(μ; v..)) = (μ; v..) is used for every t.
    """
    t = LinComb.single(g.x)
    if g.k == ():
        return t if g.x.arity == 0 else LinComb.zero()
    if literal:
        return t
    return functor_map(P, proj(1), diff_transform(P, t))


def zeta_part(el: LinComb) -> LinComb:
    """ζ°(a)_A: the arity-zero part of a free-algebra element."""
    return LinComb((t, c) for t, c in el.items() if t.arity == 0)


def check_free_differential_object(P: Operad, atoms: Sequence[Hashable], weight_bound: int = 3,
                                   literal: bool = False) -> Report:
    rep = Report("diff-object", operad=P.name, instance=f"S({','.join(map(str, atoms))})",
                 bounds={"weight": weight_bound})
    pres = tcirc_presentation(FreeSource(P, atoms), DUAL, weight_bound, 1)
    ell = lambda g: ell_generator(P, g, literal)
    for key in pres.cell_keys():
        for inst in pres.instances(key):
            rep.record("l° is well defined", not pres.extend(ell, inst), inst, "diffobj-lift")
    src = FreeSource(P, atoms)
    terms = list(src.elements(weight_bound)) + list(src.constants())
    for t in terms:
        a = LinComb.single(t)
        z = zeta_part(a)
        l_a = pres.extend(ell, _point_of(pres, P, a))
        l_da = pres.extend(ell, _d_of(pres, P, a))
        rep.record("l°(a) = zeta(a)", l_a == z, t, "diffobj-eq1")
        rep.record("zeta(zeta(a)) = zeta(a)", zeta_part(z) == z, t, "diffobj-eq2")
        rep.record("zeta(l°(d a)) = 0", not zeta_part(l_da), t, "diffobj-eq3")
        rep.record("l°(zeta(a)) = zeta(a)", pres.extend(ell, _point_of(pres, P, z)) == z, t, "diffobj-eq4")
        rep.record("l°(d l°(d a)) = l°(d a)", pres.extend(ell, _d_of(pres, P, l_da)) == l_da, t, "diffobj-eq5")
    rng = random.Random(0)
    elems = src.elements(weight_bound)
    for _ in range(50):
        n = rng.choice([0, 1, 2])
        ops = _ops(P, n)
        if not ops or not elems:
            continue
        args = tuple(rng.choice(elems) for _ in range(n))
        mu = rng.choice(ops)
        lhs = zeta_part(src.value(mu, args))
        rhs = _compose_linear(P, mu, [zeta_part(LinComb.single(a)) for a in args])
        rep.record("zeta is a morphism", lhs == rhs, (mu, args), "diffobj-zero")
    return rep


def _point_of(pres: Presentation, P: Operad, a: LinComb) -> LinComb:
    out = []
    for t, c in a.items():
        if t.arity == 0:
            out.append(term_el(t.op, (), c))
        else:
            out.append(pres.gen(Inj((), t), c))
    return lsum(out)


def _d_of(pres: Presentation, P: Operad, a: LinComb) -> LinComb:
    return lsum(pres.gen(Inj((1,), t), c) for t, c in a.items() if t.arity > 0)


def diff_object_from_p0_module(P: Operad, module_basis: Sequence[str], weight_bound: int = 3) -> Report:
    """The differential object Free_{P(0)}(M) on a P(0)-module M, for the closed-form backends.

    Com: P(0) = Q, M is a vector space and Free_{P(0)}(M) = Sym(M).
    A•: Free_{P(0)}(M) = A ⊗ M, the free module on the basis of M.
    Both are free P-algebras S(P, M), so the equalities are checked there.
    """
    if not isinstance(P, (ComOperad, PointedOperad)):
        raise ValueError(f"no closed form for Free_P(0) over {P.name}")
    return check_free_differential_object(P, module_basis, weight_bound)
