"""The free P-algebra monad S(P, -) and its differential structure.

Elements of S(P, V) are :class:`LinComb` combinations of canonical
:class:`FreeTerm` symbols ``(μ; v_1, ..., v_n)``.  Variables ("atoms") are
arbitrary sortable hashables; product modules use :class:`Inj` atoms, so
``Inj(0, x)`` is ``(x, 0)`` and ``Inj(1, x)`` is ``(0, x)``, rendered ``d·x``.
Nested products such as ``(V×V)×(V×V)`` use ``Inj(outer, Inj(inner, x))``;
its four components π₁..π₄ are (0,0), (0,1), (1,0), (1,1).

Linear maps between variable modules are passed as callables
``atom -> LinComb`` (a :class:`~operadiff.core.LinearMap` also works).
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Any, Callable, Dict, Hashable, List, Sequence, Tuple

from .core import (LinComb, LinearMap, Permutation, Reducer, as_scalar, lsum, perm_act_word,
                   sort_key, sorting_permutation)
from .operads import AssOperad, ComOperad, Operad, PointedOperad, complete_compose

AtomMap = Callable[[Hashable], LinComb]


class Inj(tuple):
    """The ``k``-th injection of an atom into a product module."""

    __slots__ = ()
    _TAG = "\x00inj"

    def __new__(cls, k: int, x: Hashable):
        return tuple.__new__(cls, (cls._TAG, k, x))

    @property
    def k(self) -> int:
        return self[1]

    @property
    def x(self) -> Hashable:
        return self[2]

    def sort_key(self):
        return _inj_key(self)

    def __repr__(self):
        return f"Inj({self[1]}, {self[2]!r})"


@lru_cache(maxsize=None)
def _inj_key(a: Inj):
    return (4, a[1], sort_key(a[2]))


class FreeTerm(tuple):
    """A canonical orbit representative ``(op; word)``."""

    __slots__ = ()

    def __new__(cls, op: Hashable, word: Sequence[Hashable]):
        return tuple.__new__(cls, (op, tuple(word)))

    @property
    def op(self) -> Hashable:
        return self[0]

    @property
    def word(self) -> Tuple[Hashable, ...]:
        return self[1]

    @property
    def arity(self) -> int:
        return len(self[1])

    def sort_key(self):
        return _ft_key(self)

    def __repr__(self):
        return f"({self[0]!r}; {', '.join(map(repr, self[1]))})"


@lru_cache(maxsize=None)
def _ft_key(t: FreeTerm):
    return (5, len(t[1]), sort_key(t[0]), tuple(sort_key(x) for x in t[1]))


def term_el(op, word, coeff=1) -> LinComb:
    return LinComb.single(FreeTerm(op, word), coeff)


# ---------------------------------------------------------------------------
# canonical forms

def _stab_reducer(P: Operad, n: int, blocks: Tuple[int, ...]) -> Reducer:
    cache = P.__dict__.setdefault("_stab_cache", {})
    key = (n, blocks)
    red = cache.get(key)
    if red is None:
        gens = []
        start = 1
        for size in blocks:
            for k in range(start, start + size - 1):
                gens.append(Permutation.from_cycles(n, (k, k + 1)))
            start += size
        basis = P.basis(n)
        rels = []
        for g in gens:
            for s in basis:
                rels.append(P.act_basis(s, g) - LinComb.single(s))
        red = Reducer(rels, order=basis)
        cache[key] = red
    return red


def _blocks(word: Sequence[Hashable]) -> Tuple[int, ...]:
    out = []
    for _, grp in itertools.groupby(word):
        out.append(len(list(grp)))
    return tuple(out)


def canonical_term(P: Operad, op: Hashable, word: Tuple[Hashable, ...]) -> LinComb:
    """Canonical form of a single pure term ``(op; word)`` for a basis symbol ``op``."""
    cache = P.__dict__.setdefault("_canon_cache", {})
    key = (op, word)
    hit = cache.get(key)
    if hit is not None:
        return hit
    n = len(word)
    if isinstance(P, ComOperad):
        out = term_el(n, tuple(sorted(word, key=sort_key)))
    elif isinstance(P, AssOperad):
        out = term_el(Permutation.identity(n), tuple(word[j - 1] for j in op.images))
    elif isinstance(P, PointedOperad):
        out = term_el(op, word)
    else:
        sigma = sorting_permutation(word)
        w_sorted = perm_act_word(sigma, word)
        moved = P.act_basis(op, sigma)
        red = _stab_reducer(P, n, _blocks(w_sorted))
        nf = red.reduce(moved)
        out = LinComb((FreeTerm(s, w_sorted), c) for s, c in nf.items())
    cache[key] = out
    return out


def canonicalize(P: Operad, op: LinComb, word: Sequence[Hashable]) -> LinComb:
    """Canonical form of ``(op; word)`` for an operad element ``op``."""
    word = tuple(word)
    for s in op:
        if P.arity(s) != len(word):
            raise ValueError("arity does not match word length")
    return lsum(canonical_term(P, s, word).scale(c) for s, c in op.items())


# ---------------------------------------------------------------------------
# monad structure

def monad_unit(P: Operad, v: LinComb) -> LinComb:
    """η(v) = (1_P; v), extended linearly."""
    return lsum(canonicalize(P, P.unit, (x,)).scale(c) for x, c in v.items())


def eta(P: Operad, x: Hashable) -> LinComb:
    return canonicalize(P, P.unit, (x,))


def monad_mult(P: Operad, outer: LinComb) -> LinComb:
    """γ(μ; (ν_1; w_1), ..., (ν_k; w_k)) = (μ(ν_1, ..., ν_k); w_1 ... w_k)."""
    out = []
    for t, c in outer.items():
        inner = t.word
        if not all(isinstance(s, FreeTerm) for s in inner):
            raise TypeError("monad_mult expects an element whose variables are free terms")
        comp = _compose_cached(P, t.op, tuple(s.op for s in inner))
        word = tuple(itertools.chain.from_iterable(s.word for s in inner))
        out.append(canonicalize(P, comp, word).scale(c))
    return lsum(out)


def _compose_cached(P: Operad, mu: Hashable, nus: Tuple[Hashable, ...]) -> LinComb:
    cache = P.__dict__.setdefault("_comp_cache", {})
    key = (mu, nus)
    hit = cache.get(key)
    if hit is None:
        hit = complete_compose(P, LinComb.single(mu), [LinComb.single(n) for n in nus])
        cache[key] = hit
    return hit


def _as_atom_map(f) -> AtomMap:
    if isinstance(f, LinearMap):
        return f.image
    return f


def _expand(P: Operad, op: Hashable, images: Sequence[LinComb], coeff) -> LinComb:
    if any(not im for im in images):
        return LinComb.zero()
    out: Dict[Hashable, Any] = {}
    for combo in itertools.product(*(list(im.items()) for im in images)):
        c = coeff
        word = []
        for atom, ca in combo:
            c = c * ca
            word.append(atom)
        for t, ct in canonical_term(P, op, tuple(word)).items():
            out[t] = out.get(t, 0) + c * ct
    return LinComb(out)


def functor_map(P: Operad, f, el: LinComb) -> LinComb:
    """S(P, f)(μ; v_1, ..., v_n) = (μ; f(v_1), ..., f(v_n))."""
    f = _as_atom_map(f)
    cache: Dict[Hashable, LinComb] = {}

    def fx(x):
        r = cache.get(x)
        if r is None:
            r = f(x)
            cache[x] = r
        return r

    return lsum(_expand(P, t.op, [fx(x) for x in t.word], c) for t, c in el.items())


def diff_transform(P: Operad, el: LinComb) -> LinComb:
    """∂(μ; v_1..v_n) = Σ_i (μ; (v_1,0), ..., (0,v_i), ..., (v_n,0))."""
    out = []
    for t, c in el.items():
        w = t.word
        for i in range(len(w)):
            word = tuple(Inj(1, x) if j == i else Inj(0, x) for j, x in enumerate(w))
            out.append(canonical_term(P, t.op, word).scale(c))
    return lsum(out)


def dist_law(P: Operad, el: LinComb) -> Tuple[LinComb, LinComb]:
    """λ(μ; (u_1,v_1), ...) = ((μ; u_1, ...), Σ_i (μ; u_1, ..., v_i, ..., u_n))."""
    first = []
    second = []
    for t, c in el.items():
        marks = [a.k for a in t.word]
        base = tuple(a.x for a in t.word)
        ones = [i for i, k in enumerate(marks) if k == 1]
        if not ones:
            first.append(canonical_term(P, t.op, base).scale(c))
        elif len(ones) == 1:
            second.append(canonical_term(P, t.op, base).scale(c))
    return lsum(first), lsum(second)


def inj(k: int) -> AtomMap:
    return lambda x: LinComb.single(Inj(k, x))


def proj(k: int) -> AtomMap:
    return lambda a: LinComb.single(a.x) if a.k == k else LinComb.zero()


def component_map(matrix: Sequence[Sequence[Any]], nested_in: bool = False,
                  nested_out: bool = False) -> AtomMap:
    """Linear map A^m → A^k given by an integer matrix acting on components.

    Row r of ``matrix`` gives output component r as a combination of the m
    input components.  Four-component products may be nested pairs.
    """
    def decode(a):
        if nested_in:
            return 2 * a.k + a.x.k, a.x.x
        return a.k, a.x

    def encode(c, x):
        if nested_out:
            return Inj(c // 2, Inj(c % 2, x))
        return Inj(c, x)

    rows = [[as_scalar(v) for v in row] for row in matrix]

    def f(a):
        c, x = decode(a)
        return LinComb((encode(r, x), rows[r][c]) for r in range(len(rows)) if rows[r][c] != 0)
    return f


def partial_from_lambda(P: Operad, el: LinComb) -> LinComb:
    """π₂ ∘ λ_{V×V} ∘ S(⟨1, 0, 0, 1⟩)."""
    diag = lambda x: LinComb({Inj(0, Inj(0, x)): 1, Inj(1, Inj(1, x)): 1})
    return dist_law(P, functor_map(P, diag, el))[1]


# ---------------------------------------------------------------------------
# D-linear counit

def counit_exists(P: Operad) -> Tuple[bool, Any]:
    """Whether e_P: R → P(1), r ↦ r·1_P is invertible; witness is 1_P or the reason."""
    b1 = P.basis(1)
    if len(b1) != 1:
        return False, f"dim P(1) = {len(b1)}"
    c = P.unit.coeff(b1[0])
    if c == 0:
        return False, "unit is zero"
    return True, (b1[0], c)


def dlinear_counit(P: Operad, el: LinComb) -> LinComb:
    ok, wit = counit_exists(P)
    if not ok:
        raise ValueError(f"no D-linear counit: {wit}")
    sym, c = wit
    inv = 1 / as_scalar(c)
    out: Dict[Hashable, Any] = {}
    for t, ct in el.items():
        if t.arity == 1:
            x = t.word[0]
            out[x] = out.get(x, 0) + ct * inv
    return LinComb(out)


# ---------------------------------------------------------------------------
# enumeration and random elements

def basis_terms(P: Operad, atoms: Sequence[Hashable], max_arity: int, min_arity: int = 0) -> List[FreeTerm]:
    """All canonical basis terms of S(P, V) with arity in the given range."""
    atoms = sorted(atoms, key=sort_key)
    seen = {}
    for n in range(min_arity, max_arity + 1):
        ops = P.basis(n)
        if not ops:
            continue
        for word in itertools.combinations_with_replacement(atoms, n):
            for op in ops:
                for t in canonical_term(P, op, word):
                    seen[t] = None
    return sorted(seen, key=sort_key)


def random_free_element(P: Operad, atoms: Sequence[Hashable], rng: random.Random,
                        max_arity: int = 4, max_terms: int = 4, min_arity: int = 0) -> LinComb:
    """Random element with coefficients in {-3..3} and at most ``max_terms`` terms."""
    arities = [n for n in range(min_arity, max_arity + 1) if P.basis(n)]
    if not arities or not atoms:
        return LinComb.zero()
    out = []
    for _ in range(rng.randint(1, max_terms)):
        n = rng.choice(arities)
        op = rng.choice(P.basis(n))
        word = tuple(rng.choice(list(atoms)) for _ in range(n))
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        out.append(canonical_term(P, op, word).scale(c))
    return lsum(out)


def random_linear_map(src: Sequence[Hashable], dst: Sequence[Hashable], rng: random.Random,
                      density: float = 0.6) -> Dict[Hashable, LinComb]:
    table = {}
    for x in src:
        table[x] = LinComb((y, rng.randint(-3, 3)) for y in dst if rng.random() < density)
    return table

