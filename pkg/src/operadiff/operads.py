"""Symmetric operads: Com, Ass, Lie, A• and finite table operads.

Operad elements are :class:`LinComb` combinations of basis symbols of a
single arity.  Conventions used throughout:

* ``perm_compose(p, q)`` is "p then q", and ``μ·σ`` is a right action.
* As an operation, ``(μ·σ)(a_1, ..., a_n) = μ(a_σ(1), ..., a_σ(n))``.
* ``μ ∘_i ν`` plugs ν into slot ``i`` (1-based).

Equivariance then reads ``(μ·σ) ∘_i ν = (μ ∘_{σ⁻¹(i)} ν)·σ_block`` and
``μ ∘_i (ν·τ) = (μ ∘_i ν)·τ_shift``; see :func:`block_permutation`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Hashable, List, Mapping, Optional, Sequence, Tuple

from . import lie
from .core import (LinComb, Permutation, all_permutations, lsum, perm_compose)
from .report import Report

INF = 10 ** 9


class TruncationError(ValueError):
    """Raised when an operation leaves the arity range an operad knows about."""


class Operad:
    """Base class.  Subclasses implement the basis-level operations."""

    name: str = "operad"
    max_arity: int = INF
    #: True when Σ(n) permutes basis symbols (no signs, no combinations)
    permutes_basis: bool = False

    def basis(self, n: int) -> Tuple[Hashable, ...]:
        raise NotImplementedError

    def arity(self, sym: Hashable) -> int:
        raise NotImplementedError

    @property
    def unit(self) -> LinComb:
        raise NotImplementedError

    def act_basis(self, sym: Hashable, p: Permutation) -> LinComb:
        raise NotImplementedError

    def pcompose_basis(self, mu: Hashable, i: int, nu: Hashable) -> LinComb:
        raise NotImplementedError

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def element_arity(self, el: LinComb) -> Optional[int]:
        ars = {self.arity(s) for s in el}
        if len(ars) > 1:
            raise ValueError("operad element mixes arities")
        return ars.pop() if ars else None

    def _guard(self, n: int) -> None:
        if n > self.max_arity:
            raise TruncationError(f"arity {n} exceeds the truncation bound {self.max_arity} of {self.name}")

    def __repr__(self):
        return f"<Operad {self.name}>"


# ---------------------------------------------------------------------------
# generic operations on elements

def partial_compose(P: Operad, mu: LinComb, i: int, nu: LinComb) -> LinComb:
    """``μ ∘_i ν``, bilinear in both arguments."""
    out = []
    for m, cm in mu.items():
        am = P.arity(m)
        if not 1 <= i <= am:
            raise IndexError(f"slot {i} out of range for arity {am}")
        for n, cn in nu.items():
            P._guard(am + P.arity(n) - 1)
            out.append(P.pcompose_basis(m, i, n).scale(cm * cn))
    return lsum(out)


def complete_compose(P: Operad, mu: LinComb, nus: Sequence[LinComb]) -> LinComb:
    """``μ(ν_1, ..., ν_k)`` by plugging from the last slot down to the first."""
    k = P.element_arity(mu)
    if k is not None and k != len(nus):
        raise ValueError(f"need {k} inner operations, got {len(nus)}")
    acc = mu
    for i in range(len(nus), 0, -1):
        acc = partial_compose(P, acc, i, nus[i - 1])
    return acc


def sigma_act(P: Operad, el: LinComb, p: Permutation) -> LinComb:
    out = []
    for s, c in el.items():
        if P.arity(s) != p.n:
            raise ValueError("permutation size does not match arity")
        out.append(P.act_basis(s, p).scale(c))
    return lsum(out)


def block_permutation(sigma: Permutation, i: int, n: int) -> Permutation:
    """The σ_block with ``(μ·σ) ∘_i ν = (μ ∘_{σ⁻¹(i)} ν)·σ_block`` for ν of arity n."""
    def idx(q):
        if q < i:
            return [q]
        if q == i:
            return list(range(i, i + n))
        return [q + n - 1]
    seq = []
    for pslot in range(1, sigma.n + 1):
        seq.extend(idx(sigma(pslot)))
    return Permutation(tuple(seq))


def shift_permutation(m: int, i: int, tau: Permutation) -> Permutation:
    """τ acting on the block of slots ``i .. i+n-1`` inside arity ``m+n-1``."""
    n = tau.n
    img = list(range(1, m + n))
    for r in range(1, n + 1):
        img[i - 1 + r - 1] = i - 1 + tau(r)
    return Permutation(tuple(img))


# ---------------------------------------------------------------------------
# Com

class ComOperad(Operad):
    name = "com"
    permutes_basis = True

    def basis(self, n):
        self._guard(n)
        return (n,) if n >= 0 else ()

    def arity(self, sym):
        return sym

    @property
    def unit(self):
        return LinComb.single(1)

    def act_basis(self, sym, p):
        return LinComb.single(sym)

    def pcompose_basis(self, mu, i, nu):
        return LinComb.single(mu + nu - 1)


# ---------------------------------------------------------------------------
# Ass: basis of Ass(n) is Σ(n); π is the operation a ↦ a_π(1) ... a_π(n)

class AssOperad(Operad):
    name = "ass"
    permutes_basis = True

    def basis(self, n):
        self._guard(n)
        return tuple(all_permutations(n))

    def arity(self, sym):
        return sym.n

    @property
    def unit(self):
        return LinComb.single(Permutation((1,)))

    def act_basis(self, sym, p):
        return LinComb.single(perm_compose(sym, p))

    def pcompose_basis(self, mu, i, nu):
        return LinComb.single(_ass_compose(mu, i, nu))


@lru_cache(maxsize=None)
def _ass_compose(pi: Permutation, i: int, rho: Permutation) -> Permutation:
    n = rho.n
    seq = []
    for j in pi.images:
        if j < i:
            seq.append(j)
        elif j == i:
            seq.extend(i - 1 + r for r in rho.images)
        else:
            seq.append(j + n - 1)
    return Permutation(tuple(seq))


# ---------------------------------------------------------------------------
# Lie: basis symbols are right-normed leaf orders ending in n

class LieOperad(Operad):
    name = "lie"

    def basis(self, n):
        self._guard(n)
        if n <= 0:
            return ()
        return tuple(tuple(p) + (n,) for p in itertools.permutations(range(1, n)))

    def arity(self, sym):
        return len(sym)

    @property
    def unit(self):
        return LinComb.single((1,))

    def act_basis(self, sym, p):
        return _lie_act(sym, p)

    def pcompose_basis(self, mu, i, nu):
        return _lie_compose(mu, i, nu)


@lru_cache(maxsize=None)
def _lie_act(sym: tuple, p: Permutation) -> LinComb:
    return lie.normalize_words(LinComb.single(tuple(p(l) for l in sym)))


@lru_cache(maxsize=None)
def _lie_compose(mu: tuple, i: int, nu: tuple) -> LinComb:
    n = len(nu)

    def relabel(l):
        return l if l < i else l + n - 1

    inner = lie.word_to_tree(tuple(i - 1 + l for l in nu))

    def subst(t):
        if isinstance(t, lie.Bracket):
            return lie.Bracket(subst(t.left), subst(t.right))
        return inner if t == i else relabel(t)

    return lie.normalize(subst(lie.word_to_tree(mu)))


# ---------------------------------------------------------------------------
# A•: A•(1) = A, zero elsewhere

@dataclass(frozen=True)
class AssocAlgebraData:
    """A unital associative algebra by structure constants."""

    basis: Tuple[str, ...]
    unit: LinComb
    mult: Mapping[Tuple[str, str], LinComb]
    name: str = "A"

    def product(self, x: LinComb, y: LinComb) -> LinComb:
        return lsum(self.mult.get((a, b), LinComb.zero()).scale(ca * cb)
                    for a, ca in x.items() for b, cb in y.items())

    def check(self) -> List[str]:
        errs = []
        for a in self.basis:
            e = LinComb.single(a)
            if self.product(self.unit, e) != e or self.product(e, self.unit) != e:
                errs.append(f"unit fails on {a}")
        for a, b, c in itertools.product(self.basis, repeat=3):
            ea, eb, ec = (LinComb.single(s) for s in (a, b, c))
            if self.product(self.product(ea, eb), ec) != self.product(ea, self.product(eb, ec)):
                errs.append(f"associativity fails on ({a},{b},{c})")
        return errs


class PointedOperad(Operad):
    """The operad A• whose algebras are left A-modules."""

    permutes_basis = True

    def __init__(self, A: AssocAlgebraData):
        self.A = A
        self.name = f"abullet({A.name})"

    def basis(self, n):
        return tuple(self.A.basis) if n == 1 else ()

    def arity(self, sym):
        return 1

    @property
    def unit(self):
        return self.A.unit

    def act_basis(self, sym, p):
        return LinComb.single(sym)

    def pcompose_basis(self, mu, i, nu):
        return self.A.mult.get((mu, nu), LinComb.zero())


def dual_numbers_data(var: str = "t") -> AssocAlgebraData:
    one = LinComb.single("1")
    t = LinComb.single(var)
    return AssocAlgebraData(("1", var), one,
                            {("1", "1"): one, ("1", var): t, (var, "1"): t},
                            name=f"Q[{var}]/({var}^2)")


def field_data() -> AssocAlgebraData:
    one = LinComb.single("1")
    return AssocAlgebraData(("1",), one, {("1", "1"): one}, name="Q")


# ---------------------------------------------------------------------------
# table operads

class TableOperad(Operad):
    """A truncated operad given by explicit tables.

    ``components[n]`` lists the basis names of P(n); names must be unique
    across arities.  ``action[(sym, images)]`` and ``composition[(mu, i, nu)]``
    hold combinations; missing action entries for the identity are implied,
    and missing composition entries inside the truncation are zero.
    """

    def __init__(self, name: str, components: Mapping[int, Sequence[str]], unit: LinComb,
                 action: Mapping[Tuple[str, Tuple[int, ...]], LinComb],
                 composition: Mapping[Tuple[str, int, str], LinComb], max_arity: int):
        self.name = name
        self.max_arity = max_arity
        self._components = {n: tuple(b) for n, b in components.items()}
        self._arity = {}
        for n, names in self._components.items():
            for s in names:
                if s in self._arity:
                    raise ValueError(f"basis name {s!r} used twice")
                self._arity[s] = n
        self._unit = unit
        self._action = dict(action)
        self._composition = dict(composition)
        self.permutes_basis = all(len(v) == 1 and next(iter(v.items()))[1] == 1
                                  for v in self._action.values())

    def basis(self, n):
        self._guard(n)
        return self._components.get(n, ())

    def arity(self, sym):
        return self._arity[sym]

    @property
    def unit(self):
        return self._unit

    def act_basis(self, sym, p):
        if p.is_identity():
            return LinComb.single(sym)
        key = (sym, p.images)
        if key not in self._action:
            raise KeyError(f"action table has no entry for {sym!r}·{p.images}")
        return self._action[key]

    def pcompose_basis(self, mu, i, nu):
        self._guard(self.arity(mu) + self.arity(nu) - 1)
        return self._composition.get((mu, i, nu), LinComb.zero())


def make_com() -> ComOperad:
    return ComOperad()


def make_ass() -> AssOperad:
    return AssOperad()


def make_lie() -> LieOperad:
    return LieOperad()


def make_pointed_operad(A: AssocAlgebraData) -> PointedOperad:
    errs = A.check()
    if errs:
        raise ValueError("not a unital associative algebra: " + "; ".join(errs[:3]))
    return PointedOperad(A)


def make_table_operad(spec: Mapping[str, Any], verify: bool = True) -> TableOperad:
    """Build a table operad from a plain mapping (see :mod:`operadiff.specfile`)."""
    P = TableOperad(spec.get("name", "table"), spec["components"], spec["unit"],
                    spec.get("action", {}), spec.get("composition", {}), spec.get("max_arity", 3))
    if verify:
        rep = check_operad_axioms(P, P.max_arity)
        if not rep.ok:
            raise ValueError("table operad fails its axioms: " + ", ".join(rep.failed()))
    return P


def operad_by_name(name: str) -> Operad:
    key = name.lower()
    if key == "com":
        return make_com()
    if key == "ass":
        return make_ass()
    if key == "lie":
        return make_lie()
    if key in ("abullet", "a•", "dual", "pointed"):
        return make_pointed_operad(dual_numbers_data())
    raise KeyError(f"unknown operad {name!r}")


# ---------------------------------------------------------------------------
# axiom checks

def _perm_sample(n: int) -> List[Permutation]:
    if n <= 3:
        return all_permutations(n)
    gens = [Permutation.identity(n)]
    for k in range(1, n):
        gens.append(Permutation.from_cycles(n, (k, k + 1)))
    gens.append(Permutation.from_cycles(n, tuple(range(1, n + 1))))
    return gens


def check_operad_axioms(P: Operad, max_arity: int = 4) -> Report:
    """Unit, action, associativity and equivariance laws on basis symbols."""
    if max_arity > P.max_arity:
        raise TruncationError("bound exceeds the operad truncation")
    rep = Report("check-operad", operad=P.name, bounds={"max_arity": max_arity})
    u = P.unit
    arities = range(0, max_arity + 1)
    B = {n: P.basis(n) for n in arities}
    one = lambda s: LinComb.single(s)

    for n in arities:
        for s in B[n]:
            mu = one(s)
            rep.record("unit-left", partial_compose(P, u, 1, mu) == mu, f"1∘1 {s!r}", "operad-unit")
            for i in range(1, n + 1):
                rep.record("unit-right", partial_compose(P, mu, i, u) == mu, f"{s!r}∘{i} 1", "operad-unit")

    for n in arities:
        perms = _perm_sample(n)
        for s in B[n]:
            mu = one(s)
            rep.record("action-identity", sigma_act(P, mu, Permutation.identity(n)) == mu, s, "action")
            for p, q in itertools.product(perms, repeat=2):
                lhs = sigma_act(P, sigma_act(P, mu, p), q)
                rhs = sigma_act(P, mu, perm_compose(p, q))
                rep.record("action-right-law", lhs == rhs, (s, p.images, q.images), "action")

    for l, m, n in itertools.product(range(1, max_arity + 1), range(0, max_arity + 1), range(0, max_arity + 1)):
        if l + m + n - 2 > max_arity:
            continue
        for a, b, c in itertools.product(B[l], B[m], B[n]):
            la, mb, nc = one(a), one(b), one(c)
            for i in range(1, l + 1):
                for j in range(1, m + 1):
                    lhs = partial_compose(P, partial_compose(P, la, i, mb), i + j - 1, nc)
                    rhs = partial_compose(P, la, i, partial_compose(P, mb, j, nc))
                    rep.record("sequential-associativity", lhs == rhs, (a, i, b, j, c), "operad-assoc")
            for i in range(1, l + 1):
                for k in range(i + 1, l + 1):
                    lhs = partial_compose(P, partial_compose(P, la, i, mb), k + m - 1, nc)
                    rhs = partial_compose(P, partial_compose(P, la, k, nc), i, mb)
                    rep.record("parallel-associativity", lhs == rhs, (a, i, b, k, c), "operad-assoc")

    for m, n in itertools.product(range(1, max_arity + 1), range(0, max_arity + 1)):
        if m + n - 1 > max_arity:
            continue
        for a, b in itertools.product(B[m], B[n]):
            mu, nu = one(a), one(b)
            for i in range(1, m + 1):
                for sig in _perm_sample(m):
                    k = sig.inverse()(i)
                    lhs = partial_compose(P, sigma_act(P, mu, sig), i, nu)
                    rhs = sigma_act(P, partial_compose(P, mu, k, nu), block_permutation(sig, i, n))
                    rep.record("equivariance-outer", lhs == rhs, (a, sig.images, i, b), "operad-equivariance")
                for tau in _perm_sample(n):
                    lhs = partial_compose(P, mu, i, sigma_act(P, nu, tau))
                    rhs = sigma_act(P, partial_compose(P, mu, i, nu), shift_permutation(m, i, tau))
                    rep.record("equivariance-inner", lhs == rhs, (a, i, b, tau.images), "operad-equivariance")
    return rep


@dataclass
class OperadMorphism:
    source: Operad
    target: Operad
    on_basis: Callable[[Hashable], LinComb]

    def __call__(self, el: LinComb) -> LinComb:
        return el.apply(self.on_basis)


def abelianization() -> OperadMorphism:
    """Ass → Com, every permutation to the single basis element."""
    return OperadMorphism(make_ass(), make_com(), lambda p: LinComb.single(p.n))


def identity_morphism(P: Operad) -> OperadMorphism:
    return OperadMorphism(P, P, LinComb.single)


def check_operad_morphism(f: OperadMorphism, max_arity: int = 4) -> Report:
    P, Q = f.source, f.target
    rep = Report("check-operad-morphism", operad=f"{P.name}->{Q.name}", bounds={"max_arity": max_arity})
    rep.record("unit", f(P.unit) == Q.unit, (f(P.unit), Q.unit), "morphism-unit")
    for n in range(0, max_arity + 1):
        for s in P.basis(n):
            mu = LinComb.single(s)
            for p in _perm_sample(n):
                rep.record("equivariance", f(sigma_act(P, mu, p)) == sigma_act(Q, f(mu), p),
                           (s, p.images), "morphism-equivariance")
    for m, n in itertools.product(range(1, max_arity + 1), range(0, max_arity + 1)):
        if m + n - 1 > max_arity:
            continue
        for a, b in itertools.product(P.basis(m), P.basis(n)):
            for i in range(1, m + 1):
                mu, nu = LinComb.single(a), LinComb.single(b)
                lhs = f(partial_compose(P, mu, i, nu))
                rhs = partial_compose(Q, f(mu), i, f(nu))
                rep.record("composition", lhs == rhs, (a, i, b), "morphism-composition")
    return rep
