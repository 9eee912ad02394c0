"""Exact linear algebra over Q (or Z/p) and symmetric-group helpers.

Everything downstream works with :class:`LinComb`, an immutable sparse
linear combination of hashable symbols.  Vectors, operad elements and
free-algebra elements are all ``LinComb`` instances over different symbol
types, so one small arithmetic kernel serves the whole package.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Sequence, Tuple


# ---------------------------------------------------------------------------
# scalars


class ModP:
    """Residue class modulo a prime, stored in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: Any, p: int):
        if isinstance(v, Fraction):
            num = v.numerator % p
            den = v.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"{v} has no residue mod {p}")
            v = num * pow(den, -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other: Any) -> "ModP":
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixing residues of different primes")
            return other
        if isinstance(other, (int, Fraction)):
            return ModP(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return ModP(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return ModP(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return ModP(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return ModP(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.v == 0:
            raise ZeroDivisionError("division by zero residue")
        return ModP(self.v * pow(o.v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            try:
                return self.v == ModP(other, self.p).v
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Field:
    """Tag for the scalar field: ``p == 0`` means the rationals."""

    p: int = 0

    def __call__(self, value: Any):
        if self.p == 0:
            if isinstance(value, str):
                return Fraction(value.strip())
            return Fraction(value)
        if isinstance(value, str):
            value = Fraction(value.strip())
        return ModP(value, self.p)

    @property
    def name(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def GF(p: int) -> Field:
    if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return Field(p)


def as_scalar(value: Any):
    if isinstance(value, (Fraction, ModP)):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


# ---------------------------------------------------------------------------
# ordering of symbols

def sort_key(obj: Any) -> tuple:
    """Total order on the heterogeneous symbols used as basis names."""
    k = getattr(obj, "sort_key", None)
    if k is not None:
        return k()
    if isinstance(obj, bool):
        return (0, int(obj))
    if isinstance(obj, int):
        return (0, obj)
    if isinstance(obj, str):
        return (1, obj)
    if isinstance(obj, tuple):
        return (2, len(obj), tuple(sort_key(x) for x in obj))
    if isinstance(obj, Fraction):
        return (0, obj)
    raise TypeError(f"no sort key for {obj!r}")


# ---------------------------------------------------------------------------
# sparse linear combinations

class LinComb:
    """Immutable finite linear combination of hashable symbols.

    Zero coefficients are never stored, so equality is structural.
    """

    __slots__ = ("_d", "_h")

    def __init__(self, data: Mapping[Hashable, Any] | Iterable[Tuple[Hashable, Any]] = ()):
        d: Dict[Hashable, Any] = {}
        items = data.items() if isinstance(data, Mapping) else data
        for k, c in items:
            if k in d:
                d[k] = d[k] + c
            else:
                d[k] = as_scalar(c) if isinstance(c, int) else c
        self._d = {k: c for k, c in d.items() if c != 0}
        self._h = None

    @classmethod
    def _raw(cls, d: Dict[Hashable, Any]) -> "LinComb":
        obj = cls.__new__(cls)
        obj._d = d
        obj._h = None
        return obj

    @classmethod
    def single(cls, key: Hashable, coeff: Any = 1) -> "LinComb":
        c = as_scalar(coeff) if isinstance(coeff, int) else coeff
        return cls._raw({key: c} if c != 0 else {})

    @classmethod
    def zero(cls) -> "LinComb":
        return cls._raw({})

    # mapping-like access
    def __getitem__(self, key):
        return self._d.get(key, 0)

    def coeff(self, key):
        return self._d.get(key, 0)

    def __contains__(self, key):
        return key in self._d

    def __iter__(self) -> Iterator:
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def items(self):
        return self._d.items()

    def keys(self):
        return self._d.keys()

    def sorted_items(self) -> List[Tuple[Hashable, Any]]:
        return sorted(self._d.items(), key=lambda kv: sort_key(kv[0]))

    # arithmetic
    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            if other == 0:
                return self
            return NotImplemented
        if not other._d:
            return self
        if not self._d:
            return other
        d = dict(self._d)
        for k, c in other._d.items():
            v = d.get(k)
            if v is None:
                d[k] = c
            else:
                v = v + c
                if v == 0:
                    del d[k]
                else:
                    d[k] = v
        return LinComb._raw(d)

    def __radd__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    def __neg__(self) -> "LinComb":
        return LinComb._raw({k: -c for k, c in self._d.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def scale(self, c: Any) -> "LinComb":
        if c == 0:
            return LinComb._raw({})
        if c == 1:
            return self
        return LinComb._raw({k: v * c for k, v in self._d.items()})

    def __rmul__(self, c: Any) -> "LinComb":
        if isinstance(c, LinComb):
            return NotImplemented
        return self.scale(c)

    def __mul__(self, c: Any) -> "LinComb":
        if isinstance(c, LinComb):
            return NotImplemented
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._d == other._d
        if isinstance(other, int) and other == 0:
            return not self._d
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._d.items()))
        return self._h

    def map_keys(self, f: Callable[[Hashable], Hashable]) -> "LinComb":
        """Relabel symbols through ``f`` (linear extension)."""
        return LinComb((f(k), c) for k, c in self._d.items())

    def apply(self, f: Callable[[Hashable], "LinComb"]) -> "LinComb":
        """Linear extension of a map from symbols to combinations."""
        acc: Dict[Hashable, Any] = {}
        for k, c in self._d.items():
            for k2, c2 in f(k).items():
                acc[k2] = acc.get(k2, 0) + c * c2
        return LinComb(acc)

    def __repr__(self):
        if not self._d:
            return "0"
        return " + ".join(f"{c}*{k!r}" for k, c in self.sorted_items())


def lsum(items: Iterable[LinComb]) -> LinComb:
    acc: Dict[Hashable, Any] = {}
    for el in items:
        for k, c in el.items():
            acc[k] = acc.get(k, 0) + c
    return LinComb(acc)


# ---------------------------------------------------------------------------
# based modules and linear maps

@dataclass(frozen=True)
class BasedModule:
    basis: Tuple[Hashable, ...]
    field: Field = QQ

    def __post_init__(self):
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis names must be distinct")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, sym) -> int:
        return self.basis.index(sym)

    def vector(self, coeffs: Mapping[Hashable, Any] | None = None) -> LinComb:
        v = LinComb(coeffs or {})
        bad = [k for k in v if k not in self.basis]
        if bad:
            raise KeyError(f"symbols {bad} are not in the basis")
        return v

    def basis_vector(self, sym) -> LinComb:
        return LinComb.single(sym)

    def contains(self, v: LinComb) -> bool:
        return all(k in self.basis for k in v)


class LinearMap:
    """Linear map between based modules, stored column by column."""

    def __init__(self, domain: BasedModule, codomain: BasedModule,
                 columns: Mapping[Hashable, LinComb]):
        self.domain = domain
        self.codomain = codomain
        cols = {}
        for b in domain.basis:
            col = columns.get(b, LinComb.zero())
            if not codomain.contains(col):
                raise ValueError(f"column {b!r} leaves the codomain: {col!r}")
            cols[b] = col
        self.columns = cols

    @classmethod
    def from_function(cls, domain: BasedModule, codomain: BasedModule,
                      f: Callable[[Hashable], LinComb]) -> "LinearMap":
        return cls(domain, codomain, {b: f(b) for b in domain.basis})

    @classmethod
    def identity(cls, m: BasedModule) -> "LinearMap":
        return cls(m, m, {b: LinComb.single(b) for b in m.basis})

    @classmethod
    def zero(cls, domain: BasedModule, codomain: BasedModule) -> "LinearMap":
        return cls(domain, codomain, {})

    def __call__(self, v: LinComb) -> LinComb:
        return v.apply(lambda k: self.columns[k])

    def image(self, sym) -> LinComb:
        return self.columns[sym]

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """``self ∘ inner``."""
        if inner.codomain != self.domain:
            raise ValueError("modules do not match for composition")
        return LinearMap(inner.domain, self.codomain,
                         {b: self(inner.columns[b]) for b in inner.domain.basis})

    def __matmul__(self, inner: "LinearMap") -> "LinearMap":
        return self.compose(inner)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.domain, self.codomain,
                         {b: self.columns[b] + other.columns[b] for b in self.domain.basis})

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.domain, self.codomain,
                         {b: self.columns[b] - other.columns[b] for b in self.domain.basis})

    def scale(self, c) -> "LinearMap":
        return LinearMap(self.domain, self.codomain,
                         {b: col.scale(c) for b, col in self.columns.items()})

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.columns == other.columns)

    def __hash__(self):
        return hash((self.domain, self.codomain, tuple(self.columns[b] for b in self.domain.basis)))

    def matrix(self) -> List[List[Any]]:
        return [[self.columns[b].coeff(r) for b in self.domain.basis] for r in self.codomain.basis]

    def rank(self) -> int:
        return len(Reducer(list(self.columns.values()), order=self.codomain.basis).pivots)

    def __repr__(self):
        body = ", ".join(f"{b!r}->{c!r}" for b, c in self.columns.items())
        return f"LinearMap({body})"


# ---------------------------------------------------------------------------
# elimination

class Reducer:
    """Semi-echelon form of a span of vectors with min-column pivots.

    The column order is the basis order when ``order`` is given, and the
    :func:`sort_key` order otherwise.  Normal forms modulo the span are
    unique and supported only on non-pivot columns.
    """

    def __init__(self, rows: Iterable[LinComb] = (), order: Sequence[Hashable] | None = None):
        self._pos = {c: i for i, c in enumerate(order)} if order is not None else None
        self._keys: Dict[Hashable, Any] = {}
        self.pivots: Dict[Hashable, LinComb] = {}
        for r in rows:
            self.add(r)

    def _key(self, col):
        k = self._keys.get(col)
        if k is None:
            k = self._pos[col] if self._pos is not None else sort_key(col)
            self._keys[col] = k
        return k

    def reduce(self, v: LinComb) -> LinComb:
        """Normal form of ``v`` modulo the span."""
        if not self.pivots:
            return v
        d = dict(v.items())
        heap = [(self._key(c), i, c) for i, c in enumerate(d) if c in self.pivots]
        heapq.heapify(heap)
        counter = len(d)
        while heap:
            _, _, col = heapq.heappop(heap)
            c = d.get(col)
            if c is None or c == 0:
                continue
            row = self.pivots[col]
            for k, rc in row.items():
                nv = d.get(k, 0) - c * rc
                if nv == 0:
                    d.pop(k, None)
                else:
                    if k not in d and k in self.pivots:
                        counter += 1
                        heapq.heappush(heap, (self._key(k), counter, k))
                    d[k] = nv
        return LinComb._raw(d)

    def add(self, v: LinComb) -> bool:
        """Insert a vector; return True when it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        col = min(r.keys(), key=self._key)
        inv = 1 / r.coeff(col)
        self.pivots[col] = r.scale(inv)
        return True

    def contains(self, v: LinComb) -> bool:
        return not self.reduce(v)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rref_rows(self) -> List[LinComb]:
        """Fully reduced rows sorted by pivot."""
        cols = sorted(self.pivots, key=self._key)
        out: Dict[Hashable, LinComb] = {}
        for col in reversed(cols):
            row = self.pivots[col]
            tail = LinComb._raw({k: c for k, c in row.items() if k != col})
            tail = _reduce_with(tail, out)
            out[col] = LinComb.single(col) + tail
        return [out[c] for c in cols]


def _reduce_with(v: LinComb, rows: Mapping[Hashable, LinComb]) -> LinComb:
    acc = v
    for col, row in rows.items():
        c = acc.coeff(col)
        if c != 0:
            acc = acc - row.scale(c)
    return acc


def solve_kernel(m: LinearMap) -> List[LinComb]:
    """Basis of ker(m), one vector per free column with a 1 there."""
    dom = m.domain.basis
    # rows of the transpose system: unknown x_b for b in dom, equation per codomain symbol
    eqs: Dict[Hashable, Dict[Hashable, Any]] = {}
    for b in dom:
        for r, c in m.columns[b].items():
            eqs.setdefault(r, {})[b] = c
    red = Reducer((LinComb(e) for e in eqs.values()), order=dom)
    rows = {next(iter(sorted(r.keys(), key=dom.index))): r for r in red.rref_rows()}
    free = [b for b in dom if b not in rows]
    basis = []
    for f in free:
        vec = {f: as_scalar(1)}
        for p, row in rows.items():
            c = row.coeff(f)
            if c != 0:
                vec[p] = -c
        basis.append(LinComb(vec))
    return basis


def quotient_basis(ambient: BasedModule, relations: Sequence[LinComb]) -> Tuple[List[LinComb], LinearMap]:
    """Representatives of a basis of ``ambient / span(relations)`` and the projection.

    The projection lands in a module whose basis names are the representing
    ambient symbols, so ``projection(v)`` is the normal form of ``v``.
    """
    red = Reducer(relations, order=ambient.basis)
    reps = [b for b in ambient.basis if b not in red.pivots]
    quot = BasedModule(tuple(reps), ambient.field)
    proj = LinearMap(ambient, quot, {b: red.reduce(LinComb.single(b)) for b in ambient.basis})
    return [LinComb.single(b) for b in reps], proj


# ---------------------------------------------------------------------------
# permutations

@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``images[i-1]`` is the image of ``i``.

    Composition ``perm_compose(p, q)`` means "apply p, then q".  With that
    convention ``perm_act_word`` (place letter ``i`` at position ``p(i)``) is
    a right action: acting by ``perm_compose(p, q)`` equals acting by p and
    then by q.
    """

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        img = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b
        return cls(tuple(img))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def sort_key(self):
        return (3, self.images)


def perm_compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation ``i ↦ q(p(i))``."""
    if p.n != q.n:
        raise ValueError("permutation sizes differ")
    return Permutation(tuple(q.images[j - 1] for j in p.images))


def perm_act_word(p: Permutation, w: Sequence) -> tuple:
    """Move the letter in position ``i`` to position ``p(i)``."""
    if p.n != len(w):
        raise ValueError("permutation size does not match word length")
    out = [None] * p.n
    for i, letter in enumerate(w):
        out[p.images[i] - 1] = letter
    return tuple(out)


def all_permutations(n: int) -> List[Permutation]:
    return [Permutation(tuple(x)) for x in itertools.permutations(range(1, n + 1))]


def sorting_permutation(w: Sequence, key: Callable = sort_key) -> Permutation:
    """The σ with ``perm_act_word(σ, w)`` sorted (stable for equal letters)."""
    order = sorted(range(len(w)), key=lambda i: (key(w[i]), i))
    img = [0] * len(w)
    for pos, i in enumerate(order, start=1):
        img[i] = pos
    return Permutation(tuple(img))
