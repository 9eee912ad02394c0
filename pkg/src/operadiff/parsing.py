"""Expression syntax for free-algebra elements, per operad flavor.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := ['-'] [rational ['*']] factor ('*' factor)*  |  ['-'] rational
    factor := var ['^' nat]          (powers: Com only)
            | '[' expr ',' expr ']'  (Lie only)
            | '(' expr ')'
    var    := [a-z][a-z0-9_']*

Variables may carry tangent marks: ``dx`` is the tangent copy of x,
``d2x`` the second of several tangent copies, and ``d'x`` / ``d'dx`` the
outer marks of an iterated bundle.  When an expression mentions any marked
variable, the plain variables are read as their point copies, so atoms are
``Inj(k, x)`` (one layer) or ``Inj(i, Inj(j, x))`` (two layers).  Names in
``variables`` are always plain, which resolves clashes such as ``delta``.

A• elements are written ``r*m`` with ring basis names on the left of a
single module variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Any, Collection, Hashable, List, Optional, Sequence, Tuple

from .core import LinComb, Permutation, lsum, sort_key
from .free import FreeTerm, Inj, eta, monad_mult, term_el
from .operads import AssOperad, ComOperad, LieOperad, Operad, PointedOperad


class ParseError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line, self.col = line, col


# ---------------------------------------------------------------------------
# syntax tree

@dataclass(frozen=True)
class Var:
    name: str
    pos: int = 0


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[Fraction, Any], ...]


@dataclass(frozen=True)
class Product:
    factors: Tuple[Any, ...]


@dataclass(frozen=True)
class Power:
    base: Any
    exp: int
    pos: int = 0


@dataclass(frozen=True)
class BracketNode:
    left: Any
    right: Any
    pos: int = 0


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[a-z][a-z0-9_']*)|(?P<op>[-+*^\[\](),]))")


def _tokens(text: str) -> List[Tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", text, pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value: Optional[str] = None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        terms = [self.term(Fraction(1))]
        while self.peek()[1] in ("+", "-"):
            sign = Fraction(1) if self.take()[1] == "+" else Fraction(-1)
            terms.append(self.term(sign))
        return Sum(tuple(terms))

    def term(self, sign: Fraction):
        if self.peek()[1] == "-":
            self.take()
            sign = -sign
        coeff = sign
        factors = []
        if self.peek()[0] == "num":
            coeff = coeff * Fraction(self.take()[1])
            if self.peek()[1] == "*":
                self.take()
                factors.append(self.factor())
        else:
            factors.append(self.factor())
        while self.peek()[1] == "*":
            self.take()
            factors.append(self.factor())
        return coeff, Product(tuple(factors))

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "var":
            self.take()
            node = Var(val, pos)
        elif val == "(":
            self.take()
            node = self.expr()
            self.take(")")
        elif val == "[":
            self.take()
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take("]")
            node = BracketNode(left, right, pos)
        else:
            raise ParseError(f"unexpected {val or 'end of input'!r}", self.text, pos)
        if self.peek()[1] == "^":
            p = self.take()[2]
            kind, val, npos = self.take()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be a natural number", self.text, npos)
            node = Power(node, int(val), p)
        return node

    def parse(self):
        tree = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", self.text, pos)
        return tree


def parse_ast(text: str):
    """Syntax tree of an expression; flavor checks happen during evaluation."""
    if not text.strip():
        raise ParseError("empty expression", text, 0)
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# variables with tangent marks

_MARKED = re.compile(r"^(?P<outer>d')?(?P<inner>d\d*)?(?P<base>[a-z][a-z0-9_]*)$")


def _split_var(name: str, plain: Collection[str]) -> Tuple[int, int, str]:
    """(outer mark, inner mark, base name) for a variable token."""
    if name in plain:
        return 0, 0, name
    m = _MARKED.match(name)
    if not m or (m.group("inner") is None and m.group("outer") is None) or len(name) == 1:
        return 0, 0, name
    outer = 1 if m.group("outer") else 0
    inner = m.group("inner")
    if inner is None:
        j = 0
    else:
        j = int(inner[1:]) if len(inner) > 1 else 1
    base = m.group("base")
    if plain and base not in plain:
        return 0, 0, name
    return outer, j, base


def _collect_vars(node, out: List[str]):
    if isinstance(node, Var):
        out.append(node.name)
    elif isinstance(node, Sum):
        for _, t in node.terms:
            _collect_vars(t, out)
    elif isinstance(node, Product):
        for f in node.factors:
            _collect_vars(f, out)
    elif isinstance(node, Power):
        _collect_vars(node.base, out)
    elif isinstance(node, BracketNode):
        _collect_vars(node.left, out)
        _collect_vars(node.right, out)


def _atom_resolver(tree, plain: Collection[str], ring: Collection[str], layers: Optional[int] = None):
    names = []
    _collect_vars(tree, names)
    split = {n: _split_var(n, plain) for n in names if n not in ring}
    depth = 2 if any(o for o, _, _ in split.values()) else (1 if any(j for _, j, _ in split.values()) else 0)
    if layers is not None:
        if layers < depth:
            raise ParseError(f"marked variables need {depth} layers, not {layers}")
        depth = layers

    def atom(name):
        o, j, base = split[name]
        if depth == 0:
            return base
        if depth == 1:
            return Inj(j, base)
        return Inj(o, Inj(j, base))

    return atom


# ---------------------------------------------------------------------------
# evaluation into S(P, V)

def flavor_of(P: Operad) -> str:
    for cls, name in ((ComOperad, "com"), (AssOperad, "ass"), (LieOperad, "lie"), (PointedOperad, "abullet")):
        if isinstance(P, cls):
            return name
    raise ValueError(f"no expression syntax for {P.name}")


def compose_elements(P: Operad, mu, els: Sequence[LinComb]) -> LinComb:
    """γ(μ; e_1, ..., e_n) for elements e_i of S(P, V), extended multilinearly."""
    acc = [(1, ())]
    for e in els:
        acc = [(c * ce, w + (t,)) for c, w in acc for t, ce in e.items()]
    return lsum(monad_mult(P, term_el(mu, w)).scale(c) for c, w in acc)


def _unit_constant(P: Operad) -> LinComb:
    if isinstance(P, ComOperad):
        return term_el(0, ())
    if isinstance(P, AssOperad):
        return term_el(Permutation(()), ())
    raise ParseError(f"{P.name} has no constants; scalars must multiply a variable")


def _mul2(P: Operad) -> Hashable:
    return 2 if isinstance(P, ComOperad) else Permutation((1, 2))


class _Evaluator:
    def __init__(self, P: Operad, text: str, atom):
        self.P = P
        self.flavor = flavor_of(P)
        self.text = text
        self.atom = atom
        self.ring = set(P.A.basis) if isinstance(P, PointedOperad) else set()

    def fail(self, msg, pos=0):
        raise ParseError(msg, self.text, pos)

    def ev(self, node) -> LinComb:
        P = self.P
        if isinstance(node, Var):
            if node.name in self.ring:
                self.fail(f"ring element {node.name!r} must act on a module variable", node.pos)
            return eta(P, self.atom(node.name))
        if isinstance(node, Sum):
            return lsum(self.term(c, t) for c, t in node.terms)
        if isinstance(node, Power):
            if self.flavor != "com":
                self.fail(f"powers are not available for {self.flavor}", node.pos)
            base = self.ev(node.base)
            if node.exp == 0:
                return _unit_constant(P)
            return compose_elements(P, node.exp, [base] * node.exp) if len(base) == 1 \
                else self._product([base] * node.exp)
        if isinstance(node, BracketNode):
            if self.flavor != "lie":
                self.fail(f"brackets are not available for {self.flavor}", node.pos)
            return compose_elements(P, (1, 2), [self.ev(node.left), self.ev(node.right)])
        if isinstance(node, Product):
            return self.term(Fraction(1), node)
        raise TypeError(node)

    def _product(self, els: List[LinComb]) -> LinComb:
        acc = els[0]
        for e in els[1:]:
            acc = compose_elements(self.P, _mul2(self.P), [acc, e])
        return acc

    def term(self, coeff: Fraction, prod: Product) -> LinComb:
        factors = list(prod.factors)
        if not factors:
            if coeff == 0:
                return LinComb.zero()
            return _unit_constant(self.P).scale(coeff)
        if self.flavor == "abullet":
            return self._action(factors).scale(coeff)
        if len(factors) > 1 and self.flavor == "lie":
            self.fail("products are not available for lie; use brackets", _pos(factors[1]))
        return self._product([self.ev(f) for f in factors]).scale(coeff)

    def _action(self, factors) -> LinComb:
        *ring, last = factors
        for f in ring:
            if not (isinstance(f, Var) and f.name in self.ring):
                self.fail("only ring basis elements may act on a module element", _pos(f))
        el = self.ev(last)
        for f in reversed(ring):
            el = compose_elements(self.P, f.name, [el])
        return el


def _pos(node) -> int:
    return getattr(node, "pos", 0)


def parse_expression(P: Operad, text: str, variables: Optional[Collection[str]] = None,
                     layers: Optional[int] = None) -> LinComb:
    """Parse ``text`` into a canonical element of S(P, V).

    ``layers`` fixes how many tangent layers the atoms carry (0, 1 or 2);
    by default it is read off the marks that occur in the text.
    """
    tree = parse_ast(text)
    ring = set(P.A.basis) if isinstance(P, PointedOperad) else set()
    atom = _atom_resolver(tree, set(variables or ()), ring, layers)
    if variables is not None:
        names = []
        _collect_vars(tree, names)
        for n in names:
            if n in ring:
                continue
            base = _split_var(n, set(variables))[2]
            if base not in variables:
                raise ParseError(f"unknown variable {n!r}", text, text.find(n))
    return _Evaluator(P, text, atom).ev(tree)


# ---------------------------------------------------------------------------
# rendering

def atom_name(a) -> str:
    if isinstance(a, Inj):
        inner = a.x
        if isinstance(inner, Inj):
            return ("d'" if a.k else "") + atom_name(inner)
        base = str(inner)
        if a.k and not re.fullmatch(r"[a-z][a-z0-9_]*", base):
            base = f"({base})"
        return ("" if a.k == 0 else "d" if a.k == 1 else f"d{a.k}") + base
    return str(a)


def _atom_key(a):
    """Base variables before their tangent copies."""
    if isinstance(a, Inj):
        inner = _atom_key(a.x)
        return (inner[0], (sort_key(a.k),) + inner[1])
    if isinstance(a, str):
        o, j, base = _split_var(a, ())
        return (sort_key(base), (o, j))
    return (sort_key(a), ())


def _render_lie(sym: tuple, word: tuple, name) -> str:
    names = [name(word[l - 1]) for l in sym]
    out = names[-1]
    for n in reversed(names[:-1]):
        out = f"[{n},{out}]"
    return out


def render_monomial(P: Operad, t: FreeTerm, name=atom_name) -> str:
    if t.arity == 0:
        return "1"
    if isinstance(P, ComOperad):
        parts = []
        for a, grp in groupby(sorted(t.word, key=_atom_key)):
            k = len(list(grp))
            parts.append(name(a) if k == 1 else f"{name(a)}^{k}")
        return "*".join(parts)
    if isinstance(P, AssOperad):
        word = tuple(t.word[j - 1] for j in t.op.images)
        return "*".join(name(a) for a in word)
    if isinstance(P, LieOperad):
        return _render_lie(t.op, t.word, name)
    if isinstance(P, PointedOperad):
        m = name(t.word[0])
        return m if LinComb.single(t.op) == P.unit else f"{t.op}*{m}"
    return f"({t.op}; {', '.join(name(a) for a in t.word)})"


def render_scalar(c) -> str:
    return str(Fraction(c))


def _join(parts: List[Tuple[Any, str]]) -> str:
    if not parts:
        return "0"
    out = []
    for c, body in parts:
        c = Fraction(c)
        mag = abs(c)
        if body == "1":
            piece = render_scalar(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{render_scalar(mag)}*{body}"
        if not out:
            out.append(piece if c > 0 else f"-{piece}")
        else:
            out.append(f" + {piece}" if c > 0 else f" - {piece}")
    return "".join(out)


def render_element(P: Operad, el: LinComb, name=atom_name) -> str:
    """Canonical text of an element of S(P, V); lower arity first, then alphabetical."""
    shown = [(t.arity, render_monomial(P, t, name), c) for t, c in el.items()]
    shown.sort(key=lambda x: (x[0], x[1]))
    return _join([(c, body) for _, body, c in shown])


def render_linear(v: LinComb) -> str:
    """A combination of named basis vectors, e.g. ``1/2*x + x^2``."""
    return _join([(c, str(k)) for k, c in v.sorted_items()])


def parse_linear(text: str, basis: Sequence[str]) -> LinComb:
    """Parse ``2*x - 1/3*y`` over named basis vectors (names may contain ^)."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return LinComb.zero()
    if s[0] not in "+-":
        s = "+" + s
    names = set(basis)
    out = {}
    for m in re.finditer(r"([+-])([^+-]+)", s):
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        if "*" in body:
            c, name = body.split("*", 1)
            if not re.fullmatch(r"\d+(/\d+)?", c):
                raise ParseError(f"bad coefficient {c!r} in {text!r}")
            coeff = Fraction(c)
        elif re.fullmatch(r"\d+(/\d+)?", body) and body not in names:
            coeff, name = Fraction(body), "1"
        else:
            coeff, name = Fraction(1), body
        if name not in names:
            raise ParseError(f"unknown basis element {name!r} in {text!r}")
        out[name] = out.get(name, 0) + sign * coeff
    return LinComb(out)
