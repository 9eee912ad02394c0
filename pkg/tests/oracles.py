"""Independent reference values for the test suite.

Nothing here imports the package's normal forms or elimination: the
polynomial differentiator is sympy, and the dimension counts come from
closed combinatorial formulas.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, factorial, gcd
from functools import reduce

import sympy


# -- Com: textbook differentiation ------------------------------------------

def sympy_total_derivative(text: str, variables):
    """Σ_v ∂p/∂v · dv for a polynomial given in the package's surface syntax."""
    syms = {v: sympy.Symbol(v) for v in variables}
    syms.update({f"d{v}": sympy.Symbol(f"d{v}") for v in variables})
    p = sympy.sympify(text.replace("^", "**"), locals=syms)
    return sympy.expand(sum(sympy.diff(p, syms[v]) * syms[f"d{v}"] for v in variables))


def sympy_of_com_element(el, name) -> sympy.Expr:
    """Read a Com free-algebra element (c_n; v_1..v_n) as Π v_i, by atom names."""
    out = sympy.Integer(0)
    for t, c in el.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for a in t.word:
            term *= sympy.Symbol(name(a))
        out += term
    return sympy.expand(out)


def random_polynomial_text(rng, variables, max_degree=5, max_terms=5) -> str:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 4)) or Fraction(1)
        deg = rng.randint(0, max_degree)
        exps = [0] * len(variables)
        for _ in range(deg):
            exps[rng.randrange(len(variables))] += 1
        mono = "*".join(f"{v}^{e}" for v, e in zip(variables, exps) if e)
        coeff = f"{abs(c.numerator)}/{c.denominator}" if c.denominator != 1 else f"{abs(c.numerator)}"
        body = f"{coeff}*{mono}" if mono else coeff
        terms.append(("-" if c < 0 else "+") + body)
    return " ".join(terms).lstrip("+")


# -- free Lie algebras: Witt's formula ---------------------------------------

def _mobius(n: int) -> int:
    if n == 1:
        return 1
    res, k, m = 1, 2, n
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            res = -res
        k += 1
    if m > 1:
        res = -res
    return res


def witt_dim(multidegree) -> int:
    """dim of the multidegree component of the free Lie algebra (number of Lyndon words)."""
    n = sum(multidegree)
    if n == 0:
        return 0
    g = reduce(gcd, [a for a in multidegree if a])
    total = Fraction(0)
    for d in range(1, g + 1):
        if g % d:
            continue
        multinom = factorial(n // d)
        for a in multidegree:
            multinom //= factorial(a // d)
        total += _mobius(d) * multinom
    return int(total / n)


def lie_pair_cell_dim(v: int, k: int, w: int) -> int:
    """dim of the (d-degree k, weight w) cell of S(Lie, V×V) with dim V = v."""
    out = 0
    for md in product(range(w + 1), repeat=2 * v):
        if sum(md) == w and sum(md[v:]) == k:
            out += witt_dim(md)
    return out


def lyndon_words(alphabet, n):
    """Duval's algorithm; used to cross-check witt_dim on a small case."""
    alphabet = sorted(alphabet)
    a = len(alphabet)
    w = [-1]
    out = []
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            out.append("".join(alphabet[i] for i in w))
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == a - 1:
            w.pop()
    return out


# -- Com and Ass monomial counts ---------------------------------------------

def com_pair_cell_dim(v: int, k: int, w: int) -> int:
    """Monomials of degree w in v point and v tangent variables, k of them tangent."""
    return comb(v + w - k - 1, w - k) * comb(v + k - 1, k) if w >= k else 0


def ass_pair_cell_dim(v: int, k: int, w: int) -> int:
    """Words of length w over v point and v tangent letters with k tangent letters."""
    return comb(w, k) * v ** w if w >= k else 0


# -- hand-derived values -----------------------------------------------------

def truncated_poly_der_dim(n: int) -> int:
    """Der(Q[x]/(x^n)): D(x) = p with n·x^{n-1}·p = 0, so p ∈ (x)."""
    return n - 1


def truncated_poly_sym_dims(n: int, max_degree: int):
    """Sym^k_A(Ω_A) for A = Q[x]/(x^n): Ω_A = A·dx/(x^{n-1}dx), so each k ≥ 1 gives A/(x^{n-1})."""
    return [n] + [n - 1] * max_degree
