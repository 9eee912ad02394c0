"""Small named algebras and parametrised families of morphisms between them."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .algebra import AlgebraMorphism, PAlgebra, morphism
from .core import BasedModule, LinComb
from .operads import Operad, dual_numbers_data, make_ass, make_com, make_lie, make_pointed_operad

one = LinComb.single


def _power(k: int) -> str:
    return "1" if k == 0 else ("x" if k == 1 else f"x^{k}")


def truncated_poly(n: int) -> PAlgebra:
    """ℚ[x]/(x^n) as a Com-algebra on the monomial basis."""
    basis = tuple(_power(k) for k in range(n))
    mul = {}
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mul[(basis[i], basis[j])] = one(basis[i + j])
    return PAlgebra(make_com(), BasedModule(basis), {"unit": {(): one("1")}, "mul": mul},
                    f"Q[x]/(x^{n})")


def dual_numbers() -> PAlgebra:
    return truncated_poly(2)


def upper_triangular() -> PAlgebra:
    """2×2 upper-triangular matrices as an Ass-algebra."""
    basis = ("e11", "e12", "e22")
    mul = {("e11", "e11"): one("e11"), ("e11", "e12"): one("e12"),
           ("e12", "e22"): one("e12"), ("e22", "e22"): one("e22")}
    unit = LinComb({"e11": 1, "e22": 1})
    return PAlgebra(make_ass(), BasedModule(basis), {"unit": {(): unit}, "mul": mul}, "UT2")


def borel_lie() -> PAlgebra:
    """The two-dimensional Lie algebra [h, e] = 2e."""
    br = {("h", "e"): one("e", 2), ("e", "h"): one("e", -2)}
    return PAlgebra(make_lie(), BasedModule(("h", "e")), {"bracket": br}, "b2")


def abelian_lie(n: int = 2) -> PAlgebra:
    basis = tuple(f"v{i}" for i in range(1, n + 1))
    return PAlgebra(make_lie(), BasedModule(basis), {"bracket": {}}, f"ab{n}")


def zero_algebra(P: Operad) -> PAlgebra:
    return PAlgebra(P, BasedModule(()), {}, "0")


def dual_module() -> PAlgebra:
    """ℚ[t]/(t²) as a module over itself, an A•-algebra."""
    R = dual_numbers_data("t")
    act = {("1", "1"): one("1"), ("1", "t"): one("t"), ("t", "1"): one("t")}
    return PAlgebra(make_pointed_operad(R), BasedModule(("1", "t")), {"act": act}, "R")


def trivial_module() -> PAlgebra:
    """A line on which t acts by zero."""
    R = dual_numbers_data("t")
    return PAlgebra(make_pointed_operad(R), BasedModule(("m",)), {"act": {("1", "m"): one("m")}}, "Q_0")


ALGEBRAS: Dict[str, Callable[[], PAlgebra]] = {
    "dual": dual_numbers,
    "cubic": lambda: truncated_poly(3),
    "ut2": upper_triangular,
    "borel": borel_lie,
    "abelian": abelian_lie,
    "module": dual_module,
    "trivial-module": trivial_module,
}


# ---------------------------------------------------------------------------
# morphism families; every member is an algebra morphism by construction

def _nonzero(rng: random.Random, lo: int = -4, hi: int = 4) -> int:
    v = 0
    while v == 0:
        v = rng.randint(lo, hi)
    return v


def poly_endomorphism(A: PAlgebra, coeffs: Tuple[int, ...]) -> AlgebraMorphism:
    """x ↦ Σ c_k x^{k+1} on ℚ[x]/(x^n), extended multiplicatively."""
    n = A.dim
    image_x = LinComb((_power(k + 1), c) for k, c in enumerate(coeffs) if k + 1 < n)
    powers = [one("1")]
    for _ in range(1, n):
        powers.append(A.gen_apply("mul", [powers[-1], image_x]))
    table = {_power(k): powers[k] for k in range(n)}
    return morphism(A, A, lambda b: table[b], f"x->{coeffs}")


def poly_quotient(A: PAlgebra, B: PAlgebra, alpha: int) -> AlgebraMorphism:
    """ℚ[x]/(x^n) → ℚ[x]/(x^m) for m ≤ n, x ↦ αx."""
    idx = {b: k for k, b in enumerate(A.basis)}
    return morphism(A, B, lambda b: one(b, Fraction(alpha) ** idx[b]) if idx[b] < B.dim else LinComb.zero(),
                    f"quot({alpha})")


def ut_conjugation(A: PAlgebra, a: int, b: int, d: int) -> AlgebraMorphism:
    """M ↦ g M g⁻¹ for g = [[a, b], [0, d]]."""
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    g = [[a, b], [0, d]]
    gi = [[1 / a, -b / (a * d)], [0, 1 / d]]
    units = {"e11": (0, 0), "e12": (0, 1), "e22": (1, 1)}

    def image(name):
        i, j = units[name]
        m = [[g[r][i] * gi[j][c] for c in range(2)] for r in range(2)]
        return LinComb({"e11": m[0][0], "e12": m[0][1], "e22": m[1][1]})

    return morphism(A, A, image, f"conj({a},{b},{d})")


def borel_automorphism(A: PAlgebra, alpha: int, beta: int) -> AlgebraMorphism:
    """h ↦ h + βe, e ↦ αe."""
    table = {"h": LinComb({"h": 1, "e": beta}), "e": one("e", alpha)}
    return morphism(A, A, lambda b: table[b], f"borel({alpha},{beta})")


def module_endomorphism(A: PAlgebra, alpha: int, beta: int) -> AlgebraMorphism:
    """Multiplication by α + βt on the regular module."""
    table = {"1": LinComb({"1": alpha, "t": beta}), "t": one("t", alpha)}
    return morphism(A, A, lambda b: table[b], f"mul({alpha}+{beta}t)")


def random_morphisms(A: PAlgebra, count: int, rng: random.Random) -> List[AlgebraMorphism]:
    """Random members of the family matching A's catalog shape."""
    out = []
    for _ in range(count):
        if A.name.startswith("Q[x]/"):
            out.append(poly_endomorphism(A, tuple(rng.randint(-3, 3) for _ in range(A.dim - 1))))
        elif A.name == "UT2":
            out.append(ut_conjugation(A, _nonzero(rng), rng.randint(-3, 3), _nonzero(rng)))
        elif A.name == "b2":
            out.append(borel_automorphism(A, _nonzero(rng), rng.randint(-3, 3)))
        elif A.name == "R":
            out.append(module_endomorphism(A, rng.randint(-3, 3), rng.randint(-3, 3)))
        else:
            raise KeyError(f"no morphism family for {A.name}")
    return out
