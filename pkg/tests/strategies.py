"""Hypothesis strategies shared by the property tests."""


from hypothesis import strategies as st

from operadiff.core import LinComb
from operadiff.free import canonical_term
from operadiff.core import lsum

scalars = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0)


def free_elements(P, atoms=("x", "y"), max_arity=3, max_terms=4, min_arity=0):
    arities = [n for n in range(min_arity, max_arity + 1) if P.basis(n)]

    @st.composite
    def build(draw):
        out = []
        for _ in range(draw(st.integers(1, max_terms))):
            n = draw(st.sampled_from(arities))
            op = draw(st.sampled_from(P.basis(n)))
            word = tuple(draw(st.sampled_from(atoms)) for _ in range(n))
            out.append(canonical_term(P, op, word).scale(draw(scalars)))
        return lsum(out)

    return build()


def vectors(basis):
    return st.lists(scalars, min_size=len(basis), max_size=len(basis)).map(
        lambda cs: LinComb(zip(basis, cs)))
