"""Rewriting multilinear Lie bracket trees into right-normed normal form.

A tree is either a leaf (any sortable label) or a :class:`Bracket` node
``Bracket(left, right)`` standing for ``[left, right]``.  A right-normed word
``(y1, ..., yk)`` stands for ``[y1, [y2, ..., [y_{k-1}, y_k]]]``.

For trees whose leaves are pairwise distinct, the right-normed words with
the largest leaf innermost form a basis; :func:`normalize` rewrites any
such tree into that basis using only antisymmetry and the Jacobi identity.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Hashable, Tuple

from .core import LinComb, lsum, sort_key

Word = Tuple[Hashable, ...]


class Bracket(tuple):
    """Explicit bracket node, so tuples can still be used as leaf labels."""

    def __new__(cls, left, right):
        return super().__new__(cls, (left, right))

    @property
    def left(self):
        return self[0]

    @property
    def right(self):
        return self[1]

    def __repr__(self):
        return f"[{self[0]!r},{self[1]!r}]"


def leaves(t) -> list:
    if isinstance(t, Bracket):
        return leaves(t.left) + leaves(t.right)
    return [t]


def word_to_tree(w: Word):
    t = w[-1]
    for y in reversed(w[:-1]):
        t = Bracket(y, t)
    return t


@lru_cache(maxsize=None)
def _bracket_words(u: Word, z: Word) -> LinComb:
    """Right-normed expansion of ``[u, z]`` keeping z's innermost leaf."""
    if len(u) == 1:
        return LinComb.single(u + z)
    a, rest = u[0], u[1:]
    first = _bracket_words(rest, z).map_keys(lambda w: (a,) + w)
    second = _bracket_words(rest, (a,) + z)
    return first - second


def bracket(x: LinComb, y: LinComb) -> LinComb:
    """Bracket of two combinations of right-normed words (not yet normalized)."""
    return lsum(_bracket_words(u, z).scale(cu * cz) for u, cu in x.items() for z, cz in y.items())


@lru_cache(maxsize=None)
def _innermost_max(w: Word) -> LinComb:
    """Rewrite one right-normed word so that its largest leaf is innermost."""
    m = max(w, key=sort_key)
    j = w.index(m)
    if j == len(w) - 1:
        return LinComb.single(w)
    prefix, tail = w[:j], w[j + 1:]
    # [m, T] = -[T, m]
    core = -_bracket_words(tail, (m,))
    return core.map_keys(lambda v: prefix + v)


def fix_innermost(x: LinComb) -> LinComb:
    return x.apply(_innermost_max)


def _to_words(t) -> LinComb:
    if isinstance(t, Bracket):
        return bracket(_to_words(t.left), _to_words(t.right))
    return LinComb.single((t,))


def normalize(t) -> LinComb:
    """Normal form of a bracket tree with distinct leaves."""
    ls = leaves(t)
    if len(set(ls)) != len(ls):
        raise ValueError("normalize expects pairwise distinct leaves")
    return fix_innermost(_to_words(t))


def normalize_words(x: LinComb) -> LinComb:
    """Normal form of a combination of right-normed words (distinct leaves)."""
    return fix_innermost(x)


def expand_associative(t) -> LinComb:
    """Image of a bracket tree in the free associative algebra.

    Used as an independent oracle: the coefficient of the basis word
    ``(y1, ..., y_{k-1}, m)`` in a multilinear Lie element equals the
    coefficient of the associative word ``y1...y_{k-1} m``.
    """
    if isinstance(t, Bracket):
        a = expand_associative(t.left)
        b = expand_associative(t.right)
        out = {}
        for u, cu in a.items():
            for v, cv in b.items():
                out[u + v] = out.get(u + v, 0) + cu * cv
                out[v + u] = out.get(v + u, 0) - cu * cv
        return LinComb(out)
    return LinComb.single((t,))
