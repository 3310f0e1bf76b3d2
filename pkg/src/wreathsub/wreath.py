"""Permutational wreath products A wr P over an arbitrary base group.

A base group is any object with ``mul(a, b)``, ``inv(a)`` and ``identity``
(FreeGroup, FreeProduct, PermutationBase all qualify).  An element is a pair
``(f, p)`` with ``f`` a tuple of base elements indexed by coset and ``p`` a
permutation of the cosets.  The product law is

    (f, p)(f', p') = (s -> f(s) * f'(s.p), p p')
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DomainMismatch, InvalidTransversal, PointNotFixed
from .fingrp import Perm, compose, identity_perm, perm_inverse


@dataclass(frozen=True)
class WreathElement:
    f: tuple
    p: Perm

    def __post_init__(self):
        if len(self.f) != len(self.p):
            raise DomainMismatch(f"f has {len(self.f)} coordinates but p moves {len(self.p)} points")

    @property
    def degree(self) -> int:
        return len(self.p)

    def to_dict(self, base) -> dict:
        return {"f": [base.format(x) for x in self.f], "p": list(self.p)}


def identity(base, n: int) -> WreathElement:
    return WreathElement((base.identity,) * n, identity_perm(n))


def pure_perm(base, p: Perm) -> WreathElement:
    return WreathElement((base.identity,) * len(p), tuple(p))


def act(p: Perm, f: Sequence) -> tuple:
    """Left action of a permutation on a coordinate function: (p.f)(s) = f(s.p)."""
    return tuple(f[p[s]] for s in range(len(p)))


def w_multiply(base, a: WreathElement, b: WreathElement) -> WreathElement:
    if a.degree != b.degree:
        raise DomainMismatch(f"cannot multiply elements over {a.degree} and {b.degree} points")
    f = tuple(base.mul(a.f[s], b.f[a.p[s]]) for s in range(a.degree))
    return WreathElement(f, compose(a.p, b.p))


def w_invert(base, a: WreathElement) -> WreathElement:
    pinv = perm_inverse(a.p)
    return WreathElement(tuple(base.inv(a.f[pinv[s]]) for s in range(a.degree)), pinv)


def w_product(base, elements: Iterable[WreathElement], n: int) -> WreathElement:
    result = identity(base, n)
    for e in elements:
        result = w_multiply(base, result, e)
    return result


def diagonal(base, a, n: int) -> WreathElement:
    return WreathElement((a,) * n, identity_perm(n))


def map_base(alpha: Callable, a: WreathElement) -> WreathElement:
    """Apply a base homomorphism coordinatewise; the permutation part is kept."""
    return WreathElement(tuple(alpha(x) for x in a.f), a.p)


def project_i(a: WreathElement, i: int):
    """Coordinate ``i`` of an element whose permutation part fixes coset ``i``."""
    if a.p[i] != i:
        raise PointNotFixed(i)
    return a.f[i]


def _transversal_ok(cs, T: Sequence) -> None:
    if len(T) != cs.size:
        raise InvalidTransversal(len(T))
    if not T[0].is_identity():
        raise InvalidTransversal(0)
    for i, t in enumerate(T):
        if cs.coset_of_word(t) != i:
            raise InvalidTransversal(i)


def standard_embed(cs, T: Sequence, g, check: bool = True) -> WreathElement:
    """The embedding g -> (f_g, rho(g)) with f_g(i) = T[i] g T[i.g]^-1.

    ``cs.group`` is the base (words of the ambient free group or free product).
    """
    if check:
        _transversal_ok(cs, T)
    G = cs.group
    letters = g.letters if hasattr(g, "letters") else g.syllables
    p = identity_perm(cs.size)
    for x in letters:
        p = compose(p, cs.letter_action(x))
    f = tuple(G.product((T[i], g, G.inv(T[p[i]]))) for i in range(cs.size))
    return WreathElement(f, p)


def cocycle_expand(base, table: Mapping, letters: Sequence, start: int = 0):
    """Coordinate ``start`` of the product of ``table[x]`` over ``letters``.

    Returns f_1(c_0) * f_2(c_1) * ... where c_0 = start and c_k = c_{k-1}.p_k.
    """
    acc = base.identity
    c = start
    for x in letters:
        e = table[x]
        acc = base.mul(acc, e.f[c])
        c = e.p[c]
    return acc
