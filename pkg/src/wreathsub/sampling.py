"""Seeded random words, subgroup elements and problems.

All randomness goes through ``random.Random(seed)``, i.e. MT19937 seeded by
CPython's ``init_by_array`` over the 32-bit words of the seed.  Only
``randrange``/``choice``/``random`` are used so streams are reproducible.
"""

from __future__ import annotations

import random
from typing import List

from .action import FREE_GROUP, FREE_PRODUCT, Problem, in_subgroup
from .fingrp import closure, cyclic_group, enumerate_homs, klein_group, symmetric_group
from .words import FreeWord, ProductWord

MAX_SEED = 2 ** 64 - 1


def make_rng(seed: int) -> random.Random:
    if not 0 <= seed <= MAX_SEED:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return random.Random(seed)


def random_free_word(rng: random.Random, ngens: int, max_len: int = 8) -> FreeWord:
    if ngens == 0:
        return FreeWord()
    n = rng.randrange(max_len + 1)
    return FreeWord.reduce((rng.randrange(ngens), rng.choice((1, -1))) for _ in range(n))


def random_product_word(rng: random.Random, fp, max_len: int = 8) -> ProductWord:
    """Normal form of a random syllable string over the free product ``fp``."""
    letters = []
    for _ in range(rng.randrange(max_len + 1)):
        alpha = rng.randrange(fp.nfactors)
        if fp.orders[alpha] > 1:
            letters.append((alpha, rng.randrange(1, fp.orders[alpha])))
    return fp.normalize(letters)


def random_word(cs, rng: random.Random, max_len: int = 8):
    if cs.kind == FREE_GROUP:
        return random_free_word(rng, len(cs.problem.generators), max_len)
    return random_product_word(rng, cs.group, max_len)


def random_subgroup_element(cs, rng: random.Random, max_len: int = 8, tries: int = 200):
    """Rejection-sample a word lying in H; after ``tries`` failures, close up with
    the least-coset-representative walk back to H."""
    for _ in range(tries):
        w = random_word(cs, rng, max_len)
        if in_subgroup(cs, w):
            return w
    from .schreier import build_transversal  # free-group fallback only

    w = random_word(cs, rng, max_len)
    if cs.kind == FREE_GROUP:
        T = build_transversal(cs).reps
        return cs.group.mul(w, cs.group.inv(T[cs.coset_of_word(w)]))
    from .kurosh import syllable_metrics

    geo = syllable_metrics(cs).geodesic
    return cs.group.mul(w, cs.group.inv(geo[cs.coset_of_word(w)]))


def random_subgroup_gens(rng: random.Random, Q, count: int) -> List[tuple]:
    return [rng.choice(Q.elements) for _ in range(count)]


def random_free_group_problem(rng: random.Random, max_gens: int = 3, max_degree: int = 5) -> Problem:
    ngens = rng.randrange(1, max_gens + 1)
    degree = rng.randrange(1, max_degree + 1)
    Sn = symmetric_group(degree)
    names = tuple("abc"[:ngens]) if ngens <= 3 else tuple(f"x{i}" for i in range(ngens))
    images = tuple(rng.choice(Sn.elements) for _ in range(ngens))
    Q = closure(degree, images)
    sub = tuple(random_subgroup_gens(rng, Q, rng.randrange(0, 3)))
    return Problem(FREE_GROUP, degree, sub, generators=names, generator_images=images)


SMALL_GROUPS = (cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_group())


def random_free_product_problem(rng: random.Random, nfactors: int = 2, max_order: int = 4,
                                max_degree: int = 5) -> Problem:
    degree = rng.randrange(1, max_degree + 1)
    Sn = symmetric_group(degree)
    candidates = [G for G in SMALL_GROUPS if 1 < G.order <= max_order] or [cyclic_group(2)]
    factors = tuple(rng.choice(candidates) for _ in range(nfactors))
    images = tuple(rng.choice(enumerate_homs(G, Sn)) for G in factors)
    Q = closure(degree, [p for imgs in images for p in imgs])
    sub = tuple(random_subgroup_gens(rng, Q, rng.randrange(0, 3)))
    return Problem(FREE_PRODUCT, degree, sub, factors=factors, factor_images=images)
