import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wreathsub.errors import (CapExceeded, ClosureCapExceeded, NotAHomomorphism,
                              NotASubgroup)
from wreathsub.fingrp import (Caps, CayleyGroup, closure, compose, cycle, cyclic_group,
                              enumerate_homs, evaluate_hom_free, identity_perm,
                              is_permutation, klein_group, orbit, perm_inverse,
                              perm_power, right_cosets, stabilizer, subgroup,
                              symmetric_group, validate_factor_hom)
from wreathsub.words import FreeGroup

perms3 = st.permutations(range(3)).map(tuple)
perms4 = st.permutations(range(4)).map(tuple)


def brute_closure(degree, gens):
    # repeated squaring of the element set until stable
    elems = {identity_perm(degree)} | {tuple(g) for g in gens}
    while True:
        bigger = elems | {compose(x, y) for x in elems for y in elems}
        if bigger == elems:
            return elems
        elems = bigger


def naive_homs(G, K):
    out = []
    for imgs in itertools.product(K.elements, repeat=G.order):
        if all(imgs[G.mul(a, b)] == compose(imgs[a], imgs[b])
               for a in range(G.order) for b in range(G.order)):
            out.append(imgs)
    return out


def test_compose_is_left_to_right():
    a, b = cycle(3, (0, 1)), cycle(3, (0, 1, 2))
    # 0 -a-> 1 -b-> 2
    assert compose(a, b)[0] == 2
    assert cycle(3, (0, 1, 2)) == (1, 2, 0)


@given(perms4, perms4, perms4)
def test_perm_group_laws(p, q, r):
    assert compose(compose(p, q), r) == compose(p, compose(q, r))
    assert compose(p, perm_inverse(p)) == identity_perm(4)
    assert perm_power(p, 3) == compose(p, compose(p, p))
    assert perm_power(p, -1) == perm_inverse(p)


def test_is_permutation():
    assert is_permutation((1, 0, 2))
    assert not is_permutation((1, 1, 2))
    assert not is_permutation((0, 1), 3)


@pytest.mark.parametrize("degree,gens,order", [
    (3, [(1, 0, 2), (1, 2, 0)], 6),
    (4, [], 1),
    (2, [(1, 0)], 2),
    (4, [(1, 0, 2, 3), (1, 2, 3, 0)], 24),
    (4, [(1, 0, 3, 2), (2, 3, 0, 1)], 4),
])
def test_closure_orders(degree, gens, order):
    Q = closure(degree, gens)
    assert Q.order == order
    assert set(Q.elements) == brute_closure(degree, gens)
    assert Q.elements[0] == identity_perm(degree)


@given(st.lists(perms4, max_size=3))
def test_closure_matches_brute_force(gens):
    Q = closure(4, gens)
    assert set(Q.elements) == brute_closure(4, gens)
    assert 24 % Q.order == 0


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded):
        closure(4, [(1, 0, 2, 3), (1, 2, 3, 0)], cap=10)


def test_closure_deterministic():
    gens = [(1, 2, 3, 0), (1, 0, 2, 3)]
    assert closure(4, gens).elements == closure(4, gens).elements


def test_right_cosets_examples():
    Q = symmetric_group(3)
    for gens, n in ([[(1, 0, 2)]], 3), ([Q.elements], 1), ([[]], 6):
        S = subgroup(Q, gens[0])
        table = right_cosets(Q, S)
        assert table.size == n == Q.order // S.order
        assert table.reps[0] == identity_perm(3)
        assert list(table.reps) == sorted(table.reps)


@given(st.lists(perms4, max_size=2), st.lists(perms4, max_size=2))
def test_cosets_partition_and_lagrange(qgens, sgens):
    Q = closure(4, list(qgens) + list(sgens))
    S = subgroup(Q, sgens)
    table = right_cosets(Q, S)
    assert Q.order == S.order * table.size
    # Sx = Sy iff x y^-1 in S
    members = set(S.elements)
    for x in Q.elements[:8]:
        for y in Q.elements[:8]:
            same = compose(x, perm_inverse(y)) in members
            assert same == (table.coset_of[x] == table.coset_of[y])
    for i, r in enumerate(table.reps):
        assert table.coset_of[r] == i


def test_right_cosets_rejects_non_subgroup():
    from wreathsub.fingrp import SubgroupData

    Q = symmetric_group(3)
    with pytest.raises(NotASubgroup):
        right_cosets(Q, SubgroupData(Q, ((0, 1, 2), (1, 2, 0))))
    with pytest.raises(NotASubgroup):
        subgroup(closure(3, [(1, 0, 2)]), [(1, 2, 0)])


def test_stabilizer_examples():
    swap = ((0, 1), (1, 0))
    assert stabilizer(swap, 0) == (0,)
    trivial = ((0, 1), (0, 1))
    assert stabilizer(trivial, 0) == (0, 1)
    # nontrivial element fixing point 0 of 3 cosets
    assert stabilizer(((0, 1, 2), (0, 2, 1)), 0) == (0, 1)


@given(st.lists(perms4, min_size=1, max_size=3), st.integers(0, 3))
def test_orbit_stabilizer(gens, point):
    Q = closure(4, gens)
    acts = Q.elements
    assert len(orbit(acts, point)) * len(stabilizer(acts, point)) == Q.order


def test_cayley_validation():
    assert cyclic_group(4).order == 4
    assert klein_group().mul(1, 2) == 3
    with pytest.raises(ValueError):
        CayleyGroup("bad", ((0, 1), (0, 1)))
    with pytest.raises(ValueError):
        CayleyGroup("bad", ((1, 0), (0, 1)))
    G = cyclic_group(4)
    assert G.restrict((0, 2)).table == ((0, 1), (1, 0))
    with pytest.raises(NotASubgroup):
        G.restrict((0, 1))


def test_validate_factor_hom_examples():
    assert validate_factor_hom(cyclic_group(2), [(0, 1), (1, 0)])
    assert validate_factor_hom(cyclic_group(3), [(0, 1, 2), (1, 2, 0), (2, 0, 1)])
    with pytest.raises(NotAHomomorphism):
        validate_factor_hom(cyclic_group(2), [(0, 1, 2), (1, 2, 0)])


def test_enumerate_homs_examples():
    S3 = symmetric_group(3)
    homs = enumerate_homs(cyclic_group(2), S3)
    assert len(homs) == 4
    assert homs[0] == (S3.identity, S3.identity)
    assert len(enumerate_homs(klein_group(), symmetric_group(1))) == 1
    assert len(enumerate_homs(cyclic_group(3), symmetric_group(2))) == 1


@pytest.mark.parametrize("G", [cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_group()])
@pytest.mark.parametrize("deg", [2, 3])
def test_enumerate_homs_matches_naive(G, deg):
    K = symmetric_group(deg)
    homs = enumerate_homs(G, K)
    assert sorted(homs) == sorted(naive_homs(G, K))
    assert len(set(homs)) == len(homs)
    for h in homs:
        assert validate_factor_hom(G, h)


def test_enumerate_homs_limit_and_caps():
    assert len(enumerate_homs(klein_group(), symmetric_group(3), limit=2)) == 2
    with pytest.raises(CapExceeded):
        enumerate_homs(cyclic_group(4), symmetric_group(3), caps=Caps(max_factor_order=3))


def test_evaluate_hom_free():
    F = FreeGroup(["a", "b"])
    images = [(1, 0, 2), (1, 2, 0)]
    assert evaluate_hom_free(images, F.parse("a a")) == (0, 1, 2)
    assert evaluate_hom_free(images, F.parse("1")) == (0, 1, 2)
    assert evaluate_hom_free(images, F.parse("a b")) == compose(images[0], images[1])
    rng = random.Random(3)
    for _ in range(100):
        w = F.product(F.generator(rng.randrange(2)) if rng.random() < 0.5 else F.inv(F.generator(rng.randrange(2)))
                      for _ in range(rng.randrange(8)))
        v = F.inv(w)
        assert compose(evaluate_hom_free(images, w), evaluate_hom_free(images, v)) == (0, 1, 2)
