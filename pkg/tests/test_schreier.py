import random
from collections import deque

import pytest

from conftest import FREE_A_INDEX2, FREE_S3, FREE_S3_INDEX3, space
from wreathsub.action import in_subgroup
from wreathsub.errors import NotInSubgroup, WrongKind
from wreathsub.fingrp import symmetric_group
from wreathsub.sampling import make_rng, random_free_group_problem, random_subgroup_element
from wreathsub.schreier import (SchreierTransversal, basis_checks, build_transversal,
                                evaluate_tokens, is_prefix_closed, schreier_basis,
                                schreier_rewrite, tau_of_word, tau_table,
                                transversal_steps, verify_ns_universal)
from wreathsub.action import build_coset_space
from wreathsub.words import FreeWord
from wreathsub.wreath import project_i


def coset_distances(cs):
    # BFS over the coset graph with all letters
    dist = {0: 0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in cs.group.letters():
            d = cs.letter_action(x)[c]
            if d not in dist:
                dist[d] = dist[c] + 1
                queue.append(d)
    return [dist[i] for i in range(cs.size)]


def setup(doc):
    cs = space(doc)
    T = build_transversal(cs)
    return cs, T, schreier_basis(cs, T)


def test_transversal_examples():
    cs, T, B = setup(FREE_A_INDEX2)
    assert [cs.group.format(t) for t in T.reps] == ["1", "a"]
    assert [cs.group.format(b.word) for b in B] == ["a a"]
    assert (B.elements[0].coset, B.elements[0].generator) == (1, 0)


def test_index_one():
    cs, T, B = setup(dict(FREE_S3, subgroup=[[1, 0, 2], [1, 2, 0]]))
    assert T.reps == (FreeWord(),)
    assert [b.word for b in B] == [cs.group.generator(0), cs.group.generator(1)]


@pytest.mark.parametrize("doc", [FREE_A_INDEX2, FREE_S3, FREE_S3_INDEX3])
def test_transversal_is_geodesic_and_prefix_closed(doc):
    cs, T, B = setup(doc)
    assert is_prefix_closed(T)
    assert [len(t) for t in T.reps] == coset_distances(cs)
    for i, t in enumerate(T.reps):
        assert cs.coset_of_word(t) == i
    assert all(c["pass"] for c in basis_checks(cs, T, B))


def test_s3_transversal_lengths():
    cs, T, B = setup(FREE_S3)
    assert len(T) == 6
    assert max(len(t) for t in T.reps) == max(coset_distances(cs)) == 2
    assert len(B) == 7


def test_prefix_closed_detects_gap():
    cs = space(FREE_S3)
    G = cs.group
    T = SchreierTransversal((FreeWord(), G.parse("a b")))
    assert not is_prefix_closed(T)


@pytest.mark.parametrize("doc", [FREE_A_INDEX2, FREE_S3, FREE_S3_INDEX3])
def test_transversal_steps_are_basis_or_trivial(doc):
    cs, T, B = setup(doc)
    G = cs.group
    words = {b.word for b in B}
    for b in B:
        steps = transversal_steps(cs, T, b.coset, b.generator)
        nontrivial = [s for s in steps if not s.is_identity()]
        # exactly one step survives, and it is b itself
        assert nontrivial == [b.word]
        assert G.product(steps) == b.word
        assert all(s.is_identity() or s in words for s in steps)


def test_rewrite_examples():
    cs, T, B = setup(FREE_A_INDEX2)
    G = cs.group
    assert schreier_rewrite(cs, T, B, G.parse("1")) == []
    assert schreier_rewrite(cs, T, B, G.parse("a a a a")) == [(0, 1), (0, 1)]
    assert schreier_rewrite(cs, T, B, G.parse("a^-1 a^-1")) == [(0, -1)]
    with pytest.raises(NotInSubgroup):
        schreier_rewrite(cs, T, B, G.parse("a"))


@pytest.mark.parametrize("doc", [FREE_A_INDEX2, FREE_S3, FREE_S3_INDEX3])
def test_rewrite_round_trip(doc):
    cs, T, B = setup(doc)
    rng = make_rng(4)
    for _ in range(200):
        h = random_subgroup_element(cs, rng)
        tokens = schreier_rewrite(cs, T, B, h)
        assert evaluate_tokens(cs, B, tokens) == h
        # a reduced word in the basis: no token followed by its inverse
        for (k1, s1), (k2, s2) in zip(tokens, tokens[1:]):
            assert not (k1 == k2 and s1 == -s2)


def test_random_problems_index_formula():
    rng = random.Random(21)
    for _ in range(40):
        cs = build_coset_space(random_free_group_problem(rng))
        T = build_transversal(cs)
        B = schreier_basis(cs, T)
        assert len(B) == cs.size * (cs.group.rank - 1) + 1
        assert is_prefix_closed(T)
        assert all(in_subgroup(cs, b.word) for b in B)


def test_tau_example_sym2():
    # alpha(a a) = (0 1): tau(a) = ((1, (0 1)), (0 1)) and pi(tau(a a)) = (0 1)
    cs, T, B = setup(FREE_A_INDEX2)
    K = symmetric_group(2)
    table = tau_table(cs, T, B, K, [(1, 0)])
    ta = table[(0, 1)]
    assert ta.f == ((0, 1), (1, 0))
    assert ta.p == (1, 0)
    assert project_i(tau_of_word(K.base(), table, cs.group.parse("a a"), 2), 0) == (1, 0)


def test_verify_constant_alpha():
    cs, T, B = setup(FREE_S3)
    K = symmetric_group(3)
    report = verify_ns_universal(cs, T, B, K, [K.identity] * len(B), samples=50, seed=1)
    assert all(c["pass"] for c in report["checks"])


def test_verify_random_alpha_s3():
    cs, T, B = setup(FREE_S3)
    K = symmetric_group(3)
    rng = make_rng(9)
    alpha = [K.elements[rng.randrange(6)] for _ in B]
    report = verify_ns_universal(cs, T, B, K, alpha, samples=200, seed=9)
    assert [c["name"] for c in report["checks"]] == [
        "trivial_steps_map_to_identity", "projection_extends_alpha", "tau_homomorphism",
        "tau_covers_rho", "extension_agrees_with_rewriting"]
    assert all(c["pass"] for c in report["checks"])


def test_verify_other_schreier_transversal():
    # {1, a^-1} is prefix-closed too, so the harness passes with it
    cs = space(FREE_A_INDEX2)
    G = cs.group
    T = SchreierTransversal((FreeWord(), G.parse("a^-1")))
    B = schreier_basis(cs, T)
    assert [G.format(b.word) for b in B] == ["a a"]
    K = symmetric_group(2)
    report = verify_ns_universal(cs, T, B, K, [(1, 0)], samples=50, seed=0)
    assert all(c["pass"] for c in report["checks"])


def test_free_product_rejected():
    from conftest import C2C2_SIGN

    with pytest.raises(WrongKind):
        build_transversal(space(C2C2_SIGN))
