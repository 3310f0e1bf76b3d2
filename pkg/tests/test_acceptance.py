"""Acceptance criteria, one test per criterion.

Every comparison is exact.  The terminal summary prints one PASS/FAIL line
per criterion (see conftest.py).
"""

import random
from collections import deque
from fractions import Fraction

import pytest

from conftest import (C2C2_SIGN, C2C3_S3, C2C3_S3_INDEX3, FREE_S3, FREE_S3_INDEX3,
                      PRODUCT_PROBLEMS, space)
from wreathsub.action import build_coset_space, in_core, in_subgroup
from wreathsub.fingrp import compose, identity_perm, perm_inverse, symmetric_group
from wreathsub.kurosh import (build_kurosh_system, check_kurosh_axioms, decompose,
                              decomposition_checks, euler_characteristic_of_decomposition,
                              euler_characteristic_of_product, evaluate_kurosh_tokens,
                              expected_free_rank, kurosh_rewrite, random_factor_maps,
                              random_z_map, syllable_metrics, verify_identity_instantiation,
                              verify_kurosh_universal, yz_checks, yz_elements)
from wreathsub.sampling import (make_rng, random_free_group_problem, random_free_product_problem,
                                random_subgroup_element, random_word)
from wreathsub.schreier import (build_transversal, evaluate_tokens, is_prefix_closed,
                                schreier_basis, schreier_rewrite, verify_ns_universal)
from wreathsub.wreath import project_i, standard_embed, w_multiply

ACCEPTANCE_PROBLEMS = {"free_s3_index6": FREE_S3, "free_s3_index3": FREE_S3_INDEX3, **PRODUCT_PROBLEMS}
PRODUCT_NAMES = sorted(PRODUCT_PROBLEMS)


def passed(checks):
    failed = [c for c in checks if not c["pass"]]
    assert not failed, failed
    return True


def kurosh(cs, alpha0=0):
    m = syllable_metrics(cs)
    ks = build_kurosh_system(cs, m, alpha0)
    yz = yz_elements(cs, ks)
    return m, ks, yz, decompose(cs, ks, yz)


def geodesic_lengths(cs):
    dist, queue = {0: 0}, deque([0])
    while queue:
        c = queue.popleft()
        for x in cs.group.letters():
            d = cs.letter_action(x)[c]
            if d not in dist:
                dist[d] = dist[c] + 1
                queue.append(d)
    return [dist[i] for i in range(cs.size)]


def double_coset_counts(cs):
    # classes S x phi(G_a) computed in Q directly
    S, out = cs.S.elements, []
    for imgs in cs.problem.factor_images:
        seen, k = set(), 0
        for x in cs.Q.elements:
            if x not in seen:
                k += 1
                seen.update(compose(compose(s, x), g) for s in S for g in imgs)
        out.append(k)
    return out


@pytest.mark.criterion("1 Nielsen-Schreier basis, S3 index 6")
def test_criterion_1():
    cs = space(FREE_S3)
    T = build_transversal(cs)
    B = schreier_basis(cs, T)
    assert cs.size == 6
    assert is_prefix_closed(T)
    assert [len(t) for t in T.reps] == geodesic_lengths(cs)
    assert len(B) == 7 == 6 * (2 - 1) + 1
    assert all(in_subgroup(cs, b.word) for b in B)
    rng = make_rng(1)
    for _ in range(100):
        h = random_subgroup_element(cs, rng)
        assert evaluate_tokens(cs, B, schreier_rewrite(cs, T, B, h)) == h


@pytest.mark.criterion("2 Nielsen-Schreier basis, S3 index 3")
def test_criterion_2():
    cs = space(FREE_S3_INDEX3)
    assert cs.size == 3
    assert len(schreier_basis(cs, build_transversal(cs))) == 4


@pytest.mark.criterion("3 free-group universal property")
def test_criterion_3():
    rng = make_rng(3)
    for doc in (FREE_S3, FREE_S3_INDEX3):
        cs = space(doc)
        T = build_transversal(cs)
        B = schreier_basis(cs, T)
        for trial in range(5):
            K = symmetric_group(rng.choice((2, 3)))
            alpha = [K.elements[rng.randrange(K.order)] for _ in B]
            report = verify_ns_universal(cs, T, B, K, alpha, samples=200, seed=trial)
            passed(report["checks"])


@pytest.mark.criterion("4 embedding theorem suite")
@pytest.mark.parametrize("name", sorted(ACCEPTANCE_PROBLEMS))
def test_criterion_4(name):
    cs = space(ACCEPTANCE_PROBLEMS[name])
    G, n = cs.group, cs.size
    T = build_transversal(cs).reps if cs.kind == "free_group" else kurosh(cs)[1].T[0]
    emb = lambda g: standard_embed(cs, T, g)
    rng = make_rng(4)
    for _ in range(200):
        g, h = random_word(cs, rng), random_word(cs, rng)
        assert emb(G.mul(g, h)) == w_multiply(G, emb(g), emb(h))
    for _ in range(100):
        h = random_subgroup_element(cs, rng)
        assert project_i(emb(h), 0) == h
    for _ in range(100):
        g = random_word(cs, rng)
        eg, ei = emb(g), emb(G.inv(g))
        pinv = perm_inverse(eg.p)
        assert ei.p == pinv
        assert ei.f == tuple(G.inv(eg.f[pinv[i]]) for i in range(n))
    core = 0
    while core < 50:
        g = random_word(cs, rng)
        if not in_core(cs, g):
            continue
        core += 1
        e = emb(g)
        assert e.p == identity_perm(n)
        for i in range(n):
            assert e.f[i] == G.product((T[i], g, G.inv(T[i])))
            assert in_subgroup(cs, e.f[i])


@pytest.mark.criterion("5 Kurosh C2*C2 -> C2")
def test_criterion_5():
    cs = space(C2C2_SIGN)
    m, ks, yz, dec = kurosh(cs)
    assert cs.size == 2
    assert dec.nontrivial_factors == ()
    assert [cs.group.format(z.word) for z in dec.free_basis] == ["f1.1 f0.1"]
    assert dec.free_rank == 1
    h = cs.group.parse("f0.1 f1.1")
    assert evaluate_kurosh_tokens(cs, dec, kurosh_rewrite(cs, ks, yz, dec, h)) == h


@pytest.mark.criterion("6 Kurosh C2*C3 -> S3, index 6")
def test_criterion_6():
    cs = space(C2C3_S3)
    m, ks, yz, dec = kurosh(cs)
    assert cs.size == 6
    assert dec.nontrivial_factors == ()
    assert double_coset_counts(cs) == [3, 2]
    assert dec.free_rank == 2 == 1 - 6 + (6 - 3) + (6 - 2)
    chi = euler_characteristic_of_product((2, 3))
    assert chi == Fraction(-1, 6)
    assert euler_characteristic_of_decomposition(dec) == -1 == 6 * chi


@pytest.mark.criterion("7 Kurosh C2*C3 -> S3, index 3")
def test_criterion_7():
    cs = space(C2C3_S3_INDEX3)
    m, ks, yz, dec = kurosh(cs)
    assert cs.size == 3
    [f] = dec.nontrivial_factors
    assert f.order == 2 and f.u.is_identity()
    assert dec.free_rank == 1 == expected_free_rank(3, double_coset_counts(cs))
    chi_h = euler_characteristic_of_decomposition(dec)
    assert chi_h == Fraction(-1, 2) == 3 * Fraction(-1, 6)
    # H = C2 * Z: chi(C2) + chi(Z) - 1
    assert Fraction(1, 2) + 0 - 1 == chi_h


@pytest.mark.criterion("8 Kurosh axioms and identities")
@pytest.mark.parametrize("name", PRODUCT_NAMES)
def test_criterion_8(name):
    cs = space(PRODUCT_PROBLEMS[name])
    m, ks, yz, dec = kurosh(cs)
    passed(check_kurosh_axioms(cs, ks, m))
    passed(yz_checks(cs, ks, yz))
    passed(decomposition_checks(cs, ks, yz, dec))
    rng = make_rng(8)
    for trial in range(5):
        K = symmetric_group(rng.choice((2, 3)))
        fmaps = random_factor_maps(cs, dec, K, rng)
        zmap = random_z_map(dec, K, rng)
        checks = verify_kurosh_universal(cs, ks, yz, dec, K, fmaps, zmap, samples=200, seed=trial)
        names = {c["name"] for c in checks}
        assert {"psi_on_transversal_entries", "projection_extends_factor_maps",
                "projection_extends_free_map"} <= names
        passed(checks)


@pytest.mark.criterion("9 identity instantiation")
@pytest.mark.parametrize("name", PRODUCT_NAMES)
def test_criterion_9(name):
    cs = space(PRODUCT_PROBLEMS[name])
    m, ks, yz, dec = kurosh(cs)
    passed(verify_identity_instantiation(cs, ks, yz, dec, samples=100, seed=9))


@pytest.mark.criterion("10 randomized robustness")
def test_criterion_10():
    rng = random.Random(10)
    for _ in range(20):
        p = random_free_group_problem(rng, max_gens=3, max_degree=5)
        cs = build_coset_space(p)
        T = build_transversal(cs)
        B = schreier_basis(cs, T)
        assert len(B) == cs.size * (len(p.generators) - 1) + 1
        for _ in range(20):
            h = random_subgroup_element(cs, rng)
            assert evaluate_tokens(cs, B, schreier_rewrite(cs, T, B, h)) == h
    for _ in range(10):
        p = random_free_product_problem(rng, nfactors=2, max_order=4, max_degree=5)
        cs = build_coset_space(p)
        m, ks, yz, dec = kurosh(cs)
        assert dec.free_rank == expected_free_rank(cs.size, double_coset_counts(cs))
        passed(check_kurosh_axioms(cs, ks, m))
        passed(yz_checks(cs, ks, yz))
        passed(decomposition_checks(cs, ks, yz, dec))
