"""Schreier transversals, the Nielsen-Schreier basis, rewriting, and the
universal-property harness for subgroups of free groups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .action import FREE_GROUP, CosetSpace, in_subgroup, rho_of_word
from .errors import NotInSubgroup, WrongKind
from .fingrp import PermGroup
from .reporting import check
from .sampling import make_rng, random_free_word, random_subgroup_element
from .words import FreeWord
from .wreath import (
    WreathElement,
    cocycle_expand,
    map_base,
    project_i,
    standard_embed,
    w_invert,
    w_multiply,
    w_product,
)


@dataclass(frozen=True)
class SchreierTransversal:
    reps: Tuple[FreeWord, ...]

    def __getitem__(self, i: int) -> FreeWord:
        return self.reps[i]

    def __len__(self):
        return len(self.reps)


@dataclass(frozen=True)
class BasisElement:
    word: FreeWord
    coset: int
    generator: int


@dataclass(frozen=True)
class SchreierBasis:
    elements: Tuple[BasisElement, ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def lookup(self) -> Dict[Tuple[int, int], int]:
        """(coset, generator) -> position in the basis."""
        return {(b.coset, b.generator): k for k, b in enumerate(self.elements)}


def _require_free(cs: CosetSpace):
    if cs.kind != FREE_GROUP:
        raise WrongKind("this operation needs a free_group problem")


def build_transversal(cs: CosetSpace) -> SchreierTransversal:
    """Shortlex-least representative of every coset, found by BFS from H.

    Letters are tried in the order a, b, ..., a^-1, b^-1, ...; non-reduced
    extensions lead back to an already-visited coset and are skipped.
    """
    _require_free(cs)
    letters = cs.group.letters()
    reps: List[Optional[FreeWord]] = [None] * cs.size
    reps[0] = FreeWord()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        t = reps[c]
        for x in letters:
            if t.letters and t.letters[-1] == (x[0], -x[1]):
                continue
            d = cs.letter_action(x)[c]
            if reps[d] is None:
                reps[d] = FreeWord(t.letters + (x,))
                queue.append(d)
    assert all(r is not None for r in reps), "coset space is not transitive"
    return SchreierTransversal(tuple(reps))


def is_prefix_closed(T: SchreierTransversal) -> bool:
    words = set(T.reps)
    return all(FreeWord(t.letters[:i]) in words for t in T.reps for i in range(len(t)))


def schreier_basis(cs: CosetSpace, T: SchreierTransversal) -> SchreierBasis:
    _require_free(cs)
    G = cs.group
    out = []
    for t in range(cs.size):
        for x in range(G.rank):
            d = cs.actions[x][t]
            b = G.product((T[t], G.generator(x), G.inv(T[d])))
            if not b.is_identity():
                out.append(BasisElement(b, t, x))
    return SchreierBasis(tuple(out))


def transversal_steps(cs: CosetSpace, T: SchreierTransversal, coset: int, generator: int) -> List[FreeWord]:
    """Write b = T[coset] x T[coset.x]^-1 as an unreduced letter string x_1..x_n and
    return the step words t_{i-1} x_i t_i^-1, t_i the representative after i letters."""
    G = cs.group
    d = cs.actions[generator][coset]
    letters = T[coset].letters + ((generator, 1),) + G.inv(T[d]).letters
    steps = []
    c = 0
    for x in letters:
        nxt = cs.letter_action(x)[c]
        steps.append(G.product((T[c], FreeWord((x,)), G.inv(T[nxt]))))
        c = nxt
    return steps


def schreier_rewrite(cs: CosetSpace, T: SchreierTransversal, B: SchreierBasis,
                     h: FreeWord) -> List[Tuple[int, int]]:
    """Express ``h`` in H as a list of (basis position, +1/-1) tokens."""
    _require_free(cs)
    if not in_subgroup(cs, h):
        raise NotInSubgroup(f"{cs.group.format(h)} is not in H")
    where = B.lookup()
    tokens = []
    c = 0
    for g, s in h.letters:
        if s > 0:
            key, nxt = (c, g), cs.actions[g][c]
        else:
            nxt = cs.inverse_actions[g][c]
            key = (nxt, g)  # x^-1 from c is the inverse of x from nxt
        if key in where:
            tokens.append((where[key], s))
        c = nxt
    return tokens


def evaluate_tokens(cs: CosetSpace, B: SchreierBasis, tokens) -> FreeWord:
    G = cs.group
    return G.product(B.elements[k].word if s > 0 else G.inv(B.elements[k].word) for k, s in tokens)


def basis_checks(cs: CosetSpace, T: SchreierTransversal, B: SchreierBasis) -> List[dict]:
    n, r = cs.size, cs.group.rank
    words = [b.word for b in B]
    bad_members = [cs.group.format(w) for w in words if not in_subgroup(cs, w)]
    misplaced = [i for i, t in enumerate(T.reps) if cs.coset_of_word(t) != i]
    return [
        check("transversal_prefix_closed", is_prefix_closed(T)),
        check("transversal_one_rep_per_coset", not misplaced and len(set(T.reps)) == n, misplaced or None),
        check("basis_in_subgroup", not bad_members, bad_members or None),
        check("basis_distinct", len(set(words)) == len(words)),
        check("schreier_index_formula", len(B) == n * (r - 1) + 1,
              {"rank": len(B), "expected": n * (r - 1) + 1}),
    ]


def basis_report(cs: CosetSpace, T: SchreierTransversal, B: SchreierBasis, checks=None) -> dict:
    G = cs.group
    return {
        "basis": [{"word": G.format(b.word), "coset": b.coset, "generator": G.names[b.generator]} for b in B],
        "rank": len(B),
        "checks": basis_checks(cs, T, B) if checks is None else checks,
    }


def tau_table(cs: CosetSpace, T: SchreierTransversal, B: SchreierBasis, K: PermGroup, alpha) -> dict:
    """tau on letters: tau(x) = (alpha o f_x, rho(x)), tau(x^-1) = tau(x)^-1.

    ``alpha`` is a sequence of permutations indexed by basis position.
    """
    base = K.base()
    value = {b.word: tuple(alpha[k]) for k, b in enumerate(B)}
    value[FreeWord()] = base.identity

    def a(word):
        return value[word]

    table = {}
    for g in range(cs.group.rank):
        fx = standard_embed(cs, T.reps, cs.group.generator(g), check=False)
        table[(g, 1)] = map_base(a, fx)
        table[(g, -1)] = w_invert(base, table[(g, 1)])
    return table


def tau_of_word(base, table, w: FreeWord, n: int) -> WreathElement:
    return w_product(base, (table[x] for x in w.letters), n)


def verify_ns_universal(cs: CosetSpace, T: SchreierTransversal, B: SchreierBasis, K: PermGroup,
                        alpha, samples: int = 200, seed: int = 0) -> dict:
    """Replay the extension argument for the map ``alpha`` from B to K.

    Checks are exact over B and all (coset, letter) pairs, and sampled for the
    homomorphism property.  Failures are report entries, never exceptions.
    """
    _require_free(cs)
    rng = make_rng(seed)
    G, n, base = cs.group, cs.size, K.base()
    checks = []
    try:
        table = tau_table(cs, T, B, K, alpha)
    except KeyError as exc:
        return basis_report(cs, T, B, [check("f_x_values_in_basis", False, str(exc))])

    # f'_x(Hw) = 1 whenever t_{Hw} x t_{Hwx}^-1 = 1, including inverse letters
    bad = []
    for c in range(n):
        for x in G.letters():
            d = cs.letter_action(x)[c]
            step = G.product((T[c], FreeWord((x,)), G.inv(T[d])))
            if step.is_identity() and table[x].f[c] != base.identity:
                bad.append({"coset": c, "letter": G.format(FreeWord((x,)))})
    checks.append(check("trivial_steps_map_to_identity", not bad, bad[:5] or None))

    bad = []
    for k, b in enumerate(B):
        direct = project_i(tau_of_word(base, table, b.word, n), 0)
        expanded = cocycle_expand(base, table, b.word.letters)
        if not (direct == expanded == tuple(alpha[k])):
            bad.append({"basis": G.format(b.word), "got": list(direct), "want": list(alpha[k])})
    checks.append(check("projection_extends_alpha", not bad, bad[:5] or None))

    bad_hom, bad_theta = [], []
    for _ in range(samples):
        w = random_free_word(rng, G.rank)
        v = random_free_word(rng, G.rank)
        tw, tv = tau_of_word(base, table, w, n), tau_of_word(base, table, v, n)
        if tau_of_word(base, table, G.mul(w, v), n) != w_multiply(base, tw, tv):
            bad_hom.append([G.format(w), G.format(v)])
        if tw.p != rho_of_word(cs, w):
            bad_theta.append(G.format(w))
    checks.append(check("tau_homomorphism", not bad_hom, bad_hom[:5] or {"samples": samples}))
    checks.append(check("tau_covers_rho", not bad_theta, bad_theta[:5] or {"samples": samples}))

    bad = []
    for _ in range(max(1, samples // 2)):
        h = random_subgroup_element(cs, rng)
        got = project_i(tau_of_word(base, table, h, n), 0)
        want = base.identity
        for k, s in schreier_rewrite(cs, T, B, h):
            want = base.mul(want, tuple(alpha[k]) if s > 0 else base.inv(tuple(alpha[k])))
        if got != want:
            bad.append(G.format(h))
    checks.append(check("extension_agrees_with_rewriting", not bad, bad[:5] or None))
    return basis_report(cs, T, B, checks)
