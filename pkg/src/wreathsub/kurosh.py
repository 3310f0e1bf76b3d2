"""Kurosh systems and the decomposition of a finite-index subgroup H of a
free product of finite groups into conjugates of factor subgroups and a free part.

Throughout, ``i`` indexes cosets of H (coset 0 is H), ``alpha`` indexes factors
and ``x``/``k`` indexes elements of a factor (0 is the identity).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .action import FREE_PRODUCT, CosetSpace, in_subgroup, rho_of_word
from .errors import (
    FactorElementNotLocated,
    InternalInductionOrder,
    NotAHomomorphism,
    NotInSubgroup,
    WrongKind,
)
from .fingrp import CayleyGroup, PermGroup, enumerate_homs, orbit
from .reporting import check
from .sampling import make_rng, random_subgroup_element, random_word
from .words import ProductWord
from .wreath import WreathElement, map_base, project_i, standard_embed, w_multiply, w_product


def _require_product(cs: CosetSpace):
    if cs.kind != FREE_PRODUCT:
        raise WrongKind("this operation needs a free_product problem")


def _orders(cs: CosetSpace) -> Tuple[int, ...]:
    return cs.group.orders


@dataclass(frozen=True)
class SyllableMetrics:
    coset_len: Tuple[int, ...]
    geodesic: Tuple[ProductWord, ...]
    double_cosets: Tuple[Tuple[Tuple[int, ...], ...], ...]  # [alpha][d] -> member cosets
    dc_of: Tuple[Tuple[int, ...], ...]  # [alpha][i] -> d
    dc_len: Tuple[Tuple[int, ...], ...]  # [alpha][d]


def double_cosets(cs: CosetSpace, alpha: int) -> Tuple[Tuple[int, ...], ...]:
    """Orbits of factor ``alpha`` on the cosets, ordered by least member."""
    seen = set()
    out = []
    for i in range(cs.size):
        if i not in seen:
            orb = tuple(orbit(cs.actions[alpha], i))
            seen.update(orb)
            out.append(orb)
    return tuple(out)


def syllable_metrics(cs: CosetSpace) -> SyllableMetrics:
    """BFS over (coset, last factor) states.

    A step multiplies by a nontrivial element of a factor other than the last
    one, so every path spells a normal form.  Steps are tried in (factor,
    element) order, making the first word found for each coset its shortlex-least
    geodesic.
    """
    _require_product(cs)
    orders = _orders(cs)
    n = cs.size
    geo: List[Optional[ProductWord]] = [None] * n
    geo[0] = ProductWord()
    seen = {(0, None)}
    queue = deque([(0, None, ProductWord())])
    while queue:
        c, last, w = queue.popleft()
        for alpha, order in enumerate(orders):
            if alpha == last:
                continue
            for k in range(1, order):
                d = cs.actions[alpha][k][c]
                if (d, alpha) in seen:
                    continue
                seen.add((d, alpha))
                nw = ProductWord(w.syllables + ((alpha, k),))
                if geo[d] is None:
                    geo[d] = nw
                queue.append((d, alpha, nw))
    assert all(g is not None for g in geo), "coset space is not transitive"
    coset_len = tuple(len(g) for g in geo)
    dcs, dc_of, dc_len = [], [], []
    for alpha in range(len(orders)):
        ds = double_cosets(cs, alpha)
        lookup = [0] * n
        for d, members in enumerate(ds):
            for i in members:
                lookup[i] = d
        dcs.append(ds)
        dc_of.append(tuple(lookup))
        dc_len.append(tuple(min(coset_len[i] for i in members) for members in ds))
    return SyllableMetrics(coset_len, tuple(geo), tuple(dcs), tuple(dc_of), tuple(dc_len))


@dataclass(frozen=True)
class DoubleCoset:
    alpha: int
    members: Tuple[int, ...]
    rep: ProductWord
    rep_coset: int


@dataclass(frozen=True)
class KuroshSystem:
    alpha0: int
    T: Tuple[Tuple[ProductWord, ...], ...]  # T[alpha][i] = alpha(H_i)
    D: Tuple[Tuple[DoubleCoset, ...], ...]  # D[alpha][d]
    dc_of: Tuple[Tuple[int, ...], ...]

    def rep_for(self, alpha: int, i: int) -> DoubleCoset:
        """The double coset H_i G_alpha."""
        return self.D[alpha][self.dc_of[alpha][i]]


def _least_element_to(cs: CosetSpace, alpha: int, src: int, dst: int) -> int:
    for k, g in enumerate(cs.actions[alpha]):
        if g[src] == dst:
            return k
    raise InternalInductionOrder(f"coset {dst} not reachable from {src} inside factor {alpha}")


def build_kurosh_system(cs: CosetSpace, m: Optional[SyllableMetrics] = None, alpha0: int = 0) -> KuroshSystem:
    """Assign transversals and double-coset representatives by increasing
    double-coset syllable length, choosing least factor elements throughout."""
    _require_product(cs)
    m = m or syllable_metrics(cs)
    fp = cs.group
    nf, n = fp.nfactors, cs.size
    if not 0 <= alpha0 < nf:
        raise ValueError(f"alpha0 = {alpha0} is not a factor index")
    T: List[List[Optional[ProductWord]]] = [[None] * n for _ in range(nf)]
    reps: List[List[Optional[Tuple[ProductWord, int]]]] = [[None] * len(ds) for ds in m.double_cosets]

    jobs = sorted((m.dc_len[a][d], a, d) for a in range(nf) for d in range(len(m.double_cosets[a])))
    for length, alpha, d in jobs:
        members = m.double_cosets[alpha][d]
        if length == 0:
            u, uc = ProductWord(), 0
        else:
            uc = min(i for i in members if m.coset_len[i] == length)
            g = m.geodesic[uc]
            beta = g.syllables[-1][0]
            if beta == alpha:
                # truncating g would stay in the double coset with smaller length
                raise InternalInductionOrder(f"minimal geodesic {fp.format(g)} ends in factor {alpha}")
            if reps[beta][m.dc_of[beta][uc]] is None or T[beta][uc] is None:
                raise InternalInductionOrder(f"factor {beta} entry for coset {uc} not assigned yet")
            u = T[beta][uc]
            if len(u) != length or u.syllables[-1][0] != beta:
                raise InternalInductionOrder(f"representative {fp.format(u)} has the wrong shape")
        reps[alpha][d] = (u, uc)
        T[alpha][uc] = u
        for i in members:
            if i != uc:
                c = _least_element_to(cs, alpha, uc, i)
                T[alpha][i] = fp.mul(u, fp.syllable(alpha, c))

    D = tuple(
        tuple(DoubleCoset(a, m.double_cosets[a][d], *reps[a][d]) for d in range(len(reps[a])))
        for a in range(nf)
    )
    return KuroshSystem(alpha0, tuple(map(tuple, T)), D, m.dc_of)


def check_kurosh_axioms(cs: CosetSpace, ks: KuroshSystem, m: Optional[SyllableMetrics] = None) -> List[dict]:
    """Exhaustive check of the Kurosh-system conditions, one report entry each."""
    _require_product(cs)
    m = m or syllable_metrics(cs)
    fp = cs.group
    fmt = fp.format
    nf = fp.nfactors
    bad: Dict[str, list] = {k: [] for k in
                            ("transversal", "base", "double_cosets", "i", "ii", "iii", "iv", "v")}
    for a in range(nf):
        for i, t in enumerate(ks.T[a]):
            if t is None or cs.coset_of_word(t) != i:
                bad["transversal"].append({"alpha": a, "coset": i})
        if ks.T[a][0] is None or not ks.T[a][0].is_identity():
            bad["base"].append({"alpha": a})
        if sorted(dc.members for dc in ks.D[a]) != sorted(m.double_cosets[a]):
            bad["double_cosets"].append({"alpha": a})
        for dc in ks.D[a]:
            u = dc.rep
            uc = cs.coset_of_word(u)
            if uc not in dc.members:
                bad["double_cosets"].append({"alpha": a, "rep": fmt(u)})
                continue
            if ks.T[a][uc] != u:
                bad["i"].append({"alpha": a, "rep": fmt(u)})
            if not u.is_identity() and u.syllables[-1][0] == a:
                bad["ii"].append({"alpha": a, "rep": fmt(u)})
            uinv = fp.inv(u)
            for i in dc.members:
                w = fp.mul(uinv, ks.T[a][i]) if ks.T[a][i] is not None else None
                if w is None or not (w.is_identity() or (len(w) == 1 and w.syllables[0][0] == a)):
                    bad["iii"].append({"alpha": a, "rep": fmt(u), "coset": i})
            if not u.is_identity():
                beta = u.syllables[-1][0]
                if ks.T[beta][uc] != u:
                    bad["iv"].append({"alpha": a, "rep": fmt(u), "beta": beta})
            if len(u) != min(m.coset_len[i] for i in dc.members):
                bad["v"].append({"alpha": a, "rep": fmt(u)})
    names = {
        "transversal": "transversals_valid",
        "base": "base_coset_rep_is_identity",
        "double_cosets": "double_coset_reps_valid",
        "i": "rep_is_own_transversal_entry",
        "ii": "rep_trivial_or_ends_elsewhere",
        "iii": "transversal_in_rep_coset",
        "iv": "rep_fixed_by_last_factor",
        "v": "rep_has_minimal_length",
    }
    return [check(names[k], not v, v[:5] or None) for k, v in bad.items()]


@dataclass(frozen=True)
class YZTable:
    y: tuple  # y[i][alpha][x]
    z: tuple  # z[i][alpha]


def yz_elements(cs: CosetSpace, ks: KuroshSystem) -> YZTable:
    _require_product(cs)
    fp = cs.group
    y, z = [], []
    for i in range(cs.size):
        yi, zi = [], []
        for a, order in enumerate(fp.orders):
            t = ks.T[a][i]
            yi.append(tuple(
                fp.product((t, fp.syllable(a, x), fp.inv(ks.T[a][cs.actions[a][x][i]])))
                for x in range(order)
            ))
            zi.append(fp.mul(t, fp.inv(ks.T[ks.alpha0][i])))
        y.append(tuple(yi))
        z.append(tuple(zi))
    return YZTable(tuple(y), tuple(z))


def yz_checks(cs: CosetSpace, ks: KuroshSystem, yz: YZTable) -> List[dict]:
    """Membership of y/z in H and the identities relating them (exhaustive)."""
    fp = cs.group
    fmt = fp.format
    n, a0 = cs.size, ks.alpha0
    not_in_h, trivial_z, cocycle, conj, last = [], [], [], [], []
    for i in range(n):
        for a, order in enumerate(fp.orders):
            if not in_subgroup(cs, yz.z[i][a]):
                not_in_h.append(fmt(yz.z[i][a]))
            for x in range(order):
                if not in_subgroup(cs, yz.y[i][a][x]):
                    not_in_h.append(fmt(yz.y[i][a][x]))
            if (i == 0 or a == a0) and not yz.z[i][a].is_identity():
                trivial_z.append({"coset": i, "alpha": a})
            G = cs.problem.factors[a]
            for x1 in range(order):
                j = cs.actions[a][x1][i]
                for x2 in range(order):
                    if fp.mul(yz.y[i][a][x1], yz.y[j][a][x2]) != yz.y[i][a][G.mul(x1, x2)]:
                        cocycle.append({"coset": i, "alpha": a, "x1": x1, "x2": x2})
            u = ks.rep_for(a, i).rep
            for x in range(order):
                w = fp.product((fp.inv(u), yz.y[i][a][x], u))
                if not (w.is_identity() or (len(w) == 1 and w.syllables[0][0] == a)):
                    conj.append({"coset": i, "alpha": a, "x": x})
    for a in range(fp.nfactors):
        for dc in ks.D[a]:
            u = dc.rep
            if u.is_identity():
                continue
            beta = u.syllables[-1][0]
            uc = dc.rep_coset
            if yz.z[uc][a] != yz.z[uc][beta]:
                last.append({"alpha": a, "rep": fmt(u)})
    return [
        check("yz_in_subgroup", not not_in_h, not_in_h[:5] or None),
        check("z_trivial_at_base_coset_and_alpha0", not trivial_z, trivial_z[:5] or None),
        check("y_multiplicative", not cocycle, cocycle[:5] or None),
        check("y_in_conjugated_factor", not conj, conj[:5] or None),
        check("z_agrees_with_last_syllable_factor", not last, last[:5] or None),
    ]


@dataclass(frozen=True)
class FiniteFactor:
    alpha: int
    dc: int
    u: ProductWord
    u_coset: int
    stabilizer: Tuple[int, ...]
    generators: Tuple[ProductWord, ...]  # u x u^-1 for nontrivial x in the stabilizer

    @property
    def order(self) -> int:
        return len(self.stabilizer)

    @property
    def trivial(self) -> bool:
        return len(self.stabilizer) == 1


@dataclass(frozen=True)
class FreeGenerator:
    word: ProductWord
    coset: int
    alpha: int
    provenance: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class KuroshDecomposition:
    alpha0: int
    index: int
    factors: Tuple[FiniteFactor, ...]
    free_basis: Tuple[FreeGenerator, ...]
    double_coset_counts: Tuple[int, ...]

    @property
    def nontrivial_factors(self) -> Tuple[FiniteFactor, ...]:
        return tuple(f for f in self.factors if not f.trivial)

    @property
    def free_rank(self) -> int:
        return len(self.free_basis)

    def factor_at(self, alpha: int, dc: int) -> FiniteFactor:
        for f in self.factors:
            if f.alpha == alpha and f.dc == dc:
                return f
        raise KeyError((alpha, dc))

    def z_index(self) -> Dict[ProductWord, int]:
        return {z.word: k for k, z in enumerate(self.free_basis)}


def decompose(cs: CosetSpace, ks: KuroshSystem, yz: YZTable) -> KuroshDecomposition:
    _require_product(cs)
    fp = cs.group
    factors = []
    for a in range(fp.nfactors):
        for d, dc in enumerate(ks.D[a]):
            stab = tuple(k for k, g in enumerate(cs.actions[a]) if g[dc.rep_coset] == dc.rep_coset)
            uinv = fp.inv(dc.rep)
            gens = tuple(fp.product((dc.rep, fp.syllable(a, x), uinv)) for x in stab if x)
            factors.append(FiniteFactor(a, d, dc.rep, dc.rep_coset, stab, gens))
    # Z is a set: equal words with different (coset, factor) labels are one generator
    seen: Dict[ProductWord, List[Tuple[int, int]]] = {}
    for i in range(cs.size):
        for a in range(fp.nfactors):
            z = yz.z[i][a]
            if not z.is_identity():
                seen.setdefault(z, []).append((i, a))
    free = tuple(FreeGenerator(w, prov[0][0], prov[0][1], tuple(prov)) for w, prov in seen.items())
    counts = tuple(len(ds) for ds in ks.D)
    return KuroshDecomposition(ks.alpha0, cs.size, tuple(factors), free, counts)


def expected_free_rank(index: int, double_coset_counts: Sequence[int]) -> int:
    return 1 - index + sum(index - m for m in double_coset_counts)


def euler_characteristic_of_product(orders: Sequence[int]) -> Fraction:
    return sum((Fraction(1, o) for o in orders), Fraction(0)) - (len(orders) - 1)


def euler_characteristic_of_decomposition(dec: KuroshDecomposition) -> Fraction:
    # free product of the factor subgroups and a free group of rank |Z|
    pieces = sum((Fraction(1, f.order) for f in dec.factors), Fraction(0))
    return pieces + (1 - dec.free_rank) - len(dec.factors)


def decomposition_checks(cs: CosetSpace, ks: KuroshSystem, yz: YZTable, dec: KuroshDecomposition) -> List[dict]:
    fp = cs.group
    n = cs.size
    gens_bad, orbit_bad, prov_bad = [], [], []
    for f in dec.factors:
        for x, g in zip([x for x in f.stabilizer if x], f.generators):
            if not in_subgroup(cs, g) or g != yz.y[f.u_coset][f.alpha][x]:
                gens_bad.append({"alpha": f.alpha, "u": fp.format(f.u), "x": x})
        orb = len(ks.D[f.alpha][f.dc].members)
        if orb * f.order != fp.orders[f.alpha]:
            orbit_bad.append({"alpha": f.alpha, "u": fp.format(f.u)})
    for a in range(fp.nfactors):
        if sum(len(dc.members) for dc in ks.D[a]) != n:
            orbit_bad.append({"alpha": a})
    for z in dec.free_basis:
        if len({i for i, _ in z.provenance}) != 1:
            prov_bad.append({"word": fp.format(z.word), "provenance": [list(p) for p in z.provenance]})
    want = expected_free_rank(n, dec.double_coset_counts)
    chi_g = euler_characteristic_of_product(fp.orders)
    chi_h = euler_characteristic_of_decomposition(dec)
    return [
        check("factor_generators_are_y_elements", not gens_bad, gens_bad[:5] or None),
        check("orbit_stabilizer", not orbit_bad, orbit_bad[:5] or None),
        check("free_basis_labels_share_coset", not prov_bad, prov_bad[:5] or None),
        check("free_rank_count", dec.free_rank == want, {"free_rank": dec.free_rank, "expected": want}),
        check("euler_characteristic", chi_h == n * chi_g, {"subgroup": str(chi_h), "index_times_group": str(n * chi_g)}),
    ]


def decomposition_report(cs: CosetSpace, ks: KuroshSystem, yz: YZTable, dec: KuroshDecomposition,
                         checks=None) -> dict:
    fmt = cs.group.format
    return {
        "alpha0": dec.alpha0,
        "factors": [
            {"alpha": f.alpha, "u": fmt(f.u), "order": f.order, "generators": [fmt(g) for g in f.generators]}
            for f in dec.nontrivial_factors
        ],
        "trivial_factors": [{"alpha": f.alpha, "u": fmt(f.u)} for f in dec.factors if f.trivial],
        "free_basis": [{"word": fmt(z.word), "coset": z.coset, "alpha": z.alpha,
                        "labels": [list(lab) for lab in z.provenance]} for z in dec.free_basis],
        "counts": {
            "index": dec.index,
            "double_cosets": list(dec.double_coset_counts),
            "free_rank": dec.free_rank,
            "euler_characteristic": str(euler_characteristic_of_decomposition(dec)),
        },
        "checks": decomposition_checks(cs, ks, yz, dec) if checks is None else checks,
    }


def system_report(cs: CosetSpace, ks: KuroshSystem, m: Optional[SyllableMetrics] = None) -> dict:
    m = m or syllable_metrics(cs)
    fmt = cs.group.format
    yz = yz_elements(cs, ks)
    return {
        "alpha0": ks.alpha0,
        "transversals": [[fmt(t) for t in Ta] for Ta in ks.T],
        "double_cosets": [
            [{"rep": fmt(dc.rep), "cosets": list(dc.members), "length": len(dc.rep)} for dc in Da]
            for Da in ks.D
        ],
        "checks": check_kurosh_axioms(cs, ks, m) + yz_checks(cs, ks, yz),
    }


def locate_in_factor(cs: CosetSpace, factor: FiniteFactor, y: ProductWord) -> int:
    """The stabilizer element x with y = u x u^-1."""
    fp = cs.group
    w = fp.product((fp.inv(factor.u), y, factor.u))
    if w.is_identity():
        return 0
    if len(w) == 1 and w.syllables[0][0] == factor.alpha and w.syllables[0][1] in factor.stabilizer:
        return w.syllables[0][1]
    raise FactorElementNotLocated(f"{fp.format(y)} is not in u G_{factor.alpha} u^-1 for u = {fp.format(factor.u)}")


def validate_factor_map(cs: CosetSpace, factor: FiniteFactor, images: Mapping[int, object], base) -> None:
    G = cs.problem.factors[factor.alpha]
    for x1 in factor.stabilizer:
        if x1 not in images:
            raise NotAHomomorphism(x1, x1, f"no image for factor element {x1}")
    for x1 in factor.stabilizer:
        for x2 in factor.stabilizer:
            if images[G.mul(x1, x2)] != base.mul(images[x1], images[x2]):
                raise NotAHomomorphism(x1, x2)


def build_psi(cs: CosetSpace, ks: KuroshSystem, yz: YZTable, dec: KuroshDecomposition, base,
              factor_maps: Mapping[Tuple[int, int], Mapping[int, object]],
              z_map: Mapping[ProductWord, object]) -> Tuple[Tuple[WreathElement, ...], ...]:
    """Wreath elements Psi(x) = (f_x, rho(x)) for every factor element x, with
    f_x(H_i) = psi(z_{i,a})^-1 psi_u(y_{i,x}) psi(z_{j,a}), H_j = H_i x.

    ``factor_maps[(alpha, d)]`` maps stabilizer elements of the d-th factor
    subgroup to ``base``; trivial factors may be omitted.  ``z_map`` sends each
    free generator word to ``base``; the identity word maps to the identity.
    """
    _require_product(cs)
    fp = cs.group
    maps = {}
    for f in dec.factors:
        images = factor_maps.get((f.alpha, f.dc))
        if images is None:
            if not f.trivial:
                raise NotAHomomorphism(0, 0, f"no map given for factor {f.alpha} at u = {fp.format(f.u)}")
            images = {0: base.identity}
        validate_factor_map(cs, f, images, base)
        maps[(f.alpha, f.dc)] = (f, images)

    def zval(w):
        return base.identity if w.is_identity() else z_map[w]

    table = []
    for a, order in enumerate(fp.orders):
        G = cs.problem.factors[a]
        row = []
        for x in range(order):
            f = []
            for i in range(cs.size):
                j = cs.actions[a][x][i]
                fac, images = maps[(a, ks.dc_of[a][i])]
                y_img = images[locate_in_factor(cs, fac, yz.y[i][a][x])]
                f.append(base.mul(base.mul(base.inv(zval(yz.z[i][a])), y_img), zval(yz.z[j][a])))
            row.append(WreathElement(tuple(f), cs.actions[a][x]))
        for x1 in range(order):
            for x2 in range(order):
                if w_multiply(base, row[x1], row[x2]) != row[G.mul(x1, x2)]:
                    raise NotAHomomorphism(x1, x2, f"Psi on factor {a} fails for ({x1}, {x2})")
        table.append(tuple(row))
    return tuple(table)


def psi_of_word(base, psi, w: ProductWord, n: int) -> WreathElement:
    return w_product(base, (psi[a][k] for a, k in w.syllables), n)


def inclusion_maps(cs: CosetSpace, dec: KuroshDecomposition):
    """factor_maps and z_map for the identity instantiation K = H."""
    fp = cs.group
    factor_maps = {
        (f.alpha, f.dc): {x: fp.product((f.u, fp.syllable(f.alpha, x), fp.inv(f.u))) for x in f.stabilizer}
        for f in dec.factors
    }
    z_map = {z.word: z.word for z in dec.free_basis}
    return factor_maps, z_map


@dataclass(frozen=True)
class KuroshToken:
    kind: str  # "z" (free generator) or "y" (element of a finite factor)
    index: int  # position in free_basis or factors
    value: int  # sign for z, factor element for y
    word: ProductWord

    def label(self) -> str:
        if self.kind == "z":
            return f"z{self.index}" + ("" if self.value > 0 else "^-1")
        return f"y{self.index}.{self.value}"


def kurosh_rewrite(cs: CosetSpace, ks: KuroshSystem, yz: YZTable, dec: KuroshDecomposition,
                   h: ProductWord) -> List[KuroshToken]:
    """Rewrite h in H as z_{i,a}^-1 y_{i,x} z_{j,a} per syllable, dropping identities."""
    _require_product(cs)
    fp = cs.group
    if not in_subgroup(cs, h):
        raise NotInSubgroup(f"{fp.format(h)} is not in H")
    zpos = dec.z_index()
    fpos = {(f.alpha, f.dc): k for k, f in enumerate(dec.factors)}
    tokens = []
    i = 0
    for a, x in h.syllables:
        j = cs.actions[a][x][i]
        zi, zj = yz.z[i][a], yz.z[j][a]
        if not zi.is_identity():
            tokens.append(KuroshToken("z", zpos[zi], -1, fp.inv(zi)))
        y = yz.y[i][a][x]
        if not y.is_identity():
            k = fpos[(a, ks.dc_of[a][i])]
            tokens.append(KuroshToken("y", k, locate_in_factor(cs, dec.factors[k], y), y))
        if not zj.is_identity():
            tokens.append(KuroshToken("z", zpos[zj], 1, zj))
        i = j
    return tokens


def evaluate_kurosh_tokens(cs: CosetSpace, dec: KuroshDecomposition, tokens) -> ProductWord:
    """Multiply tokens back together from the decomposition data alone."""
    fp = cs.group
    parts = []
    for t in tokens:
        if t.kind == "z":
            z = dec.free_basis[t.index].word
            parts.append(z if t.value > 0 else fp.inv(z))
        else:
            f = dec.factors[t.index]
            parts.append(fp.product((f.u, fp.syllable(f.alpha, t.value), fp.inv(f.u))))
    return fp.product(parts)


def rewrite_report(cs, dec, h, tokens) -> dict:
    fmt = cs.group.format
    back = evaluate_kurosh_tokens(cs, dec, tokens)
    return {
        "word": fmt(h),
        "tokens": [{"token": t.label(), "kind": t.kind, "index": t.index, "value": t.value,
                    "word": fmt(t.word)} for t in tokens],
        "evaluates_to": fmt(back),
        "checks": [check("round_trip", back == h)],
    }


def random_factor_maps(cs: CosetSpace, dec: KuroshDecomposition, K: PermGroup, rng, limit: int = 100000):
    """A random homomorphism from each nontrivial factor subgroup into K."""
    out = {}
    for f in dec.nontrivial_factors:
        sub = cs.problem.factors[f.alpha].restrict(f.stabilizer)
        homs = enumerate_homs(sub, K, limit)
        hom = homs[rng.randrange(len(homs))]
        out[(f.alpha, f.dc)] = {x: hom[k] for k, x in enumerate(f.stabilizer)}
    return out


def random_z_map(dec: KuroshDecomposition, K: PermGroup, rng):
    return {z.word: K.elements[rng.randrange(K.order)] for z in dec.free_basis}


def random_endomorphism(K: PermGroup, rng, limit: int = 100000):
    homs = enumerate_homs(CayleyGroup.from_perm_group(K), K, limit)
    hom = homs[rng.randrange(len(homs))]
    return dict(zip(K.elements, hom))


def verify_kurosh_universal(cs: CosetSpace, ks: KuroshSystem, yz: YZTable, dec: KuroshDecomposition,
                            K: PermGroup, factor_maps, z_map, samples: int = 200, seed: int = 0,
                            gamma: Optional[Mapping] = None) -> List[dict]:
    """Replay the extension argument for the given maps into K; failures become entries."""
    _require_product(cs)
    rng = make_rng(seed)
    fp, n, base = cs.group, cs.size, K.base()
    fmt = fp.format
    try:
        psi = build_psi(cs, ks, yz, dec, base, factor_maps, z_map)
    except (NotAHomomorphism, FactorElementNotLocated) as exc:
        return [check("psi_is_homomorphism", False, str(exc))]
    checks = [check("psi_is_homomorphism", True)]

    def zval(w):
        return base.identity if w.is_identity() else tuple(z_map[w])

    bad = []
    for a in range(fp.nfactors):
        for i, u in enumerate(ks.T[a]):
            if psi_of_word(base, psi, u, n).f[0] != zval(yz.z[i][a]):
                bad.append({"alpha": a, "coset": i, "u": fmt(u)})
    checks.append(check("psi_on_transversal_entries", not bad, bad[:5] or None))

    bad = []
    for f in dec.nontrivial_factors:
        for x, h in zip([x for x in f.stabilizer if x], f.generators):
            if project_i(psi_of_word(base, psi, h, n), 0) != tuple(factor_maps[(f.alpha, f.dc)][x]):
                bad.append({"alpha": f.alpha, "u": fmt(f.u), "x": x})
    checks.append(check("projection_extends_factor_maps", not bad, bad[:5] or None))

    bad = []
    for z in dec.free_basis:
        if project_i(psi_of_word(base, psi, z.word, n), 0) != tuple(z_map[z.word]):
            bad.append(fmt(z.word))
    checks.append(check("projection_extends_free_map", not bad, bad[:5] or None))

    bad_hom, bad_theta = [], []
    for _ in range(samples):
        w, v = random_word(cs, rng), random_word(cs, rng)
        pw, pv = psi_of_word(base, psi, w, n), psi_of_word(base, psi, v, n)
        if psi_of_word(base, psi, fp.mul(w, v), n) != w_multiply(base, pw, pv):
            bad_hom.append([fmt(w), fmt(v)])
        if pw.p != rho_of_word(cs, w):
            bad_theta.append(fmt(w))
    checks.append(check("psi_homomorphism", not bad_hom, bad_hom[:5] or {"samples": samples}))
    checks.append(check("psi_covers_rho", not bad_theta, bad_theta[:5] or {"samples": samples}))

    if gamma is None:
        gamma = random_endomorphism(K, rng)
    g = lambda p: tuple(gamma[tuple(p)])
    fmaps_g = {key: {x: g(p) for x, p in imgs.items()} for key, imgs in factor_maps.items()}
    zmap_g = {w: g(p) for w, p in z_map.items()}
    bad = []
    try:
        psi_g = build_psi(cs, ks, yz, dec, base, fmaps_g, zmap_g)
        for _ in range(samples):
            w = random_word(cs, rng)
            if map_base(g, psi_of_word(base, psi, w, n)) != psi_of_word(base, psi_g, w, n):
                bad.append(fmt(w))
        for _ in range(max(1, samples // 4)):
            h = random_subgroup_element(cs, rng)
            if g(project_i(psi_of_word(base, psi, h, n), 0)) != project_i(psi_of_word(base, psi_g, h, n), 0):
                bad.append(fmt(h))
    except (NotAHomomorphism, FactorElementNotLocated) as exc:
        bad.append(str(exc))
    checks.append(check("functorial_in_target", not bad, bad[:5] or None))

    bad = []
    for _ in range(max(1, samples // 2)):
        h = random_subgroup_element(cs, rng)
        want = base.identity
        for t in kurosh_rewrite(cs, ks, yz, dec, h):
            if t.kind == "z":
                zv = tuple(z_map[dec.free_basis[t.index].word])
                want = base.mul(want, zv if t.value > 0 else base.inv(zv))
            else:
                f = dec.factors[t.index]
                want = base.mul(want, tuple(factor_maps[(f.alpha, f.dc)][t.value]))
        if project_i(psi_of_word(base, psi, h, n), 0) != want:
            bad.append(fmt(h))
    checks.append(check("extension_agrees_with_rewriting", not bad, bad[:5] or None))
    return checks


def verify_identity_instantiation(cs: CosetSpace, ks: KuroshSystem, yz: YZTable, dec: KuroshDecomposition,
                                  samples: int = 100, seed: int = 0) -> List[dict]:
    """With K = H and inclusions, Psi is the standard embedding for T_alpha0 and
    its coset-0 coordinate restricts to the identity on H."""
    fp, n = cs.group, cs.size
    rng = make_rng(seed)
    factor_maps, z_map = inclusion_maps(cs, dec)
    psi = build_psi(cs, ks, yz, dec, fp, factor_maps, z_map)
    T0 = ks.T[ks.alpha0]
    bad = [
        {"alpha": a, "x": x}
        for a, order in enumerate(fp.orders) for x in range(order)
        if psi[a][x] != standard_embed(cs, T0, fp.syllable(a, x))
    ]
    checks = [check("equals_standard_embedding", not bad, bad[:5] or None)]
    bad = []
    for _ in range(samples):
        h = random_subgroup_element(cs, rng)
        if project_i(psi_of_word(fp, psi, h, n), 0) != h:
            bad.append(fp.format(h))
    checks.append(check("identity_on_subgroup", not bad, bad[:5] or {"samples": samples}))
    return checks
