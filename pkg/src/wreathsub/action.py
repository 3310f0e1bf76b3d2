"""Coset spaces H\\G for H = phi^-1(S), phi a homomorphism onto a finite permutation group Q."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Tuple, Union

from .errors import (
    CapExceeded,
    FactorOutOfRange,
    NotAHomomorphism,
    NotASubgroup,
    SchemaError,
    UnknownGenerator,
    WrongKind,
)
from .fingrp import (
    CayleyGroup,
    Caps,
    Perm,
    PermGroup,
    SubgroupData,
    closure,
    compose,
    identity_perm,
    is_permutation,
    perm_inverse,
    right_cosets,
    subgroup,
    validate_factor_hom,
)
from .words import FreeGroup, FreeProduct, FreeWord, ProductWord

FREE_GROUP = "free_group"
FREE_PRODUCT = "free_product"

Word = Union[FreeWord, ProductWord]


@dataclass(frozen=True)
class Problem:
    kind: str
    degree: int
    subgroup: Tuple[Perm, ...] = ()
    generators: Tuple[str, ...] = ()
    generator_images: Tuple[Perm, ...] = ()
    factors: Tuple[CayleyGroup, ...] = ()
    factor_images: Tuple[Tuple[Perm, ...], ...] = ()

    def to_dict(self) -> dict:
        if self.kind == FREE_GROUP:
            return {
                "kind": FREE_GROUP,
                "generators": list(self.generators),
                "degree": self.degree,
                "images": {n: list(p) for n, p in zip(self.generators, self.generator_images)},
                "subgroup": [list(p) for p in self.subgroup],
            }
        return {
            "kind": FREE_PRODUCT,
            "factors": [{"name": G.name, "table": [list(r) for r in G.table]} for G in self.factors],
            "degree": self.degree,
            "images": [[list(p) for p in imgs] for imgs in self.factor_images],
            "subgroup": [list(p) for p in self.subgroup],
        }


def _perm(value, degree, where) -> Perm:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise SchemaError(where, "expected a list of integers")
    if not is_permutation(value, degree):
        raise SchemaError(where, f"{value} is not a permutation of 0..{degree - 1}")
    return tuple(value)


def problem_from_dict(data) -> Problem:
    """Validate a decoded problem document.  Homomorphism and subgroup checks happen here too."""
    if not isinstance(data, dict):
        raise SchemaError("<root>", "expected a JSON object")
    kind = data.get("kind")
    if kind not in (FREE_GROUP, FREE_PRODUCT):
        raise SchemaError("kind", f"expected {FREE_GROUP!r} or {FREE_PRODUCT!r}")
    degree = data.get("degree")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise SchemaError("degree", "expected a positive integer")
    sub = data.get("subgroup", [])
    if not isinstance(sub, list):
        raise SchemaError("subgroup", "expected a list of permutations")
    sub = tuple(_perm(p, degree, f"subgroup[{i}]") for i, p in enumerate(sub))

    if kind == FREE_GROUP:
        names = data.get("generators")
        if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
            raise SchemaError("generators", "expected a list of names")
        FreeGroup(names)  # name validation
        images = data.get("images")
        if not isinstance(images, dict):
            raise SchemaError("images", "expected an object mapping generator names to permutations")
        for key in images:
            if key not in names:
                raise SchemaError(f"images.{key}", "not a declared generator")
        imgs = []
        for n in names:
            if n not in images:
                raise SchemaError(f"images.{n}", "missing image")
            imgs.append(_perm(images[n], degree, f"images.{n}"))
        problem = Problem(FREE_GROUP, degree, sub, generators=tuple(names), generator_images=tuple(imgs))
    else:
        factors = data.get("factors")
        if not isinstance(factors, list) or not factors:
            raise SchemaError("factors", "expected a nonempty list")
        groups = []
        for a, fac in enumerate(factors):
            if not isinstance(fac, dict) or not isinstance(fac.get("table"), list):
                raise SchemaError(f"factors[{a}]", "expected {name, table}")
            table = fac["table"]
            if not all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in table):
                raise SchemaError(f"factors[{a}].table", "expected an integer matrix")
            try:
                groups.append(CayleyGroup(str(fac.get("name", f"G{a}")), tuple(map(tuple, table))))
            except ValueError as exc:
                raise SchemaError(f"factors[{a}].table", str(exc))
        images = data.get("images")
        if not isinstance(images, list) or len(images) != len(groups):
            raise SchemaError("images", "expected one image list per factor")
        fimgs = []
        for a, (G, imgs) in enumerate(zip(groups, images)):
            if not isinstance(imgs, list) or len(imgs) != G.order:
                raise SchemaError(f"images[{a}]", f"expected {G.order} permutations")
            perms = tuple(_perm(p, degree, f"images[{a}][{k}]") for k, p in enumerate(imgs))
            try:
                validate_factor_hom(G, perms)
            except NotAHomomorphism as exc:
                raise NotAHomomorphism(*exc.pair, f"images[{a}]: {exc}")
            fimgs.append(perms)
        problem = Problem(FREE_PRODUCT, degree, sub, factors=tuple(groups), factor_images=tuple(fimgs))
    return problem


def load_problem(path) -> Problem:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("<root>", f"invalid JSON: {exc}")
    return problem_from_dict(data)


@dataclass(frozen=True)
class CosetSpace:
    """Right cosets of H with the right action of each generator or factor element.

    ``actions`` holds, for a free group, one permutation of the cosets per
    generator; for a free product, one tuple of permutations per factor indexed
    by factor element.  ``reps`` maps each coset to its least element of Q.
    """

    problem: Problem
    Q: PermGroup
    S: SubgroupData
    reps: Tuple[Perm, ...]
    actions: tuple
    inverse_actions: tuple = ()
    group: object = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.reps)

    @property
    def kind(self) -> str:
        return self.problem.kind

    def letter_action(self, letter) -> Perm:
        if self.kind == FREE_GROUP:
            g, s = letter
            if not 0 <= g < len(self.actions):
                raise UnknownGenerator(f"generator index {g} out of range")
            return self.actions[g] if s > 0 else self.inverse_actions[g]
        alpha, k = letter
        if not 0 <= alpha < len(self.actions) or not 0 <= k < len(self.actions[alpha]):
            raise FactorOutOfRange(f"syllable {letter} out of range")
        return self.actions[alpha][k]

    def _letters(self, w: Word):
        if isinstance(w, FreeWord):
            if self.kind != FREE_GROUP:
                raise WrongKind("free word given for a free-product problem")
            return w.letters
        if isinstance(w, ProductWord):
            if self.kind != FREE_PRODUCT:
                raise WrongKind("product word given for a free-group problem")
            return w.syllables
        raise TypeError(f"not a word: {w!r}")

    def walk(self, w: Word, start: int = 0) -> List[int]:
        """Cosets visited when reading ``w`` from coset ``start`` (length |w|+1)."""
        path = [start]
        c = start
        for letter in self._letters(w):
            c = self.letter_action(letter)[c]
            path.append(c)
        return path

    def coset_of_word(self, w: Word, start: int = 0) -> int:
        c = start
        for letter in self._letters(w):
            c = self.letter_action(letter)[c]
        return c


def build_coset_space(p: Problem, caps: Caps = Caps()) -> CosetSpace:
    if p.kind == FREE_GROUP:
        gens = list(p.generator_images)
    else:
        gens = [img for imgs in p.factor_images for img in imgs]
    Q = closure(p.degree, gens, caps.max_group_order)
    for i, s in enumerate(p.subgroup):
        if s not in Q:
            raise NotASubgroup(f"subgroup[{i}] = {list(s)} is not in the image group Q")
    S = subgroup(Q, p.subgroup)
    if Q.order // S.order > caps.max_index:
        raise CapExceeded(f"index {Q.order // S.order} exceeds cap {caps.max_index}")
    table = right_cosets(Q, S)
    n = table.size

    def act(img: Perm) -> Perm:
        return tuple(table.coset_of[compose(rep, img)] for rep in table.reps)

    if p.kind == FREE_GROUP:
        actions = tuple(act(img) for img in p.generator_images)
        inverse = tuple(perm_inverse(a) for a in actions)
        group = FreeGroup(p.generators)
    else:
        actions = tuple(tuple(act(img) for img in imgs) for imgs in p.factor_images)
        inverse = ()
        group = FreeProduct([G.table for G in p.factors])
    assert n == Q.order // S.order
    return CosetSpace(p, Q, S, table.reps, actions, inverse, group)


def rho_of_word(cs: CosetSpace, w: Word) -> Perm:
    """Permutation of the cosets induced by ``w`` (left-to-right product)."""
    result = identity_perm(cs.size)
    for letter in cs._letters(w):
        result = compose(result, cs.letter_action(letter))
    return result


def in_subgroup(cs: CosetSpace, w: Word) -> bool:
    return cs.coset_of_word(w) == 0


def in_core(cs: CosetSpace, w: Word) -> bool:
    return rho_of_word(cs, w) == identity_perm(cs.size)


def phi_of_word(cs: CosetSpace, w: Word) -> Perm:
    """Image of ``w`` in Q."""
    p = cs.problem
    result = identity_perm(p.degree)
    if isinstance(w, FreeWord):
        for g, s in cs._letters(w):
            img = p.generator_images[g]
            result = compose(result, img if s > 0 else perm_inverse(img))
    else:
        for alpha, k in cs._letters(w):
            result = compose(result, p.factor_images[alpha][k])
    return result
