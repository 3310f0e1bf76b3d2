"""Finite groups stored by full element enumeration.

Permutations are tuples in 0-indexed one-line notation and compose
left-to-right: ``compose(p, q)`` applies ``p`` first, then ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Sequence, Tuple

from .errors import (
    CapExceeded,
    ClosureCapExceeded,
    NotAHomomorphism,
    NotASubgroup,
    UnknownGenerator,
)
from .words import FreeWord

Perm = Tuple[int, ...]

DEFAULT_MAX_GROUP_ORDER = 100000
DEFAULT_MAX_INDEX = 4096
DEFAULT_MAX_FACTOR_ORDER = 256
DEFAULT_HOM_LIMIT = 100000


@dataclass(frozen=True)
class Caps:
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER
    max_index: int = DEFAULT_MAX_INDEX
    max_factor_order: int = DEFAULT_MAX_FACTOR_ORDER
    hom_limit: int = DEFAULT_HOM_LIMIT

    def __post_init__(self):
        for name in ("max_group_order", "max_index", "max_factor_order", "hom_limit"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def is_permutation(images, degree=None) -> bool:
    try:
        images = [int(x) for x in images]
    except (TypeError, ValueError):
        return False
    n = len(images) if degree is None else degree
    return len(images) == n and sorted(images) == list(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Left-to-right product: first p, then q."""
    return tuple(q[i] for i in p)


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_power(p: Perm, n: int) -> Perm:
    result = identity_perm(len(p))
    base = p if n >= 0 else perm_inverse(p)
    for _ in range(abs(n)):
        result = compose(result, base)
    return result


def cycle(degree: int, *cycles: Sequence[int]) -> Perm:
    """Permutation of ``degree`` points from disjoint cycles, e.g. cycle(3, (0, 1, 2))."""
    images = list(range(degree))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            images[a] = b
    return tuple(images)


class PermutationBase:
    """Symmetric group on ``degree`` points viewed as a wreath base group."""

    def __init__(self, degree: int):
        self.degree = degree
        self.identity = identity_perm(degree)

    def mul(self, a: Perm, b: Perm) -> Perm:
        return compose(a, b)

    def inv(self, a: Perm) -> Perm:
        return perm_inverse(a)

    def format(self, a: Perm) -> str:
        return "[" + ",".join(map(str, a)) + "]"


@dataclass(frozen=True)
class PermGroup:
    degree: int
    elements: Tuple[Perm, ...]
    generators: Tuple[Perm, ...] = ()
    _index: Dict[Perm, int] = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity_perm(self.degree)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._index

    def index(self, p: Perm) -> int:
        return self._index[tuple(p)]

    def base(self) -> PermutationBase:
        return PermutationBase(self.degree)

    @cached_property
    def elements_sorted(self) -> Tuple[Perm, ...]:
        return tuple(sorted(self.elements))


def closure(degree: int, gens, cap: int = DEFAULT_MAX_GROUP_ORDER) -> PermGroup:
    """Breadth-first closure; each BFS layer is sorted lexicographically."""
    gens = tuple(tuple(g) for g in gens)
    for g in gens:
        if not is_permutation(g, degree):
            raise ValueError(f"{list(g)} is not a permutation of degree {degree}")
    ident = identity_perm(degree)
    seen = {ident}
    order = [ident]
    layer = [ident]
    while layer:
        nxt = set()
        for x in layer:
            for g in gens:
                y = compose(x, g)
                if y not in seen and y not in nxt:
                    nxt.add(y)
        layer = sorted(nxt)
        seen.update(layer)
        order.extend(layer)
        if len(order) > cap:
            raise ClosureCapExceeded(f"group order exceeds cap {cap}")
    return PermGroup(degree, tuple(order), gens)


@dataclass(frozen=True)
class SubgroupData:
    parent: PermGroup
    elements: Tuple[Perm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def subgroup(parent: PermGroup, gens) -> SubgroupData:
    for g in gens:
        if tuple(g) not in parent:
            raise NotASubgroup(f"{list(g)} is not an element of the ambient group")
    sub = closure(parent.degree, gens, cap=max(parent.order, 1))
    return SubgroupData(parent, sub.elements)


@dataclass(frozen=True)
class CosetTable:
    """Right cosets Sx of S in Q, numbered by their least representative."""

    reps: Tuple[Perm, ...]
    coset_of: Mapping[Perm, int]

    @property
    def size(self) -> int:
        return len(self.reps)


def right_cosets(Q: PermGroup, S: SubgroupData) -> CosetTable:
    members = set(S.elements)
    if Q.identity not in members:
        raise NotASubgroup("subgroup does not contain the identity")
    for s in S.elements:
        if s not in Q:
            raise NotASubgroup(f"{list(s)} is not in the ambient group")
        if perm_inverse(s) not in members:
            raise NotASubgroup("subgroup not closed under inverses")
        for t in S.elements:
            if compose(s, t) not in members:
                raise NotASubgroup("subgroup not closed under products")
    label: Dict[Perm, int] = {}
    cosets: List[List[Perm]] = []
    for x in Q.elements:
        if x in label:
            continue
        coset = [compose(s, x) for s in S.elements]
        for y in coset:
            label[y] = len(cosets)
        cosets.append(coset)
    reps = [min(c) for c in cosets]
    order = sorted(range(len(cosets)), key=lambda i: reps[i])
    renumber = {old: new for new, old in enumerate(order)}
    coset_of = {p: renumber[i] for p, i in label.items()}
    return CosetTable(tuple(reps[i] for i in order), coset_of)


def orbit(action: Sequence[Perm], point: int) -> List[int]:
    """Orbit of ``point`` under the permutations in ``action`` (sorted)."""
    seen = {point}
    frontier = [point]
    while frontier:
        p = frontier.pop()
        for g in action:
            q = g[p]
            if q not in seen:
                seen.add(q)
                frontier.append(q)
    return sorted(seen)


def stabilizer(action: Sequence[Perm], point: int) -> Tuple[int, ...]:
    """Indices of group elements whose action permutation fixes ``point``."""
    return tuple(k for k, g in enumerate(action) if g[point] == point)


@dataclass(frozen=True)
class CayleyGroup:
    name: str
    table: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0:
            raise ValueError("empty Cayley table")
        for i, row in enumerate(table):
            if sorted(row) != list(range(n)):
                raise ValueError(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if sorted(row[j] for row in table) != list(range(n)):
                raise ValueError(f"column {j} is not a permutation of 0..{n - 1}")
        if table[0] != tuple(range(n)) or any(table[k][0] != k for k in range(n)):
            raise ValueError("element 0 is not the identity")
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                for c in range(n):
                    if table[ab][c] != table[a][table[b][c]]:
                        raise ValueError(f"associativity fails at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(0)

    def restrict(self, elements: Sequence[int], name=None) -> "CayleyGroup":
        """Cayley group of a subgroup given by (sorted, identity-first) element indices."""
        local = {e: i for i, e in enumerate(elements)}
        if not elements or elements[0] != 0:
            raise NotASubgroup("subgroup element list must start with the identity")
        try:
            table = [[local[self.table[a][b]] for b in elements] for a in elements]
        except KeyError:
            raise NotASubgroup("element subset is not closed under multiplication")
        return CayleyGroup(name or f"{self.name}_sub", tuple(map(tuple, table)))

    @classmethod
    def from_perm_group(cls, K: PermGroup, name="K") -> "CayleyGroup":
        table = [[K.index(compose(a, b)) for b in K.elements] for a in K.elements]
        return cls(name, tuple(map(tuple, table)))


def cyclic_group(n: int) -> CayleyGroup:
    return CayleyGroup(f"C{n}", tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def klein_group() -> CayleyGroup:
    return CayleyGroup("V4", tuple(tuple(a ^ b for b in range(4)) for a in range(4)))


def symmetric_group(degree: int, cap: int = DEFAULT_MAX_GROUP_ORDER) -> PermGroup:
    if degree < 2:
        return closure(max(degree, 0), [], cap)
    gens = [cycle(degree, (0, 1)), cycle(degree, tuple(range(degree)))]
    return closure(degree, gens, cap)


def validate_factor_hom(G: CayleyGroup, images: Sequence[Perm]) -> bool:
    """Raise NotAHomomorphism naming the first failing pair; return True otherwise."""
    if len(images) != G.order:
        raise NotAHomomorphism(0, 0, f"expected {G.order} images, got {len(images)}")
    images = [tuple(p) for p in images]
    degree = len(images[0])
    if images[0] != identity_perm(degree):
        raise NotAHomomorphism(0, 0, "identity is not sent to the identity permutation")
    for a in range(G.order):
        for b in range(G.order):
            if images[G.table[a][b]] != compose(images[a], images[b]):
                raise NotAHomomorphism(a, b)
    return True


def enumerate_homs(G: CayleyGroup, K: PermGroup, limit: int = DEFAULT_HOM_LIMIT,
                   caps: Caps = Caps()) -> List[Tuple[Perm, ...]]:
    """All homomorphisms G -> K as image tuples, in lexicographic order of K-indices.

    Backtracking assigns images to elements 0, 1, ... in turn and rejects a
    partial assignment as soon as a product of assigned elements disagrees.
    """
    if G.order > caps.max_factor_order:
        raise CapExceeded(f"|G| = {G.order} exceeds cap {caps.max_factor_order}")
    if K.order > caps.max_group_order:
        raise CapExceeded(f"|K| = {K.order} exceeds cap {caps.max_group_order}")
    n = G.order
    table = G.table
    out: List[Tuple[Perm, ...]] = []
    assign: List[Perm] = [K.identity]

    def consistent(k: int) -> bool:
        # every pair (a, b) with max(a, b, ab) == k
        for a in range(k + 1):
            for b in range(k + 1):
                c = table[a][b]
                if max(a, b, c) != k:
                    continue
                if assign[c] != compose(assign[a], assign[b]):
                    return False
        return True

    def extend(k: int):
        if len(out) >= limit:
            return
        if k == n:
            out.append(tuple(assign))
            return
        for p in K.elements_sorted:
            assign.append(p)
            if consistent(k):
                extend(k + 1)
            assign.pop()
            if len(out) >= limit:
                return

    if consistent(0):
        extend(1)
    return out


def evaluate_hom_free(images, w: FreeWord) -> Perm:
    """Left-to-right product of generator images along ``w``.

    ``images`` maps generator index to permutation (dict or sequence).
    """
    result = None
    for g, s in w.letters:
        try:
            p = images[g]
        except (KeyError, IndexError):
            raise UnknownGenerator(f"no image for generator {g}")
        p = tuple(p) if s > 0 else perm_inverse(tuple(p))
        result = p if result is None else compose(result, p)
    if result is None:
        if isinstance(images, Mapping):
            some = next(iter(images.values()), ())
        else:
            some = images[0] if len(images) else ()
        return identity_perm(len(some))
    return result
