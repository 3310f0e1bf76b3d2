"""Reduced words in free groups and normal forms in free products of finite groups.

Free words are tuples of ``(generator index, sign)`` letters; product words are
tuples of ``(factor index, element index)`` syllables.  Both are kept in
reduced/normal form at all times.

Text syntax::

    free:     "a b^-1 a"        identity: "1"
    product:  "f0.1 f1.2"       identity: "1"
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from .errors import FactorOutOfRange, SchemaError, UnknownGenerator, WordSyntaxError

Letter = Tuple[int, int]
Syllable = Tuple[int, int]

_PRODUCT_TOKEN = re.compile(r"^f(\d+)\.(\d+)$")


@dataclass(frozen=True)
class FreeWord:
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        for (g, s), (h, t) in zip(self.letters, self.letters[1:]):
            if g == h and s == -t:
                raise ValueError(f"word is not reduced: {self.letters!r}")

    @classmethod
    def reduce(cls, letters: Iterable[Letter]) -> "FreeWord":
        stack = []
        for g, s in letters:
            if stack and stack[-1][0] == g and stack[-1][1] == -s:
                stack.pop()
            else:
                stack.append((g, s))
        return cls(tuple(stack))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return reduce_concat(self, other)

    def __invert__(self) -> "FreeWord":
        return invert_free(self)

    def is_identity(self) -> bool:
        return not self.letters


@dataclass(frozen=True)
class ProductWord:
    syllables: Tuple[Syllable, ...] = ()

    def __post_init__(self):
        for alpha, k in self.syllables:
            if k == 0:
                raise ValueError("identity syllable in normal form")
        for (a, _), (b, _) in zip(self.syllables, self.syllables[1:]):
            if a == b:
                raise ValueError(f"adjacent syllables from factor {a}")

    def __len__(self):
        return len(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables


FREE_IDENTITY = FreeWord()
PRODUCT_IDENTITY = ProductWord()


def reduce_concat(a: FreeWord, b: FreeWord) -> FreeWord:
    # Only the junction can cancel since a and b are reduced.
    left = list(a.letters)
    i = 0
    bl = b.letters
    while left and i < len(bl) and left[-1][0] == bl[i][0] and left[-1][1] == -bl[i][1]:
        left.pop()
        i += 1
    return FreeWord(tuple(left) + bl[i:])


def invert_free(a: FreeWord) -> FreeWord:
    return FreeWord(tuple((g, -s) for g, s in reversed(a.letters)))


def letter_rank(letter: Letter, ngens: int) -> int:
    """Position of a letter in the order a, b, ..., a^-1, b^-1, ..."""
    g, s = letter
    return g if s > 0 else ngens + g


def shortlex_key(w: FreeWord, ngens: int):
    return (len(w), tuple(letter_rank(x, ngens) for x in w.letters))


class FreeGroup:
    """Free group on named generators; also serves as a wreath base group."""

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        for i, name in enumerate(names):
            if not name or any(c.isspace() for c in name) or "^" in name or name == "1":
                raise SchemaError(f"generators[{i}]", f"invalid generator name {name!r}")
        if len(set(names)) != len(names):
            raise SchemaError("generators", "generator names must be distinct")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        self.identity = FREE_IDENTITY

    @property
    def rank(self) -> int:
        return len(self.names)

    def generator(self, i: int) -> FreeWord:
        return FreeWord(((i, 1),))

    def letters(self):
        """All letters in shortlex order: positive letters first, then inverses."""
        return [(g, 1) for g in range(self.rank)] + [(g, -1) for g in range(self.rank)]

    def mul(self, a: FreeWord, b: FreeWord) -> FreeWord:
        return reduce_concat(a, b)

    def inv(self, a: FreeWord) -> FreeWord:
        return invert_free(a)

    def product(self, words: Iterable[FreeWord]) -> FreeWord:
        letters = []
        for w in words:
            letters.extend(w.letters)
        return FreeWord.reduce(letters)

    def parse(self, text: str) -> FreeWord:
        tokens = text.split()
        if tokens == ["1"]:
            return FREE_IDENTITY
        if not tokens:
            raise WordSyntaxError("empty word; write 1 for the identity")
        letters = []
        for tok in tokens:
            name, sign = tok, 1
            if tok.endswith("^-1"):
                name, sign = tok[:-3], -1
            if "^" in name:
                raise WordSyntaxError(f"bad token {tok!r}; only g and g^-1 are allowed")
            if name not in self._index:
                raise UnknownGenerator(f"unknown generator {name!r} in word {text!r}")
            letters.append((self._index[name], sign))
        return FreeWord.reduce(letters)

    def format(self, w: FreeWord) -> str:
        if not w.letters:
            return "1"
        return " ".join(self.names[g] + ("" if s > 0 else "^-1") for g, s in w.letters)


class FreeProduct:
    """Free product of finite groups given by Cayley tables (element 0 = identity)."""

    def __init__(self, tables: Sequence[Sequence[Sequence[int]]]):
        self.tables = tuple(tuple(tuple(row) for row in t) for t in tables)
        self.orders = tuple(len(t) for t in self.tables)
        self.inverses = tuple(
            tuple(row.index(0) for row in t) for t in self.tables
        )
        self.identity = PRODUCT_IDENTITY

    @property
    def nfactors(self) -> int:
        return len(self.tables)

    def _check(self, alpha: int, k: int):
        if not 0 <= alpha < len(self.tables):
            raise FactorOutOfRange(f"factor index {alpha} out of range")
        if not 0 <= k < self.orders[alpha]:
            raise FactorOutOfRange(f"element {k} out of range for factor {alpha}")

    def syllable(self, alpha: int, k: int) -> ProductWord:
        self._check(alpha, k)
        return ProductWord(((alpha, k),)) if k else PRODUCT_IDENTITY

    def normalize(self, syllables: Iterable[Syllable]) -> ProductWord:
        stack = []
        for alpha, k in syllables:
            self._check(alpha, k)
            if k == 0:
                continue
            if stack and stack[-1][0] == alpha:
                merged = self.tables[alpha][stack[-1][1]][k]
                stack.pop()
                if merged:
                    stack.append((alpha, merged))
            else:
                stack.append((alpha, k))
        return ProductWord(tuple(stack))

    def mul(self, a: ProductWord, b: ProductWord) -> ProductWord:
        return normalize_product(a, b, self)

    def inv(self, a: ProductWord) -> ProductWord:
        return invert_product(a, self)

    def product(self, words: Iterable[ProductWord]) -> ProductWord:
        syl = []
        for w in words:
            syl.extend(w.syllables)
        return self.normalize(syl)

    def parse(self, text: str) -> ProductWord:
        tokens = text.split()
        if tokens == ["1"]:
            return PRODUCT_IDENTITY
        if not tokens:
            raise WordSyntaxError("empty word; write 1 for the identity")
        syl = []
        for tok in tokens:
            m = _PRODUCT_TOKEN.match(tok)
            if not m:
                raise WordSyntaxError(f"bad syllable token {tok!r}")
            alpha, k = int(m.group(1)), int(m.group(2))
            if k == 0:
                raise WordSyntaxError(f"element index must be >= 1 in {tok!r}")
            self._check(alpha, k)
            syl.append((alpha, k))
        return self.normalize(syl)

    def format(self, w: ProductWord) -> str:
        if not w.syllables:
            return "1"
        return " ".join(f"f{a}.{k}" for a, k in w.syllables)


def normalize_product(a: ProductWord, b: ProductWord, tables) -> ProductWord:
    """Normal form of ``a*b``; ``tables`` is a FreeProduct or a list of Cayley tables."""
    fp = tables if isinstance(tables, FreeProduct) else FreeProduct(tables)
    return fp.normalize(a.syllables + b.syllables)


def invert_product(a: ProductWord, tables) -> ProductWord:
    fp = tables if isinstance(tables, FreeProduct) else FreeProduct(tables)
    for alpha, k in a.syllables:
        fp._check(alpha, k)
    return ProductWord(tuple((alpha, fp.inverses[alpha][k]) for alpha, k in reversed(a.syllables)))


def syllable_info(a: ProductWord) -> Tuple[int, Optional[int]]:
    """Syllable length and the factor of the last syllable (None for the identity)."""
    if not a.syllables:
        return 0, None
    return len(a.syllables), a.syllables[-1][0]
