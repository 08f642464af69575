"""Weyl groups of types B_n and D_n realised as signed permutations.

An element is stored by its images ``(w(1), ..., w(n))``; ``w(-i) = -w(i)``
is implicit.  Products compose right to left: ``(a * b)(i) = a(b(i))``, which
is the convention under which ``w s_alpha w^-1 = s_{w(alpha)}``.

Generator tokens are ints ``0..n-1`` in type B (``0`` is the short-root
reflection ``(1,-1)``) and ``"u", 1, ..., n-1`` in type D, where ``"u"`` is
the fork generator ``(1,-2)(-1,2)``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations, product
from typing import Iterator, Sequence, Union

__all__ = [
    "Token",
    "GroupType",
    "SignedPermutation",
    "Root",
    "CapExceeded",
    "DEFAULT_CAP",
    "parse_word",
    "format_word",
    "word_sort_key",
]

Token = Union[int, str]

DEFAULT_CAP = int(os.environ.get("TWINV_CAP", 10**7))


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured size cap."""


def parse_word(text: str) -> tuple[Token, ...]:
    """Parse ``"2,3,u,1"`` into ``(2, 3, "u", 1)``; the empty string is the empty word."""
    text = text.strip()
    if not text:
        return ()
    out: list[Token] = []
    for piece in text.split(","):
        piece = piece.strip()
        if piece == "u":
            out.append("u")
        elif piece.isdigit():
            out.append(int(piece))
        else:
            raise ValueError(f"bad generator token {piece!r} in word {text!r}")
    return tuple(out)


def format_word(word: Sequence[Token]) -> str:
    return ",".join(str(t) for t in word)


def word_sort_key(word: Sequence[Token]) -> str:
    """Canonical ordering of words: lexicographic on the rendered string."""
    return format_word(word)


class SignedPermutation(tuple):
    """Signed permutation of ``{±1, ..., ±n}`` given by its images of ``1..n``."""

    __slots__ = ()

    def __new__(cls, images: Sequence[int]):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(range(1, n + 1))

    @property
    def rank(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1] if i > 0 else -self[-i - 1]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        if len(self) != len(other):
            raise ValueError("cannot multiply signed permutations of different rank")
        return SignedPermutation(
            [self[j - 1] if j > 0 else -self[-j - 1] for j in other]
        )

    def inverse(self) -> "SignedPermutation":
        out = [0] * len(self)
        for i, j in enumerate(self, start=1):
            if j > 0:
                out[j - 1] = i
            else:
                out[-j - 1] = -i
        return SignedPermutation(out)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self, start=1))

    def is_involution(self) -> bool:
        return all(self(x) == i for i, x in enumerate(self, start=1))

    def negative_count(self) -> int:
        return sum(1 for x in self if x < 0)

    def __repr__(self):
        return "SignedPermutation([" + ",".join(map(str, self)) + "])"

    def __str__(self):
        return "[" + ",".join(map(str, self)) + "]"

    # tuple defines +, * for concatenation/repetition; block the confusing ones
    def __add__(self, other):
        return NotImplemented

    def __rmul__(self, other):
        return NotImplemented


class Root(tuple):
    """A root written in the epsilon basis, e.g. ``(1, 1, 0, 0)`` for eps_1 + eps_2."""

    __slots__ = ()

    def __new__(cls, coords: Sequence[int]):
        return super().__new__(cls, coords)

    @classmethod
    def eps(cls, n: int, *pairs: tuple[int, int]) -> "Root":
        """``Root.eps(n, (1, 2), (-1, 1))`` is ``2*eps_2 - eps_1`` style sums."""
        v = [0] * n
        for coeff, i in pairs:
            v[i - 1] += coeff
        return cls(v)

    def is_positive(self) -> bool:
        # Phi+ = {eps_j ± eps_i : i < j} ∪ {eps_i}: the last nonzero coordinate is positive
        for x in reversed(self):
            if x:
                return x > 0
        raise ValueError("zero vector is not a root")

    def __neg__(self):
        return Root(-x for x in self)

    def __repr__(self):
        terms = []
        for i, x in enumerate(self, start=1):
            if x:
                terms.append(("+" if x > 0 else "-") + ("" if abs(x) == 1 else str(abs(x))) + f"e{i}")
        s = "".join(terms) or "0"
        return "Root(" + s.lstrip("+") + ")"


def act_on_root(w: SignedPermutation, r: Sequence[int]) -> Root:
    """Linear extension of ``w(eps_i) = eps_{w(i)}``."""
    out = [0] * len(w)
    for i, x in enumerate(r, start=1):
        if x:
            j = w[i - 1]
            if j > 0:
                out[j - 1] += x
            else:
                out[-j - 1] -= x
    return Root(out)


def reflection(r: Sequence[int]) -> SignedPermutation:
    """The reflection in a root ``±eps_i`` or ``±eps_i ± eps_j`` as a signed permutation."""
    n = len(r)
    support = [i for i, x in enumerate(r, start=1) if x]
    images = list(range(1, n + 1))
    if len(support) == 1:
        i = support[0]
        images[i - 1] = -i
    elif len(support) == 2:
        i, j = support
        if r[i - 1] == r[j - 1]:  # eps_i + eps_j (up to sign): i <-> -j
            images[i - 1], images[j - 1] = -j, -i
        else:  # eps_j - eps_i: i <-> j
            images[i - 1], images[j - 1] = j, i
    else:
        raise ValueError(f"{r} is not a root of type B/D")
    return SignedPermutation(images)


@dataclass(frozen=True)
class GroupType:
    """The Weyl group W(B_n) or W(D_n)."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("B", "D"):
            raise ValueError(f"unknown family {self.family!r}; expected 'B' or 'D'")
        if self.family == "B" and self.rank < 1:
            raise ValueError("type B needs rank >= 1")
        if self.family == "D" and self.rank < 2:
            raise ValueError("type D needs rank >= 2")

    def __str__(self):
        return f"{self.family}{self.rank}"

    # -- generators ----------------------------------------------------
    @cached_property
    def tokens(self) -> tuple[Token, ...]:
        first: Token = 0 if self.family == "B" else "u"
        return (first,) + tuple(range(1, self.rank))

    def check_token(self, t: Token) -> Token:
        if t not in self.tokens:
            raise ValueError(f"{t!r} is not a generator of {self}")
        return t

    def check_word(self, word: Sequence[Token]) -> tuple[Token, ...]:
        return tuple(self.check_token(t) for t in word)

    def simple_root(self, t: Token) -> Root:
        n = self.rank
        if t == "u":
            return Root.eps(n, (1, 1), (1, 2))
        if t == 0:
            return Root.eps(n, (1, 1))
        return Root.eps(n, (1, t + 1), (-1, t))

    def generator(self, t: Token) -> SignedPermutation:
        return self._generators[self.check_token(t)]

    @cached_property
    def _generators(self) -> dict:
        return {t: reflection(self.simple_root(t)) for t in self.tokens}

    def identity(self) -> SignedPermutation:
        return SignedPermutation.identity(self.rank)

    def m(self, s: Token, t: Token) -> int:
        """Order of ``s t``."""
        if s == t:
            return 1
        a, b = self.generator(s), self.generator(t)
        x = a * b
        k = 1
        while not x.is_identity():
            x = x * a * b
            k += 1
        return k

    def commute(self, s: Token, t: Token) -> bool:
        a, b = self.generator(s), self.generator(t)
        return a * b == b * a

    # -- elements ------------------------------------------------------
    def contains(self, w: Sequence[int]) -> bool:
        n = self.rank
        if len(w) != n or sorted(abs(x) for x in w) != list(range(1, n + 1)):
            return False
        return self.family == "B" or sum(1 for x in w if x < 0) % 2 == 0

    def element(self, images: Sequence[int]) -> SignedPermutation:
        w = SignedPermutation(images)
        if not self.contains(w):
            raise ValueError(f"{list(images)} is not an element of W({self})")
        return w

    def order(self) -> int:
        f = 1
        for k in range(2, self.rank + 1):
            f *= k
        return f * 2 ** (self.rank if self.family == "B" else self.rank - 1)

    def elements(self, cap: int | None = None) -> Iterator[SignedPermutation]:
        """All group elements, each exactly once, in lexicographic image order."""
        cap = DEFAULT_CAP if cap is None else cap
        if self.order() > cap:
            raise CapExceeded(f"|W({self})| = {self.order()} exceeds cap {cap}")
        n = self.rank
        for signs in product((1, -1), repeat=n):
            if self.family == "D" and signs.count(-1) % 2:
                continue
            for perm in permutations(range(1, n + 1)):
                yield SignedPermutation([s * p for s, p in zip(signs, perm)])

    def all_elements(self, cap: int | None = None) -> list[SignedPermutation]:
        return sorted(self.elements(cap))

    def evaluate(self, word: Sequence[Token]) -> SignedPermutation:
        """Ordinary product ``s_{i1} s_{i2} ... s_{ik}``."""
        w = self.identity()
        for t in word:
            w = w * self.generator(t)
        return w

    # -- length and descents -------------------------------------------
    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        n = self.rank
        roots = []
        for j in range(1, n + 1):
            for i in range(1, j):
                roots.append(Root.eps(n, (1, j), (-1, i)))
                roots.append(Root.eps(n, (1, j), (1, i)))
            if self.family == "B":
                roots.append(Root.eps(n, (1, j)))
        return tuple(roots)

    def length(self, w: SignedPermutation) -> int:
        return _length(self, w)

    def is_left_descent(self, t: Token, w: SignedPermutation) -> bool:
        """``l(s_t w) < l(w)``, i.e. ``w^-1(alpha_t) < 0``."""
        return not act_on_root(w.inverse(), self.simple_root(t)).is_positive()

    def is_right_descent(self, w: SignedPermutation, t: Token) -> bool:
        return not act_on_root(w, self.simple_root(t)).is_positive()

    def descents_left(self, w: SignedPermutation) -> frozenset:
        winv = w.inverse()
        return frozenset(
            t for t in self.tokens
            if not act_on_root(winv, self.simple_root(t)).is_positive()
        )

    def descents_right(self, w: SignedPermutation) -> frozenset:
        return frozenset(t for t in self.tokens if self.is_right_descent(w, t))

    def reduced_word(self, w: SignedPermutation) -> tuple[Token, ...]:
        """A reduced word for ``w`` obtained by repeatedly stripping a left descent."""
        word: list[Token] = []
        while not w.is_identity():
            for t in self.tokens:
                if self.is_left_descent(t, w):
                    word.append(t)
                    w = self.generator(t) * w
                    break
        return tuple(word)


@lru_cache(maxsize=None)
def _length(gt: GroupType, w: SignedPermutation) -> int:
    return sum(1 for r in gt.positive_roots if not act_on_root(w, r).is_positive())
