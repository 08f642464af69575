"""The twisted-involution calculus with the trivial twist.

Here ``I = {w : w^2 = 1}`` and for a generator ``s``::

    s ⋉ w = s w      if s w = w s
    s ⋉ w = s w s    otherwise

Words are folded from the right: ``(s1, s2, s3)`` means ``s1 ⋉ (s2 ⋉ (s3 ⋉ 1))``.
``rho(w)`` is the common length of all reduced I-expressions of ``w``.

Per-group caches (``rho``, reduced-expression sets) are plain memoisation of
pure functions; :func:`clear_caches` drops them.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .signed_weyl import (
    DEFAULT_CAP,
    CapExceeded,
    GroupType,
    SignedPermutation,
    Token,
    word_sort_key,
)

__all__ = [
    "twisted_mult",
    "eval_iexpr",
    "rho",
    "is_reduced_iexpr",
    "all_involutions",
    "enumerate_reduced_iexprs",
    "count_reduced_iexprs",
    "exchange_apply",
    "ASCENT",
    "CaseReport",
    "classify_double_coset",
    "double_coset_min",
    "alternating_word",
    "clear_caches",
]

ASCENT = "ascent"


def twisted_mult(gt: GroupType, s: Token, w: SignedPermutation) -> SignedPermutation:
    g = gt.generator(s)
    sw = g * w
    ws = w * g
    return sw if sw == ws else sw * g


def eval_iexpr(gt: GroupType, word: Sequence[Token]) -> SignedPermutation:
    w = gt.identity()
    for t in reversed(word):
        w = twisted_mult(gt, t, w)
    return w


@lru_cache(maxsize=None)
def rho(gt: GroupType, w: SignedPermutation) -> int:
    """Strip descents greedily: ``s ⋉ w`` drops rho by one exactly when ``s`` is a descent."""
    if not w.is_involution():
        raise ValueError(f"{w} is not an involution")
    k = 0
    while not w.is_identity():
        s = min(gt.descents_left(w), key=str)
        w = twisted_mult(gt, s, w)
        k += 1
    return k


def is_reduced_iexpr(gt: GroupType, word: Sequence[Token]) -> bool:
    """True iff every step of the right-to-left fold climbs in rho."""
    w = gt.identity()
    for t in reversed(word):
        if gt.is_left_descent(t, w):
            return False
        w = twisted_mult(gt, t, w)
    return True


@lru_cache(maxsize=None)
def _involutions(gt: GroupType, cap: int) -> tuple[SignedPermutation, ...]:
    return tuple(w for w in gt.all_elements(cap) if w.is_involution())


def all_involutions(gt: GroupType, cap: int | None = None) -> list[SignedPermutation]:
    """Involutions of ``gt`` in lexicographic image order."""
    return list(_involutions(gt, DEFAULT_CAP if cap is None else cap))


@lru_cache(maxsize=None)
def _reduced_iexprs(gt: GroupType, w: SignedPermutation) -> frozenset:
    if w.is_identity():
        return frozenset({()})
    out = set()
    for s in gt.descents_left(w):
        for tail in _reduced_iexprs(gt, twisted_mult(gt, s, w)):
            out.add((s,) + tail)
    return frozenset(out)


def enumerate_reduced_iexprs(
    gt: GroupType, w: SignedPermutation, cap: int | None = None
) -> list[tuple[Token, ...]]:
    """All reduced I-expressions of ``w``, sorted canonically."""
    if not w.is_involution():
        raise ValueError(f"{w} is not an involution")
    words = _reduced_iexprs(gt, w)
    cap = DEFAULT_CAP if cap is None else cap
    if len(words) > cap:
        raise CapExceeded(f"{len(words)} reduced I-expressions exceed cap {cap}")
    return sorted(words, key=word_sort_key)


def count_reduced_iexprs(gt: GroupType, w: SignedPermutation) -> int:
    return _count(gt, w)


@lru_cache(maxsize=None)
def _count(gt: GroupType, w: SignedPermutation) -> int:
    if w.is_identity():
        return 1
    return sum(_count(gt, twisted_mult(gt, s, w)) for s in gt.descents_left(w))


def exchange_apply(gt: GroupType, s: Token, word: Sequence[Token]):
    """Exchange property for a reduced I-expression ``word``.

    Returns :data:`ASCENT` if ``s ⋉ eval(word)`` has larger rho; otherwise the
    word with the smallest-index letter removed whose evaluation equals
    ``s ⋉ eval(word)``.  A missing witness raises ``AssertionError``.
    """
    word = tuple(word)
    w = eval_iexpr(gt, word)
    if not gt.is_left_descent(s, w):
        return ASCENT
    target = twisted_mult(gt, s, w)
    for a in range(len(word)):
        cand = word[:a] + word[a + 1:]
        if eval_iexpr(gt, cand) == target:
            return cand
    raise AssertionError(f"no exchange witness for {s} on {word}")


def alternating_word(s: Token, t: Token, k: int) -> tuple[Token, ...]:
    return tuple(s if i % 2 == 0 else t for i in range(k))


def double_coset_min(gt: GroupType, w: SignedPermutation, K: Sequence[Token]) -> SignedPermutation:
    """Minimal-length element of ``W_K w W_K`` by stripping K-descents on both sides."""
    b = w
    changed = True
    while changed:
        changed = False
        for r in K:
            if gt.is_left_descent(r, b):
                b = gt.generator(r) * b
                changed = True
            if gt.is_right_descent(b, r):
                b = b * gt.generator(r)
                changed = True
    return b


@dataclass(frozen=True)
class CaseReport:
    """Outcome of the seven-case analysis of ``W_K w W_K`` with ``K = {s, t}``."""

    case_id: int
    w: SignedPermutation
    s: Token
    t: Token
    b: SignedPermutation
    J: frozenset
    m: int
    lengths: tuple[int, int]
    factors: int

    def expression(self) -> tuple[Token, ...]:
        """The alternating prefix ``s, t, s, ...`` with ``w = prefix ⋉ b``."""
        return alternating_word(self.s, self.t, self.factors)


_CASE_FACTORS = {
    1: lambda m: m,
    2: lambda m: m,
    3: lambda m: m,
    4: lambda m: (m + 1) // 2,
    5: lambda m: m // 2 + 1,
    6: lambda m: (m + 1) // 2,
    7: lambda m: m // 2,
}


def classify_double_coset(gt: GroupType, w: SignedPermutation, s: Token, t: Token) -> CaseReport:
    if s == t:
        raise ValueError("s and t must be distinct")
    if not w.is_involution():
        raise ValueError(f"{w} is not an involution")
    desc = gt.descents_left(w)
    if s not in desc or t not in desc:
        raise ValueError(f"{s} and {t} must both be descents of {w}")
    m = gt.m(s, t)
    b = double_coset_min(gt, w, (s, t))
    gs, gt_ = gt.generator(s), gt.generator(t)
    sb, bs, tb, bt = gs * b, b * gs, gt_ * b, b * gt_
    if sb == bs and tb == bt:
        case = 4 if m % 2 else 5
    elif sb == bt and tb == bs:
        case = 6 if m % 2 else 7
    elif sb == bs:
        case = 2
    elif tb == bt:
        case = 3
    else:
        case = 1
    J = frozenset(r for r in (s, t) if b * gt.generator(r) * b in (gs, gt_))
    return CaseReport(
        case_id=case,
        w=w,
        s=s,
        t=t,
        b=b,
        J=J,
        m=m,
        lengths=(gt.length(b), gt.length(w)),
        factors=_CASE_FACTORS[case](m),
    )


def clear_caches() -> None:
    from .signed_weyl import _length

    for f in (rho, _involutions, _reduced_iexprs, _count, _length):
        f.cache_clear()
