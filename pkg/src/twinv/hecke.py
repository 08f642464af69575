"""Hecke algebra with parameter u^2, the involution module M, and the map eta.

Conventions
-----------
Left multiplication on the T-basis::

    T_s T_w = T_{sw}                           if l(sw) > l(w)
    T_s T_w = (u^2 - 1) T_w + u^2 T_{sw}       otherwise

so ``T_s^2 = (u^2 - 1) T_s + u^2``.  The module M has basis ``a_w`` (w an
involution) and ``T_s`` acts by::

    T_s a_w = u a_w + (u+1) a_{sw}                 sw = ws > w
    T_s a_w = (u^2-u-1) a_w + (u^2-u) a_{sw}       sw = ws < w
    T_s a_w = a_{sws}                              sw != ws > w
    T_s a_w = (u^2-1) a_w + u^2 a_{sws}            sw != ws < w

``eta(a_w)`` applies, right to left along a reduced I-expression of ``w``,
either ``T_s`` (non-commuting step) or ``(T_s - u)/(u + 1)`` (commuting step)
to ``X = sum_x u^{-l(x)} T_x``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exact_ring import IntPoly, PoleError, RatFunc
from .signed_weyl import GroupType, SignedPermutation, Token, format_word
from .twisted import (
    all_involutions,
    enumerate_reduced_iexprs,
    eval_iexpr,
    is_reduced_iexpr,
    twisted_mult,
)

__all__ = [
    "HeckeElement",
    "ModuleElement",
    "t_mul_gen",
    "x_empty",
    "module_action",
    "eta",
    "eta_table",
    "verify_eta",
    "check_hecke_relations",
    "check_module_relations",
    "coset_reps_D",
    "verify_coset_reps",
    "exact_rank",
]

U = RatFunc.u()
ONE = RatFunc.one()
U2 = RatFunc.u(2)
U2_MINUS_1 = RatFunc(IntPoly((-1, 0, 1)))
U_PLUS_1 = RatFunc(IntPoly((1, 1)))
U2_MINUS_U_MINUS_1 = RatFunc(IntPoly((-1, -1, 1)))
U2_MINUS_U = RatFunc(IntPoly((0, -1, 1)))


class _LinComb:
    """Finite linear combination ``{basis key: RatFunc}`` with zero terms dropped."""

    __slots__ = ("gt", "terms")

    def __init__(self, gt: GroupType, terms: Mapping | None = None):
        self.gt = gt
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    def _new(self, terms):
        return type(self)(self.gt, terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return self._new(out)

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "_LinComb":
        c = c if isinstance(c, RatFunc) else RatFunc(c)
        if c.is_zero():
            return self._new({})
        return self._new({k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def coeff(self, key) -> RatFunc:
        return self.terms.get(key, RatFunc.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, _LinComb):
            return NotImplemented
        return self.gt == other.gt and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def items_sorted(self):
        return sorted(self.terms.items())

    def __repr__(self):
        body = " + ".join(f"{c}*{self._basis_name}{list(k)}" for k, c in self.items_sorted())
        return f"{type(self).__name__}({body or '0'})"


class HeckeElement(_LinComb):
    """Element of the Hecke algebra in the T-basis."""

    _basis_name = "T"

    @classmethod
    def basis(cls, gt: GroupType, w: SignedPermutation) -> "HeckeElement":
        return cls(gt, {w: RatFunc.one()})


class ModuleElement(_LinComb):
    """Element of the involution module in the a-basis."""

    _basis_name = "a"

    @classmethod
    def basis(cls, gt: GroupType, w: SignedPermutation) -> "ModuleElement":
        if not w.is_involution():
            raise ValueError(f"{w} is not an involution")
        return cls(gt, {w: RatFunc.one()})


def _accumulate(out: dict, key, c: RatFunc) -> None:
    if key in out:
        out[key] = out[key] + c
    else:
        out[key] = c


def t_mul_gen(s: Token, h: HeckeElement) -> HeckeElement:
    """Left multiplication by ``T_s``."""
    gt = h.gt
    g = gt.generator(s)
    out: dict = {}
    for w, c in h.terms.items():
        sw = g * w
        if gt.length(sw) > gt.length(w):
            _accumulate(out, sw, c)
        else:
            _accumulate(out, w, c * U2_MINUS_1)
            _accumulate(out, sw, c * U2)
    return HeckeElement(gt, out)


def t_mul_word(word: Sequence[Token], h: HeckeElement) -> HeckeElement:
    """``T_{i1} T_{i2} ... T_{ik} h``."""
    for s in reversed(word):
        h = t_mul_gen(s, h)
    return h


@lru_cache(maxsize=None)
def _x_empty(gt: GroupType) -> HeckeElement:
    return HeckeElement(gt, {x: RatFunc.u(-gt.length(x)) for x in gt.all_elements()})


def x_empty(gt: GroupType) -> HeckeElement:
    """``sum over all x in W of u^{-l(x)} T_x``."""
    return _x_empty(gt)


def module_action(s: Token, m: ModuleElement) -> ModuleElement:
    gt = m.gt
    g = gt.generator(s)
    out: dict = {}
    for w, c in m.terms.items():
        sw, ws = g * w, w * g
        up = gt.length(sw) > gt.length(w)
        if sw == ws:
            if up:
                _accumulate(out, w, c * U)
                _accumulate(out, sw, c * U_PLUS_1)
            else:
                _accumulate(out, w, c * U2_MINUS_U_MINUS_1)
                _accumulate(out, sw, c * U2_MINUS_U)
        else:
            sws = sw * g
            if up:
                _accumulate(out, sws, c)
            else:
                _accumulate(out, w, c * U2_MINUS_1)
                _accumulate(out, sws, c * U2)
    return ModuleElement(gt, out)


def _theta(gt: GroupType, s: Token, v: SignedPermutation, h: HeckeElement) -> HeckeElement:
    """One step of eta: ``v`` is the involution already built, ``s ⋉ v`` the next."""
    g = gt.generator(s)
    sv = g * v
    if gt.length(sv) < gt.length(v):
        raise AssertionError(f"step {s} on {v} descends; expression is not reduced")
    th = t_mul_gen(s, h)
    if sv != v * g:
        return th
    return (th - h.scale(U)).scale(U_PLUS_1.inverse())


def eta(gt: GroupType, w: SignedPermutation, sigma: Sequence[Token]) -> HeckeElement:
    """``eta(a_w)`` computed along the reduced I-expression ``sigma`` of ``w``."""
    sigma = gt.check_word(sigma)
    if not is_reduced_iexpr(gt, sigma):
        raise ValueError(f"{format_word(sigma)} is not a reduced I-expression")
    if eval_iexpr(gt, sigma) != w:
        raise ValueError(f"{format_word(sigma)} does not evaluate to {w}")
    h = x_empty(gt)
    v = gt.identity()
    for s in reversed(sigma):
        h = _theta(gt, s, v, h)
        v = twisted_mult(gt, s, v)
    return h


def eta_table(gt: GroupType) -> dict:
    """``{w: eta(a_w)}`` for every involution, built by stripping the smallest descent."""
    table = {gt.identity(): x_empty(gt)}
    for w in sorted(all_involutions(gt), key=lambda x: (gt.length(x), x)):
        if w in table:
            continue
        s = min(gt.descents_left(w), key=str)
        v = twisted_mult(gt, s, w)
        table[w] = _theta(gt, s, v, table[v])
    return table


def eta_of(table: Mapping, m: ModuleElement) -> HeckeElement:
    """Linear extension of a precomputed eta table."""
    out = HeckeElement(m.gt)
    for w, c in m.terms.items():
        out = out + table[w].scale(c)
    return out


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q by Gaussian elimination with exact fractions."""
    mat = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, len(mat)):
            f = mat[r][col]
            if f:
                f /= p
                row = mat[rank]
                mat[r] = [x - f * y for x, y in zip(mat[r], row)]
        rank += 1
    return rank


def verify_eta(gt: GroupType, points: Iterable = (2, 3, 5), exhaustive: bool = True) -> dict:
    """Well-definedness, homomorphism property and full rank of eta.

    With ``exhaustive`` every reduced I-expression of every involution is
    evaluated directly; otherwise only one step from each descent is compared
    (equivalent by induction on rho).
    """
    table = eta_table(gt)
    invols = sorted(table)
    mismatches = []
    checked = 0
    for w in invols:
        if exhaustive:
            for sigma in enumerate_reduced_iexprs(gt, w):
                checked += 1
                if eta(gt, w, sigma) != table[w]:
                    mismatches.append({"element": str(w), "expression": format_word(sigma)})
        else:
            for s in gt.descents_left(w):
                checked += 1
                v = twisted_mult(gt, s, w)
                if _theta(gt, s, v, table[v]) != table[w]:
                    mismatches.append({"element": str(w), "descent": str(s)})

    hom_failures = []
    for w in invols:
        for s in gt.tokens:
            lhs = t_mul_gen(s, table[w])
            rhs = eta_of(table, module_action(s, ModuleElement.basis(gt, w)))
            if lhs != rhs:
                hom_failures.append({"element": str(w), "generator": str(s)})

    columns = gt.all_elements()
    rank_info = {"rows": len(invols), "columns": len(columns), "rank": None, "point": None, "poles_at": []}
    for u0 in points:
        try:
            rows = [[table[w].coeff(x).eval(u0) for x in columns] for w in invols]
        except PoleError:
            rank_info["poles_at"].append(str(u0))
            continue
        rank_info["rank"] = exact_rank(rows)
        rank_info["point"] = str(u0)
        break

    laurent = all(c.is_laurent() for h in table.values() for c in h.terms.values())
    return {
        "group": gt.family,
        "rank": gt.rank,
        "involutions": len(invols),
        "expressions_checked": checked,
        "eta_a1_is_x_empty": table[gt.identity()] == x_empty(gt),
        "well_defined": not mismatches,
        "homomorphism": not hom_failures,
        "rank_full": rank_info["rank"] == len(invols),
        "rank_certificate": rank_info,
        "laurent_coefficients_observed": laurent,
        "mismatches": mismatches,
        "homomorphism_failures": hom_failures,
    }


def eta_json(gt: GroupType, w: SignedPermutation, sigma: Sequence[Token]) -> dict:
    h = eta(gt, w, sigma)
    return {
        "involution": str(w),
        "expression_used": format_word(sigma),
        "coefficients": [{"element": str(x), "ratfunc_string": str(c)} for x, c in h.items_sorted()],
    }


# --------------------------------------------------------------------------
# Operator identities
# --------------------------------------------------------------------------

def _braid_pairs(gt: GroupType):
    for s, t in combinations(gt.tokens, 2):
        yield s, t, gt.m(s, t)


def _alternate(s, t, k):
    return [s if i % 2 == 0 else t for i in range(k)]


def _check_relations(gt: GroupType, basis: Iterable, make, act) -> list:
    violations = []
    for x in basis:
        v = make(x)
        for s in gt.tokens:
            once = act(s, v)
            lhs = act(s, once)
            rhs = once.scale(U2_MINUS_1) + v.scale(U2)
            if lhs != rhs:
                violations.append({"basis": str(x), "relation": f"quadratic {s}"})
        for s, t, m in _braid_pairs(gt):
            a, b = v, v
            for r in reversed(_alternate(s, t, m)):
                a = act(r, a)
            for r in reversed(_alternate(t, s, m)):
                b = act(r, b)
            if a != b:
                violations.append({"basis": str(x), "relation": f"braid {s},{t} (m={m})"})
    return violations


def check_hecke_relations(gt: GroupType) -> list:
    """Quadratic and braid relations of left multiplication on every ``T_w``."""
    return _check_relations(gt, gt.all_elements(), lambda w: HeckeElement.basis(gt, w), t_mul_gen)


def check_module_relations(gt: GroupType) -> list:
    """Quadratic and braid relations of the module action on every ``a_w``."""
    return _check_relations(gt, all_involutions(gt), lambda w: ModuleElement.basis(gt, w), module_action)


# --------------------------------------------------------------------------
# Coset representatives of Sym_n in W(D_n)
# --------------------------------------------------------------------------

def _block(c: int, last: Token) -> list:
    """``s_c s_{c-1} ... s_2 s_last``; for ``c = 1`` this is just ``s_last``."""
    return list(range(c, 1, -1)) + [last]


def coset_rep_words(n: int) -> list[tuple]:
    """Words of the coset representatives, one per subset ``c_1 < ... < c_k`` of ``1..n-1``."""
    if n < 2:
        raise ValueError("type D needs rank >= 2")
    words = []
    for k in range(0, n):
        for cs in combinations(range(1, n), k):
            # the last block always ends in s_u; blocks alternate s_u / s_1 leftwards
            word = []
            for pos, c in enumerate(cs):
                last = "u" if (k - 1 - pos) % 2 == 0 else 1
                word += _block(c, last)
            words.append(tuple(word))
    return words


def coset_reps_D(n: int) -> list[SignedPermutation]:
    gt = GroupType("D", n)
    return [gt.evaluate(word) for word in coset_rep_words(n)]


def verify_coset_reps(n: int) -> dict:
    """Count, coset distinctness and minimality of the representatives."""
    gt = GroupType("D", n)
    words = coset_rep_words(n)
    reps = [gt.evaluate(wd) for wd in words]
    # w Sym_n is determined by the set of values {w(1), ..., w(n)}
    keys = [frozenset(r) for r in reps]
    problems = []
    for wd, r in zip(words, reps):
        if gt.length(r) != len(wd):
            problems.append({"word": format_word(wd), "problem": "word not reduced"})
        if any(gt.is_right_descent(r, i) for i in range(1, n)):
            problems.append({"word": format_word(wd), "problem": "not minimal in coset"})
    return {
        "rank": n,
        "count": len(reps),
        "expected": 2 ** (n - 1),
        "distinct_cosets": len(set(keys)) == len(keys),
        "representatives": [{"word": format_word(wd), "element": str(r), "length": gt.length(r)}
                            for wd, r in zip(words, reps)],
        "problems": problems,
        "passed": len(reps) == 2 ** (n - 1) and len(set(keys)) == len(keys) and not problems,
    }
