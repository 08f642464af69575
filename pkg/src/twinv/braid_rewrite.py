"""Basic braid I-transformations for types D_n and B_n and exhaustive verifiers.

A rule family holds concrete ``(lhs, rhs)`` letter patterns and a placement:

* ``anywhere``          -- the pattern may sit at any position,
* ``not-at-right-end``  -- at least one letter must follow the pattern,
* ``right-end-only``    -- the pattern ends at the last letter of the word.

Every family is used in both directions.  Type D has families D1..D7, type B
has B1..B6; D7 and B6 are the two long right-end rules that are not induced
by ordinary braid relations.
"""
from __future__ import annotations

import sys
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .signed_weyl import (
    GroupType,
    SignedPermutation,
    Token,
    format_word,
)
from .twisted import (
    all_involutions,
    classify_double_coset,
    double_coset_min,
    enumerate_reduced_iexprs,
    eval_iexpr,
    is_reduced_iexpr,
    rho,
    twisted_mult,
)

__all__ = [
    "ANYWHERE",
    "NOT_AT_RIGHT_END",
    "RIGHT_END_ONLY",
    "RewriteRule",
    "MoveSite",
    "RewriteGraph",
    "rule_set",
    "rule_ids",
    "applicable_moves",
    "apply_move",
    "rewrite_graph",
    "verify_connectivity",
    "verify_preservation",
    "verify_classification",
    "find_ablation_witness",
    "LEMMAS",
    "TimeBudgetExceeded",
]

ANYWHERE = "anywhere"
NOT_AT_RIGHT_END = "not-at-right-end"
RIGHT_END_ONLY = "right-end-only"

Word = tuple


@dataclass(frozen=True)
class RewriteRule:
    rule_id: str
    placement: str
    instances: tuple  # of (lhs, rhs) token tuples, all of equal length
    description: str = ""

    @property
    def lhs(self) -> tuple:
        return tuple(l for l, _ in self.instances)

    @property
    def rhs(self) -> tuple:
        return tuple(r for _, r in self.instances)

    def placement_ok(self, start: int, size: int, word_len: int) -> bool:
        end = start + size
        if self.placement == NOT_AT_RIGHT_END:
            return end < word_len
        if self.placement == RIGHT_END_ONLY:
            return end == word_len
        return True


@dataclass(frozen=True, order=True)
class MoveSite:
    rule_id: str
    position: int
    direction: str  # "forward" (lhs -> rhs) or "inverse"
    instance: int = 0

    def inverse(self) -> "MoveSite":
        other = "inverse" if self.direction == "forward" else "forward"
        return MoveSite(self.rule_id, self.position, other, self.instance)

    @property
    def label(self) -> str:
        return f"{self.rule_id}@{self.position}"


def _commutations(tokens: Iterable[int]) -> tuple:
    toks = sorted(tokens)
    return tuple(((b, c), (c, b)) for b in toks for c in toks if c - b > 1)


def _rules_D(n: int) -> list[RewriteRule]:
    nums = range(1, n)
    return [
        RewriteRule("D1", NOT_AT_RIGHT_END,
                    tuple(((j, j + 1, j), (j + 1, j, j + 1)) for j in range(1, n - 1)),
                    "s_j s_{j+1} s_j <-> s_{j+1} s_j s_{j+1}"),
        RewriteRule("D2", NOT_AT_RIGHT_END,
                    ((("u", 2, "u"), (2, "u", 2)),) if n >= 3 else (),
                    "s_u s_2 s_u <-> s_2 s_u s_2"),
        RewriteRule("D3", ANYWHERE, _commutations(nums),
                    "s_b s_c <-> s_c s_b, |b-c| > 1"),
        RewriteRule("D4", ANYWHERE,
                    tuple(((d, "u"), ("u", d)) for d in nums if d != 2),
                    "s_d s_u <-> s_u s_d, d != 2"),
        RewriteRule("D5", RIGHT_END_ONLY,
                    tuple(((k, k + 1), (k + 1, k)) for k in range(1, n - 1)),
                    "(..., s_k, s_{k+1}) <-> (..., s_{k+1}, s_k)"),
        RewriteRule("D6", RIGHT_END_ONLY,
                    (((2, "u"), ("u", 2)),) if n >= 3 else (),
                    "(..., s_2, s_u) <-> (..., s_u, s_2)"),
        RewriteRule("D7", RIGHT_END_ONLY,
                    (((2, 3, "u", 1, 2, "u", 1, 3), (3, 2, "u", 1, 2, "u", 1, 3)),) if n >= 4 else (),
                    "(..., 2,3,u,1,2,u,1,3) <-> (..., 3,2,u,1,2,u,1,3)"),
    ]


def _rules_B(n: int) -> list[RewriteRule]:
    return [
        RewriteRule("B1", NOT_AT_RIGHT_END,
                    (((0, 1, 0, 1), (1, 0, 1, 0)),) if n >= 2 else (),
                    "s_0 s_1 s_0 s_1 <-> s_1 s_0 s_1 s_0"),
        RewriteRule("B2", NOT_AT_RIGHT_END,
                    tuple(((j, j + 1, j), (j + 1, j, j + 1)) for j in range(1, n - 1)),
                    "s_j s_{j+1} s_j <-> s_{j+1} s_j s_{j+1}, j >= 1"),
        RewriteRule("B3", ANYWHERE, _commutations(range(0, n)),
                    "s_b s_c <-> s_c s_b, |b-c| > 1"),
        RewriteRule("B4", RIGHT_END_ONLY,
                    tuple(((k, k + 1), (k + 1, k)) for k in range(1, n - 1)),
                    "(..., s_k, s_{k+1}) <-> (..., s_{k+1}, s_k), k >= 1"),
        RewriteRule("B5", RIGHT_END_ONLY,
                    (((0, 1, 0), (1, 0, 1)),) if n >= 2 else (),
                    "(..., s_0, s_1, s_0) <-> (..., s_1, s_0, s_1)"),
        RewriteRule("B6", RIGHT_END_ONLY,
                    (((0, 1, 0, 2, 1, 0), (1, 0, 1, 2, 1, 0)),) if n >= 3 else (),
                    "(..., 0,1,0,2,1,0) <-> (..., 1,0,1,2,1,0)"),
    ]


@lru_cache(maxsize=None)
def _rule_table(gt: GroupType) -> tuple:
    rules = _rules_D(gt.rank) if gt.family == "D" else _rules_B(gt.rank)
    return tuple(rules), {r.rule_id: r for r in rules}


def rule_set(gt: GroupType) -> list[RewriteRule]:
    return list(_rule_table(gt)[0])


def rule_ids(gt: GroupType) -> list[str]:
    return [r.rule_id for r in rule_set(gt)]


def _resolve_rules(gt: GroupType, enabled: Iterable[str] | None) -> list[RewriteRule]:
    rules = rule_set(gt)
    if enabled is None:
        return rules
    enabled = set(enabled)
    unknown = enabled - {r.rule_id for r in rules}
    if unknown:
        raise ValueError(f"unknown rule ids for type {gt.family}: {sorted(unknown)}")
    return [r for r in rules if r.rule_id in enabled]


def _moves(word: Word, rules: Sequence[RewriteRule]) -> list[MoveSite]:
    n = len(word)
    out = []
    for rule in rules:
        for idx, (lhs, rhs) in enumerate(rule.instances):
            size = len(lhs)
            for direction, pat in (("forward", lhs), ("inverse", rhs)):
                for p in range(0, n - size + 1):
                    if word[p:p + size] == pat and rule.placement_ok(p, size, n):
                        out.append(MoveSite(rule.rule_id, p, direction, idx))
    out.sort()
    return out


def applicable_moves(gt: GroupType, word: Sequence[Token], enabled_rules=None) -> list[MoveSite]:
    """Every site where a rule (either direction) matches under its placement."""
    word = gt.check_word(word)
    if not is_reduced_iexpr(gt, word):
        raise ValueError(f"{format_word(word)} is not a reduced I-expression")
    return _moves(word, _resolve_rules(gt, enabled_rules))


def apply_move(gt: GroupType, word: Sequence[Token], site: MoveSite) -> Word:
    word = tuple(word)
    rules = _rule_table(gt)[1]
    if site.rule_id not in rules:
        raise ValueError(f"unknown rule {site.rule_id}")
    rule = rules[site.rule_id]
    try:
        lhs, rhs = rule.instances[site.instance]
    except IndexError:
        raise ValueError(f"rule {site.rule_id} has no instance {site.instance}") from None
    src, dst = (lhs, rhs) if site.direction == "forward" else (rhs, lhs)
    p = site.position
    if word[p:p + len(src)] != src or not rule.placement_ok(p, len(src), len(word)):
        raise ValueError(f"{site} does not apply to {format_word(word)}")
    return word[:p] + dst + word[p + len(src):]


@dataclass
class RewriteGraph:
    involution: SignedPermutation
    nodes: list  # canonical order
    edges: dict = field(default_factory=dict)  # (word_a, word_b) with a < b -> MoveSite
    violations: list = field(default_factory=list)

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.nodes}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def components(self) -> list[list]:
        adj = self.adjacency()
        seen = set()
        comps = []
        for start in self.nodes:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for x in adj[v]:
                    if x not in seen:
                        seen.add(x)
                        comp.append(x)
                        queue.append(x)
            comps.append(sorted(comp, key=format_word))
        return comps

    def component_count(self) -> int:
        return len(self.components())

    def to_dot(self, name: str = "rewrite") -> str:
        lines = [f"digraph {name} {{", "  edge [dir=none];"]
        for v in self.nodes:
            lines.append(f'  "{format_word(v)}";')
        for (a, b), site in sorted(self.edges.items(), key=lambda kv: (format_word(kv[0][0]), format_word(kv[0][1]))):
            lines.append(f'  "{format_word(a)}" -> "{format_word(b)}" [label="{site.label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def rewrite_graph(gt: GroupType, w: SignedPermutation, enabled_rules=None, cap: int | None = None) -> RewriteGraph:
    """Graph on the reduced I-expressions of ``w`` whose edges are single moves.

    Moves whose output is not a reduced I-expression of ``w`` are recorded in
    ``violations`` rather than dropped.
    """
    rules = _resolve_rules(gt, enabled_rules)
    nodes = enumerate_reduced_iexprs(gt, w, cap)
    node_set = set(nodes)
    g = RewriteGraph(w, nodes)
    for v in nodes:
        for site in _moves(v, rules):
            x = apply_move(gt, v, site)
            if x == v:
                continue
            if x not in node_set:
                g.violations.append({"word": format_word(v), "move": site.label,
                                     "direction": site.direction, "result": format_word(x)})
                continue
            key = (v, x) if format_word(v) < format_word(x) else (x, v)
            if key not in g.edges or site < g.edges[key]:
                g.edges[key] = site
    return g


class TimeBudgetExceeded(RuntimeError):
    """A verification ran past its deadline."""


def _with_deadline(fn: Callable, deadline: float | None) -> Callable:
    if deadline is None:
        return fn

    def wrapped(x):
        if time.monotonic() > deadline:
            raise TimeBudgetExceeded("time budget exhausted")
        return fn(x)

    return wrapped


def _parallel_map(fn: Callable, items: Sequence, jobs: int, deadline: float | None = None) -> list:
    fn = _with_deadline(fn, deadline)
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _progress(msg: str, enabled: bool) -> None:
    if enabled:
        print(msg, file=sys.stderr, flush=True)


def verify_connectivity(gt: GroupType, enabled_rules=None, cap: int | None = None,
                        jobs: int = 1, progress: bool = False, deadline: float | None = None) -> dict:
    """Component count of the rewrite graph of every involution of ``gt``."""
    rules = [r.rule_id for r in _resolve_rules(gt, enabled_rules)]
    invols = all_involutions(gt, cap)

    def one(w):
        g = rewrite_graph(gt, w, rules, cap)
        return {
            "element": str(w),
            "rho": rho(gt, w),
            "node_count": len(g.nodes),
            "component_count": g.component_count(),
            "violations": g.violations,
        }

    records = _parallel_map(one, invols, jobs, deadline)
    _progress(f"connectivity {gt}: {len(records)} involutions done", progress)
    violations = [dict(v, element=r["element"]) for r in records for v in r.pop("violations")]
    disconnected = [r["element"] for r in records if r["component_count"] != 1]
    return {
        "group": gt.family,
        "rank": gt.rank,
        "rules_enabled": rules,
        "involutions": records,
        "disconnected": disconnected,
        "violations": violations,
        "passed": not disconnected and not violations,
    }


def verify_preservation(gt: GroupType, cap: int | None = None, jobs: int = 1,
                        progress: bool = False, deadline: float | None = None) -> dict:
    """Every applicable move keeps the value, the length and reducedness."""
    rules = rule_set(gt)

    def one(w):
        checked = 0
        bad = []
        for v in enumerate_reduced_iexprs(gt, w, cap):
            for site in _moves(v, rules):
                x = apply_move(gt, v, site)
                checked += 1
                problems = []
                if len(x) != len(v):
                    problems.append("length")
                if not is_reduced_iexpr(gt, x):
                    problems.append("not reduced")
                if eval_iexpr(gt, x) != w:
                    problems.append("value changed")
                if apply_move(gt, x, site.inverse()) != v:
                    problems.append("inverse mismatch")
                if problems:
                    bad.append({"element": str(w), "word": format_word(v), "move": site.label,
                                "direction": site.direction, "result": format_word(x),
                                "problems": problems})
        return checked, bad

    results = _parallel_map(one, all_involutions(gt, cap), jobs, deadline)
    _progress(f"preservation {gt}: done", progress)
    violations = [b for _, bad in results for b in bad]
    return {
        "group": gt.family,
        "rank": gt.rank,
        "rules_enabled": rule_ids(gt),
        "moves_checked": sum(c for c, _ in results),
        "violations": violations,
        "passed": not violations,
    }


def find_ablation_witness(family: str, rule_id: str, ranks: Sequence[int], cap: int | None = None) -> dict:
    """Smallest rank in ``ranks`` where dropping ``rule_id`` disconnects some rewrite graph."""
    for n in ranks:
        gt = GroupType(family, n)
        enabled = [r for r in rule_ids(gt) if r != rule_id]
        for w in all_involutions(gt, cap):
            g = rewrite_graph(gt, w, enabled, cap)
            k = g.component_count()
            if k >= 2:
                return {"family": family, "disabled": rule_id, "rank": n, "element": str(w),
                        "rho": rho(gt, w), "node_count": len(g.nodes), "component_count": k}
    return {"family": family, "disabled": rule_id, "rank": None}


# --------------------------------------------------------------------------
# Classification lemmas for the minimal double-coset representative b
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Alternative:
    label: str
    kind: str  # "identity" | "prefix" | "fixed"
    pair: Callable  # (pair_kind, i, n) -> bool
    word: Callable = None  # (i) -> tuple of tokens
    rho_value: int | None = None


def _ai(pred=lambda i, n: True):
    return lambda kind, i, n: kind == "a" and pred(i, n)


def _u2(kind, i, n):
    return kind == "u2"


def _any(kind, i, n):
    return True


# id -> family, case of the seven-case analysis, covered (s, t) pairs, alternatives for b
LEMMAS = {
    "D-case4": dict(family="D", case=4, pairs="D", alternatives=[
        Alternative("a", "identity", _any),
        Alternative("b", "prefix", _ai(lambda i, n: 1 <= i < n - 2), lambda i: (i + 2, i + 1, i)),
        Alternative("c", "prefix", _u2, lambda i: (3, 2, 1, "u")),
    ]),
    "D-case6": dict(family="D", case=6, pairs="D", alternatives=[
        Alternative("a", "identity", _any),
        Alternative("b", "prefix", _ai(lambda i, n: 2 <= i < n - 1), lambda i: (i - 1, i, i + 1)),
        Alternative("c", "prefix", _ai(lambda i, n: i == 2), lambda i: (4, 3, 2)),
        Alternative("d", "prefix", _ai(lambda i, n: i == 2), lambda i: ("u", 2, 3)),
        Alternative("e", "prefix", _ai(lambda i, n: i == 1), lambda i: (3, 2, 1, "u")),
        Alternative("f", "prefix", _u2, lambda i: (3, 2, "u", 1)),
        Alternative("g", "fixed", _ai(lambda i, n: i == 2), lambda i: ("u", 1, 2, "u", 1, 3), 6),
        Alternative("h", "fixed", _ai(lambda i, n: i == 1), lambda i: ("u", 3, 2, 1, "u", 3), 6),
        Alternative("i", "fixed", _u2, lambda i: (1, 3, 2, "u", 1, 3), 6),
        Alternative("j", "fixed", _ai(lambda i, n: i == 2),
                    lambda i: ("u", 1, 2, 4, 3, "u", 2, "u", 1, 4), 10),
    ]),
    "B01-case5": dict(family="B", case=5, pairs="B01", alternatives=[
        Alternative("a", "identity", _any),
        Alternative("b", "fixed", _any, lambda i: (2, 1, 0)),
        Alternative("c", "prefix", _any, lambda i: (2, 1, 0, 1, 2)),
    ]),
    "B-case4": dict(family="B", case=4, pairs="B", alternatives=[
        Alternative("a", "identity", _any),
        Alternative("b", "prefix", _ai(lambda i, n: 2 <= i < n - 1), lambda i: (i - 1, i, i + 1)),
        Alternative("c", "prefix", _ai(lambda i, n: 1 <= i < n - 2), lambda i: (i + 2, i + 1, i)),
    ]),
    "B-case6": dict(family="B", case=6, pairs="B", alternatives=[
        Alternative("a", "identity", _any),
        Alternative("b", "prefix", _ai(lambda i, n: 2 <= i < n - 1), lambda i: (i - 1, i, i + 1)),
        Alternative("c", "prefix", _ai(lambda i, n: i == 1), lambda i: (3, 2, 1)),
        Alternative("d", "fixed", _ai(lambda i, n: i == 1), lambda i: (0, 1, 0, 2)),
        Alternative("e", "fixed", _ai(lambda i, n: i == 1), lambda i: (0, 3, 1, 2, 3, 1, 0, 1)),
    ]),
}


def _lemma_pairs(kind: str, n: int) -> list[tuple[Token, Token, str, int]]:
    """Ordered pairs (s, t, pair_kind, i) covered by a lemma's hypothesis."""
    out = []
    if kind in ("D", "B"):
        for i in range(1, n - 1):
            out.append((i, i + 1, "a", i))
            out.append((i + 1, i, "a", i))
    if kind == "D" and n >= 3:
        out.append((2, "u", "u2", 2))
        out.append(("u", 2, "u2", 2))
    if kind == "B01" and n >= 2:
        out.append((0, 1, "b01", 0))
        out.append((1, 0, "b01", 0))
    return out


def _strip_prefix(gt: GroupType, b: SignedPermutation, prefix: Sequence[Token]):
    """Return ``d`` if ``b = prefix ⋉ d`` with rho dropping by ``len(prefix)``, else None."""
    v = b
    for t in prefix:
        if t not in gt.tokens or not gt.is_left_descent(t, v):
            return None
        v = twisted_mult(gt, t, v)
    return v


def _matches(gt: GroupType, alt: Alternative, b: SignedPermutation, kind: str, i: int) -> bool:
    n = gt.rank
    if not alt.pair(kind, i, n):
        return False
    if alt.kind == "identity":
        return b.is_identity()
    word = alt.word(i)
    if any(t not in gt.tokens for t in word):
        return False
    if alt.kind == "prefix":
        return _strip_prefix(gt, b, word) is not None
    if b != eval_iexpr(gt, word) or not is_reduced_iexpr(gt, word):
        return False
    return alt.rho_value is None or rho(gt, b) == alt.rho_value


def verify_classification(lemma_id: str, gt: GroupType, cap: int | None = None) -> dict:
    """Check a classification lemma over every qualifying ``(w, s, t)`` of ``gt``.

    Qualifying means: ``s, t`` both descents of ``w``, ``b`` the minimal
    element of ``W_K w W_K``, no descent of ``b`` commutes with both ``s`` and
    ``t``, and ``b`` satisfies the lemma's case condition.
    """
    if lemma_id not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma_id!r}; expected one of {sorted(LEMMAS)}")
    table = LEMMAS[lemma_id]
    if gt.family != table["family"]:
        raise ValueError(f"lemma {lemma_id} concerns type {table['family']}, not {gt.family}")
    n = gt.rank
    pairs = _lemma_pairs(table["pairs"], n)
    alts = table["alternatives"]
    witnesses = {a.label: {"count": 0, "max_rho_b": None, "example": None} for a in alts}
    applicable = {a.label: any(a.pair(k, i, n) and (a.word is None or all(t in gt.tokens for t in a.word(i)))
                               for _, _, k, i in pairs) for a in alts}
    uncovered = []
    claim_violations = []
    instances = 0
    for w in all_involutions(gt, cap):
        desc = gt.descents_left(w)
        for s, t, kind, i in pairs:
            if s not in desc or t not in desc:
                continue
            b = double_coset_min(gt, w, (s, t))
            if any(gt.commute(r, s) and gt.commute(r, t) for r in gt.descents_left(b)):
                continue
            rep = classify_double_coset(gt, w, s, t)
            if table["family"] == "B" and lemma_id in ("B-case4", "B-case6") and rep.m != 3:
                claim_violations.append({"element": str(w), "s": s, "t": t, "claim": "m == 3"})
            if lemma_id == "B01-case5":
                if rep.m != 4:
                    claim_violations.append({"element": str(w), "s": s, "t": t, "claim": "m == 4"})
                if rep.case_id in (4, 6, 7):
                    claim_violations.append({"element": str(w), "s": s, "t": t,
                                             "claim": "not case 4/6/7", "case": rep.case_id})
            if rep.case_id != table["case"]:
                continue
            instances += 1
            hit = [a.label for a in alts if _matches(gt, a, b, kind, i)]
            if not hit:
                uncovered.append({"element": str(w), "s": s, "t": t, "b": str(b), "rho_b": rho(gt, b)})
            for label in hit:
                rec = witnesses[label]
                rb = rho(gt, b)
                rec["count"] += 1
                if rec["max_rho_b"] is None or rb > rec["max_rho_b"]:
                    rec["max_rho_b"] = rb
                    rec["example"] = {"element": str(w), "s": s, "t": t, "b": str(b)}
    return {
        "lemma": lemma_id,
        "group": gt.family,
        "rank": n,
        "case": table["case"],
        "instances": instances,
        "alternatives": {k: dict(v, applicable=applicable[k]) for k, v in witnesses.items()},
        "not_applicable_at_rank": sorted(k for k, v in applicable.items() if not v),
        "uncovered": uncovered,
        "claim_violations": claim_violations,
        "passed": not uncovered and not claim_violations,
    }
