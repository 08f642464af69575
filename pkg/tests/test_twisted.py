import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_reduced_iexprs, fold, rho_bfs, twisted
from twinv.signed_weyl import GroupType, SignedPermutation, parse_word, word_sort_key
from twinv.twisted import (
    ASCENT,
    all_involutions,
    classify_double_coset,
    count_reduced_iexprs,
    double_coset_min,
    enumerate_reduced_iexprs,
    eval_iexpr,
    exchange_apply,
    is_reduced_iexpr,
    rho,
    twisted_mult,
)

SMALL = [GroupType("B", 1), GroupType("B", 2), GroupType("B", 3), GroupType("D", 2), GroupType("D", 3)]
ids = [str(g) for g in SMALL]
D4 = GroupType("D", 4)
DD_LEFT = parse_word("2,3,u,1,2,u,1,3")
DD_RIGHT = parse_word("3,2,u,1,2,u,1,3")


def test_twisted_mult_of_identity():
    for gt in SMALL + [D4]:
        for s in gt.tokens:
            assert twisted_mult(gt, s, gt.identity()) == gt.generator(s)


@pytest.mark.parametrize("gt", SMALL + [D4], ids=ids + ["D4"])
def test_twisted_mult_matches_oracle(gt):
    for w in all_involutions(gt):
        for s in gt.tokens:
            x = twisted_mult(gt, s, w)
            assert tuple(x) == twisted(gt.family, gt.rank, s, tuple(w))
            assert twisted_mult(gt, s, x) == w


def test_eval_examples():
    d2 = GroupType("D", 2)
    assert eval_iexpr(d2, ()) == d2.identity()
    assert eval_iexpr(d2, ("u", 1)) == eval_iexpr(d2, (1, "u")) == d2.generator("u") * d2.generator(1)
    assert eval_iexpr(D4, DD_LEFT) == eval_iexpr(D4, DD_RIGHT)
    assert eval_iexpr(D4, DD_LEFT) == D4.evaluate(parse_word("2,3,u,1,2,u,1,3,2,1,u,3"))


@pytest.mark.parametrize("gt", SMALL + [D4], ids=ids + ["D4"])
def test_rho_matches_bfs(gt):
    dist = rho_bfs(gt.family, gt.rank)
    invols = all_involutions(gt)
    assert {tuple(w) for w in invols} == set(dist)
    for w in invols:
        assert rho(gt, w) == dist[tuple(w)]


def test_rho_examples():
    assert rho(D4, D4.identity()) == 0
    assert rho(D4, eval_iexpr(D4, parse_word("u,1,2,u,1,3"))) == 6
    d5 = GroupType("D", 5)
    assert rho(d5, eval_iexpr(d5, parse_word("u,1,2,4,3,u,2,u,1,4"))) == 10
    assert rho(D4, eval_iexpr(D4, DD_LEFT)) == 8
    with pytest.raises(ValueError):
        rho(D4, D4.generator(1) * D4.generator(2))


@pytest.mark.parametrize("gt", SMALL, ids=ids)
def test_greedy_rho_is_order_independent(gt):
    def all_paths(w):
        if w.is_identity():
            return {0}
        return {1 + k for s in gt.descents_left(w) for k in all_paths(twisted_mult(gt, s, w))}

    for w in all_involutions(gt):
        assert all_paths(w) == {rho(gt, w)}


def test_is_reduced_examples():
    assert is_reduced_iexpr(D4, ())
    assert not is_reduced_iexpr(D4, (1, 1))
    assert is_reduced_iexpr(D4, DD_LEFT)


def test_involution_counts():
    assert len(all_involutions(GroupType("B", 2))) == 6
    assert len(all_involutions(GroupType("D", 3))) == 10
    for gt in SMALL:
        invols = all_involutions(gt)
        assert gt.identity() in invols
        assert invols == sorted(w for w in gt.all_elements() if (w * w).is_identity())


@pytest.mark.parametrize("gt", SMALL, ids=ids)
def test_enumeration_matches_brute_force(gt):
    for w in all_involutions(gt):
        got = enumerate_reduced_iexprs(gt, w)
        assert set(got) == brute_reduced_iexprs(gt.family, gt.rank, w)
        assert got == sorted(got, key=word_sort_key)
        assert count_reduced_iexprs(gt, w) == len(got)


def test_enumeration_dd_involution():
    w = eval_iexpr(D4, DD_LEFT)
    got = enumerate_reduced_iexprs(D4, w)
    assert DD_LEFT in got and DD_RIGHT in got
    assert set(got) == brute_reduced_iexprs("D", 4, w)
    assert len(got) == 240


def test_enumeration_trivial_cases():
    assert enumerate_reduced_iexprs(D4, D4.identity()) == [()]
    for s in D4.tokens:
        assert enumerate_reduced_iexprs(D4, D4.generator(s)) == [(s,)]


@pytest.mark.parametrize("gt", SMALL + [D4], ids=ids + ["D4"])
def test_enumeration_members(gt):
    for w in all_involutions(gt):
        words = enumerate_reduced_iexprs(gt, w)
        assert {len(v) for v in words} == {rho(gt, w)}
        for v in words:
            assert is_reduced_iexpr(gt, v) and eval_iexpr(gt, v) == w


def test_exchange_examples():
    assert exchange_apply(D4, 1, (1,)) == ()
    assert exchange_apply(D4, 3, (1,)) == ASCENT


@pytest.mark.parametrize("gt", [GroupType("B", 3), GroupType("D", 3)], ids=["B3", "D3"])
def test_exchange_witnesses(gt):
    for w in all_involutions(gt):
        for v in enumerate_reduced_iexprs(gt, w):
            for s in gt.tokens:
                out = exchange_apply(gt, s, v)
                if gt.is_left_descent(s, w):
                    assert out != ASCENT
                    assert len(out) == len(v) - 1
                    assert eval_iexpr(gt, out) == twisted_mult(gt, s, w)
                    assert is_reduced_iexpr(gt, out)
                else:
                    assert out == ASCENT


# -- seven-case classification ------------------------------------------------

def _pairs(gt, w):
    desc = sorted(gt.descents_left(w), key=str)
    return [(s, t) for s in desc for t in desc if s != t]


@pytest.mark.parametrize("gt", SMALL + [D4], ids=ids + ["D4"])
def test_classification_reconstructs_w(gt):
    """``w`` equals the alternating prefix folded onto ``b`` and is reduced that way."""
    for w in all_involutions(gt):
        for s, t in _pairs(gt, w):
            rep = classify_double_coset(gt, w, s, t)
            assert rep.b == double_coset_min(gt, w, (s, t))
            assert (rep.b * rep.b).is_identity()
            assert not ({s, t} & set(gt.descents_left(rep.b)))
            v = rep.b
            for r in reversed(rep.expression()):
                assert not gt.is_left_descent(r, v)
                v = twisted_mult(gt, r, v)
            assert v == w
            assert rho(gt, w) == rho(gt, rep.b) + rep.factors


def test_classification_examples():
    b2 = GroupType("B", 2)
    w0 = SignedPermutation([-1, -2])
    rep = classify_double_coset(b2, w0, 0, 1)
    assert rep.b.is_identity() and rep.case_id == 5 and rep.factors == 3
    # s ⋉ t with m = 3 and b = 1: both commute with b, m odd
    d3 = GroupType("D", 3)
    w = eval_iexpr(d3, (1, 2))
    assert d3.descents_left(w) >= {1, 2}
    rep = classify_double_coset(d3, w, 1, 2)
    assert rep.b.is_identity() and rep.case_id == 4 and rep.factors == 2
    # Case 6 in D4 around b = u,1,2,u,1,3
    b = eval_iexpr(D4, parse_word("u,1,2,u,1,3"))
    w = eval_iexpr(D4, (2, 3) + parse_word("u,1,2,u,1,3"))
    rep = classify_double_coset(D4, w, 2, 3)
    assert rep.case_id == 6 and rep.b == b


def test_classification_rejects_bad_input():
    w = eval_iexpr(D4, (1,))
    with pytest.raises(ValueError):
        classify_double_coset(D4, w, 1, 1)
    with pytest.raises(ValueError):
        classify_double_coset(D4, w, 1, 2)


@given(st.data())
@settings(max_examples=200, deadline=None)
def test_random_D4_calculus(data):
    invols = all_involutions(D4)
    w = data.draw(st.sampled_from(invols))
    s = data.draw(st.sampled_from(D4.tokens))
    x = twisted_mult(D4, s, w)
    assert twisted_mult(D4, s, x) == w
    assert abs(rho(D4, x) - rho(D4, w)) == 1
    v = enumerate_reduced_iexprs(D4, w)[0]
    assert tuple(x) == fold("D", 4, (s,) + v)
