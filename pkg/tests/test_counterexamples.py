import itertools

import pytest
from hypothesis import given, settings, strategies as st

from omegaramsey import nba
from omegaramsey.counterexamples import (
    E1,
    E2,
    DomainError,
    Homogeneous,
    NoPair,
    Violation,
    brute_homogeneous,
    equal_length_distinct_pair,
    hyper3_classify,
    hyperk_classify,
    inhomog_witness,
    interleave_L2,
    pair_classify,
)
from omegaramsey.nlang import n_generate
from omegaramsey.words import BINARY, UpWord, parse_up, up

from helpers import random_up, seeded


def W(s):
    return parse_up(s)


def test_hyper3_examples():
    assert hyper3_classify(W("(0)"), W("(10)"), W("(110)")) == E1
    assert hyper3_classify(W("(0)"), W("(001)"), W("(01)")) == E2
    assert hyper3_classify(W("00(0)"), W("01(0)"), W("1(0)")) == E2


def test_hyper3_rejects_repeats():
    with pytest.raises(DomainError):
        hyper3_classify(W("(0)"), W("000(0)"), W("(1)"))


up_words = st.builds(
    UpWord,
    st.text(alphabet="01", max_size=4).map(tuple),
    st.text(alphabet="01", min_size=1, max_size=4).map(tuple),
)


@settings(max_examples=80)
@given(st.lists(up_words, min_size=3, max_size=6, unique=True))
def test_hyper3_ignores_order(ws):
    a, b, c = ws[:3]
    expected = hyper3_classify(a, b, c)
    for perm in itertools.permutations((a, b, c)):
        assert hyper3_classify(*perm) == expected


@settings(max_examples=80)
@given(st.lists(up_words, min_size=4, max_size=7, unique=True), st.randoms())
def test_hyperk_depends_on_the_three_least(ws, rnd):
    shuffled = list(ws)
    rnd.shuffle(shuffled)
    assert hyperk_classify(ws) == hyperk_classify(shuffled)
    # 1^omega is the lex maximum, so it never joins the three least
    top = up("", "1")
    if top not in ws:
        assert hyperk_classify(ws + [top]) == hyperk_classify(ws)


def test_hyperk_matches_hyper3_on_triples():
    rng = seeded(61)
    for _ in range(100):
        ws = list({random_up(rng) for _ in range(3)})
        if len(ws) == 3:
            assert hyperk_classify(ws) == hyper3_classify(*ws)
    with pytest.raises(DomainError):
        hyperk_classify([W("(0)"), W("(1)")])


def test_pair_examples():
    assert pair_classify(W("(10)"), W("10(01)")) == E1
    assert pair_classify(W("(10)"), W("1(10)")) == E1
    assert pair_classify(W("(110)"), W("(101)")) == E2
    # ultimately equal words share infinite support yet stay in E1
    assert pair_classify(W("(10)"), W("1100(10)")) == E1


def test_pair_domain():
    with pytest.raises(DomainError):
        pair_classify(W("(0)"), W("(10)"))
    with pytest.raises(DomainError):
        pair_classify(W("(10)"), W("(10)"))
    with pytest.raises(DomainError):
        pair_classify(W("(10)"), W("1(1)"))


def test_pair_classify_is_symmetric():
    rng = seeded(62)
    L = nba.one_plus_zero_plus()
    seen = 0
    while seen < 100:
        x, y = random_up(rng, max_pre=4, max_per=4), random_up(rng, max_pre=4, max_per=4)
        if x == y or not (nba.member_up(L, x) and nba.member_up(L, y)):
            continue
        assert pair_classify(x, y) == pair_classify(y, x)
        seen += 1


def test_brute_homogeneous_families():
    ones = [UpWord(("1",) * k, ("0",)) for k in range(9)]
    zeros = [UpWord(("0",) * k, ("1",)) for k in range(9)]
    assert brute_homogeneous(ones) == Homogeneous(E1)
    assert brute_homogeneous(zeros) == Homogeneous(E2)
    v = brute_homogeneous(ones[:3] + zeros[:3])
    assert isinstance(v, Violation) and v.first_cls != v.second_cls
    assert hyper3_classify(*v.first) == v.first_cls
    assert hyper3_classify(*v.second) == v.second_cls


def test_brute_small_mixed_family():
    v = brute_homogeneous([W("(0)"), W("1(0)"), W("0(1)"), W("11(0)")])
    assert isinstance(v, Violation)


def test_brute_other_classifiers():
    ws = [W("(10)"), W("10(01)"), W("(110)"), W("(101)")]
    v = brute_homogeneous(ws, "pair")
    assert isinstance(v, Violation)
    assert brute_homogeneous([W("(10)"), W("10(01)")], "pair") == Homogeneous(E1)
    ones = [UpWord(("1",) * k, ("0",)) for k in range(6)]
    assert brute_homogeneous(ones, "hyperk", k=4) == Homogeneous(E1)
    with pytest.raises(ValueError):
        brute_homogeneous(ones, "hyperk", k=2)
    with pytest.raises(ValueError):
        brute_homogeneous(ones[:2])
    with pytest.raises(ValueError):
        brute_homogeneous(ones, "colour")


def test_interleaving():
    for c in ["", "0", "1", "0110"]:
        p = interleave_L2(c, 40)
        assert p[0::2] == ("1",) * 20
        assert p[1::2] == n_generate(c, 20)
    assert len(interleave_L2("0", 7)) == 7


def nfa(*ws):
    return nba.nfa_from_words(ws, BINARY)


def test_equal_length_pairs():
    assert equal_length_distinct_pair(nfa("10", "01")) == (("1", "0"), ("0", "1"))
    with pytest.raises(NoPair):
        equal_length_distinct_pair(nfa("0"))
    with pytest.raises(NoPair):
        equal_length_distinct_pair(nfa("1", "11"))


def test_inhomogeneous_witness_example():
    (a, b), (c, d) = inhomog_witness(nfa("1"), nfa("10", "01"))
    assert pair_classify(a, b) == E1
    assert pair_classify(c, d) == E2


def in_UV_omega(x, us, vs):
    vo = nba.blocks_omega(vs, BINARY)
    for u in us:
        flat = x.prefix + x.period * (len(u) + 1)
        if flat[: len(u)] == tuple(u):
            k = len(u)
            rest = UpWord(flat[k:], x.period)
            if nba.member_up(vo, rest):
                return True
    return False


def test_inhomogeneous_witnesses_lie_in_the_set():
    cases = [(["1"], ["10", "01"]), (["1", "10"], ["10", "100"]), (["11"], ["10", "110", "100"])]
    for us, vs in cases:
        (a, b), (c, d) = inhomog_witness(nfa(*us), nfa(*vs))
        for x in (a, b, c, d):
            assert in_UV_omega(x, us, vs)
        assert pair_classify(a, b) == E1
        assert pair_classify(c, d) == E2


def test_inhomogeneous_witness_failures():
    with pytest.raises(NoPair):
        inhomog_witness(nba.nfa_from_words([], BINARY), nfa("10", "01"))
    with pytest.raises(NoPair):
        inhomog_witness(nfa("1"), nfa("10"))
