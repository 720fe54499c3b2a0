"""Acceptance gate. Each criterion prints one ``CRITERION n PASS|FAIL`` line
(visible without ``-s``) and fails the test when its check or its time
budget is not met."""

import io
import itertools
import time
from contextlib import contextmanager

import pytest

from omegaramsey import algebra, nba, ramsey
from omegaramsey.cli import run
from omegaramsey.counterexamples import (
    E1,
    E2,
    Homogeneous,
    Violation,
    brute_homogeneous,
    inhomog_witness,
    pair_classify,
    paircolour_presentation,
)
from omegaramsey.grammars import cfg_member_prefixes
from omegaramsey.nlang import complement_n_grammar, n_block_check, n_generate, n_window_check, stems_equal
from omegaramsey.ramsey import Presentation, TripleCandidate
from omegaramsey.words import BINARY, UpWord, convolve, parse_up

from helpers import NO_VERDICTS, random_nba, random_up, recheck_verdict, seeded, words_upto

pytestmark = pytest.mark.acceptance


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def gate(n, title, budget=None):
        info = {}
        t0 = time.perf_counter()
        status = "FAIL"
        try:
            yield info
            elapsed = time.perf_counter() - t0
            assert budget is None or elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - t0
            extra = " ".join(f"{k}={v}" for k, v in info.items())
            limit = f"/{budget}s" if budget else ""
            with capsys.disabled():
                print(f"\nCRITERION {n} {status} {title} [{elapsed:.2f}s{limit}] {extra}".rstrip())

    return gate


def test_c01_window_equals_block(criterion):
    with criterion(1, "window check == block check, all words |w| <= 14", 10) as info:
        bad = [w for w in words_upto(14) if n_window_check(w) != n_block_check(w)]
        info["words"] = 2**15 - 1
        info["mismatches"] = len(bad)
        assert not bad, "".join(bad[0])


def test_c02_complement_grammar(criterion):
    with criterion(2, "prefix in complement grammar <=> window check fails, |p| <= 10", 60) as info:
        g = complement_n_grammar()
        mismatches = 0
        for p in itertools.product("01", repeat=10):
            # one CYK table answers every prefix of p at once
            table = cfg_member_prefixes(g, p)
            for k in range(11):
                if any(table[: k + 1]) != (not n_window_check(p[:k])):
                    mismatches += 1
        info["mismatches"] = mismatches
        assert mismatches == 0


def _positions(stem, length):
    # p_0 = 0, p_{k+1} = 2 p_k + 1 + a_k
    out, p, k = [], 0, 0
    while p < length:
        out.append(p)
        p = 2 * p + 1 + (int(stem[k]) if k < len(stem) else 0)
        k += 1
    return out


def test_c03_shared_support(criterion):
    with criterion(3, "shared 1-positions precede divergence, 512 letters", 10) as info:
        rng = seeded(1003)
        pairs = 0
        while pairs < 150:
            a = "".join(rng.choice("01") for _ in range(rng.randint(1, 8)))
            b = "".join(rng.choice("01") for _ in range(rng.randint(1, 8)))
            if stems_equal(a, b):
                continue
            x, y = n_generate(a, 512), n_generate(b, 512)
            assert [i for i in range(512) if x[i] == "1"] == _positions(a, 512)
            first_diff = next(i for i in range(512) if x[i] != y[i])
            shared = [i for i in range(512) if x[i] == y[i] == "1"]
            assert all(i < first_diff for i in shared), (a, b)
            pairs += 1
        info["pairs"] = pairs


def test_c04_antitone_embedding(criterion):
    with criterion(4, "stems <= 8, a < b implies N(a) >= N(b) at 128 letters") as info:
        stems = sorted({"".join(s).rstrip("0") for n in range(9) for s in itertools.product("01", repeat=n)})
        pad = {s: s.ljust(8, "0") for s in stems}
        img = {s: n_generate(s, 128) for s in stems}
        long = {s: n_generate(s, 512) for s in stems}
        checked = strict = 0
        for a, b in itertools.combinations(stems, 2):
            if pad[a] > pad[b]:
                a, b = b, a
            assert img[a] >= img[b], (a, b)
            if img[a] != img[b]:
                strict += 1
            # the longer prefix separates every pair of distinct stems
            assert long[a] > long[b], (a, b)
            checked += 1
        info["pairs"] = checked
        info["strict_at_128"] = strict


def test_c05_algebraic_membership(criterion):
    with criterion(5, "member_up_algebraic == member_up", 30) as info:
        rng = seeded(1005)
        agree = 0
        for _ in range(600):
            a = random_nba(rng, 4)
            x = random_up(rng, max_pre=3, max_per=3)
            assert algebra.member_up_algebraic(a, x) == nba.member_up(a, x), (a, x)
            agree += 1
        info["instances"] = agree


def test_c06_complement_soundness(criterion):
    with criterion(6, "complement flips membership") as info:
        rng = seeded(1006)
        n_auto = n_words = 0
        for _ in range(24):
            a = random_nba(rng, 3)
            c = algebra.complement(a)
            for _ in range(220):
                x = random_up(rng)
                assert nba.member_up(c, x) != nba.member_up(a, x), (a, x)
                n_words += 1
            n_auto += 1
        info["automata"] = n_auto
        info["checks"] = n_words


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    lines = dict(line.split(" ", 1) for line in out.getvalue().splitlines())
    return code, lines


def test_c07_end_to_end(criterion, tmp_path):
    with criterion(7, "clique verify and find on the pair colouring", 120) as info:
        bundle = str(tmp_path / "b")
        assert _cli(["clique", "paircolour", "--out", bundle])[0] == 0
        P = ramsey.load_bundle(bundle)

        code, out = _cli(["clique", "verify", "--bundle", bundle, "--u", "1", "--v", "0", "--w", "1", "--class", "1"])
        assert code == 0 and out["RESULT"] == "yes"

        code, out = _cli(["clique", "verify", "--bundle", bundle, "--u", "1", "--v", "0", "--w", "1", "--class", "2"])
        assert code == 1 and out["RESULT"] == "no" and out["STAGE"] == "homogeneous"
        ca, cb = map(parse_up, out["PAIR"].split())
        hom = TripleCandidate("1", "0", "1").hom()
        w = ramsey.verify_pair_witness(hom, P, ca, cb)
        assert ca != cb and 2 not in w.classes and w.classes
        v = ramsey.homogeneous(TripleCandidate("1", "0", "1"), 2, P)
        assert recheck_verdict(v, P, 2)

        code, out = _cli(["clique", "verify", "--bundle", bundle, "--u", "0", "--v", "0", "--w", "1", "--class", "1"])
        assert code == 1 and out["STAGE"] == "h_subset_L" and out["PREFIX"].startswith("0")
        v = ramsey.h_subset_L(TripleCandidate("0", "0", "1"), P)
        assert v.witness.prefix(1) == ("0",) and recheck_verdict(v, P)

        code, out = _cli(["clique", "find", "--bundle", bundle, "--max-len", "1"])
        assert code == 0 and out["TRIPLE"] == "1 0 1" and out["CLASS"] == "E1"
        info["found"] = "(1,0,1,E1)"


def test_c08_homogeneous_families(criterion):
    with criterion(8, "1^k 0^w gives E1, 0^k 1^w gives E2, k <= 8", 5) as info:
        ones = [UpWord(("1",) * k, ("0",)) for k in range(9)]
        zeros = [UpWord(("0",) * k, ("1",)) for k in range(9)]
        assert len(set(ones)) == len(set(zeros)) == 9
        assert brute_homogeneous(ones) == Homogeneous(E1)
        assert brute_homogeneous(zeros) == Homogeneous(E2)
        info["triples"] = 2 * 84


def test_c09_inhomogeneous_witnesses(criterion):
    with criterion(9, "U={1}, V={10,01} yields an E1 pair and an E2 pair") as info:
        U = nba.nfa_from_words(["1"], BINARY)
        V = nba.nfa_from_words(["10", "01"], BINARY)
        (a, b), (c, d) = inhomog_witness(U, V)
        assert pair_classify(a, b) == E1
        assert pair_classify(c, d) == E2
        info["pairs"] = f"{a},{b} / {c},{d}"


def _no_verdict_batch():
    """Negative verdicts from every decision routine, each with its witness."""
    rng = seeded(1010)
    P = paircolour_presentation()
    univ_pairs = nba.universal(BINARY.product())
    checked = 0
    # clique stages on random domains and on the pair colouring
    for _ in range(40):
        L = random_nba(rng, 3, density=0.5)
        p = Presentation(BINARY, L, nba.diagonal(BINARY), (univ_pairs,))
        n = rng.randint(1, 2)
        v, w = rng.sample(list(itertools.product("01", repeat=n)), 2)
        t = TripleCandidate(tuple(rng.choice("01") for _ in range(rng.randint(1, 2))), v, w)
        for route in ("linked", "complement"):
            ramsey.h_subset_L(t, p, route=route)
    for t in ramsey.candidates(BINARY, 1):
        if ramsey.h_subset_L(t, P).holds:
            for i in (1, 2):
                ramsey.homogeneous(t, i, P, check_domain=False)
    # emptiness: a witness must be accepted by a separate lasso membership
    for _ in range(60):
        a = random_nba(rng, 3)
        x = nba.witness(a)
        if x is not None:
            assert algebra.member_up_algebraic(a, x)
            checked += 1
    # brute force: replay each reported subset through the presentation automata
    fam = [parse_up(s) for s in ["(10)", "10(01)", "(110)", "(101)", "1(10)"]]
    res = brute_homogeneous(fam, "pair")
    assert isinstance(res, Violation)
    for sub, cls in ((res.first, res.first_cls), (res.second, res.second_cls)):
        z = convolve(list(sub))
        hits = [i for i, e in enumerate(P.edges, 1) if nba.member_up(e, z)]
        assert hits == [int(cls[1:])]
        checked += 1
    return checked


def test_c10_no_verdicts_reverify(criterion):
    with criterion(10, "every negative verdict carries a re-verifying witness") as info:
        before = len(NO_VERDICTS)
        extra = _no_verdict_batch()
        fresh = NO_VERDICTS[before:]
        assert fresh, "the batch produced no negative clique verdicts"
        assert all(ok for _, _, ok in NO_VERDICTS)
        stages = {s for s, _, _ in fresh}
        assert stages == {"h_subset_L", "homogeneous"}
        info["clique_no"] = len(NO_VERDICTS)
        info["other_no"] = extra
