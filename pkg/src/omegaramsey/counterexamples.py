"""Executable negative results.

* A 3-uniform colouring of ``{0,1}^omega``: a lex-sorted triple ``x < y < z``
  is in ``E1`` when ``x ^ y`` is a strict prefix of ``y ^ z`` (``^`` is the
  longest common prefix), else in ``E2``. Lifting to ``k``-sets looks at the
  three lex-least members.
* A pair colouring of ``(1+0+)^omega``: ``E1`` when the supports meet
  finitely or the words are ultimately equal, ``E2`` otherwise. It has an
  ``E1`` clique of the form ``1 . N`` yet no clique of the form ``U V^omega``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations

from . import nba as _nba
from .nba import Nfa
from .nlang import n_generate
from .ramsey import Presentation, pairs_of
from .words import (
    BINARY,
    INFINITE,
    UpWord,
    lcp,
    lex_compare,
    pair_symbol,
    support_meet_finite,
    ultimately_equal,
)


class DomainError(ValueError):
    pass


class NoPair(ValueError):
    pass


E1, E2 = "E1", "E2"


def _lex_sorted(ws):
    return sorted(ws, key=cmp_to_key(lambda a, b: lex_compare(a, b, BINARY).value))


def hyper3_classify(x: UpWord, y: UpWord, z: UpWord) -> str:
    ws = [x, y, z]
    for w in ws:
        BINARY.check(w.symbols())
    if len(set(ws)) != 3:
        raise DomainError("the three words must be pairwise distinct")
    a, b, c = _lex_sorted(ws)
    left, right = lcp(a, b), lcp(b, c)
    assert left is not INFINITE and right is not INFINITE
    return E1 if len(left) < len(right) else E2


def hyperk_classify(ws) -> str:
    ws = list(ws)
    if len(ws) < 3:
        raise DomainError("need at least three words")
    if len(set(ws)) != len(ws):
        raise DomainError("words must be distinct")
    return hyper3_classify(*_lex_sorted(ws)[:3])


_DOMAIN = _nba.one_plus_zero_plus()


def pair_classify(x: UpWord, y: UpWord) -> str:
    for w in (x, y):
        BINARY.check(w.symbols())
        if not _nba.member_up(_DOMAIN, w):
            raise DomainError(f"{w} is not in (1+0+)^omega")
    if x == y:
        raise DomainError("the two words must be distinct")
    return E1 if support_meet_finite(x, y) or ultimately_equal(x, y) else E2


@dataclass(frozen=True)
class Homogeneous:
    cls: str


@dataclass(frozen=True)
class Violation:
    first: tuple
    first_cls: str
    second: tuple
    second_cls: str


def brute_homogeneous(ws, classifier: str = "hyper3", k: int | None = None):
    """Classify every ``k``-subset (``k`` = 3 for ``hyper3``, 2 for ``pair``)."""
    ws = list(dict.fromkeys(ws))
    if classifier == "hyper3":
        k, fn = 3, lambda s: hyper3_classify(*s)
    elif classifier == "pair":
        k, fn = 2, lambda s: pair_classify(*s)
    elif classifier == "hyperk":
        if k is None or k < 3:
            raise ValueError("hyperk needs k >= 3")
        fn = hyperk_classify
    else:
        raise ValueError(f"unknown classifier {classifier!r}")
    seen = None
    for sub in combinations(ws, k):
        c = fn(sub)
        if seen is None:
            seen = (sub, c)
        elif c != seen[1]:
            return Violation(seen[0], seen[1], sub, c)
    if seen is None:
        raise ValueError(f"fewer than {k} distinct words")
    return Homogeneous(seen[1])


def interleave_L2(c, length: int) -> tuple:
    """Prefix of ``1 a_0 1 a_1 ...`` for the word ``a`` of N named by ``c``."""
    a = n_generate(c, (length + 1) // 2)
    out = []
    for bit in a:
        out += ["1", bit]
    return tuple(out[:length])


def _words_of_length(v: Nfa, n: int) -> list:
    """All words of length ``n`` accepted by ``v`` (subset exploration)."""
    out = []

    def go(cur, w):
        if len(w) == n:
            if cur & v.accepting:
                out.append(tuple(w))
            return
        for a in v.alphabet:
            nxt = frozenset(t for q in cur for t in v.step(q, a))
            if nxt:
                go(nxt, w + [a])

    go(frozenset({v.initial}), [])
    return out


def _shortest_distinct_length(v: Nfa) -> int | None:
    """BFS over pairs of runs of ``v`` that have read different words."""
    start = (v.initial, v.initial, False)
    seen = {start}
    frontier = [start]
    n = 0
    while frontier:
        for p, q, diff in frontier:
            if diff and p in v.accepting and q in v.accepting:
                return n
        nxt = []
        for p, q, diff in frontier:
            for a, p2 in v.out(p):
                for b, q2 in v.out(q):
                    st = (p2, q2, diff or a != b)
                    if st not in seen:
                        seen.add(st)
                        nxt.append(st)
        frontier = nxt
        n += 1
    return None


def equal_length_distinct_pair(V: Nfa):
    """Shortest ``v1 != v2`` in ``V+`` with ``|v1| = |v2|``.

    Among words of that length, ordered with 1 before 0, ``v1`` is the first
    one containing a 1 (or the first one if none does) and ``v2`` the next."""
    plus = _nba.nfa_plus(V)
    n = _shortest_distinct_length(plus)
    if n is None:
        raise NoPair("all words of V+ of equal length coincide")
    rank = {"1": 0, "0": 1}
    words = sorted(_words_of_length(plus, n), key=lambda w: [rank.get(s, 2) for s in w])
    ones = [w for w in words if "1" in w]
    v1 = ones[0] if ones else words[0]
    v2 = next(w for w in words if w != v1)
    return v1, v2


def inhomog_witness(U: Nfa, V: Nfa):
    """``(E1 pair, E2 pair)`` inside ``U V^omega``:
    ``(u v1 v1^w, u v2 v1^w)`` and ``(u (v1 v2)^w, u (v1 v1)^w)``."""
    u = _nba.shortest_word(U)
    if u is None:
        raise NoPair("U is empty")
    v1, v2 = equal_length_distinct_pair(V)
    if "1" not in v1:
        raise NoPair("no word of V+ with a 1 takes part in a distinct equal-length pair")
    e1 = (UpWord(u + v1, v1), UpWord(u + v2, v1))
    e2 = (UpWord(u, v1 + v2), UpWord(u, v1 + v1))
    return e1, e2


def paircolour_presentation() -> Presentation:
    """Injective presentation over ``(1+0+)^omega`` with the pair colouring."""
    L = _nba.one_plus_zero_plus()
    pa = BINARY.product()
    LL = pairs_of(L)
    diag_letters = {pair_symbol(a, a) for a in BINARY}
    off_letters = set(pa) - diag_letters
    both = {pair_symbol("1", "1")}
    eq = _nba.product(LL, _nba.diagonal(BINARY))
    finite_meet = _nba.eventually_only(pa, set(pa) - both)
    ult_eq = _nba.eventually_only(pa, diag_letters)
    e1 = _nba.product_all([LL, _nba.off_diagonal(BINARY), _nba.union(finite_meet, ult_eq)])
    e2 = _nba.product_all([LL, _nba.infinitely_often(pa, both), _nba.infinitely_often(pa, off_letters)])
    return Presentation(BINARY, L, _nba.trim(eq), (_nba.trim(e1), _nba.trim(e2)))
