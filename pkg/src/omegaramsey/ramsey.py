"""Omega-automatic presentations and the clique test for ``H = u . h(N)``.

Neither ``H`` nor ``H (x) H`` is omega-regular, but both are generated by a
finite device once block exponents are abstracted. The member of ``H`` for
choice bits ``a`` is

    u . prod_k  w v^(p_k + a_k),        p_{k+1} = 2 p_k + 1 + a_k,

and for a fixed automaton the profile of ``v^m`` depends only on ``m`` when
``m`` is below the index ``t`` of that profile, and on ``m mod pi`` above
it. Every counter used below only grows once it has passed ``t + 1``, so an
exact-below-threshold, residue-above state is a faithful finite
abstraction. The questions then become reachability and lasso questions
over (abstract counter, profile) or (abstract counter, automaton state).

Every negative answer carries choice sequences, which an independent
routine (:func:`verify_choice_witness`, :func:`verify_pair_witness`)
replays with exact integer positions into an ultimately periodic
surrogate word that has the same block profiles, then checks with the
plain lasso membership test.
"""

from __future__ import annotations

import os
import random
from collections import deque
from dataclasses import dataclass
from itertools import product as _cartesian
from math import lcm
from typing import Sequence

from . import _graph, algebra
from . import nba as _nba
from .algebra import Profiles
from .nba import Nba
from .nlang import WordHom, h_image_prefix, one_positions_up
from .words import BINARY, Alphabet, AlphabetError, UpWord, convolve, pair_symbol


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    L: Nba
    eq: Nba
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.edges:
            raise PresentationError("a presentation needs at least one edge class")
        if self.L.alphabet != self.alphabet:
            raise AlphabetError("domain automaton uses a different alphabet")
        pa = self.alphabet.product()
        for name, a in [("eq", self.eq)] + [(f"E{i + 1}", e) for i, e in enumerate(self.edges)]:
            if set(a.alphabet) != set(pa):
                raise AlphabetError(f"{name} is not over the pair alphabet")


@dataclass(frozen=True)
class TripleCandidate:
    u: tuple
    v: tuple
    w: tuple

    def __post_init__(self):
        for name in ("u", "v", "w"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.u:
            raise ValueError("u must be non-empty")
        if not self.v or len(self.v) != len(self.w) or self.v == self.w:
            raise ValueError("v and w must be distinct, non-empty and of equal length")

    def hom(self, alphabet: Alphabet = BINARY) -> WordHom:
        return WordHom(self.u, self.v, self.w, alphabet)

    def __str__(self):
        return f"({''.join(self.u)},{''.join(self.v)},{''.join(self.w)})"


@dataclass(frozen=True)
class ChoiceWitness:
    """The member of ``H`` named by ``choices``; ``surrogate`` is a lasso
    word with the same block profiles for the automata it was built for."""

    hom: WordHom
    choices: UpWord
    surrogate: UpWord

    def prefix(self, length: int) -> tuple:
        return h_image_prefix(self.hom, self.choices, length)


@dataclass(frozen=True)
class PairWitness:
    hom: WordHom
    choices: tuple  # (UpWord, UpWord)
    surrogate: UpWord  # over the pair alphabet
    classes: tuple  # 1-based edge indices containing the surrogate


@dataclass(frozen=True)
class Verdict:
    holds: bool
    stage: str
    witness: object = None


# -- bundles ---------------------------------------------------------------------


def load_bundle(path) -> Presentation:
    names = sorted(os.listdir(path))
    edges = []
    k = 1
    while f"E{k}.nba" in names:
        edges.append(_nba.load_automaton(os.path.join(path, f"E{k}.nba")))
        k += 1
    for req in ("L.nba", "eq.nba"):
        if req not in names:
            raise PresentationError(f"bundle {path} lacks {req}")
    L = _nba.load_automaton(os.path.join(path, "L.nba"))
    eq = _nba.load_automaton(os.path.join(path, "eq.nba"))
    return Presentation(L.alphabet, L, eq, tuple(edges))


def save_bundle(p: Presentation, path) -> None:
    os.makedirs(path, exist_ok=True)
    _nba.save_automaton(p.L, os.path.join(path, "L.nba"))
    _nba.save_automaton(p.eq, os.path.join(path, "eq.nba"))
    for i, e in enumerate(p.edges, 1):
        _nba.save_automaton(e, os.path.join(path, f"E{i}.nba"))


def random_up(rng: random.Random, alphabet: Alphabet, max_pre: int = 4, max_per: int = 4) -> UpWord:
    syms = alphabet.symbols
    pre = tuple(rng.choice(syms) for _ in range(rng.randint(0, max_pre)))
    per = tuple(rng.choice(syms) for _ in range(rng.randint(1, max_per)))
    return UpWord(pre, per)


def classify_pair(p: Presentation, x: UpWord, y: UpWord) -> dict:
    """Membership of ``x (x) y`` in ``eq`` and every edge class."""
    z = convolve([x, y])
    return {"eq": _nba.member_up(p.eq, z), "edges": tuple(i for i, e in enumerate(p.edges, 1) if _nba.member_up(e, z))}


def validate(p: Presentation, samples: int = 200, seed: int = 0) -> list[str]:
    """Sample-based sanity checks; returns human-readable warnings."""
    rng = random.Random(seed)
    words = []
    tries = 0
    while len(words) < 16 and tries < 50 * samples:
        tries += 1
        x = random_up(rng, p.alphabet)
        if _nba.member_up(p.L, x):
            words.append(x)
    warnings = []
    for x in words:
        if not _nba.member_up(p.eq, convolve([x, x])):
            warnings.append(f"eq is not reflexive at {x}")
    for _ in range(samples):
        if not words:
            break
        x, y = rng.choice(words), rng.choice(words)
        c = classify_pair(p, x, y)
        if c["eq"] != _nba.member_up(p.eq, convolve([y, x])):
            warnings.append(f"eq is not symmetric at {x}, {y}")
        n = int(c["eq"]) + len(c["edges"])
        if n != 1:
            warnings.append(f"pair {x}, {y} lies in {n} classes")
    return warnings


# -- abstract counters -----------------------------------------------------------


@dataclass(frozen=True)
class _Counter:
    """Non-negative integers abstracted as exact below ``c = t + 1`` and as
    ``("big", m mod pi)`` from ``c`` on."""

    t: int
    pi: int

    @property
    def c(self):
        return self.t + 1

    def norm(self, x: int):
        return x if x < self.c else ("big", x % self.pi)

    def affine(self, val, mul: int, add: int):
        # callers only use maps that send values >= c to values >= c
        if isinstance(val, tuple):
            return ("big", (mul * val[1] + add) % self.pi)
        return self.norm(mul * val + add)

    def exponent(self, val, shift: int) -> int:
        """A concrete exponent with the same power as ``val + shift``."""
        if isinstance(val, tuple):
            return self.t + (val[1] + shift - self.t) % self.pi
        return val + shift


def _single_edges(pr: Profiles, hom: WordHom):
    """Successor function of the one-word abstract graph: abstract 1-position
    ``p`` and bit ``a`` give the block profile ``W V^(p+a)``."""
    V = pr.of_word(hom.v)
    W = pr.of_word(hom.w)
    t, pi, f = algebra.power_table(V, pr.n)
    ctr = _Counter(t, pi)
    cache = {}

    def edges(p):
        if p not in cache:
            cache[p] = [(str(a), ctr.affine(p, 2, 1 + a), pr.mul(W, f(ctr.exponent(p, a)))) for a in (0, 1)]
        return cache[p]

    return edges


def _start_profile(pr: Profiles, u: tuple) -> bytes:
    return pr.of_word(u) if u else pr.one


def h_counterexample(hom: WordHom, L: Nba) -> UpWord | None:
    """Choice sequence of a member of ``H`` outside ``L``, via rejecting
    linked pairs; ``None`` when ``H`` is a subset of ``L``."""
    pr = Profiles(L)
    edges = _single_edges(pr, hom)
    start = (0, _start_profile(pr, hom.u))
    parent = {start: None}
    queue = deque([start])
    by_state: dict = {}
    while queue:
        node = queue.popleft()
        p, s = node
        by_state.setdefault(p, []).append(node)
        for a, p2, seg in edges(p):
            nxt = (p2, pr.mul(s, seg))
            if nxt not in parent:
                parent[nxt] = (node, a)
                queue.append(nxt)
    for p, nodes in by_state.items():
        loops = _loops(pr, edges, p)
        for node in nodes:
            s0 = node[1]
            for e, cyc in loops:
                f, _ = algebra.idempotent_power(e, pr.n)
                if not pr.accepts(pr.mul(s0, f), f):
                    stem, _ = _graph.path_to(parent, node)
                    return UpWord(tuple(stem), tuple(cyc))
    return None


def _loops(pr: Profiles, edges, p):
    """Profiles of non-empty cycles ``p -> p`` with one label path each."""
    parent = {}
    queue = deque()
    for a, p2, seg in edges(p):
        node = (p2, seg)
        if node not in parent:
            parent[node] = (None, a)
            queue.append(node)
    while queue:
        node = queue.popleft()
        q, s = node
        for a, q2, seg in edges(q):
            nxt = (q2, pr.mul(s, seg))
            if nxt not in parent:
                parent[nxt] = (node, a)
                queue.append(nxt)
    out = []
    for node in parent:
        if node[0] == p:
            labels = []
            cur = node
            while cur is not None:
                prev, a = parent[cur]
                labels.append(a)
                cur = prev
            out.append((node[1], labels[::-1]))
    return out


def h_meets(hom: WordHom, m: Nba) -> UpWord | None:
    """Choice sequence of a member of ``H`` accepted by ``m``, by a Büchi
    lasso search over (state of ``m``, abstract 1-position)."""
    pr = Profiles(m)
    edges = _single_edges(pr, hom)
    n = pr.n
    U = _start_profile(pr, hom.u)
    starts = [(q, 0) for q in range(n) if U[m.initial * n + q]]

    def succ(node):
        q, p = node
        for a, p2, seg in edges(p):
            row = q * n
            for q2 in range(n):
                v = seg[row + q2]
                if v:
                    yield a, (q2, p2), v == algebra.ACC

    found = _graph.accepting_lasso(starts, succ, key=tuple)
    if found is None:
        return None
    stem, cyc = found
    return UpWord(tuple(stem), tuple(cyc))


# -- pairs -------------------------------------------------------------------------


_PAIRS = (("0", "0"), ("0", "1"), ("1", "0"), ("1", "1"))


def _pair_block(hom: WordHom, a: str, b: str) -> tuple:
    x, y = hom.image(a), hom.image(b)
    return tuple(pair_symbol(s, t) for s, t in zip(x, y))


def _pair_edges(pr: Profiles, hom: WordHom):
    """Successor function of the two-word abstract graph.

    ``("eq", m)``: both words have their current 1 at ``m``.
    ``(first, G, D)``: the two words have split; the word named by
    ``first`` has its current 1 at ``q``, the other at ``q + D``, and
    ``G = q - D``. The split order never changes afterwards.
    """
    P = {ab: pr.of_word(_pair_block(hom, *ab)) for ab in _PAIRS}
    t, pi, f = algebra.power_table(P[("0", "0")], pr.n)
    ctr = _Counter(t, pi)
    mul = pr.mul
    cache = {}

    def edges(node):
        if node in cache:
            return cache[node]
        out = []
        kind = node[0]
        for a, b in _PAIRS:
            ia, ib = int(a), int(b)
            if kind == "eq":
                m = node[1]
                lo = min(ia, ib)
                seg = mul(P[("1", "1")], f(ctr.exponent(m, lo)))
                if ia == ib:
                    nxt = ("eq", ctr.affine(m, 2, 1 + ia))
                else:
                    nxt = ("x" if ia < ib else "y", ctr.affine(m, 2, 0), ctr.norm(1))
            else:
                _, g, d = node
                if kind == "x":
                    own, other, here, there = ia, ib, ("1", "0"), ("0", "1")
                else:
                    own, other, here, there = ib, ia, ("0", "1"), ("1", "0")
                seg = mul(mul(mul(P[here], f(ctr.exponent(d, -1))), P[there]), f(ctr.exponent(g, own)))
                nxt = (kind, ctr.affine(g, 2, 1 + 2 * own - other), ctr.affine(d, 2, other - own))
            out.append(((a, b), nxt, seg))
        cache[node] = out
        return out

    return edges


def pair_meets(hom: WordHom, r: Nba) -> tuple | None:
    """Choice sequences ``(a, b)``, ``a != b``, with ``chi(x_a) (x) chi(x_b)``
    accepted by ``r``; ``None`` if there are none."""
    pr = Profiles(r)
    n = pr.n
    edges = _pair_edges(pr, hom)
    uu = tuple(pair_symbol(s, s) for s in hom.u)
    U = _start_profile(pr, uu)
    starts = [(q, ("eq", 0)) for q in range(n) if U[r.initial * n + q]]

    def succ(node):
        q, st = node
        row = q * n
        for ab, st2, seg in edges(st):
            for q2 in range(n):
                v = seg[row + q2]
                if v:
                    yield ab, (q2, st2), v == algebra.ACC

    found = _graph.accepting_lasso(starts, succ, key=tuple, keep=lambda node: node[1][0] != "eq")
    if found is None:
        return None
    stem, cyc = found
    ca = UpWord(tuple(ab[0] for ab in stem), tuple(ab[0] for ab in cyc))
    cb = UpWord(tuple(ab[1] for ab in stem), tuple(ab[1] for ab in cyc))
    return ca, cb


# -- independent witness replay -------------------------------------------------


def _reduction(pairs: Sequence[tuple]) -> tuple[int, int]:
    """Common index and period for several (automaton, word) power sequences."""
    t, pi = 1, 1
    for a, w in pairs:
        pr = Profiles(a)
        ti, pii = algebra.index_and_period(pr.of_word(w), pr.n)
        t, pi = max(t, ti), lcm(pi, pii)
    return t, pi


def _phase(c: UpWord, k: int):
    s, ell = len(c.prefix), len(c.period)
    return k if k < s else s + (k - s) % ell


def _clip(x: int, t: int, pi: int):
    return (x, 0) if x <= t else (t + 1, x % pi)


def verify_choice_witness(hom: WordHom, L: Nba, choices: UpWord) -> ChoiceWitness:
    """Replay the member of ``H`` named by ``choices`` with exact positions
    and fold it into a lasso word with the same profile for ``L``."""
    return ChoiceWitness(hom, choices, choice_surrogate(hom, [L], choices))


def choice_surrogate(hom: WordHom, automata: Sequence[Nba], choices: UpWord, max_rounds: int = 10_000) -> UpWord:
    """A lasso word accepted by each of ``automata`` iff ``chi(x_choices)`` is."""
    BINARY.check(choices.symbols())
    t, pi = _reduction([(a, hom.v) for a in automata])
    pos = one_positions_up(choices)
    p = next(pos)
    seen = {}
    exps = []
    for k in range(max_rounds):
        key = (_phase(choices, k), _clip(p, t, pi))
        if key in seen:
            k0 = seen[key]
            break
        seen[key] = k
        nxt = next(pos)
        exps.append(nxt - p - 1)  # zeros after the k-th 1
        p = nxt
    else:
        raise RuntimeError("no repetition within the round budget")

    def red(e):
        return e if e < t else t + (e - t) % pi

    for a in automata:
        _check_powers(a, hom.v, exps, red)

    def blocks(es):
        out = []
        for e in es:
            out += list(hom.w) + list(hom.v) * red(e)
        return tuple(out)

    return UpWord(hom.u + blocks(exps[:k0]), blocks(exps[k0:]))


def _check_powers(a: Nba, v: tuple, exps, red) -> None:
    pr = Profiles(a)
    V = pr.of_word(v)
    for e in exps:
        if algebra.power(V, e, pr.n) != algebra.power(V, red(e), pr.n):
            raise AssertionError("exponent reduction changed a profile")


def verify_pair_witness(hom: WordHom, p: Presentation, ca: UpWord, cb: UpWord) -> PairWitness:
    """Replay the pair named by ``(ca, cb)`` from exact 1-positions,
    fold it into a lasso over the pair alphabet and classify it."""
    sur = pair_surrogate(hom, [p.eq, *p.edges], ca, cb)
    classes = tuple(i for i, e in enumerate(p.edges, 1) if _nba.member_up(e, sur))
    return PairWitness(hom, (ca, cb), sur, classes)


def pair_surrogate(hom: WordHom, automata: Sequence[Nba], ca: UpWord, cb: UpWord, max_rounds: int = 10_000) -> UpWord:
    """A lasso word over the pair alphabet accepted by each of ``automata``
    iff ``chi(x_ca) (x) chi(x_cb)`` is."""
    if ca == cb:
        raise ValueError("choice sequences coincide")
    zz = tuple(pair_symbol(s, s) for s in hom.v)
    autos = list(automata)
    t, pi = _reduction([(a, zz) for a in autos])
    pa, pb = one_positions_up(ca), one_positions_up(cb)
    xs = [next(pa), next(pa)]
    ys = [next(pb), next(pb)]
    seen = {}
    rounds = []  # per round: list of (letter pair, zero run)
    for k in range(max_rounds):
        x, y = xs[-2], ys[-2]
        q, r = min(x, y), max(x, y)
        key = (_phase(ca, k), _phase(cb, k), (x > y) - (x < y), _clip(q - (r - q), t, pi), _clip(r - q, t, pi))
        if key in seen:
            k0 = seen[key]
            break
        seen[key] = k
        end = min(xs[-1], ys[-1])
        events = sorted({z for z in (x, y, xs[-1], ys[-1]) if q <= z < end})
        toks = []
        for i, z in enumerate(events):
            nz = events[i + 1] if i + 1 < len(events) else end
            toks.append((("1" if z in (x, xs[-1]) else "0", "1" if z in (y, ys[-1]) else "0"), nz - z - 1))
        rounds.append(toks)
        xs.append(next(pa))
        ys.append(next(pb))
    else:
        raise RuntimeError("no repetition within the round budget")

    def red(e):
        return e if e < t else t + (e - t) % pi

    runs = [z for toks in rounds for _, z in toks]
    for a in autos:
        _check_powers(a, zz, runs, red)

    def letters(rs):
        out = []
        for toks in rs:
            for (a, b), z in toks:
                out += list(_pair_block(hom, a, b)) + list(zz) * red(z)
        return tuple(out)

    uu = tuple(pair_symbol(s, s) for s in hom.u)
    return UpWord(uu + letters(rounds[:k0]), letters(rounds[k0:]))


# -- decisions --------------------------------------------------------------------


def h_subset_L(t: TripleCandidate, p: Presentation, route: str = "linked") -> Verdict:
    """Is every member of ``H_{u,v,w}`` in ``L``?

    ``route="linked"`` searches rejecting linked pairs over the profiles of
    ``L``; ``route="complement"`` looks for a member of ``H`` accepted by the
    complement automaton of ``L``.
    """
    hom = t.hom(p.alphabet)
    if route == "linked":
        c = h_counterexample(hom, p.L)
    elif route == "complement":
        c = h_meets(hom, algebra.complement(p.L))
    else:
        raise ValueError(f"unknown route {route!r}")
    if c is None:
        return Verdict(True, "h_subset_L")
    return Verdict(False, "h_subset_L", verify_choice_witness(hom, p.L, c))


def homogeneous(t: TripleCandidate, i: int, p: Presentation, check_domain: bool = True) -> Verdict:
    """Do all pairs of distinct members of ``H`` lie in edge class ``i``
    (1-based)? Decided as emptiness of ``(H (x) H) & U_{j != i} E_j`` off
    the diagonal, which is equivalent because the classes partition the
    distinct pairs of ``L``."""
    if not 1 <= i <= len(p.edges):
        raise ValueError(f"edge class {i} out of range 1..{len(p.edges)}")
    if check_domain and not h_subset_L(t, p).holds:
        raise ValueError(f"H{t} is not contained in the domain")
    hom = t.hom(p.alphabet)
    others = [e for j, e in enumerate(p.edges, 1) if j != i]
    if not others:
        return Verdict(True, "homogeneous")
    r = _nba.union_all(others, others[0].alphabet)
    found = pair_meets(hom, r)
    if found is None:
        return Verdict(True, "homogeneous")
    return Verdict(False, "homogeneous", verify_pair_witness(hom, p, *found))


def candidates(alphabet: Alphabet, max_len: int):
    """Triples in the canonical order: ``(|u|, |v|)``, then ``u``, ``v``, ``w``."""
    rank = alphabet.rank
    words = {n: sorted(_cartesian(alphabet.symbols, repeat=n), key=lambda w: [rank(s) for s in w]) for n in range(1, max_len + 1)}
    for lu in range(1, max_len + 1):
        for lv in range(1, max_len + 1):
            for u in words[lu]:
                for v in words[lv]:
                    for w in words[lv]:
                        if v != w:
                            yield TripleCandidate(u, v, w)


def find_triple(p: Presentation, max_len: int):
    """First ``(candidate, class)`` in canonical order, or ``None``."""
    for t in candidates(p.alphabet, max_len):
        if not h_subset_L(t, p).holds:
            continue
        for i in range(1, len(p.edges) + 1):
            if homogeneous(t, i, p, check_domain=False).holds:
                return t, i
    return None


# -- partial orders ----------------------------------------------------------------


def pairs_of(L: Nba) -> Nba:
    """``L (x) L``."""
    return _nba.product(_nba.lift_to_pairs(L, "left"), _nba.lift_to_pairs(L, "right"))


def poset_partition(L: Nba, eq: Nba, leq: Nba, cap: int = algebra.DEFAULT_CAP) -> Presentation:
    """Four classes for a presented partial order: equality, then edges
    ``E1`` (the lex-smaller name is below), ``E2`` (it is above) and ``E3``
    (incomparable)."""
    alph = L.alphabet
    LL = pairs_of(L)

    def within(a):
        return _nba.trim(_nba.product(LL, a))

    neq = algebra.complement(eq, cap)
    strict = _nba.product(leq, neq)
    lt = _nba.lex_order_nba(alph)
    gt = _nba.swap(lt)
    e1 = _nba.union(_nba.product(strict, lt), _nba.product(_nba.swap(strict), gt))
    e2 = _nba.union(_nba.product(_nba.swap(strict), lt), _nba.product(strict, gt))
    nleq = algebra.complement(leq, cap)
    e3 = _nba.product(nleq, _nba.swap(nleq))
    return Presentation(alph, L, within(eq), (within(e1), within(e2), within(e3)))
