"""Transition profiles, their monoid, linked pairs and Wilke algebras.

A profile of a finite word ``w`` for an automaton with ``n`` states is an
``n x n`` matrix over ``0 < 1 < 2``: entry ``(p, q)`` is 0 when no run
leads from ``p`` to ``q`` over ``w``, 2 when some such run enters an
accepting state, and 1 otherwise. Profiles are stored as ``bytes``
(row-major) and multiplied by :mod:`omegaramsey.kernels`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Sequence

from . import kernels
from .nba import Nba, _build
from .words import UpWord

DEFAULT_CAP = 20000

NONE, PATH, ACC = 0, 1, 2


class MonoidTooLarge(RuntimeError):
    pass


class WilkeFormatError(ValueError):
    pass


def identity(n: int) -> bytes:
    out = bytearray(n * n)
    for i in range(n):
        out[i * n + i] = PATH
    return bytes(out)


def letter_profile(a: Nba, sym: str) -> bytes:
    n = a.n_states
    out = bytearray(n * n)
    for p in range(n):
        for q in a.step(p, sym):
            out[p * n + q] = ACC if q in a.accepting else PATH
    return bytes(out)


def mul(x: bytes, y: bytes, n: int) -> bytes:
    return kernels.mul(x, y, n)


def power(m: bytes, k: int, n: int) -> bytes:
    """``m^k`` by repeated squaring (``k >= 0``)."""
    result = identity(n)
    base = m
    while k:
        if k & 1:
            result = mul(result, base, n)
        k >>= 1
        if k:
            base = mul(base, base, n)
    return result


class Profiles:
    """Letter profiles of one automaton with caching helpers."""

    def __init__(self, a: Nba):
        self.automaton = a
        self.n = a.n_states
        self.letters = {s: letter_profile(a, s) for s in a.alphabet}
        self.one = identity(self.n)

    def of_word(self, w: Sequence[str]) -> bytes:
        self.automaton.alphabet.check(w)
        out = self.one
        for s in w:
            out = mul(out, self.letters[s], self.n)
        return out

    def mul(self, x: bytes, y: bytes) -> bytes:
        return mul(x, y, self.n)

    def accepts(self, s: bytes, e: bytes) -> bool:
        """Acceptance of ``s . e^omega`` for a linked pair (or any ``e`` idempotent)."""
        return kernels.linked_accepts(s, e, self.n, self.automaton.initial)


def profile_of_word(a: Nba, w: Sequence[str]) -> bytes:
    if not w:
        raise ValueError("profiles are defined for non-empty words")
    return Profiles(a).of_word(w)


def idempotent_power(m: bytes, n: int) -> tuple[bytes, int]:
    """Least ``k >= 1`` with ``m^k`` idempotent, and that power."""
    seen = set()
    p = m
    k = 1
    while True:
        if mul(p, p, n) == p:
            return p, k
        if p in seen:  # cannot happen: some power of a finite-monoid element is idempotent
            raise AssertionError("no idempotent power found")
        seen.add(p)
        p = mul(p, m, n)
        k += 1


def index_and_period(m: bytes, n: int) -> tuple[int, int]:
    """Least ``t >= 1`` and ``pi >= 1`` with ``m^(t + pi) == m^t``."""
    first = {}
    p = m
    k = 1
    while p not in first:
        first[p] = k
        p = mul(p, m, n)
        k += 1
    t = first[p]
    return t, k - t


def power_table(m: bytes, n: int):
    """``(t, pi, f)`` where ``f(k)`` returns ``m^k`` for any ``k >= 0``."""
    t, pi = index_and_period(m, n)
    pows = [identity(n), m]
    for _ in range(t + pi):
        pows.append(mul(pows[-1], m, n))

    def f(k: int) -> bytes:
        if k < len(pows):
            return pows[k]
        return pows[t + (k - t) % pi]

    return t, pi, f


@dataclass
class Monoid:
    """Profiles of all non-empty words, generated lazily from the letters."""

    profiles: Profiles
    elements: list = field(default_factory=list)
    words: dict = field(default_factory=dict)  # element -> shortest word
    right: dict = field(default_factory=dict)  # (element, letter) -> element


def generate_monoid(a: Nba, cap: int = DEFAULT_CAP) -> Monoid:
    pr = Profiles(a)
    mon = Monoid(pr)
    queue = deque()
    for s in a.alphabet:
        e = pr.letters[s]
        if e not in mon.words:
            mon.words[e] = (s,)
            mon.elements.append(e)
            queue.append(e)
    while queue:
        x = queue.popleft()
        for s in a.alphabet:
            y = pr.mul(x, pr.letters[s])
            mon.right[(x, s)] = y
            if y not in mon.words:
                if len(mon.elements) >= cap:
                    raise MonoidTooLarge(f"profile monoid exceeds {cap} elements")
                mon.words[y] = mon.words[x] + (s,)
                mon.elements.append(y)
                queue.append(y)
    return mon


def member_up_algebraic(a: Nba, x: UpWord) -> bool:
    """``x = u v^omega`` is accepted iff ``(s, e)`` accepts, with ``e`` the
    idempotent power of the profile of ``v`` and ``s`` that of ``u v^k``."""
    a.alphabet.check(x.symbols())
    pr = Profiles(a)
    t = pr.of_word(x.period)
    e, k = idempotent_power(t, pr.n)
    s = pr.mul(pr.of_word(x.prefix), e)
    return pr.accepts(s, e)


def linked_pairs(mon: Monoid):
    pr = mon.profiles
    idem = [e for e in mon.elements if pr.mul(e, e) == e]
    for s in mon.elements:
        for e in idem:
            if pr.mul(s, e) == s:
                yield s, e


def complement(a: Nba, cap: int = DEFAULT_CAP) -> Nba:
    """Büchi automaton for the complement, as a union of
    ``eta^-1(s) . eta^-1(e)^omega`` over the rejecting linked pairs."""
    mon = generate_monoid(a, cap)
    pr = mon.profiles
    rejecting: dict = {}
    for s, e in linked_pairs(mon):
        if not pr.accepts(s, e):
            rejecting.setdefault(s, []).append(e)
    letters = pr.letters

    def succ(state, sym):
        kind = state[0]
        if kind == "P":
            cur = state[1]
            nxt = letters[sym] if cur is None else mon.right[(cur, sym)]
            yield ("P", nxt)
            for e in rejecting.get(nxt, ()):
                yield ("E", e, None)
        else:
            _, e, cur = state
            nxt = letters[sym] if cur is None else mon.right[(cur, sym)]
            yield ("E", e, nxt)
            if nxt == e:
                yield ("E", e, None)

    return _build(Nba, a.alphabet, ("P", None), succ, lambda st: st[0] == "E" and st[2] is None)


# -- Wilke algebras ------------------------------------------------------------


@dataclass(frozen=True)
class WilkeAlgebra:
    plus: tuple
    omega: tuple
    dot: dict  # (s, t) -> s.t
    mix: dict  # (s, o) -> s*o
    pow: dict  # s -> s^omega


def wilke_check(w: WilkeAlgebra) -> tuple[bool, list]:
    """Check the finite-algebra identities; returns ``(ok, violations)``."""
    bad = []
    plus, omega = w.plus, w.omega
    try:
        for s, t in _cartesian(plus, plus):
            if w.dot[(s, t)] not in plus:
                bad.append(("closure", s, t))
        for s, o in _cartesian(plus, omega):
            if w.mix[(s, o)] not in omega:
                bad.append(("closure", s, o))
        for s in plus:
            if w.pow[s] not in omega:
                bad.append(("closure", s))
    except KeyError as exc:
        return False, [("total", exc.args[0])]
    if bad:
        return False, bad
    d, m, p = w.dot, w.mix, w.pow
    for s, t, u in _cartesian(plus, plus, plus):
        if d[(d[(s, t)], u)] != d[(s, d[(t, u)])]:
            bad.append(("associativity", s, t, u))
    for s, t, o in _cartesian(plus, plus, omega):
        if m[(s, m[(t, o)])] != m[(d[(s, t)], o)]:
            bad.append(("mixed associativity", s, t, o))
    for s, t in _cartesian(plus, plus):
        if p[d[(s, t)]] != m[(s, p[d[(t, s)]])]:
            bad.append(("omega rotation", s, t))
    for s in plus:
        q = s
        for n in range(2, len(plus) + 2):
            q = d[(q, s)]
            if p[q] != p[s]:
                bad.append(("omega power", s, n))
                break
    return not bad, bad


def profile_algebra(a: Nba, cap: int = DEFAULT_CAP) -> WilkeAlgebra:
    """The Wilke algebra of profiles; omega values are the sets of states
    with an accepting run."""
    mon = generate_monoid(a, cap)
    pr = mon.profiles
    n = pr.n

    def omega_of(e):  # e idempotent
        return frozenset(p for p in range(n) if any(e[p * n + q] and e[q * n + q] == ACC for q in range(n)))

    def act(s, o):
        return frozenset(p for p in range(n) if any(s[p * n + q] for q in o))

    pw = {s: omega_of(idempotent_power(s, n)[0]) for s in mon.elements}
    omegas = set(pw.values())
    frontier = list(omegas)
    while frontier:
        o = frontier.pop()
        for s in mon.elements:
            r = act(s, o)
            if r not in omegas:
                omegas.add(r)
                frontier.append(r)
    pname = {s: f"s{i}" for i, s in enumerate(mon.elements)}
    olist = sorted(omegas, key=lambda o: (len(o), sorted(o)))
    oname = {o: f"o{i}" for i, o in enumerate(olist)}
    dot = {(pname[s], pname[t]): pname[pr.mul(s, t)] for s in mon.elements for t in mon.elements}
    mix = {(pname[s], oname[o]): oname[act(s, o)] for s in mon.elements for o in olist}
    pow_ = {pname[s]: oname[pw[s]] for s in mon.elements}
    return WilkeAlgebra(tuple(pname[s] for s in mon.elements), tuple(oname[o] for o in olist), dot, mix, pow_)


def parse_wilke(text: str) -> WilkeAlgebra:
    plus = omega = None
    dot, mix, pw = {}, {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        if head == "plus":
            plus = tuple(args)
        elif head == "omega":
            omega = tuple(args)
        elif head == "dot" and len(args) == 3:
            dot[(args[0], args[1])] = args[2]
        elif head == "mix" and len(args) == 3:
            mix[(args[0], args[1])] = args[2]
        elif head == "pow" and len(args) == 2:
            pw[args[0]] = args[1]
        else:
            raise WilkeFormatError(f"line {lineno}: cannot parse {line!r}")
    if plus is None or omega is None:
        raise WilkeFormatError("missing plus or omega carrier")
    if len(dot) != len(plus) ** 2 or len(mix) != len(plus) * len(omega) or len(pw) != len(plus):
        raise WilkeFormatError("tables must be exhaustive")
    return WilkeAlgebra(plus, omega, dot, mix, pw)


def format_wilke(w: WilkeAlgebra) -> str:
    lines = ["plus " + " ".join(w.plus), "omega " + " ".join(w.omega)]
    lines += [f"dot {s} {t} {w.dot[(s, t)]}" for s in w.plus for t in w.plus]
    lines += [f"mix {s} {o} {w.mix[(s, o)]}" for s in w.plus for o in w.omega]
    lines += [f"pow {s} {w.pow[s]}" for s in w.plus]
    return "\n".join(lines) + "\n"
