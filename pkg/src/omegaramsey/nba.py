"""Nondeterministic Büchi automata over explicit alphabets.

States are ``0 .. n_states - 1``. The same class with finite-word
acceptance (:class:`Nfa`) serves for the finite parts ``W_q``, ``V`` and
``U`` that the grammar and counterexample code needs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Iterable, Sequence

from . import _graph
from .words import Alphabet, AlphabetError, UpWord, pair_symbol, split_symbol


class AutomatonFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Nba:
    alphabet: Alphabet
    n_states: int
    initial: int
    accepting: frozenset
    transitions: frozenset
    _succ: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        acc = frozenset(self.accepting)
        trans = frozenset((int(p), a, int(q)) for p, a, q in self.transitions)
        object.__setattr__(self, "accepting", acc)
        object.__setattr__(self, "transitions", trans)
        n = self.n_states
        if n < 1 or not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        if any(not 0 <= q < n for q in acc):
            raise ValueError("accepting state out of range")
        succ: dict = {}
        for p, a, q in trans:
            if not (0 <= p < n and 0 <= q < n):
                raise ValueError(f"transition ({p}, {a}, {q}) leaves the state range")
            if a not in self.alphabet:
                raise AlphabetError(f"transition symbol {a!r} not in alphabet")
            succ.setdefault(p, {}).setdefault(a, []).append(q)
        for d in succ.values():
            for a in d:
                d[a] = tuple(sorted(d[a]))
        object.__setattr__(self, "_succ", succ)

    def step(self, p: int, a: str) -> tuple:
        return self._succ.get(p, {}).get(a, ())

    def out(self, p: int):
        """``(symbol, target)`` pairs in alphabet order."""
        d = self._succ.get(p, {})
        for a in self.alphabet:
            for q in d.get(a, ()):
                yield a, q

    def with_initial(self, q: int):
        return type(self)(self.alphabet, self.n_states, q, self.accepting, self.transitions)

    def with_accepting(self, acc: Iterable[int]):
        return type(self)(self.alphabet, self.n_states, self.initial, frozenset(acc), self.transitions)


class Nfa(Nba):
    """Same data; a finite word is accepted if some run ends in ``accepting``."""


# -- construction helpers ------------------------------------------------------


def _build(cls, alphabet, initial, succ_fn, accepting_fn):
    """Explore reachable states of an implicit automaton and renumber."""
    index = {initial: 0}
    order = [initial]
    trans = set()
    queue = deque([initial])
    while queue:
        s = queue.popleft()
        for a in alphabet:
            for t in succ_fn(s, a):
                if t not in index:
                    index[t] = len(order)
                    order.append(t)
                    queue.append(t)
                trans.add((index[s], a, index[t]))
    acc = frozenset(index[s] for s in order if accepting_fn(s))
    return cls(alphabet, len(order), 0, acc, frozenset(trans))


def universal(alphabet: Alphabet, cls=Nba) -> Nba:
    return cls(alphabet, 1, 0, frozenset({0}), frozenset((0, a, 0) for a in alphabet))


def empty_automaton(alphabet: Alphabet, cls=Nba) -> Nba:
    return cls(alphabet, 1, 0, frozenset(), frozenset())


def starts_with(w: Sequence[str], alphabet: Alphabet) -> Nba:
    """``w . Sigma^omega``."""
    n = len(w)
    trans = {(i, w[i], i + 1) for i in range(n)}
    trans |= {(n, a, n) for a in alphabet}
    return Nba(alphabet, n + 1, 0, frozenset({n}), frozenset(trans))


def from_up(x: UpWord, alphabet: Alphabet) -> Nba:
    """Automaton whose language is the single word ``x``."""
    m = len(x.prefix) + len(x.period)
    p = len(x.prefix)
    trans = {(i, x[i], i + 1 if i + 1 < m else p) for i in range(m)}
    return Nba(alphabet, m, 0, frozenset({p}), frozenset(trans))


def blocks_omega(blocks: Iterable[Sequence[str]], alphabet: Alphabet) -> Nba:
    """``B^omega`` for a finite set ``B`` of non-empty words (a block trie)."""
    trie = {(): 0}
    trans = set()
    for b in sorted(set(tuple(b) for b in blocks)):
        if not b:
            raise ValueError("blocks must be non-empty")
        node = ()
        for i, a in enumerate(b):
            nxt = node + (a,)
            if i == len(b) - 1:
                trans.add((trie[node], a, 0))
            else:
                if nxt not in trie:
                    trie[nxt] = len(trie)
                trans.add((trie[node], a, trie[nxt]))
            node = nxt
    return Nba(alphabet, len(trie), 0, frozenset({0}), frozenset(trans))


def one_plus_zero_plus(alphabet: Alphabet | None = None) -> Nba:
    """``(1^+ 0^+)^omega`` over ``{0, 1}``: accept on every 0-to-1 switch."""
    from .words import BINARY

    alphabet = alphabet or BINARY
    # 0 start, 1 in a 1-block, 2 in a 0-block, 3 first 1 after a 0-block
    trans = {(0, "1", 1), (1, "1", 1), (1, "0", 2), (2, "0", 2), (2, "1", 3), (3, "1", 1), (3, "0", 2)}
    return Nba(alphabet, 4, 0, frozenset({3}), frozenset(trans))


# -- text format -----------------------------------------------------------------


def parse_automaton(text: str, cls=Nba) -> Nba:
    alphabet = n = initial = None
    accepting: set = set()
    trans = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        try:
            if head == "alphabet":
                alphabet = Alphabet(tuple(args))
            elif head == "states":
                (n,) = map(int, args)
            elif head == "initial":
                (initial,) = map(int, args)
            elif head == "accepting":
                accepting |= set(map(int, args))
            elif head == "trans":
                p, a, q = args
                trans.add((int(p), a, int(q)))
            else:
                raise AutomatonFormatError(f"line {lineno}: unknown directive {head!r}")
        except (TypeError, ValueError) as exc:
            if isinstance(exc, AutomatonFormatError):
                raise
            raise AutomatonFormatError(f"line {lineno}: malformed {head!r} line") from exc
    if alphabet is None or n is None or initial is None:
        raise AutomatonFormatError("missing alphabet, states or initial directive")
    try:
        return cls(alphabet, n, initial, frozenset(accepting), frozenset(trans))
    except ValueError as exc:
        raise AutomatonFormatError(str(exc)) from exc


def format_automaton(a: Nba) -> str:
    lines = [
        "alphabet " + " ".join(a.alphabet),
        f"states {a.n_states}",
        f"initial {a.initial}",
    ]
    if a.accepting:
        lines.append("accepting " + " ".join(map(str, sorted(a.accepting))))
    rank = a.alphabet.rank
    for p, s, q in sorted(a.transitions, key=lambda t: (t[0], rank(t[1]), t[2])):
        lines.append(f"trans {p} {s} {q}")
    return "\n".join(lines) + "\n"


def load_automaton(path, cls=Nba) -> Nba:
    with open(path, encoding="utf-8") as fh:
        return parse_automaton(fh.read(), cls)


def save_automaton(a: Nba, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_automaton(a))


# -- membership and emptiness ----------------------------------------------------


def _check_same(a: Nba, b: Nba) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetError(f"alphabet mismatch: {a.alphabet.symbols} vs {b.alphabet.symbols}")


def member_up(a: Nba, x: UpWord) -> bool:
    """Lasso product: is there a reachable accepting cycle over ``x``?"""
    a.alphabet.check(x.symbols())
    p = len(x.prefix)
    m = p + len(x.period)

    def succ(node):
        q, i = node
        j = i + 1 if i + 1 < m else p
        for t in a.step(q, x[i]):
            yield None, (t, j), t in a.accepting

    return _graph.accepting_lasso([(a.initial, 0)], succ, key=lambda labels: ()) is not None


def witness(a: Nba) -> UpWord | None:
    """A word of ``L(a)``, or ``None`` when the language is empty."""
    rank = a.alphabet.rank

    def succ(q):
        for s, t in a.out(q):
            yield s, t, t in a.accepting

    found = _graph.accepting_node_lasso(
        [a.initial], succ, lambda q: q in a.accepting, key=lambda ls: tuple(rank(s) for s in ls)
    )
    if found is None:
        return None
    stem, cycle = found
    return UpWord(tuple(stem), tuple(cycle))


def is_empty(a: Nba) -> bool:
    return witness(a) is None


def accepts(n: Nfa, w: Sequence[str]) -> bool:
    n.alphabet.check(w)
    cur = {n.initial}
    for s in w:
        cur = {t for q in cur for t in n.step(q, s)}
        if not cur:
            return False
    return bool(cur & n.accepting)


def trim(a: Nba) -> Nba:
    """Restrict to states reachable from the initial state."""
    return _build(type(a), a.alphabet, a.initial, a.step, lambda q: q in a.accepting)


# -- boolean operations -----------------------------------------------------------


def product(a: Nba, b: Nba) -> Nba:
    """Intersection; the flag records which component must visit F next."""
    _check_same(a, b)

    def succ(s, sym):
        p, q, flag = s
        if flag == 0:
            nflag = 1 if p in a.accepting else 0
        else:
            nflag = 0 if q in b.accepting else 1
        for p2 in a.step(p, sym):
            for q2 in b.step(q, sym):
                yield (p2, q2, nflag)

    def accepting(s):
        p, _q, flag = s
        return flag == 0 and p in a.accepting

    # accepting: the first flag hand-over happens infinitely often
    return _build(Nba, a.alphabet, (a.initial, b.initial, 0), succ, accepting)


def union(a: Nba, b: Nba) -> Nba:
    _check_same(a, b)
    cls = type(a)
    off = 1 + a.n_states
    trans = set()
    for p, s, q in a.transitions:
        trans.add((1 + p, s, 1 + q))
        if p == a.initial:
            trans.add((0, s, 1 + q))
    for p, s, q in b.transitions:
        trans.add((off + p, s, off + q))
        if p == b.initial:
            trans.add((0, s, off + q))
    acc = {1 + q for q in a.accepting} | {off + q for q in b.accepting}
    if cls is Nfa and (a.initial in a.accepting or b.initial in b.accepting):
        acc.add(0)
    return trim(cls(a.alphabet, off + b.n_states, 0, frozenset(acc), frozenset(trans)))


def union_all(automata: Sequence[Nba], alphabet: Alphabet) -> Nba:
    if not automata:
        return empty_automaton(alphabet)
    out = automata[0]
    for b in automata[1:]:
        out = union(out, b)
    return out


def product_all(automata: Sequence[Nba]) -> Nba:
    out = automata[0]
    for b in automata[1:]:
        out = product(out, b)
    return out


# -- relations over convolutions ----------------------------------------------


def lift_to_pairs(a: Nba, side: str, other: Alphabet | None = None) -> Nba:
    """Accept ``x (x) y`` iff the ``side`` track is in ``L(a)``."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    other = other or a.alphabet
    if side == "left":
        alph = a.alphabet.product(other)
        trans = {(p, pair_symbol(s, b), q) for p, s, q in a.transitions for b in other}
    else:
        alph = other.product(a.alphabet)
        trans = {(p, pair_symbol(b, s), q) for p, s, q in a.transitions for b in other}
    return type(a)(alph, a.n_states, a.initial, a.accepting, frozenset(trans))


def swap(a: Nba) -> Nba:
    """Exchange the two tracks of a pair automaton."""

    def sw(s):
        x, y = split_symbol(s)
        return pair_symbol(y, x)

    alph = Alphabet(tuple(sw(s) for s in a.alphabet))
    if set(alph) == set(a.alphabet):
        alph = a.alphabet
    trans = frozenset((p, sw(s), q) for p, s, q in a.transitions)
    return type(a)(alph, a.n_states, a.initial, a.accepting, trans)


def diagonal(alphabet: Alphabet) -> Nba:
    """``x (x) y`` with ``x == y``."""
    pa = alphabet.product()
    return Nba(pa, 1, 0, frozenset({0}), frozenset((0, pair_symbol(a, a), 0) for a in alphabet))


def off_diagonal(alphabet: Alphabet) -> Nba:
    """``x != y``: some letter pair differs."""
    pa = alphabet.product()
    trans = set()
    for a, b in _cartesian(alphabet, alphabet):
        s = pair_symbol(a, b)
        trans.add((1, s, 1))
        trans.add((0, s, 1 if a != b else 0))
    return Nba(pa, 2, 0, frozenset({1}), frozenset(trans))


def eventually_only(alphabet: Alphabet, allowed) -> Nba:
    """Words (over ``alphabet``) that from some point on use only ``allowed``."""
    trans = {(0, s, 0) for s in alphabet} | {(0, s, 1) for s in alphabet if s in allowed}
    trans |= {(1, s, 1) for s in alphabet if s in allowed}
    return Nba(alphabet, 2, 0, frozenset({1}), frozenset(trans))


def infinitely_often(alphabet: Alphabet, marked) -> Nba:
    """Words with infinitely many letters from ``marked``."""
    trans = {(p, s, 1 if s in marked else 0) for p in (0, 1) for s in alphabet}
    return Nba(alphabet, 2, 0, frozenset({1}), frozenset(trans))


def lex_order_nba(alphabet: Alphabet) -> Nba:
    """``x (x) y`` with ``x <_lex y`` in the alphabet's symbol order."""
    pa = alphabet.product()
    trans = set()
    for a, b in _cartesian(alphabet, alphabet):
        s = pair_symbol(a, b)
        trans.add((1, s, 1))
        if a == b:
            trans.add((0, s, 0))
        elif alphabet.rank(a) < alphabet.rank(b):
            trans.add((0, s, 1))
    return Nba(pa, 2, 0, frozenset({1}), frozenset(trans))


def safety_complement_of_uVomega(u: Sequence[str], blocks: Iterable[Sequence[str]], alphabet: Alphabet) -> Nba:
    """``Sigma^omega \\ u . V^omega`` for a set ``V`` of equal-length blocks.

    Deterministic prefix checker for ``u V*``; the first bad prefix leads to
    an accepting universal sink.
    """
    blocks = sorted(set(tuple(b) for b in blocks))
    if not blocks:
        raise ValueError("V must be non-empty")
    lengths = {len(b) for b in blocks}
    if len(lengths) != 1 or 0 in lengths:
        raise ValueError("blocks of V must all have the same positive length")
    u = tuple(u)
    alphabet.check(u)
    for b in blocks:
        alphabet.check(b)
    # states: ('u', i) reading u; ('b', node) inside the block trie; 'sink'
    prefixes = {b[:i] for b in blocks for i in range(len(b))}
    blockset = set(blocks)

    def succ(s, a):
        if s == "sink":
            yield "sink"
            return
        kind, pos = s
        if kind == "u":
            if pos < len(u):
                if u[pos] == a:
                    yield ("u", pos + 1) if pos + 1 < len(u) else ("b", ())
                else:
                    yield "sink"
                return
            s = ("b", ())
            pos = ()
        nxt = pos + (a,)
        if nxt in blockset:
            yield ("b", ())
        elif nxt in prefixes:
            yield ("b", nxt)
        else:
            yield "sink"

    start = ("u", 0) if u else ("b", ())
    return _build(Nba, alphabet, start, succ, lambda s: s == "sink")


def in_uV_omega(x: UpWord, u: Sequence[str], blocks: Iterable[Sequence[str]]) -> bool:
    """Direct block decoder: is ``x`` in ``u . V^omega`` (equal-length V)?"""
    blocks = set(tuple(b) for b in blocks)
    (ell,) = {len(b) for b in blocks}
    u = tuple(u)
    if tuple(x[i] for i in range(len(u))) != u:
        return False
    tail = x.suffix(len(u))
    # block k starts at k*ell; the block sequence repeats once k*ell passes the
    # tail prefix and k advances by a multiple of the period
    from math import lcm

    per_blocks = lcm(ell, len(tail.period)) // ell
    first = -(-len(tail.prefix) // ell)
    for k in range(first + per_blocks):
        if tuple(tail[k * ell + j] for j in range(ell)) not in blocks:
            return False
    return True


# -- finite-word helpers (Nfa) ---------------------------------------------------


def as_nfa(a: Nba, finals: Iterable[int] | None = None) -> Nfa:
    acc = a.accepting if finals is None else frozenset(finals)
    return Nfa(a.alphabet, a.n_states, a.initial, acc, a.transitions)


def nfa_from_words(words: Iterable[Sequence[str]], alphabet: Alphabet) -> Nfa:
    """Trie automaton for a finite set of words."""
    trie = {(): 0}
    trans, finals = set(), set()
    for w in sorted(set(tuple(w) for w in words)):
        alphabet.check(w)
        node = ()
        for a in w:
            nxt = node + (a,)
            if nxt not in trie:
                trie[nxt] = len(trie)
            trans.add((trie[node], a, trie[nxt]))
            node = nxt
        finals.add(trie[node])
    return Nfa(alphabet, len(trie), 0, frozenset(finals), frozenset(trans))


def nfa_plus(v: Nfa) -> Nfa:
    """``V^+``. A restart state copies the initial state's moves and is
    entered alongside every final state, so words of ``V`` may be chained."""
    restart = v.n_states
    trans = set(v.transitions)
    for p, s, q in v.transitions:
        sources = (p, restart) if p == v.initial else (p,)
        for src in sources:
            trans.add((src, s, q))
            if q in v.accepting:
                trans.add((src, s, restart))
    return trim(Nfa(v.alphabet, v.n_states + 1, v.initial, v.accepting, frozenset(trans)))


def shortest_word(n: Nfa) -> tuple | None:
    """Shortest (then least) accepted finite word."""
    rank = n.alphabet.rank
    start = frozenset({n.initial})
    seen = {start: ()}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur & n.accepting:
            return seen[cur]
        for a in sorted(n.alphabet, key=rank):
            nxt = frozenset(t for q in cur for t in n.step(q, a))
            if nxt and nxt not in seen:
                seen[nxt] = seen[cur] + (a,)
                queue.append(nxt)
    return None


def reroot(a: Nba, q: int) -> Nba:
    return a.with_initial(q)
