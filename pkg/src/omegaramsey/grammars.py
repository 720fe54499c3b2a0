"""Context-free grammars and eventually regular context-free omega-languages.

An :class:`ErcfLanguage` is a finite union of pieces, each either a Büchi
automaton or a ``C . L`` product of a context-free language of finite
words with an omega-regular language. Intersection with an omega-regular
language stays inside this shape by splitting on the state reached after
the finite part, which keeps every emptiness question a CFG one.
"""

from __future__ import annotations

import functools
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from . import nba as _nba
from .nba import Nba, Nfa
from .words import Alphabet, AlphabetError, UpWord, pair_symbol

DEFAULT_BOUND = 256


class GrammarError(ValueError):
    pass


@dataclass(frozen=True)
class Cfg:
    terminals: Alphabet
    nonterminals: tuple
    start: object
    rules: tuple  # ((lhs, (sym, ...)), ...)

    def __post_init__(self):
        nts = tuple(dict.fromkeys(self.nonterminals))
        object.__setattr__(self, "nonterminals", nts)
        rules = tuple(dict.fromkeys((lhs, tuple(rhs)) for lhs, rhs in self.rules))
        object.__setattr__(self, "rules", rules)
        ntset = set(nts)
        if self.start not in ntset:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        for t in self.terminals:
            if t in ntset:
                raise GrammarError(f"{t!r} is both a terminal and a nonterminal")
        for lhs, rhs in rules:
            if lhs not in ntset:
                raise GrammarError(f"undeclared nonterminal {lhs!r}")
            for s in rhs:
                if s not in ntset and s not in self.terminals:
                    raise GrammarError(f"undeclared symbol {s!r} in rule for {lhs!r}")

    def is_terminal(self, s) -> bool:
        return s not in self._ntset

    @functools.cached_property
    def _ntset(self):
        return frozenset(self.nonterminals)

    @functools.cached_property
    def by_lhs(self):
        d = defaultdict(list)
        for lhs, rhs in self.rules:
            d[lhs].append(rhs)
        return d


def grammar(terminals: Alphabet, start, rules: Iterable[tuple]) -> Cfg:
    """Build a grammar, declaring every left-hand side as a nonterminal."""
    rules = [(lhs, tuple(rhs)) for lhs, rhs in rules]
    nts = [start] + [lhs for lhs, _ in rules]
    return Cfg(terminals, tuple(nts), start, tuple(rules))


# -- text format ---------------------------------------------------------------

_NT = re.compile(r"^[A-Z][A-Za-z0-9_]*$")


def parse_cfg(text: str, terminals: Alphabet) -> Cfg:
    """``start S`` then ``rule A -> x y z`` lines (``eps`` for the empty word)."""
    start = None
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        if head == "start" and len(args) == 1:
            start = args[0]
        elif head == "rule" and len(args) >= 2 and args[1] == "->":
            lhs, rhs = args[0], args[2:]
            if not _NT.match(lhs):
                raise GrammarError(f"line {lineno}: nonterminal {lhs!r} must be an uppercase identifier")
            if rhs == ["eps"]:
                rhs = []
            rules.append((lhs, tuple(rhs)))
        else:
            raise GrammarError(f"line {lineno}: cannot parse {line!r}")
    if start is None:
        raise GrammarError("missing start directive")
    nts = {start} | {lhs for lhs, _ in rules}
    for _, rhs in rules:
        for s in rhs:
            if s not in terminals and not _NT.match(s):
                raise AlphabetError(f"symbol {s!r} is neither a terminal nor a nonterminal")
            if _NT.match(s) and s not in terminals:
                nts.add(s)
    return Cfg(terminals, tuple(sorted(nts, key=lambda s: (s != start, s))), start, tuple(rules))


def format_cfg(g: Cfg) -> str:
    names = {}
    for nt in g.nonterminals:
        if isinstance(nt, str) and _NT.match(nt) and nt not in g.terminals:
            names[nt] = nt
    used = set(names.values())
    i = 0
    for nt in g.nonterminals:
        if nt not in names:
            while f"N{i}" in used:
                i += 1
            names[nt] = f"N{i}"
            used.add(names[nt])
    lines = [f"start {names[g.start]}"]
    for lhs, rhs in g.rules:
        body = " ".join(names[s] if s in names else s for s in rhs) if rhs else "eps"
        lines.append(f"rule {names[lhs]} -> {body}")
    return "\n".join(lines) + "\n"


# -- emptiness and shortest words ----------------------------------------------


def cfg_shortest_words(g: Cfg) -> dict:
    """Nonterminal -> shortest derivable word, least in terminal order."""
    rank = g.terminals.rank
    best: dict = {}

    def key(w):
        return (len(w), tuple(rank(s) for s in w))

    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.rules:
            parts = []
            for s in rhs:
                if g.is_terminal(s):
                    parts.append((s,))
                elif s in best:
                    parts.append(best[s])
                else:
                    break
            else:
                w = tuple(x for p in parts for x in p)
                if lhs not in best or key(w) < key(best[lhs]):
                    best[lhs] = w
                    changed = True
    return best


def cfg_empty(g: Cfg):
    """``None`` if ``L(g)`` is empty, else a shortest member."""
    return cfg_shortest_words(g).get(g.start)


def generating(g: Cfg) -> set:
    return set(cfg_shortest_words(g))


def prune(g: Cfg) -> Cfg:
    """Drop non-generating and unreachable nonterminals."""
    gen = generating(g)
    if g.start not in gen:
        return Cfg(g.terminals, (g.start,), g.start, ())
    rules = [(l, r) for l, r in g.rules if l in gen and all(g.is_terminal(s) or s in gen for s in r)]
    by = defaultdict(list)
    for l, r in rules:
        by[l].append(r)
    reach = {g.start}
    stack = [g.start]
    while stack:
        a = stack.pop()
        for r in by[a]:
            for s in r:
                if not g.is_terminal(s) and s not in reach:
                    reach.add(s)
                    stack.append(s)
    rules = [(l, r) for l, r in rules if l in reach]
    nts = [n for n in g.nonterminals if n in reach]
    return Cfg(g.terminals, tuple(nts), g.start, tuple(rules))


# -- normal forms and CYK --------------------------------------------------------


def binarize(g: Cfg) -> Cfg:
    """Rules of length at most two, same language."""
    rules = []
    nts = list(g.nonterminals)
    for idx, (lhs, rhs) in enumerate(g.rules):
        if len(rhs) <= 2:
            rules.append((lhs, rhs))
            continue
        cur = lhs
        for j in range(len(rhs) - 2):
            fresh = ("bin", idx, j)
            nts.append(fresh)
            rules.append((cur, (rhs[j], fresh)))
            cur = fresh
        rules.append((cur, rhs[-2:]))
    return Cfg(g.terminals, tuple(nts), g.start, tuple(rules))


@dataclass(frozen=True)
class _Cnf:
    start_nullable: bool
    unary: dict  # terminal -> frozenset of nonterminals
    binary: tuple  # ((A, B, C), ...)
    start: object


@functools.lru_cache(maxsize=256)
def _cnf(g: Cfg) -> _Cnf:
    b = binarize(g)
    # nullable
    nullable = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in b.rules:
            if lhs not in nullable and all(not b.is_terminal(s) and s in nullable for s in rhs):
                nullable.add(lhs)
                changed = True
    # epsilon elimination on rules of length <= 2
    rules = set()
    for lhs, rhs in b.rules:
        if len(rhs) == 2:
            x, y = rhs
            rules.add((lhs, (x, y)))
            if not b.is_terminal(x) and x in nullable:
                rules.add((lhs, (y,)))
            if not b.is_terminal(y) and y in nullable:
                rules.add((lhs, (x,)))
        elif len(rhs) == 1:
            rules.add((lhs, rhs))
    # unit closure
    units = defaultdict(set)
    for nt in b.nonterminals:
        units[nt].add(nt)
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules:
            if len(rhs) == 1 and not b.is_terminal(rhs[0]):
                for a in list(units):
                    if lhs in units[a] and rhs[0] not in units[a]:
                        units[a].add(rhs[0])
                        changed = True
    # invert: B reachable by units from A  =>  A derives whatever B derives directly
    derived_by = defaultdict(set)
    for a, bs in units.items():
        for x in bs:
            derived_by[x].add(a)
    unary = defaultdict(set)
    binary = set()
    for lhs, rhs in rules:
        if len(rhs) == 1 and b.is_terminal(rhs[0]):
            for a in derived_by[lhs]:
                unary[rhs[0]].add(a)
        elif len(rhs) == 2:
            x, y = rhs
            for a in derived_by[lhs]:
                binary.add((a, ("T", x) if b.is_terminal(x) else x, ("T", y) if b.is_terminal(y) else y))
    for t in b.terminals:
        unary[t].add(("T", t))
    return _Cnf(g.start in nullable, {t: frozenset(v) for t, v in unary.items()}, tuple(sorted(binary, key=repr)), g.start)


def _cyk_table(g: Cfg, w: Sequence[str], bound: int):
    if len(w) > bound:
        raise ValueError(f"word length {len(w)} exceeds the membership bound {bound}")
    g.terminals.check(w)
    cnf = _cnf(g)
    n = len(w)
    by_pair = defaultdict(list)
    for a, x, y in cnf.binary:
        by_pair[(x, y)].append(a)
    table = {}
    for i in range(n):
        table[(i, i + 1)] = set(cnf.unary.get(w[i], ()))
    for span in range(2, n + 1):
        for i in range(n - span + 1):
            j = i + span
            cell = set()
            for k in range(i + 1, j):
                left, right = table[(i, k)], table[(k, j)]
                if not left or not right:
                    continue
                for x in left:
                    for y in right:
                        for a in by_pair.get((x, y), ()):
                            cell.add(a)
            table[(i, j)] = cell
    return cnf, table


def cfg_member(g: Cfg, w: Sequence[str], bound: int = DEFAULT_BOUND) -> bool:
    w = tuple(w)
    cnf, table = _cyk_table(g, w, bound)
    if not w:
        return cnf.start_nullable
    return cnf.start in table[(0, len(w))]


def cfg_member_prefixes(g: Cfg, w: Sequence[str], bound: int = DEFAULT_BOUND) -> list:
    """``out[k]`` is whether ``w[:k]`` is in ``L(g)``, from one CYK table."""
    w = tuple(w)
    cnf, table = _cyk_table(g, w, bound)
    return [cnf.start_nullable] + [cnf.start in table[(0, k)] for k in range(1, len(w) + 1)]


# -- closure constructions -------------------------------------------------------


def bar_hillel(g: Cfg, n: Nfa) -> Cfg:
    """Grammar for ``L(g) & L(n)`` on triple nonterminals ``(p, A, q)``,
    generated bottom-up so only productive triples appear."""
    if g.terminals != n.alphabet:
        raise AlphabetError("grammar and automaton alphabets differ")
    b = binarize(g)
    states = range(n.n_states)
    prod: set = set()  # productive triples, terminals as ('t', a)
    rules: set = set()
    by_left = defaultdict(set)  # (X, p) -> {r}, productive (p, X, r)

    def key_of(s):
        return ("t", s) if b.is_terminal(s) else s

    new = []

    def add(t):
        if t not in prod:
            prod.add(t)
            p, x, q = t
            by_left[(x, p)].add(q)
            new.append(t)

    for p, a, q in n.transitions:
        add((p, ("t", a), q))
    unit_rules, bin_rules = [], []
    for lhs, rhs in b.rules:
        if not rhs:
            for p in states:
                rules.add(((p, lhs, p), ()))
                add((p, lhs, p))
        elif len(rhs) == 1:
            unit_rules.append((lhs, key_of(rhs[0])))
        else:
            bin_rules.append((lhs, key_of(rhs[0]), key_of(rhs[1])))
    unit_by = defaultdict(list)
    for lhs, x in unit_rules:
        unit_by[x].append(lhs)
    left_by = defaultdict(list)
    right_by = defaultdict(list)
    for lhs, x, y in bin_rules:
        left_by[x].append((lhs, y))
        right_by[y].append((lhs, x))
    by_end = defaultdict(set)  # (Y, q) -> {r} with (r, Y, q) productive
    while new:
        t = new.pop()
        p, x, q = t
        by_end[(x, q)].add(p)
        for lhs in unit_by.get(x, ()):
            rules.add(((p, lhs, q), (t,)))
            add((p, lhs, q))
        for lhs, y in left_by.get(x, ()):
            for q2 in list(by_left.get((y, q), ())):
                rules.add(((p, lhs, q2), (t, (q, y, q2))))
                add((p, lhs, q2))
        for lhs, xx in right_by.get(x, ()):
            for p0 in list(by_end.get((xx, p), ())):
                rules.add(((p0, lhs, q), ((p0, xx, p), t)))
                add((p0, lhs, q))
    start = ("bh-start",)
    out_rules = []
    for lhs, rhs in rules:
        out_rules.append((lhs, rhs))
    for t in prod:
        p, x, q = t
        if isinstance(x, tuple) and len(x) == 2 and x[0] == "t":
            out_rules.append((t, (x[1],)))
    for f in n.accepting:
        if (n.initial, g.start, f) in prod:
            out_rules.append((start, ((n.initial, g.start, f),)))
    nts = [start] + sorted(prod, key=repr)
    return prune(Cfg(g.terminals, tuple(nts), start, tuple(sorted(out_rules, key=repr))))


def cfg_apply_hom(g: Cfg, mapping: Mapping[str, Sequence[str]], alphabet: Alphabet | None = None) -> Cfg:
    """Image under the letter-to-word homomorphism ``mapping``."""
    for t in g.terminals:
        if t not in mapping:
            raise GrammarError(f"homomorphism undefined on {t!r}")
        if not mapping[t]:
            raise GrammarError(f"empty image for {t!r}")
    if alphabet is None:
        syms = sorted({s for t in g.terminals for s in mapping[t]})
        alphabet = Alphabet(tuple(syms))
    rules = []
    for lhs, rhs in g.rules:
        body = []
        for s in rhs:
            body.extend(mapping[s] if g.is_terminal(s) else (s,))
        rules.append((lhs, tuple(body)))
    return Cfg(alphabet, g.nonterminals, g.start, tuple(rules))


def cfg_convolve_universal(g: Cfg, side: str, alphabet: Alphabet) -> Cfg:
    """``{c (x) w : c in L(g), |w| = |c|}`` with the free track on ``side``'s other side."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if side == "left":
        pa = g.terminals.product(alphabet)
        pairs = {a: [pair_symbol(a, b) for b in alphabet] for a in g.terminals}
    else:
        pa = alphabet.product(g.terminals)
        pairs = {a: [pair_symbol(b, a) for b in alphabet] for a in g.terminals}
    rules = []
    lift = {a: ("lift", a) for a in g.terminals}
    for lhs, rhs in g.rules:
        rules.append((lhs, tuple(lift[s] if g.is_terminal(s) else s for s in rhs)))
    for a in g.terminals:
        for sym in pairs[a]:
            rules.append((lift[a], (sym,)))
    nts = g.nonterminals + tuple(lift[a] for a in g.terminals)
    return Cfg(pa, nts, g.start, tuple(rules))


def cfg_prepend(u: Sequence[str], g: Cfg) -> Cfg:
    """``u . L(g)``."""
    u = tuple(u)
    g.terminals.check(u)
    start = ("prefix", g.start)
    rules = ((start, u + (g.start,)),) + g.rules
    return Cfg(g.terminals, (start,) + g.nonterminals, start, rules)


def cfg_of_words(words: Iterable[Sequence[str]], alphabet: Alphabet) -> Cfg:
    s = ("words",)
    return Cfg(alphabet, (s,), s, tuple((s, tuple(w)) for w in words))


# -- eventually regular context-free omega-languages --------------------------


@dataclass(frozen=True)
class RegularPiece:
    nba: Nba


@dataclass(frozen=True)
class CLPiece:
    cfg: Cfg
    nba: Nba


Piece = Union[RegularPiece, CLPiece]


@dataclass(frozen=True)
class ErcfLanguage:
    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        alphs = set()
        for p in self.pieces:
            alphs.add(p.nba.alphabet)
            if isinstance(p, CLPiece):
                alphs.add(p.cfg.terminals)
        if len(alphs) > 1:
            raise AlphabetError("pieces of an ERCF language must share one alphabet")

    @property
    def alphabet(self):
        return self.pieces[0].nba.alphabet if self.pieces else None


def ercf_intersect_nba(e: ErcfLanguage, r: Nba) -> ErcfLanguage:
    """``e & L(r)``, using ``(C . L) & R = U_q (C & W_q) . (L & R_q)``."""
    out = []
    for piece in e.pieces:
        if piece.nba.alphabet != r.alphabet:
            raise AlphabetError("alphabet mismatch")
        if isinstance(piece, RegularPiece):
            out.append(RegularPiece(_nba.product(piece.nba, r)))
            continue
        for q in range(r.n_states):
            wq = _nba.as_nfa(r, {q})
            c = bar_hillel(piece.cfg, wq)
            if cfg_empty(c) is None:
                continue
            out.append(CLPiece(c, _nba.product(piece.nba, _nba.reroot(r, q))))
    return ErcfLanguage(tuple(out))


def ercf_empty(e: ErcfLanguage) -> UpWord | None:
    """``None`` if empty, else an ultimately periodic member."""
    for piece in e.pieces:
        x = _nba.witness(piece.nba)
        if x is None:
            continue
        if isinstance(piece, RegularPiece):
            return x
        c = cfg_empty(piece.cfg)
        if c is not None:
            return x.prepend(c)
    return None


def _lasso_nfa(x: UpWord, alphabet: Alphabet, final: int) -> Nfa:
    p = len(x.prefix)
    m = p + len(x.period)
    trans = {(i, x[i], i + 1 if i + 1 < m else p) for i in range(m)}
    return Nfa(alphabet, m, 0, frozenset({final}), frozenset(trans))


def up_member_ercf(x: UpWord, e: ErcfLanguage) -> bool:
    for piece in e.pieces:
        a = piece.nba
        a.alphabet.check(x.symbols())
        if isinstance(piece, RegularPiece):
            if _nba.member_up(a, x):
                return True
            continue
        m = len(x.prefix) + len(x.period)
        for j in range(m):
            if not _nba.member_up(a, x.suffix(j)):
                continue
            if cfg_empty(bar_hillel(piece.cfg, _lasso_nfa(x, a.alphabet, j))) is not None:
                return True
    return False
