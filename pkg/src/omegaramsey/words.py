"""Ultimately periodic omega-words ``u(v)^omega`` and their exact relations.

Every "does this hold forever" question on two lassos is settled on a
finite window: past ``max(|u_x|, |u_y|)`` both words are periodic with
period ``lcm(|v_x|, |v_y|)``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence

FiniteWord = tuple  # tuple of symbols (str)


class AlphabetError(ValueError):
    """A symbol is outside the alphabet an operation was asked to use."""


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        syms = tuple(str(s) for s in self.symbols)
        if not syms:
            raise ValueError("alphabet must be non-empty")
        if len(set(syms)) != len(syms):
            raise ValueError(f"duplicate symbols in alphabet {syms}")
        for s in syms:
            if not s or any(c.isspace() for c in s) or "(" in s or ")" in s:
                raise ValueError(f"bad symbol {s!r}")
        object.__setattr__(self, "symbols", syms)
        object.__setattr__(self, "_rank", {s: i for i, s in enumerate(syms)})

    def __contains__(self, sym):
        return sym in self._rank

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def rank(self, sym) -> int:
        try:
            return self._rank[sym]
        except KeyError:
            raise AlphabetError(f"symbol {sym!r} not in alphabet {self.symbols}") from None

    def check(self, word: Iterable[str]) -> None:
        for s in word:
            if s not in self._rank:
                raise AlphabetError(f"symbol {s!r} not in alphabet {self.symbols}")

    def product(self, other: "Alphabet | None" = None) -> "Alphabet":
        other = self if other is None else other
        return Alphabet(tuple(pair_symbol(a, b) for a in self for b in other))

    @classmethod
    def of(cls, text: str | Sequence[str]) -> "Alphabet":
        """``Alphabet.of("01")`` or ``Alphabet.of(["0|0", "0|1"])``."""
        if isinstance(text, str):
            text = text.split() if (" " in text) else list(text)
        return cls(tuple(text))


BINARY = Alphabet(("0", "1"))


def pair_symbol(*parts: str) -> str:
    return "|".join(parts)


def split_symbol(sym: str) -> tuple:
    return tuple(sym.split("|"))


def _primitive_root(w: tuple) -> tuple:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


@dataclass(frozen=True)
class UpWord:
    """The omega-word ``prefix . period^omega`` in canonical form.

    Canonical means the period is primitive and the prefix cannot be
    shortened by rotating the period, so two instances are equal iff they
    denote the same omega-word.
    """

    prefix: tuple
    period: tuple

    def __post_init__(self):
        pre = tuple(self.prefix)
        per = tuple(self.period)
        if not per:
            raise ValueError("period must be non-empty")
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        object.__setattr__(self, "prefix", pre)
        object.__setattr__(self, "period", per)

    def __getitem__(self, i: int) -> str:
        if i < 0:
            raise IndexError("omega-words have no negative positions")
        p = len(self.prefix)
        if i < p:
            return self.prefix[i]
        return self.period[(i - p) % len(self.period)]

    def symbols(self) -> set:
        return set(self.prefix) | set(self.period)

    def suffix(self, i: int) -> "UpWord":
        """``x[i, omega)``."""
        p = len(self.prefix)
        if i <= p:
            return UpWord(self.prefix[i:], self.period)
        k = (i - p) % len(self.period)
        return UpWord((), self.period[k:] + self.period[:k])

    def prepend(self, w: Sequence[str]) -> "UpWord":
        return UpWord(tuple(w) + self.prefix, self.period)

    def __str__(self):
        return format_up(self)

    def __repr__(self):
        return f"UpWord({format_up(self)!r})"


def up(prefix: str | Sequence[str], period: str | Sequence[str]) -> UpWord:
    """Build from strings of single-character symbols or symbol sequences."""
    return UpWord(_tokens(prefix), _tokens(period))


def _tokens(part: str | Sequence[str]) -> tuple:
    if not isinstance(part, str):
        return tuple(part)
    part = part.strip()
    if not part:
        return ()
    if any(c.isspace() for c in part) or "|" in part:
        return tuple(part.split())
    return tuple(part)


def word(s: str | Sequence[str]) -> tuple:
    """Finite word from a literal (same tokenisation as UpWord parts)."""
    return _tokens(s)


_LITERAL = re.compile(r"^\s*([^()]*)\(([^()]+)\)\s*$")


def parse_up(text: str) -> UpWord:
    """Parse ``u(v)`` literals such as ``1(10)``, ``(01)`` or ``0|0 (1|1 1|0)``."""
    m = _LITERAL.match(text)
    if not m:
        raise WordSyntaxError(f"not an ultimately periodic word literal: {text!r}")
    return UpWord(_tokens(m.group(1)), _tokens(m.group(2)))


def format_word(w: Sequence[str]) -> str:
    if all(len(s) == 1 for s in w):
        return "".join(w)
    return " ".join(w)


def format_up(x: UpWord) -> str:
    multi = any(len(s) > 1 for s in x.prefix + x.period)
    if multi:
        pre = " ".join(x.prefix)
        return (pre + " " if pre else "") + "(" + " ".join(x.period) + ")"
    return "".join(x.prefix) + "(" + "".join(x.period) + ")"


def normalize(x: UpWord) -> UpWord:
    # construction already canonicalises; kept as an explicit operation
    return UpWord(x.prefix, x.period)


def window(x: UpWord, y: UpWord) -> tuple[int, int]:
    """(offset, length): both words are lcm-periodic from ``offset`` on."""
    return max(len(x.prefix), len(y.prefix)), lcm(len(x.period), len(y.period))


def prefix(x: UpWord, n: int) -> tuple:
    if n < 0:
        raise ValueError("n must be >= 0")
    return tuple(x[i] for i in range(n))


class Order(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class _Infinite:
    """Marker for the longest common prefix of a word with itself."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()


def _first_difference(x: UpWord, y: UpWord) -> int | None:
    off, per = window(x, y)
    for i in range(off + per):
        if x[i] != y[i]:
            return i
    return None


def lex_compare(x: UpWord, y: UpWord, alphabet: Alphabet | None = None) -> Order:
    """Lexicographic order; without an alphabet, symbols compare as strings."""
    if alphabet is not None:
        alphabet.check(x.symbols() | y.symbols())
    i = _first_difference(x, y)
    if i is None:
        return Order.EQUAL
    a, b = x[i], y[i]
    if alphabet is not None:
        less = alphabet.rank(a) < alphabet.rank(b)
    else:
        less = a < b
    return Order.LESS if less else Order.GREATER


def lcp(x: UpWord, y: UpWord):
    """Longest common prefix, or ``INFINITE`` when ``x == y``."""
    i = _first_difference(x, y)
    if i is None:
        return INFINITE
    return prefix(x, i)


def ultimately_equal(x: UpWord, y: UpWord) -> bool:
    off, per = window(x, y)
    return all(x[i] == y[i] for i in range(off, off + per))


def _check_binary(*xs: UpWord) -> None:
    for x in xs:
        BINARY.check(x.symbols())


def support(x: UpWord, n: int) -> list[int]:
    """Positions of ``1`` below ``n``."""
    _check_binary(x)
    return [i for i in range(n) if x[i] == "1"]


def support_meet_finite(x: UpWord, y: UpWord) -> bool:
    """Is ``supp(x) & supp(y)`` finite?"""
    _check_binary(x, y)
    off, per = window(x, y)
    return not any(x[i] == "1" and y[i] == "1" for i in range(off, off + per))


def convolve(xs: Sequence[UpWord]) -> UpWord:
    if len(xs) < 2:
        raise ValueError("convolution needs at least two words")
    off = max(len(x.prefix) for x in xs)
    per = lcm(*(len(x.period) for x in xs))
    letters = [pair_symbol(*(x[i] for x in xs)) for i in range(off + per)]
    return UpWord(tuple(letters[:off]), tuple(letters[off:]))


def project(x: UpWord, track: int) -> UpWord:
    """Inverse of convolution on one track."""
    return UpWord(
        tuple(split_symbol(s)[track] for s in x.prefix),
        tuple(split_symbol(s)[track] for s in x.period),
    )
