"""The omega-language N and its coded images ``u . h(N)``.

A word of N is ``1 0^{n_0} 1 0^{n_1} ...``. Writing ``p_k`` for the
position of the ``k``-th letter ``1``, membership says ``n_k - p_k`` is 0
or 1; call that difference the ``k``-th choice bit. So

    p_0 = 0,    p_{k+1} = 2 p_k + 1 + a_k

and every binary sequence ``a`` names exactly one word of N. A finite
choice stem is padded with zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import nba as _nba
from .grammars import CLPiece, Cfg, ErcfLanguage, RegularPiece, cfg_apply_hom, cfg_prepend
from .words import BINARY, Alphabet, AlphabetError, UpWord


def _bits(c: Sequence[str]) -> tuple:
    c = tuple(c)
    BINARY.check(c)
    return c


@dataclass(frozen=True)
class WordHom:
    """``chi(x) = u . h(x)`` with ``h(0) = v`` and ``h(1) = w``."""

    u: tuple
    v: tuple
    w: tuple
    alphabet: Alphabet = BINARY

    def __post_init__(self):
        for name in ("u", "v", "w"):
            val = tuple(getattr(self, name))
            self.alphabet.check(val)
            object.__setattr__(self, name, val)
        if not self.v or len(self.v) != len(self.w):
            raise ValueError("h(0) and h(1) must be non-empty and of equal length")
        if self.v == self.w:
            raise ValueError("h(0) and h(1) must differ")

    def image(self, bit: str) -> tuple:
        return self.v if bit == "0" else self.w


# -- prefix checkers -----------------------------------------------------------


def n_window_check(p: Sequence[str]) -> bool:
    """Is ``p`` a viable prefix of a word of N, judged by the windows
    ``p[n, 2n+3)`` that fit inside ``p``?"""
    p = _bits(p)
    if p and p[0] != "1":
        return False
    n = 0
    while 2 * n + 3 <= len(p):
        seg = p[n : 2 * n + 3]
        if seg[0] == "0":
            ok = seg[-2:] == ("0", "0")
        else:
            ok = all(s == "0" for s in seg[1 : n + 1]) and seg[-2:] in (("0", "1"), ("1", "0"))
        if not ok:
            return False
        n += 1
    return True


def n_block_check(p: Sequence[str]) -> bool:
    """Same question via the block exponents: ``n_k`` must be ``p_k`` or
    ``p_k + 1``, and a trailing run of zeros must not exceed ``p_k + 1``.

    One case is left open: a final letter 1 at an odd index ``m`` that
    arrives too early. Only the window starting at ``(m - 1) / 2`` can
    reject it, and that window ends one letter past the prefix.
    """
    p = _bits(p)
    if not p:
        return True
    if p[0] != "1":
        return False
    pos = 0  # position of the current 1
    i = 1
    while True:
        j = i
        while j < len(p) and p[j] == "0":
            j += 1
        zeros = j - i
        if j == len(p):
            return zeros <= pos + 1
        if zeros > pos + 1:
            return False
        if zeros < pos and not (j == len(p) - 1 and j % 2 == 1):
            return False
        pos = j
        i = j + 1


# -- generators ----------------------------------------------------------------


def one_positions(c: Sequence[str]) -> Iterator[int]:
    """``p_0, p_1, ...`` for the (zero-padded) choice sequence ``c``."""
    c = _bits(c)
    p, k = 0, 0
    while True:
        yield p
        a = 1 if k < len(c) and c[k] == "1" else 0
        p = 2 * p + 1 + a
        k += 1


def one_positions_up(c: UpWord) -> Iterator[int]:
    """As :func:`one_positions` for an infinite choice sequence."""
    BINARY.check(c.symbols())
    p, k = 0, 0
    while True:
        yield p
        p = 2 * p + 1 + (c[k] == "1")
        k += 1


def _from_positions(positions: Iterator[int], length: int) -> tuple:
    out = ["0"] * length
    for q in positions:
        if q >= length:
            break
        out[q] = "1"
    return tuple(out)


def n_generate(c: Sequence[str], length: int) -> tuple:
    if length < 0:
        raise ValueError("length must be >= 0")
    return _from_positions(one_positions(c), length)


def n_generate_up(c: UpWord, length: int) -> tuple:
    if length < 0:
        raise ValueError("length must be >= 0")
    return _from_positions(one_positions_up(c), length)


def h_image_prefix(hom: WordHom, c: Sequence[str] | UpWord, length: int) -> tuple:
    """``chi(x_c)[0, length)``."""
    if length < 0:
        raise ValueError("length must be >= 0")
    ell = len(hom.v)
    need = max(0, -(-(length - len(hom.u)) // ell))
    x = n_generate_up(c, need) if isinstance(c, UpWord) else n_generate(c, need)
    out = list(hom.u)
    for bit in x:
        out.extend(hom.image(bit))
    return tuple(out[:length])


def stems_equal(c1: Sequence[str], c2: Sequence[str]) -> bool:
    """Equality of the zero-padded sequences."""
    def strip(c):
        c = list(_bits(c))
        while c and c[-1] == "0":
            c.pop()
        return c
    return strip(c1) == strip(c2)


def shared_support_bound(c1: Sequence[str], c2: Sequence[str], length: int) -> int | None:
    """Largest position below ``length`` holding 1 in both generated prefixes
    (``None`` if there is none)."""
    if stems_equal(c1, c2):
        raise ValueError("choice sequences coincide; their supports are equal and infinite")
    a = set(_positions_below(one_positions(c1), length))
    b = set(_positions_below(one_positions(c2), length))
    both = a & b
    return max(both) if both else None


def _positions_below(it, length):
    for q in it:
        if q >= length:
            return
        yield q


# -- the complement of N -------------------------------------------------------


def complement_n_grammar(alphabet: Alphabet = BINARY) -> Cfg:
    """Finite bad prefixes ``B``: a word of Sigma^omega lies outside N iff it
    has a prefix in ``B``."""
    if alphabet != BINARY:
        raise AlphabetError("the complement grammar is defined over {0, 1}")
    rules = [("S", ("0",)), ("S", ("X", "D1")), ("S", ("Y", "D2"))]
    for nt, mid in (("X", "0"), ("Y", "1")):
        rules.append((nt, (mid,)))
        rules.extend((nt, (s, nt, t)) for s in "01" for t in "01")
    rules += [("D1", tuple(d)) for d in ("01", "10", "11")]
    rules += [("D2", tuple(d)) for d in ("00", "11")]
    return Cfg(BINARY, ("S", "X", "Y", "D1", "D2"), "S", tuple(rules))


def complement_H(hom: WordHom) -> ErcfLanguage:
    """``Sigma^omega \\ u . h(N)`` as a union of a safety piece (words not of
    the form ``u . {v, w}^omega``) and ``u . h(B) . {v, w}^omega``."""
    alph = hom.alphabet
    blocks = (hom.v, hom.w)
    safety = _nba.safety_complement_of_uVomega(hom.u, blocks, alph)
    bad = cfg_apply_hom(complement_n_grammar(), {"0": hom.v, "1": hom.w}, alph)
    return ErcfLanguage((RegularPiece(safety), CLPiece(cfg_prepend(hom.u, bad), _nba.blocks_omega(blocks, alph))))
