import itertools
import random

from omegaramsey import nba, ramsey
from omegaramsey.nba import Nba, Nfa
from omegaramsey.words import BINARY, UpWord, split_symbol

# (stage, subject, re-verified) for every negative verdict seen by the suite
NO_VERDICTS = []


def random_nba(rng, n_max=3, alphabet=BINARY, density=0.35, cls=Nba):
    n = rng.randint(1, n_max)
    trans = {(p, a, q) for p in range(n) for a in alphabet for q in range(n) if rng.random() < density}
    acc = frozenset(q for q in range(n) if rng.random() < 0.4)
    return cls(alphabet, n, 0, acc, frozenset(trans))


def random_up(rng, alphabet=BINARY, max_pre=3, max_per=3):
    syms = alphabet.symbols
    pre = tuple(rng.choice(syms) for _ in range(rng.randint(0, max_pre)))
    per = tuple(rng.choice(syms) for _ in range(rng.randint(1, max_per)))
    return UpWord(pre, per)


def words_upto(n, alphabet="01"):
    for k in range(n + 1):
        yield from itertools.product(alphabet, repeat=k)


def brute_cfg_words(g, max_len):
    """Every word of length <= max_len derivable from g, by leftmost
    sentential-form search (no normal form involved)."""
    out = set()
    seen = set()
    stack = [(g.start,)]
    terminal = set(g.terminals)
    while stack:
        form = stack.pop()
        if form in seen:
            continue
        seen.add(form)
        n_terms = sum(1 for s in form if s in terminal)
        if n_terms > max_len or len(form) > 2 * max_len + 4:
            continue
        idx = next((i for i, s in enumerate(form) if s not in terminal), None)
        if idx is None:
            out.add(form)
            continue
        for lhs, rhs in g.rules:
            if lhs == form[idx]:
                stack.append(form[:idx] + rhs + form[idx + 1:])
    return out


def first_positions(word, n):
    return [i for i in range(n) if word[i] == "1"]


def recheck_verdict(v, presentation, cls=None):
    """Independent replay of a negative verdict. For the domain stage the
    surrogate must be rejected by L and lie in u.{v,w}^omega; for the pair
    stage the surrogate must be off class ``cls`` and both of its tracks
    must lie in u.{v,w}^omega."""
    assert not v.holds
    w = v.witness
    if isinstance(w, ramsey.ChoiceWitness):
        hom = w.hom
        assert nba.in_uV_omega(w.surrogate, hom.u, (hom.v, hom.w))
        return not nba.member_up(presentation.L, w.surrogate)
    if isinstance(w, ramsey.PairWitness):
        a, b = w.choices
        if a == b:
            return False
        hom = w.hom
        for side in (0, 1):
            track = UpWord(tuple(split_symbol(s)[side] for s in w.surrogate.prefix),
                           tuple(split_symbol(s)[side] for s in w.surrogate.period))
            assert nba.in_uV_omega(track, hom.u, (hom.v, hom.w))
        hits = [i for i, e in enumerate(presentation.edges, 1) if nba.member_up(e, w.surrogate)]
        return bool(hits) and cls not in hits
    return False


def seeded(seed):
    return random.Random(seed)
