"""Command line interface: ``omegaramsey <group> <command> ...``.

Output is line oriented (``KEY value``). Exit status is 0 for an
affirmative answer, 1 for a negative one and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import algebra, counterexamples as cx, nlang, ramsey
from . import nba as _nba
from .grammars import GrammarError
from .nba import Nfa
from .words import (
    BINARY,
    INFINITE,
    AlphabetError,
    WordSyntaxError,
    convolve,
    format_up,
    format_word,
    lcp,
    lex_compare,
    parse_up,
    support_meet_finite,
    ultimately_equal,
    word,
)

PREFIX_LEN = 32


class UsageError(Exception):
    pass


def _yes(out, flag: bool) -> int:
    out.append(f"RESULT {'yes' if flag else 'no'}")
    return 0 if flag else 1


def _bits(s: str) -> tuple:
    if not s or any(c not in "01" for c in s):
        raise UsageError(f"expected a bit string, got {s!r}")
    return tuple(s)


def _fin(s: str) -> tuple:
    return () if s in ("", "eps") else word(s)


# -- handlers --------------------------------------------------------------------


def cmd_word(args, out):
    x, y = parse_up(args.w1), parse_up(args.w2)
    for z in (x, y):
        BINARY.check(z.symbols())
    if args.op == "cmp":
        out.append(f"CMP {lex_compare(x, y).name}")
        return 0
    if args.op == "simeq":
        return _yes(out, ultimately_equal(x, y))
    if args.op == "suppmeet":
        return _yes(out, support_meet_finite(x, y))
    if args.op == "lcp":
        c = lcp(x, y)
        out.append("LCP " + ("INFINITE" if c is INFINITE else (format_word(c) or "eps")))
        return 0
    out.append(f"WORD {format_up(convolve([x, y]))}")
    return 0


def cmd_nba(args, out):
    if not args.automaton:
        raise UsageError("--automaton is required")
    autos = [_nba.load_automaton(f) for f in args.automaton]
    a = autos[0]
    if args.op == "member":
        if args.word is None:
            raise UsageError("--word is required")
        return _yes(out, _nba.member_up(a, parse_up(args.word)))
    if args.op in ("empty", "witness"):
        w = _nba.witness(a)
        if args.op == "empty":
            code = _yes(out, w is None)
            if w is not None:
                out.append(f"WITNESS {format_up(w)}")
            return code
        if w is None:
            out.append("RESULT no")
            return 1
        out.append(f"WITNESS {format_up(w)}")
        return 0
    if args.op == "product":
        if len(autos) < 2:
            raise UsageError("product needs two --automaton files")
        res = _nba.product_all(autos)
    else:
        res = algebra.complement(a)
    text = _nba.format_automaton(res)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.append(f"STATES {res.n_states}")
    else:
        out.extend(text.rstrip("\n").splitlines())
    return 0


def cmd_nlang(args, out):
    if args.op == "check":
        if args.bits is None:
            raise UsageError("nlang check needs a bit string")
        p = () if args.bits in ("", "eps") else _bits(args.bits)
        return _yes(out, nlang.n_window_check(p))
    if args.choices is None or args.len is None:
        raise UsageError("--choices and --len are required")
    c = () if args.choices in ("", "eps") else _bits(args.choices)
    if args.op == "gen":
        out.append(f"WORD {''.join(nlang.n_generate(c, args.len))}")
        return 0
    if args.v is None or args.w is None:
        raise UsageError("--v and --w are required")
    hom = nlang.WordHom(_fin(args.u or ""), _fin(args.v), _fin(args.w))
    out.append(f"WORD {format_word(nlang.h_image_prefix(hom, c, args.len))}")
    return 0


def _report_verdict(v: ramsey.Verdict, out, presentation) -> int:
    out.append(f"STAGE {v.stage}")
    code = _yes(out, v.holds)
    w = v.witness
    if isinstance(w, ramsey.ChoiceWitness):
        out.append(f"WITNESS {format_up(w.choices)}")
        out.append(f"PREFIX {format_word(w.prefix(PREFIX_LEN))}")
        out.append(f"SURROGATE {format_up(w.surrogate)}")
    elif isinstance(w, ramsey.PairWitness):
        ca, cb = w.choices
        out.append(f"PAIR {format_up(ca)} {format_up(cb)}")
        xa = nlang.h_image_prefix(w.hom, ca, PREFIX_LEN)
        xb = nlang.h_image_prefix(w.hom, cb, PREFIX_LEN)
        out.append(f"PREFIX {format_word(xa)} {format_word(xb)}")
        out.append(f"SURROGATE {format_up(w.surrogate)}")
        out.append("CLASS " + " ".join(f"E{i}" for i in w.classes))
    return code


def cmd_clique(args, out):
    if args.op == "paircolour":
        if not args.out:
            raise UsageError("--out is required")
        ramsey.save_bundle(cx.paircolour_presentation(), args.out)
        out.append(f"WROTE {args.out}")
        return 0
    if not args.bundle:
        raise UsageError("--bundle is required")
    p = ramsey.load_bundle(args.bundle)
    if args.op == "verify":
        for name in ("u", "v", "w", "cls"):
            if getattr(args, name) is None:
                raise UsageError("--u, --v, --w and --class are required")
        t = ramsey.TripleCandidate(_fin(args.u), _fin(args.v), _fin(args.w))
        if not 1 <= args.cls <= len(p.edges):
            raise UsageError(f"--class must be between 1 and {len(p.edges)}")
        v = ramsey.h_subset_L(t, p)
        if v.holds:
            v = ramsey.homogeneous(t, args.cls, p, check_domain=False)
        return _report_verdict(v, out, p)
    if args.max_len is None:
        raise UsageError("--max-len is required")
    found = ramsey.find_triple(p, args.max_len)
    if found is None:
        out.append("RESULT no")
        return 1
    t, i = found
    out.append("RESULT yes")
    out.append(f"TRIPLE {format_word(t.u)} {format_word(t.v)} {format_word(t.w)}")
    out.append(f"CLASS E{i}")
    return 0


def cmd_cx(args, out):
    if args.op == "hyper3":
        if len(args.words) != 3:
            raise UsageError("hyper3 takes three words")
        out.append(f"CLASS {cx.hyper3_classify(*map(parse_up, args.words))}")
        return 0
    if args.op == "pair":
        if len(args.words) != 2:
            raise UsageError("pair takes two words")
        out.append(f"CLASS {cx.pair_classify(*map(parse_up, args.words))}")
        return 0
    if args.op == "inhomog":
        if not args.U or not args.V:
            raise UsageError("--U and --V are required")
        U = _nba.load_automaton(args.U, Nfa)
        V = _nba.load_automaton(args.V, Nfa)
        e1, e2 = cx.inhomog_witness(U, V)
        for pair in (e1, e2):
            out.append(f"PAIR {format_up(pair[0])} {format_up(pair[1])}")
            out.append(f"CLASS {cx.pair_classify(*pair)}")
        return 0
    ws = [parse_up(w) for w in args.words]
    res = cx.brute_homogeneous(ws, args.classifier, args.k)
    if isinstance(res, cx.Homogeneous):
        out.append("RESULT yes")
        out.append(f"CLASS {res.cls}")
        return 0
    out.append("RESULT no")
    out.append(f"SUBSET {' '.join(map(format_up, res.first))} CLASS {res.first_cls}")
    out.append(f"SUBSET {' '.join(map(format_up, res.second))} CLASS {res.second_cls}")
    return 1


def cmd_poset(args, out):
    for name in ("L", "eq", "leq", "out"):
        if getattr(args, name) is None:
            raise UsageError("--L, --eq, --leq and --out are required")
    p = ramsey.poset_partition(
        _nba.load_automaton(args.L), _nba.load_automaton(args.eq), _nba.load_automaton(args.leq)
    )
    ramsey.save_bundle(p, args.out)
    out.append(f"WROTE {args.out}")
    out.append(f"CLASSES {len(p.edges)}")
    return 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="omegaramsey", description=__doc__.splitlines()[0])
    groups = ap.add_subparsers(dest="group", required=True)

    g = groups.add_parser("word", help="relations on ultimately periodic words")
    g.add_argument("op", choices=["cmp", "simeq", "suppmeet", "lcp", "convolve"])
    g.add_argument("w1")
    g.add_argument("w2")
    g.set_defaults(fn=cmd_word)

    g = groups.add_parser("nba", help="Büchi automata")
    g.add_argument("op", choices=["member", "empty", "witness", "product", "complement"])
    g.add_argument("--automaton", action="append")
    g.add_argument("--word")
    g.add_argument("--out")
    g.set_defaults(fn=cmd_nba)

    g = groups.add_parser("nlang", help="the language N and its images")
    g.add_argument("op", choices=["check", "gen", "image"])
    g.add_argument("bits", nargs="?")
    g.add_argument("--choices")
    g.add_argument("--len", type=int)
    g.add_argument("--u")
    g.add_argument("--v")
    g.add_argument("--w")
    g.set_defaults(fn=cmd_nlang)

    g = groups.add_parser("clique", help="clique decision and search")
    g.add_argument("op", choices=["verify", "find", "paircolour"])
    g.add_argument("--bundle")
    g.add_argument("--u")
    g.add_argument("--v")
    g.add_argument("--w")
    g.add_argument("--class", dest="cls", type=int)
    g.add_argument("--max-len", type=int)
    g.add_argument("--out")
    g.set_defaults(fn=cmd_clique)

    g = groups.add_parser("cx", help="counterexample colourings")
    g.add_argument("op", choices=["hyper3", "pair", "inhomog", "brute"])
    g.add_argument("words", nargs="*")
    g.add_argument("--U")
    g.add_argument("--V")
    g.add_argument("--classifier", default="hyper3", choices=["hyper3", "hyperk", "pair"])
    g.add_argument("--k", type=int)
    g.set_defaults(fn=cmd_cx)

    g = groups.add_parser("poset", help="partitions from presented partial orders")
    g.add_argument("op", choices=["partition"])
    g.add_argument("--L")
    g.add_argument("--eq")
    g.add_argument("--leq")
    g.add_argument("--out")
    g.set_defaults(fn=cmd_poset)
    return ap


_INPUT_ERRORS = (
    UsageError,
    WordSyntaxError,
    AlphabetError,
    _nba.AutomatonFormatError,
    GrammarError,
    ramsey.PresentationError,
    cx.DomainError,
    cx.NoPair,
    ValueError,
    OSError,
)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out: list[str] = []
    try:
        code = args.fn(args, out)
    except _INPUT_ERRORS as exc:
        print(f"ERROR {exc}", file=stderr)
        return 2
    for line in out:
        print(line, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
