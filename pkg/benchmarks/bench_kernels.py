"""Compare the compiled and pure-Python profile kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times raw multiplication, the linked-pair acceptance test, and a full
complementation with each backend patched into ``omegaramsey.kernels``.
"""

import argparse
import random
import sys
import timeit

from omegaramsey import _kernels_py, algebra, kernels
from omegaramsey.nba import Nba
from omegaramsey.words import BINARY

try:
    from omegaramsey import _ckernels
except ImportError:
    _ckernels = None


def profiles(rng, n, count):
    return [bytes(rng.choice((0, 0, 1, 2)) for _ in range(n * n)) for _ in range(count)]


def automata(rng, count):
    out = []
    for _ in range(count):
        n = rng.randint(2, 3)
        trans = {(p, a, q) for p in range(n) for a in BINARY for q in range(n) if rng.random() < 0.4}
        out.append(Nba(BINARY, n, 0, frozenset(q for q in range(n) if rng.random() < 0.5), frozenset(trans)))
    return out


def bench(mod, repeat):
    rng = random.Random(0)
    res = {}
    for n in (4, 8):
        ps = profiles(rng, n, 200)
        pairs = list(zip(ps, ps[1:]))
        res[f"mul n={n}"] = min(timeit.repeat(lambda: [mod.mul(a, b, n) for a, b in pairs], number=20, repeat=repeat))
        res[f"linked n={n}"] = min(
            timeit.repeat(lambda: [mod.linked_accepts(a, b, n, 0) for a, b in pairs], number=20, repeat=repeat)
        )
    autos = automata(random.Random(1), 15)
    saved = kernels.mul, kernels.linked_accepts
    kernels.mul, kernels.linked_accepts = mod.mul, mod.linked_accepts
    try:
        res["complement x15"] = min(timeit.repeat(lambda: [algebra.complement(a) for a in autos], number=1, repeat=repeat))
    finally:
        kernels.mul, kernels.linked_accepts = saved
    return res


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    py = bench(_kernels_py, args.repeat)
    if _ckernels is None:
        print("compiled kernels not built; python timings only", file=sys.stderr)
        for k, v in py.items():
            print(f"{k:18s} python {v * 1e3:9.2f} ms")
        return
    cy = bench(_ckernels, args.repeat)
    print(f"{'case':18s} {'python':>12s} {'cython':>12s} {'speedup':>8s}")
    for k in py:
        print(f"{k:18s} {py[k] * 1e3:9.2f} ms {cy[k] * 1e3:9.2f} ms {py[k] / cy[k]:7.1f}x")


if __name__ == "__main__":
    main()
