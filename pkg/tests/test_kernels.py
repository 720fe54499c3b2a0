import random

import pytest

from omegaramsey import _kernels_py, kernels

try:
    from omegaramsey import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def rand_profile(rng, n):
    return bytes(rng.choice((0, 0, 1, 2)) for _ in range(n * n))


def naive_mul(a, b, n):
    out = bytearray(n * n)
    for i in range(n):
        for j in range(n):
            best = 0
            for k in range(n):
                x, y = a[i * n + k], b[k * n + j]
                if x and y:
                    best = max(best, x, y)
            out[i * n + j] = best
    return bytes(out)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None:
        assert kernels.BACKEND == "cython" or kernels._impl is _kernels_py


def test_python_kernel_matches_definition():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 6)
        a, b = rand_profile(rng, n), rand_profile(rng, n)
        assert _kernels_py.mul(a, b, n) == naive_mul(a, b, n)


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
def test_backends_agree():
    rng = random.Random(4)
    for _ in range(500):
        n = rng.randint(1, 9)
        a, b = rand_profile(rng, n), rand_profile(rng, n)
        assert _ckernels.mul(a, b, n) == _kernels_py.mul(a, b, n)
        init = rng.randrange(n)
        assert _ckernels.linked_accepts(a, b, n, init) == _kernels_py.linked_accepts(a, b, n, init)


def test_multiplication_is_associative():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 5)
        a, b, c = (rand_profile(rng, n) for _ in range(3))
        m = kernels.mul
        assert m(m(a, b, n), c, n) == m(a, m(b, c, n), n)
