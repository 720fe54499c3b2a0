"""Pure-Python transition-profile kernels (fallback for ``_ckernels``).

A profile over ``n`` states is a ``bytes`` object of length ``n * n`` whose
entry ``i * n + j`` is 0 (no run), 1 (a run) or 2 (a run through an
accepting state).
"""


def mul(a, b, n):
    out = bytearray(n * n)
    for i in range(n):
        row = i * n
        for k in range(n):
            x = a[row + k]
            if not x:
                continue
            col = k * n
            for j in range(n):
                y = b[col + j]
                if not y:
                    continue
                v = x if x > y else y
                if v > out[row + j]:
                    out[row + j] = v
    return bytes(out)


def linked_accepts(s, e, n, init):
    """True iff some q has ``(s*e)[init, q] >= 1`` and ``e[q, q] == 2``."""
    se = mul(s, e, n)
    row = init * n
    for q in range(n):
        if se[row + q] and e[q * n + q] == 2:
            return True
    return False

