# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled transition-profile kernels; same contract as ``_kernels_py``."""

from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING
from libc.string cimport memset


def mul(bytes a, bytes b, Py_ssize_t n):
    cdef const unsigned char* pa = <const unsigned char*> PyBytes_AS_STRING(a)
    cdef const unsigned char* pb = <const unsigned char*> PyBytes_AS_STRING(b)
    cdef bytes out = PyBytes_FromStringAndSize(NULL, n * n)
    cdef unsigned char* po = <unsigned char*> PyBytes_AS_STRING(out)
    cdef Py_ssize_t i, j, k, row, col
    cdef unsigned char x, y, v
    memset(po, 0, n * n)
    for i in range(n):
        row = i * n
        for k in range(n):
            x = pa[row + k]
            if x == 0:
                continue
            col = k * n
            for j in range(n):
                y = pb[col + j]
                if y == 0:
                    continue
                v = x if x > y else y
                if v > po[row + j]:
                    po[row + j] = v
    return out


def linked_accepts(bytes s, bytes e, Py_ssize_t n, Py_ssize_t init):
    cdef bytes se = mul(s, e, n)
    cdef const unsigned char* ps = <const unsigned char*> PyBytes_AS_STRING(se)
    cdef const unsigned char* pe = <const unsigned char*> PyBytes_AS_STRING(e)
    cdef Py_ssize_t q, row = init * n
    for q in range(n):
        if ps[row + q] and pe[q * n + q] == 2:
            return True
    return False
