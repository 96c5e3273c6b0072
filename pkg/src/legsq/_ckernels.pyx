# cython: language_level=3
"""Compiled versions of the hot loops in ``_pykernels``."""


def convolve(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t la = min(len(a), n + 1)
    cdef Py_ssize_t lb = min(len(b), n + 1)
    cdef Py_ssize_t i, j, top
    cdef list out = [0] * (n + 1)
    cdef object ai
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        top = min(lb, n + 1 - i)
        for j in range(top):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def apery_like_table(Py_ssize_t n_max, object a, object b, object c, object d):
    cdef list out = [1]
    cdef object prev = 0
    cdef object cur = 1
    cdef object num, den, q, r, m
    cdef Py_ssize_t n
    for n in range(n_max):
        m = n
        num = (2 * m + 1) * (a * m * m + a * m + b) * cur + c * m * (d * m - 1) * (d * m + 1) * prev
        den = (m + 1) ** 3
        q, r = divmod(num, den)
        if r:
            raise ArithmeticError(f"non-integral recurrence step at n={n + 1}")
        prev = cur
        cur = q
        out.append(q)
    return out
