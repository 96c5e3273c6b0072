"""Pure-Python versions of the hot loops.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
"""


def convolve(a, b, n):
    """Truncated Cauchy product: the first ``n + 1`` coefficients of ``a * b``.

    Entries may be any ring elements; missing entries count as zero.
    """
    la = min(len(a), n + 1)
    lb = min(len(b), n + 1)
    out = [0] * (n + 1)
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        top = min(lb, n + 1 - i)
        for j in range(top):
            out[i + j] += ai * b[j]
    return out


def apery_like_table(n_max, a, b, c, d):
    """Integers t_0..t_{n_max} of the recurrence

    (n+1)^3 t_{n+1} = (2n+1)(a n^2 + a n + b) t_n + c n (d n - 1)(d n + 1) t_{n-1},

    t_{-1} = 0, t_0 = 1. Raises ArithmeticError if a step is not exact.
    """
    out = [1]
    prev, cur = 0, 1
    for n in range(n_max):
        num = (2 * n + 1) * (a * n * n + a * n + b) * cur + c * n * (d * n - 1) * (d * n + 1) * prev
        den = (n + 1) ** 3
        q, r = divmod(num, den)
        if r:
            raise ArithmeticError(f"non-integral recurrence step at n={n + 1}")
        prev, cur = cur, q
        out.append(q)
    return out
