import os
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legsq import kernels
from legsq.exact import QuadExt
from legsq.sequences import _u_sum1


def _naive(a, b, n):
    return [sum(a[i] * b[k - i] for i in range(k + 1) if i < len(a) and k - i < len(b)) for k in range(n + 1)]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-10**30, 10**30), max_size=20), st.lists(st.integers(-10**30, 10**30), max_size=20), st.integers(0, 25))
def test_convolve_integers(a, b, n):
    from legsq import _pykernels

    expected = _naive(a, b, n)
    assert _pykernels.convolve(a, b, n) == expected
    try:
        from legsq import _ckernels
    except ImportError:
        return
    assert _ckernels.convolve(a, b, n) == expected


def test_convolve_generic_scalars(backend):
    a = [F(1, 2), QuadExt(1, 1, 2), F(3)]
    b = [QuadExt(0, 1, 2), F(-1, 3)]
    assert backend.convolve(a, b, 3) == _naive(a, b, 3)


def test_apery_like_table(backend):
    us = backend.apery_like_table(40, 13, 4, 3, 3)
    assert us == [_u_sum1(n) for n in range(41)]


def test_non_integral_step_raises(backend):
    with pytest.raises(ArithmeticError):
        backend.apery_like_table(10, 13, 4, 3, 2)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_override():
    env = dict(os.environ, LEGSQ_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import legsq.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
