"""Exact and high-precision verification of squared-Legendre generating-function identities."""

from .exact import FixedReal, QuadExt, parse_scalar
from .kernels import BACKEND
from .powerseries import LaurentQ, SeriesQ
from .report import VerifyReport

__version__ = "0.1.0"

__all__ = ["BACKEND", "FixedReal", "LaurentQ", "QuadExt", "SeriesQ", "VerifyReport", "parse_scalar", "__version__"]
