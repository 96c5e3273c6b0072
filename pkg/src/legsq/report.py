"""Verification outcome records and their JSON form."""

from __future__ import annotations

import functools
import time
from dataclasses import dataclass, replace

KINDS = ("series", "exact", "numeric")


@dataclass(frozen=True)
class VerifyReport:
    identity_id: str
    kind: str
    order_or_precision: int
    passed: bool
    first_failure: int | None = None
    residual: str | None = None
    elapsed: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown report kind {self.kind!r}")
        if self.passed != (self.first_failure is None):
            raise ValueError("pass must hold exactly when first_failure is absent")
        if (self.residual is not None) != (self.kind == "numeric"):
            raise ValueError("residual is present exactly for numeric checks")

    def to_json(self) -> dict:
        return {
            "id": self.identity_id,
            "kind": self.kind,
            "order_or_digits": self.order_or_precision,
            "pass": self.passed,
            "first_failure": self.first_failure,
            "residual": self.residual,
            "elapsed_s": round(self.elapsed, 6),
        }

    @classmethod
    def from_json(cls, d: dict) -> VerifyReport:
        return cls(
            identity_id=d["id"],
            kind=d["kind"],
            order_or_precision=d["order_or_digits"],
            passed=d["pass"],
            first_failure=d["first_failure"],
            residual=d["residual"],
            elapsed=d["elapsed_s"],
        )

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        label = "digits" if self.kind == "numeric" else "order"
        extra = ""
        if self.first_failure is not None:
            extra += f" first_failure={self.first_failure}"
        if self.residual is not None:
            extra += f" residual={self.residual}"
        return f"{status} {self.identity_id} [{self.kind}, {label}={self.order_or_precision}]{extra} ({self.elapsed:.2f}s)"


def timed(fn):
    """Fill in ``elapsed`` on the VerifyReport returned by ``fn``."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        return replace(rep, elapsed=time.perf_counter() - t0)

    return wrapper
