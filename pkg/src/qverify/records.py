"""The result type shared by every verifier."""

from __future__ import annotations

import functools
import time
from dataclasses import dataclass
from typing import Any


@dataclass
class VerificationRecord:
    """One checked instance: both sides exactly, and whether they agree."""

    family: str
    params: dict
    lhs: Any
    rhs: Any
    passed: bool
    elapsed: float = 0.0
    note: str = ""

    def sort_key(self):
        return (self.family, tuple((k, _orderable(v)) for k, v in self.params.items()))


def _orderable(v):
    if isinstance(v, bool):
        return (0, int(v), "")
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def make_record(family: str, params: dict, lhs, rhs, passed=None, note="") -> VerificationRecord:
    if passed is None:
        passed = lhs == rhs
    return VerificationRecord(family, dict(params), lhs, rhs, bool(passed), 0.0, note)


def timed(fn):
    """Stamp the wall time of a verifier call onto the record it returns."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        rec = fn(*args, **kwargs)
        rec.elapsed = time.perf_counter() - start
        return rec

    return wrapper
