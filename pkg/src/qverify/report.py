"""Deterministic text and JSON rendering of a suite report.

Timings vary from run to run, so they are left out unless asked for; without
them the bytes depend only on the configuration.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .exact import LaurentPoly, QuadExt, TruncSeries
from .records import VerificationRecord


def _ratio(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def to_jsonable(v):
    """Exact values as JSON: rationals are "num/den" strings, polynomials sorted pairs."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, (int, Fraction)):
        return _ratio(v)
    if isinstance(v, QuadExt):
        return {"d": v.d, "a": _ratio(v.a), "b": _ratio(v.b)}
    if isinstance(v, LaurentPoly):
        return [[e, to_jsonable(c)] for e, c in v.terms()]
    if isinstance(v, TruncSeries):
        return {"vars": v.num_vars, "bound": v.bound, "terms": [[list(e), to_jsonable(c)] for e, c in v.terms()]}
    if isinstance(v, (list, tuple)):
        return [to_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): to_jsonable(x) for k, x in v.items()}
    raise TypeError(f"cannot serialise {type(v).__name__}")


def _param_json(v):
    # parameters keep their natural JSON type; only exact non-integers become strings
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_param_json(x) for x in v]
    return to_jsonable(v)


def _canonical(v) -> str:
    return json.dumps(v, separators=(",", ":"), ensure_ascii=False)


def digest(rec: VerificationRecord) -> str:
    blob = _canonical([to_jsonable(rec.lhs), to_jsonable(rec.rhs)])
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def record_json(rec: VerificationRecord, timings: bool = False) -> dict:
    out = {
        "family": rec.family,
        "params": {k: _param_json(v) for k, v in rec.params.items()},
        "passed": rec.passed,
        "digest": digest(rec),
        "lhs": to_jsonable(rec.lhs),
        "rhs": to_jsonable(rec.rhs),
        "note": rec.note,
    }
    if timings:
        out["elapsed"] = round(rec.elapsed, 6)
    return out


def _params_text(params: dict) -> str:
    def show(v):
        if isinstance(v, (list, tuple)):
            return "(" + ",".join(show(x) for x in v) + ")"
        return str(v)

    return " ".join(f"{k}={show(v)}" for k, v in params.items())


def emit_report(report, fmt: str = "text", timings: bool = False) -> bytes:
    """Render ``report`` (a SuiteReport) as UTF-8 bytes ending in a newline."""
    totals = report.totals
    if fmt == "json":
        doc = {"records": [record_json(r, timings) for r in report.records], "totals": totals}
        if timings:
            doc["wall_time"] = round(report.wall_time, 6)
        return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    header = f"{'family':<16} {'params':<44} {'result':<6} {'digest':<12}"
    if timings:
        header += f" {'time_s':>9}"
    header = header.rstrip()
    lines.append(header)
    lines.append("-" * len(header))
    for r in report.records:
        row = f"{r.family:<16} {_params_text(r.params):<44} {'PASS' if r.passed else 'FAIL':<6} {digest(r):<12}"
        if timings:
            row += f" {r.elapsed:>9.4f}"
        lines.append(row.rstrip())
        if not r.passed and r.note:
            lines.append(f"    {r.note}")
    lines.append(f"total: {totals['pass']} pass, {totals['fail']} fail")
    if timings:
        lines.append(f"wall time: {report.wall_time:.3f} s")
    return ("\n".join(lines) + "\n").encode("utf-8")
