"""Suite configuration, the family registry and the grid runner.

A suite file is TOML::

    sample_seed = 2024
    degree_bound = 4
    parallelism = 2
    output_format = "json"

    [families.zeil]
    n = "0..30"

    [families.multi_zeil]
    m = [1, 2, 4]
    n = "1..5"

A family may also be an array of tables (``[[families.z_refined]]``) when
different sub-grids are needed.  Each axis is an integer, a list, or an
inclusive range string ``"a..b"``.
Axes a family does not list fall back to their defaults; ``variant``
defaults to the first variant only, so list every variant you want checked.  Every point of the cartesian grid is one cell and yields exactly
one record.
"""

from __future__ import annotations

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from . import bijections, euler, lagrange, lucas
from .errors import ConfigError, QVerifyError
from .records import VerificationRecord
from .sampling import cyclic_points, weight_vector

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

ALL = "all"  # an axis whose range depends on the other axes of the cell


@dataclass(frozen=True)
class Context:
    seed: int
    degree_bound: int


@dataclass(frozen=True)
class Family:
    name: str
    required: tuple
    run: Callable[[dict, Context], VerificationRecord]
    defaults: dict = field(default_factory=dict)
    check: Callable[[dict], tuple | None] | None = None  # -> (axis, reason) when the cell is invalid
    dependent: dict = field(default_factory=dict)  # axis -> cell -> values, used for ALL

    @property
    def axes(self) -> tuple:
        return self.required + tuple(self.defaults)


def _need(cond: bool, axis: str, reason: str):
    return None if cond else (axis, reason)


def _first(*checks):
    return next((c for c in checks if c is not None), None)


def _check_min(**mins):
    def check(c):
        return _first(*(_need(c[a] >= lo, a, f"must be >= {lo}") for a, lo in mins.items()))

    return check


def _multi_zeil_check(c):
    return _first(
        _need(c["m"] % 3 != 0, "m", f"m = {c['m']} is divisible by 3, which this family does not cover"),
        _check_min(m=1, n=1)(c),
    )


def _z_refined_check(c):
    try:
        euler.check_z_congruence(c["m"], c["s"])
    except QVerifyError as exc:
        return ("s", str(exc))
    return _check_min(n=1)(c)


def _chu_check(c):
    N, g = c["N"], c["gamma"]
    return _first(
        _need(N >= 0, "N", "must be >= 0"),
        _need(not (N >= 1 and -(N - 1) <= g <= 0), "gamma", "degenerate: (q^gamma; q)_k vanishes"),
    )


def _range_check(axis):
    def check(c):
        hi = c["n"]
        return _need(0 <= c[axis] <= hi, axis, f"must lie in 0..n = {hi}")

    return check


def _in(axis, values):
    return lambda c: _need(c[axis] in values, axis, f"must be one of {list(values)}")


def _multi_3m(c, ctx):
    x = None if c["sample"] == 0 else weight_vector(c["m"], ctx.seed, f"multi_3m:{c['m']}:{c['n']}:{c['sample']}")
    return euler.verify_multi_3m(c["m"], c["n"], x)


def _dejavu(c, ctx):
    pts = cyclic_points(c["m"], c["points"], ctx.seed, f"dejavu:{c['m']}:{c['n']}")
    return lagrange.verify_dejavu(c["m"], c["n"], pts)


def _cyclic_x(c, ctx):
    pts = [p[0] for p in cyclic_points(1, c["points"], ctx.seed, f"cyclic_x:{c['m']}:{c['n']}")]
    return lagrange.verify_cyclic_x(c["m"], c["n"], pts)


def _bound(c, ctx):
    return ctx.degree_bound if c["D"] == ALL else c["D"]


FAMILIES: dict[str, Family] = {
    f.name: f
    for f in [
        Family("chu_vandermonde", ("alpha", "gamma", "N"),
               lambda c, x: euler.verify_chu_vandermonde(c["alpha"], c["gamma"], c["N"]), check=_chu_check),
        Family("nrst", ("n",), lambda c, x: euler.verify_nrst(c["n"], c["r"], c["t"], c["variant"]),
               defaults={"r": ALL, "t": ALL, "variant": ["q"]},
               check=lambda c: _first(_check_min(n=1)(c), _range_check("r")(c), _range_check("t")(c),
                                      _in("variant", ("q", "q_inverse"))(c)),
               dependent={"r": lambda c: range(c["n"] + 1), "t": lambda c: range(c["n"] + 1)}),
        Family("zeil", ("n",), lambda c, x: euler.verify_zeil(c["n"], c["variant"]),
               defaults={"variant": ["direct"]},
               check=lambda c: _first(_check_min(n=0)(c), _in("variant", ("direct", "inverted"))(c))),
        Family("finite_euler", ("L",), lambda c, x: euler.verify_finite_euler(c["L"], c["variant"]),
               defaults={"variant": [1]},
               check=lambda c: _first(_check_min(L=0)(c), _in("variant", (1, 2))(c))),
        Family("pentagonal_limit", ("D",), lambda c, x: euler.verify_pentagonal_limit(c["D"]),
               check=_check_min(D=0)),
        Family("multi_3m", ("m", "n"), _multi_3m, defaults={"sample": list(range(6))},
               check=_check_min(m=1, n=1, sample=0)),
        Family("multi_zeil", ("m", "n"), lambda c, x: euler.verify_multi_zeil(c["m"], c["n"]),
               check=_multi_zeil_check),
        Family("three_ell", ("L", "m"), lambda c, x: euler.verify_3ell(c["L"], c["m"], c["variant"]),
               defaults={"variant": [0]},
               check=lambda c: _first(_check_min(L=0, m=1)(c), _in("variant", (0, 1))(c))),
        Family("z_refined", ("m", "n", "s"), lambda c, x: euler.verify_z_refined(c["m"], c["n"], c["s"]),
               check=_z_refined_check),
        Family("four_to_one", ("n",), lambda c, x: euler.verify_four_to_one_reduction(c["n"], c["r5"]),
               defaults={"r5": ALL}, check=lambda c: _first(_check_min(n=1)(c), _range_check("r5")(c)),
               dependent={"r5": lambda c: range(c["n"] + 1)}),
        Family("cycle_reduction", ("m", "n"), lambda c, x: euler.verify_cycle_reduction(c["m"], c["n"]),
               check=_check_min(m=4, n=1)),
        Family("lucas", ("n",), lambda c, x: lucas.verify_lucas(c["n"], c["variant"]),
               defaults={"variant": [1]},
               check=lambda c: _first(_check_min(n=1)(c), _in("variant", (1, 2))(c))),
        Family("rational_lucas", ("n",), lambda c, x: lucas.verify_rational_lucas(c["n"], c["variant"]),
               defaults={"variant": ["line"]},
               check=lambda c: _first(_check_min(n=1)(c), _in("variant", ("line", "cycle"))(c))),
        Family("binet", ("n",), lambda c, x: lucas.verify_binet_integer_m(c["n"], c["variant"]),
               defaults={"variant": [1]},
               check=lambda c: _first(_check_min(n=1)(c), _in("variant", (1, 2))(c))),
        Family("omega", ("n",), lambda c, x: lucas.verify_omega_cases(c["n"]), check=_check_min(n=1)),
        Family("cyc_minus_one", ("m", "n"), lambda c, x: lucas.verify_cyc_minus_one(c["m"], c["n"]),
               check=_check_min(m=1, n=1)),
        Family("sqrt5", ("m", "n"), lambda c, x: lucas.verify_sqrt5(c["m"], c["n"]), check=_check_min(m=1, n=1)),
        Family("theta", ("n", "m"), lambda c, x: bijections.check_cardinalities(c["n"], c["m"], "theta"),
               check=_check_min(n=2, m=1)),
        Family("phi", ("n", "m"), lambda c, x: bijections.check_cardinalities(c["n"], c["m"], "phi"),
               check=_check_min(n=2, m=1)),
        Family("lagrange", ("m", "n"), lambda c, x: lagrange.verify_lagrange_cyclic(c["m"], c["n"], _bound(c, x)),
               defaults={"D": ALL}, check=_check_min(m=1, n=0)),
        Family("lagrange_random", ("m",), lambda c, x: lagrange.verify_lagrange_random(c["m"], _bound(c, x), x.seed),
               defaults={"D": ALL}, check=_check_min(m=1)),
        Family("delta", ("m",), lambda c, x: lagrange.verify_delta_closed_form(c["m"], _bound(c, x)),
               defaults={"D": ALL}, check=_check_min(m=1)),
        Family("dejavu", ("m", "n"), _dejavu, defaults={"points": [10]}, check=_check_min(m=1, n=1, points=1)),
        Family("cyclic_x", ("m", "n"), _cyclic_x, defaults={"points": [10]}, check=_check_min(m=1, n=1, points=1)),
    ]
}


# -- configuration -----------------------------------------------------------


def parse_axis(value, location: str) -> list:
    """int | str | list | "a..b" -> nonempty list of values."""
    if isinstance(value, bool):
        raise ConfigError("booleans are not parameter values", location)
    if isinstance(value, int):
        return [value]
    if isinstance(value, str):
        if ".." in value:
            lo, _, hi = value.partition("..")
            try:
                lo, hi = int(lo), int(hi)
            except ValueError:
                raise ConfigError(f"bad range {value!r}", location) from None
            out = list(range(lo, hi + 1))
        else:
            out = [value]
    elif isinstance(value, list):
        out = []
        for v in value:
            out.extend(parse_axis(v, location))
    else:
        raise ConfigError(f"unsupported value {value!r}", location)
    if not out:
        raise ConfigError("empty range", location)
    return out


def _coerce_like(values: list, defaults) -> list:
    """Let ``variant = "1"`` from the command line match integer variants."""
    if not isinstance(defaults, list) or not all(isinstance(d, int) for d in defaults):
        return values
    out = []
    for v in values:
        if isinstance(v, str) and v.lstrip("-").isdigit():
            v = int(v)
        out.append(v)
    return out


@dataclass
class SuiteConfig:
    families: dict  # name -> list of grids, each {axis: list of values}
    sample_seed: int = 0
    degree_bound: int = 4
    parallelism: int = 1
    output_format: str = "text"

    @classmethod
    def from_mapping(cls, data: dict) -> "SuiteConfig":
        known = {"families", "sample_seed", "degree_bound", "parallelism", "output_format"}
        for key in data:
            if key not in known:
                raise ConfigError("unknown key", key)
        fams = data.get("families") or {}
        if not isinstance(fams, dict):
            raise ConfigError("must be a table of families", "families")
        parsed = {}
        for name, grids in fams.items():
            loc = f"families.{name}"
            grids = grids if isinstance(grids, list) else [grids]
            if not grids or not all(isinstance(g, dict) for g in grids):
                raise ConfigError("must be a table (or array of tables) of parameter ranges", loc)
            parsed[name] = [{a: parse_axis(v, f"{loc}.{a}") for a, v in g.items()} for g in grids]
        cfg = cls(
            parsed,
            sample_seed=data.get("sample_seed", 0),
            degree_bound=data.get("degree_bound", 4),
            parallelism=data.get("parallelism", 1),
            output_format=data.get("output_format", "text"),
        )
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path) -> "SuiteConfig":
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except OSError as exc:
            raise ConfigError(str(exc), str(path)) from None
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"invalid TOML: {exc}", str(path)) from None
        return cls.from_mapping(data)

    def validate(self) -> None:
        for key in ("sample_seed", "degree_bound", "parallelism"):
            v = getattr(self, key)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConfigError("must be an integer", key)
        if self.degree_bound < 1:
            raise ConfigError("must be >= 1", "degree_bound")
        if self.parallelism < 1:
            raise ConfigError("must be >= 1", "parallelism")
        if self.output_format not in ("text", "json"):
            raise ConfigError("must be 'text' or 'json'", "output_format")
        if not self.families:
            raise ConfigError("no families configured", "families")
        self.cells()  # surfaces every per-cell precondition now

    def cells(self) -> list[tuple[str, dict]]:
        out = []
        for name, grids in self.families.items():
            for axes in grids if isinstance(grids, list) else [grids]:
                out.extend((name, c) for c in expand_family(name, axes))
        return out

    @property
    def context(self) -> Context:
        return Context(self.sample_seed, self.degree_bound)


def expand_family(name: str, axes: dict) -> list[dict]:
    loc = f"families.{name}"
    fam = FAMILIES.get(name)
    if fam is None:
        raise ConfigError(f"unknown family (known: {', '.join(sorted(FAMILIES))})", loc)
    for a in axes:
        if a not in fam.axes:
            raise ConfigError(f"unknown parameter for {name} (takes {', '.join(fam.axes)})", f"{loc}.{a}")
    grid = []
    for a in fam.required:
        if a not in axes:
            raise ConfigError("missing required parameter", f"{loc}.{a}")
        grid.append(axes[a])
    for a, d in fam.defaults.items():
        values = axes.get(a, d if isinstance(d, list) else [d])
        grid.append(_coerce_like(list(values), d))
    cells = []
    for combo in product(*grid):
        cell = dict(zip(fam.axes, combo))
        stack = [cell]
        for a, fn in fam.dependent.items():
            stack = [
                {**c, a: v} for c in stack for v in (fn(c) if c[a] == ALL else [c[a]])
            ]
        for c in stack:
            for a, v in c.items():
                if a != "variant" and v != ALL and (not isinstance(v, int) or isinstance(v, bool)):
                    raise ConfigError(f"expected an integer, got {v!r}", f"{loc}.{a}")
            if fam.check is not None:
                bad = fam.check(c)
                if bad is not None:
                    axis, reason = bad
                    raise ConfigError(reason, f"{loc}.{axis}")
            cells.append(c)
    return cells


# -- running -----------------------------------------------------------------


@dataclass
class SuiteReport:
    records: list
    wall_time: float = 0.0

    @property
    def totals(self) -> dict:
        p = sum(1 for r in self.records if r.passed)
        return {"pass": p, "fail": len(self.records) - p}

    @property
    def ok(self) -> bool:
        return self.totals["fail"] == 0


def run_cell(name: str, cell: dict, ctx: Context) -> VerificationRecord:
    """One grid cell; exceptions become failing records instead of propagating."""
    try:
        return FAMILIES[name].run(cell, ctx)
    except Exception as exc:  # noqa: BLE001 - a crash is a failed verification
        return VerificationRecord(name, dict(cell), None, None, False, 0.0, f"{type(exc).__name__}: {exc}")


def _run_packed(args):
    return run_cell(*args)


def run_suite(config: SuiteConfig, jobs: int | None = None) -> SuiteReport:
    config.validate()
    jobs = config.parallelism if jobs is None else jobs
    if jobs < 1:
        raise ConfigError("must be >= 1", "jobs")
    ctx = config.context
    work = [(name, cell, ctx) for name, cell in config.cells()]
    start = time.perf_counter()
    if jobs == 1 or len(work) < 2:
        records = [_run_packed(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_packed, work, chunksize=max(1, len(work) // (4 * jobs))))
    wall = time.perf_counter() - start
    # stable sort: cells with equal keys keep grid order
    records.sort(key=VerificationRecord.sort_key)
    return SuiteReport(records, wall)
