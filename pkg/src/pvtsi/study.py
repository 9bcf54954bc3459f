"""Convergence studies: tables of relative error against n, s and p."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import jets
from .errors import ValidationError
from .integrand import SingularIntegrand, build_transformed
from .oracle import EXAMPLE_NAMES, example_library, hfp_closed_form
from .quadrature import SUMMATION_MODES, RuleConfig, hfp_estimate, max_level
from .transforms import PeriodizingTransform

MAX_DOUBLINGS = 14
FORMATS = ("csv", "markdown")

_JET_NAMESPACE = {
    "sqrt": jets.sqrt,
    "exp": jets.exp,
    "log": jets.log,
    "sin": jets.sin,
    "cos": jets.cos,
    "tan": jets.tan,
    "tanh": jets.tanh,
    "pi": math.pi,
    "E": math.e,
}


def compile_expression(expr: str) -> Callable:
    """Turn an expression in ``x`` into a g usable with floats, arrays and jets."""
    import sympy

    x = sympy.Symbol("x")
    try:
        parsed = sympy.sympify(expr, locals={"x": x})
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise ValidationError(f"cannot parse integrand expression {expr!r}: {exc}") from None
    extra = parsed.free_symbols - {x}
    if extra:
        raise ValidationError(f"integrand may only use the variable x, found {sorted(map(str, extra))}")
    unknown = {type(f).__name__ for f in parsed.atoms(sympy.Function)} - set(_JET_NAMESPACE)
    if unknown:
        raise ValidationError(
            f"unsupported functions {sorted(unknown)}; available: {', '.join(k for k in _JET_NAMESPACE if k.islower())}"
        )
    return sympy.lambdify(x, parsed, modules=[_JET_NAMESPACE])


@dataclass(frozen=True)
class StudyConfig:
    example: str | None = "poly_m1"
    g_expr: str | None = None
    m: int | None = None
    t: float = 0.3
    transform: str = "rational"
    p: tuple[float, ...] = (5.0, 10.0, 15.0)
    c: float = 1.0
    s_levels: tuple[int, ...] = (0, 1)
    n0: int = 2
    doublings: int = 10
    fmt: str = "csv"
    summation: str = "pairwise"
    endpoint_exponent: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(float(v) for v in np.atleast_1d(self.p)))
        object.__setattr__(self, "s_levels", tuple(int(v) for v in np.atleast_1d(self.s_levels)))
        if (self.example is None) == (self.g_expr is None):
            raise ValidationError("give exactly one of an example name or an inline integrand expression")
        if self.example is not None and self.example not in EXAMPLE_NAMES:
            raise ValidationError(f"unknown example {self.example!r}; choose from {', '.join(EXAMPLE_NAMES)}")
        if self.g_expr is not None and self.m is None:
            raise ValidationError("an inline integrand needs the pole order m")
        m = self.pole_order
        if int(m) != m or m < 1:
            raise ValidationError(f"pole order m must be a positive integer, got {m}")
        if not self.s_levels:
            raise ValidationError("need at least one extrapolation level")
        bad = [s for s in self.s_levels if not 0 <= s <= max_level(m)]
        if bad:
            raise ValidationError(f"extrapolation levels {bad} exceed the maximum {max_level(m)} for m={m}")
        if not 1 <= self.doublings <= MAX_DOUBLINGS:
            raise ValidationError(f"doublings must lie in 1..{MAX_DOUBLINGS}, got {self.doublings}")
        if self.n0 < 2:
            raise ValidationError(f"n0 must be at least 2, got {self.n0}")
        if not self.p:
            raise ValidationError("need at least one transform parameter p")
        if self.fmt not in FORMATS:
            raise ValidationError(f"unknown output format {self.fmt!r}; choose from {FORMATS}")
        if self.summation not in SUMMATION_MODES:
            raise ValidationError(f"unknown summation mode {self.summation!r}; choose from {SUMMATION_MODES}")
        self.transforms()  # the transform constructor checks p and c

    @property
    def pole_order(self) -> int:
        if self.m is not None:
            return self.m
        return example_library(self.example).m

    def transforms(self) -> list[PeriodizingTransform]:
        if self.transform == "tanh":
            return [PeriodizingTransform(self.transform, c=self.c)]
        return [PeriodizingTransform(self.transform, p) for p in self.p]

    def integrand(self) -> SingularIntegrand:
        if self.example is not None:
            case = example_library(self.example)
            src = case.integrand_at(self.t, self.pole_order)
            if self.endpoint_exponent is not None:
                src = SingularIntegrand(src.g, src.t, src.m, endpoint_exponent=self.endpoint_exponent, name=src.name)
            return src
        return SingularIntegrand(
            compile_expression(self.g_expr),
            self.t,
            self.pole_order,
            endpoint_exponent=self.endpoint_exponent or 0.0,
            name=self.g_expr,
        )

    def columns(self) -> list[tuple[int, PeriodizingTransform]]:
        return [(s, T) for T in self.transforms() for s in self.s_levels]


def exact_value(cfg: StudyConfig, src: SingularIntegrand | None = None) -> tuple[float, str]:
    """Reference value and where it came from: printed, closed-form or oracle."""
    if cfg.example is not None:
        case = example_library(cfg.example)
        if cfg.pole_order == case.m:
            if cfg.t == case.t_printed:
                return case.printed_value, "printed"
            return case.exact_value_at(cfg.t), "closed-form"
    return hfp_closed_form(src or cfg.integrand()), "oracle"


@dataclass
class StudyRow:
    k: int
    n: int
    values: list[float]
    errors: list[float]


@dataclass
class ConvergenceReport:
    config: StudyConfig
    exact: float
    exact_source: str
    column_labels: list[str]
    rows: list[StudyRow] = field(default_factory=list)
    precision: str = "float64"
    wall_time: float = 0.0

    def error_column(self, j: int) -> np.ndarray:
        return np.array([row.errors[j] for row in self.rows])

    def metadata(self) -> dict:
        meta = asdict(self.config)
        meta.update(exact=self.exact, exact_source=self.exact_source, precision=self.precision)
        meta["wall_time"] = self.wall_time
        return meta


def _column_label(s: int, T: PeriodizingTransform, multi: bool) -> str:
    return f"err_s{s}_p{T.p:g}" if multi else f"err_s{s}"


def run_study(cfg: StudyConfig) -> ConvergenceReport:
    start = time.perf_counter()
    src = cfg.integrand()
    exact, source = exact_value(cfg, src)
    if exact == 0:
        raise ValidationError("the exact value is zero; relative errors are undefined")
    columns = cfg.columns()
    multi = len(cfg.transforms()) > 1
    report = ConvergenceReport(cfg, exact, source, [_column_label(s, T, multi) for s, T in columns])
    transformed = {T: build_transformed(src, T) for T in cfg.transforms()}
    for k in range(1, cfg.doublings + 1):
        n = cfg.n0 * 2 ** (k - 1)
        values = [
            hfp_estimate(transformed[T], RuleConfig(src.m, s, n, cfg.summation)).value for s, T in columns
        ]
        errors = [abs(v - exact) / abs(exact) for v in values]
        report.rows.append(StudyRow(k, n, values, errors))
    report.wall_time = time.perf_counter() - start
    return report


def emit_report(r: ConvergenceReport, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "n", *r.column_labels])
        for row in r.rows:
            writer.writerow([row.k, row.n, *(f"{e:.3e}" for e in row.errors)])
        return buf.getvalue()
    if fmt == "markdown":
        return _markdown(r)
    raise ValidationError(f"unknown output format {fmt!r}; choose from {FORMATS}")


def _markdown(r: ConvergenceReport) -> str:
    cfg = r.config
    m = cfg.pole_order
    multi = len(cfg.transforms()) > 1
    heads = []
    for s, T in cfg.columns():
        label = f"E^({s})_{{{m},2^k}}"
        heads.append(f"{label} ({T.label})" if multi or T.kind == "tanh" else label)
    name = cfg.example or f"g(x) = {cfg.g_expr}"
    lines = [
        f"Relative errors for {name}, m={m}, t={cfg.t:g}, transform {cfg.transforms()[0].kind}",
        f"(exact value {r.exact!r} from {r.exact_source}; {r.precision})",
        "",
        "| k | n | " + " | ".join(heads) + " |",
        "|---|---|" + "---|" * len(heads),
    ]
    for row in r.rows:
        lines.append(f"| {row.k} | {row.n} | " + " | ".join(f"{e:.3e}" for e in row.errors) + " |")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> tuple[list[str], list[tuple[int, int, list[float]]]]:
    """Inverse of the csv emitter: column labels and (k, n, errors) rows."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or header[:2] != ["k", "n"]:
        raise ValidationError("csv report must start with a 'k,n,...' header")
    rows = [(int(rec[0]), int(rec[1]), [float(v) for v in rec[2:]]) for rec in reader if rec]
    return header[2:], rows
