"""Command line entry point: ``pvtsi study`` and ``pvtsi eval``.

Exit codes: 0 on success, 2 on invalid input, 3 when the tau solver or
the oracle fails.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys

from .errors import PVTSIError, ValidationError
from .integrand import SingularIntegrand, build_transformed
from .oracle import EXAMPLE_NAMES, example_library
from .quadrature import SUMMATION_MODES, RuleConfig, hfp_estimate
from .study import FORMATS, StudyConfig, compile_expression, emit_report, exact_value, run_study
from .transforms import KINDS, make_transform

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILURE = 3
SUMMATION_ENV = "PVTSI_SUMMATION"


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_integrand_args(sp: argparse.ArgumentParser) -> None:
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--example", choices=EXAMPLE_NAMES, help="built-in example integrand")
    src.add_argument("--g", dest="g_expr", metavar="EXPR", help="inline g(x), e.g. 'exp(x)*sqrt(1+x)'")
    sp.add_argument("--m", type=int, help="pole order (defaults to the example's)")
    sp.add_argument("--t", type=float, help="pole location (default 0.3)")
    sp.add_argument("--endpoint-exponent", type=float, dest="endpoint_exponent",
                    help="exponent c of g ~ (x-a)^c at the ends, used to predict q")
    sp.add_argument("--transform", choices=KINDS)
    sp.add_argument("--c", type=float, help="tanh transform parameter (default 1)")
    sp.add_argument("--summation", choices=SUMMATION_MODES,
                    help=f"node summation; overrides ${SUMMATION_ENV}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pvtsi", description="Finite-part integrals by periodizing transforms")
    sub = parser.add_subparsers(dest="command", required=True)

    st = sub.add_parser("study", help="relative-error table over a doubling ladder of n")
    st.add_argument("--config", help="JSON file with study fields; flags override it")
    _add_integrand_args(st)
    st.add_argument("--p", type=_float_list, help="comma-separated transform parameters")
    st.add_argument("--s", type=_int_list, dest="s_levels", help="comma-separated extrapolation levels")
    st.add_argument("--n0", type=int)
    st.add_argument("--doublings", type=int)
    st.add_argument("--format", choices=FORMATS, dest="fmt")

    ev = sub.add_parser("eval", help="one estimate of a finite-part integral")
    _add_integrand_args(ev)
    ev.add_argument("--p", type=float, help="transform parameter (default 10)")
    ev.add_argument("--s", type=int, default=1, help="extrapolation level (default 1)")
    ev.add_argument("--n", type=int, default=128, help="base number of panels (default 128)")
    ev.add_argument("--a", type=float, default=0.0)
    ev.add_argument("--b", type=float, default=1.0)
    return parser


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ValidationError(f"config {path} must hold a JSON object")
    aliases = {"s": "s_levels", "format": "fmt", "g": "g_expr"}
    data = {aliases.get(k, k): v for k, v in data.items()}
    known = {f.name for f in dataclasses.fields(StudyConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValidationError(f"unknown config fields {sorted(unknown)}; known: {sorted(known)}")
    return data


def _default_summation() -> str | None:
    mode = os.environ.get(SUMMATION_ENV)
    if mode is not None and mode not in SUMMATION_MODES:
        raise ValidationError(f"${SUMMATION_ENV}={mode!r} is not one of {SUMMATION_MODES}")
    return mode


def study_config_from_args(args: argparse.Namespace) -> StudyConfig:
    fields = _load_config(args.config)
    env = _default_summation()
    if env is not None:
        fields.setdefault("summation", env)
    for name in ("example", "g_expr", "m", "t", "endpoint_exponent", "transform", "c", "summation",
                 "p", "s_levels", "n0", "doublings", "fmt"):
        value = getattr(args, name)
        if value is not None:
            fields[name] = value
    # a flag picks the integrand source outright; the config file alone may name either
    if args.example is not None:
        fields["g_expr"] = None
    elif args.g_expr is not None:
        fields["example"] = None
    elif "g_expr" in fields:
        fields.setdefault("example", None)
    return StudyConfig(**fields)


def cmd_study(args) -> int:
    cfg = study_config_from_args(args)
    report = run_study(cfg)
    sys.stdout.write(emit_report(report, cfg.fmt))
    return EXIT_OK


def cmd_eval(args) -> int:
    summation = args.summation or _default_summation() or "pairwise"
    t = 0.3 if args.t is None else args.t
    exact = None
    if args.g_expr is not None:
        if args.m is None:
            raise ValidationError("an inline integrand needs --m")
        src = SingularIntegrand(compile_expression(args.g_expr), t, args.m, args.a, args.b,
                                endpoint_exponent=args.endpoint_exponent or 0.0, name=args.g_expr)
    else:
        case = example_library(args.example or "poly_m1")
        if (args.a, args.b) != (0.0, 1.0):
            raise ValidationError("the built-in examples live on (0, 1); use --g for other intervals")
        src = case.integrand_at(t, args.m)
        if args.endpoint_exponent is not None:
            src = dataclasses.replace(src, endpoint_exponent=args.endpoint_exponent)
        cfg = StudyConfig(case.name, m=src.m, t=t)
        exact = exact_value(cfg, src)
    T = make_transform(args.transform or "rational", args.p, args.c)
    ti = build_transformed(src, T)
    res = hfp_estimate(ti, RuleConfig(src.m, args.s, args.n, summation))
    out = {
        "value": res.value,
        "m": src.m,
        "t": src.t,
        "s": res.s,
        "n": res.n,
        "transform": T.label,
        "tau": ti.tau,
        "q": ti.q if math.isfinite(ti.q) else "inf",
        "node_evals": res.node_evals,
        "summation": summation,
    }
    if exact is not None:
        out.update(exact=exact[0], exact_source=exact[1], rel_error=abs(res.value - exact[0]) / abs(exact[0]))
    print(json.dumps(out, indent=2))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return cmd_study(args) if args.command == "study" else cmd_eval(args)
    except ValidationError as exc:
        print(f"pvtsi: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except PVTSIError as exc:
        print(f"pvtsi: failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
