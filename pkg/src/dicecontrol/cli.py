"""Command-line interface: ``dicecontrol <command> [flags]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .dice import Model, POINTS, TOTALS, break_even_theta, come_out_pmf, point_set, total_pmf
from .hand_length import eigen_mixture, hand_tail, mean_hand_length, var_hand_length
from .lrtest import lr_test, simulate_lr_power
from .power import (
    NullKind,
    emit_power_table,
    power_lbar,
    power_passline,
    power_prop7,
)
from .reparam import NO_CONTROL_GAIN, Parameterization, rate_functions, rho1, rho2, to_theta
from .simulation import HandSample, RngStream, SampleFormatError, simulate_hands

SEED_ENV = "DICECONTROL_SEED"


class CliError(Exception):
    pass


# ---------------------------------------------------------------- output


def _plain(value):
    if isinstance(value, Fraction):
        return float(value)
    if hasattr(value, "item"):
        return value.item()
    return value


def _fmt(value, precision: int) -> str:
    value = _plain(value)
    if isinstance(value, float):
        if value != 0 and (abs(value) >= 1e6 or abs(value) < 10**-precision):
            return f"{value:.{precision - 1}e}"
        return f"{value:.{precision}f}"
    return str(value)


def _render(report: dict, fmt: str, precision: int) -> str:
    """``report`` holds scalar fields plus an optional ``rows`` list of dicts."""
    scalars = {k: v for k, v in report.items() if k != "rows"}
    rows = report.get("rows", [])
    if fmt == "json":
        def clean(obj):
            if isinstance(obj, dict):
                return {k: clean(v) for k, v in obj.items()}
            if isinstance(obj, (list, tuple)):
                return [clean(v) for v in obj]
            return _plain(obj)
        return json.dumps(clean(report), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rows:
            keys = list(rows[0])
            w.writerow(keys)
            for r in rows:
                w.writerow([_fmt(r[k], precision) for k in keys])
        else:
            w.writerow(["field", "value"])
            for k, v in scalars.items():
                w.writerow([k, _fmt(v, precision)])
        return buf.getvalue()
    lines = [f"{k}: {_fmt(v, precision)}" for k, v in scalars.items()]
    if rows:
        keys = list(rows[0])
        cells = [[_fmt(r[k], precision) for k in keys] for r in rows]
        widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
        if lines:
            lines.append("")
        lines.append("  ".join(k.rjust(wd) for k, wd in zip(keys, widths)))
        lines += ["  ".join(c.rjust(wd) for c, wd in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- helpers


def _native_theta(args) -> float:
    """Resolve ``--theta`` / ``--eta`` + ``--param`` to the model's theta."""
    if args.theta is not None:
        if args.param not in (None, "theta"):
            raise CliError("--theta cannot be combined with --param; use --eta for other scales")
        value, param = args.theta, Parameterization.THETA
    else:
        if args.param is None:
            raise CliError("--eta needs --param recip7 or --param gain")
        value, param = args.eta, Parameterization.parse(args.param)
    try:
        return float(to_theta(args.model, value, param))
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"{SEED_ENV}={env!r} is not an integer") from None
    print("warning: no --seed given, using 0", file=sys.stderr)
    return 0


def _add_value_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--theta", type=float, help="native control parameter")
    group.add_argument("--eta", type=float, help="value on the scale named by --param")
    p.add_argument("--param", choices=[q.value for q in Parameterization])


# ---------------------------------------------------------------- commands


def cmd_model(args) -> dict:
    theta = _native_theta(args)
    model = Model.parse(args.model)
    report = {
        "model": model.value,
        "theta": theta,
        "recip7": float(rho1(model, theta)),
        "gain": float(rho2(model, theta)),
        "break_even_theta": break_even_theta(model),
        "mean_length": float(mean_hand_length(model, theta)),
        "var_length": float(var_hand_length(model, theta)),
    }
    rates = rate_functions(model, theta)
    report.update(gamma=float(rates.gamma), delta=float(rates.delta))
    sets = {"come-out": come_out_pmf(model, theta)}
    for p in POINTS:
        s = point_set(model, p)
        label = s.value if hasattr(s, "value") else str(s)
        sets.setdefault(f"point {label}", total_pmf(model, s, theta))
    report["rows"] = [
        {"total": t, **{name: float(pmf[i]) for name, pmf in sets.items()}}
        for i, t in enumerate(TOTALS)
    ]
    return report


def cmd_dist(args) -> dict:
    theta = _native_theta(args)
    model = Model.parse(args.model)
    mix = eigen_mixture(model, theta)
    report = {"model": model.value, "theta": theta}
    for i in range(4):
        report[f"e{i + 1}"] = float(mix.e[i])
    for i in range(4):
        report[f"c{i + 1}"] = float(mix.c[i])
    if args.tail_at is not None:
        if args.tail_at < 2:
            raise CliError("--tail-at must be at least 2")
        tail = float(hand_tail(model, theta, args.tail_at))
        report.update(x=args.tail_at, tail=tail, reciprocal_tail=1.0 / tail)
        return report
    if args.x_max < 2:
        raise CliError("--x-max must be at least 2")
    xs = range(2, args.x_max + 1)
    report["rows"] = [{"x": x, "pmf": float(mix.pmf(x)), "tail": float(mix.tail(x))} for x in xs]
    return report


def cmd_power(args) -> dict | str:
    if args.table is not None:
        table = emit_power_table(args.table, args.alpha,
                                 None if args.exact_quantile else 3)
        if args.format == "text":
            return table.to_text()
        if args.format == "csv":
            return table.to_csv()
        return {"table": args.table, "rows": table.to_records()}
    if args.test is None:
        raise CliError("power needs --table or --test")
    if args.n is None or args.n <= 0:
        raise CliError("--n must be a positive sample size")
    needs_model = (args.test == "lbar" or args.theta is not None
                   or (args.per_hand and args.test == "passline"))
    if needs_model and args.model is None:
        raise CliError("--model is required for this query")
    null = NullKind.parse(args.null)
    try:
        if args.test == "lbar":
            model = Model.parse(args.model)
            theta = _native_theta(args)
            result = power_lbar(model, theta, args.n, args.alpha, null, Parameterization.THETA)
            eta = args.eta if args.eta is not None else theta
        elif args.test == "prop7":
            eta = (float(rho1(args.model, _native_theta(args))) if args.theta is not None
                   else _scale_value(args, Parameterization.RECIP7))
            n = args.n * eta if args.per_hand else args.n
            result = power_prop7(eta, n, args.alpha)
        else:
            eta = (float(rho2(args.model, _native_theta(args))) if args.theta is not None
                   else _scale_value(args, Parameterization.GAIN))
            n = args.n
            if args.per_hand:
                n *= float(rate_functions(args.model, to_theta(args.model, eta, "gain")).gamma)
            eta0 = float(NO_CONTROL_GAIN) if null is NullKind.SIMPLE else 0.0
            result = power_passline(eta, n, args.alpha, eta0)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    n_out = int(args.n) if float(args.n).is_integer() else args.n
    return {"test": args.test, "null": null.value, "eta": eta, "n": n_out, "alpha": args.alpha,
            "power": result.power}


def _scale_value(args, expected: Parameterization) -> float:
    if args.param != expected.value:
        raise CliError(f"--test {args.test} takes --eta with --param {expected.value}")
    return args.eta


def cmd_simulate(args) -> str:
    theta = _native_theta(args)
    if args.n < 1:
        raise CliError("--n must be at least 1")
    lengths = simulate_hands(args.model, theta, args.n, RngStream(_seed(args), args.stream))
    sample = HandSample.from_lengths(lengths)
    text = sample.to_json() + "\n" if args.sample_format == "json" else sample.to_lines()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        return ""
    return text


def cmd_lrtest(args) -> dict:
    try:
        sample = HandSample.read(args.sample)
    except OSError as exc:
        raise CliError(f"cannot read sample: {exc}") from None
    out = lr_test(args.model, sample, args.alpha, args.upper)
    return {"model": Model.parse(args.model).value, "n": sample.n, "theta_hat": out.theta_hat,
            "log_lik_null": out.log_lik_null, "log_lik_hat": out.log_lik_hat,
            "statistic": out.statistic, "reject": out.reject}


def cmd_lrpower(args) -> dict:
    theta = _native_theta(args)
    res = simulate_lr_power(args.model, theta, args.n, args.alpha, args.reps, _seed(args),
                            args.workers, args.upper)
    return {"model": Model.parse(args.model).value, "theta": theta, "n": args.n,
            "alpha": args.alpha, "reps": res.reps, "power": res.power, "std_err": res.std_err}


def cmd_verify(args) -> tuple[dict, bool]:
    from .verify import CHECKS, run_checks

    unknown = sorted(set(args.check or ()) - set(CHECKS))
    if unknown:
        raise CliError(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    results = run_checks(args.check, args.with_lr_table, reps=args.reps,
                         seed=_seed(args) if args.with_lr_table else 0, workers=args.workers)
    rows = [{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results]
    return {"rows": rows}, all(r.passed for r in results)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--precision", type=int, default=4, help="decimals in text and csv output")
    common.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default: ${SEED_ENV}, else 0)")

    parser = argparse.ArgumentParser(prog="dicecontrol", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    model_kw = dict(choices=["ss", "ws"], type=str.lower)

    p = sub.add_parser("model", parents=[common], help="quantities at a control level")
    p.add_argument("--model", required=True, **model_kw)
    _add_value_flags(p)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("dist", parents=[common], help="hand-length distribution")
    p.add_argument("--model", required=True, **model_kw)
    _add_value_flags(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--x-max", type=int, default=20)
    g.add_argument("--tail-at", type=int)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("power", parents=[common], help="approximate power")
    p.add_argument("--table", type=int, choices=[1, 2, 3])
    p.add_argument("--exact-quantile", action="store_true",
                   help="use the exact normal quantile instead of the 3-decimal table value")
    p.add_argument("--test", choices=["prop7", "passline", "lbar"])
    p.add_argument("--model", **model_kw)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--theta", type=float)
    g.add_argument("--eta", type=float)
    p.add_argument("--param", choices=[q.value for q in Parameterization])
    p.add_argument("--n", type=float)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--null", choices=["simple", "composite"], default="simple")
    p.add_argument("--per-hand", action="store_true",
                   help="treat --n as hands and scale it to point rolls or decisions")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("simulate", parents=[common], help="simulate a sample of hands")
    p.add_argument("--model", required=True, **model_kw)
    _add_value_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stream", type=int, default=0, help="stream index under the seed")
    p.add_argument("--sample-format", choices=["json", "lines"], default="json")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("lrtest", parents=[common], help="likelihood-ratio test on a sample file")
    p.add_argument("--model", required=True, **model_kw)
    p.add_argument("--sample", required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--upper", type=float, default=1.0, help="upper end of the theta search")
    p.set_defaults(func=cmd_lrtest)

    p = sub.add_parser("lrpower", parents=[common], help="simulated power of the LR test")
    p.add_argument("--model", required=True, **model_kw)
    _add_value_flags(p)
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--upper", type=float, default=1.0)
    p.set_defaults(func=cmd_lrpower)

    p = sub.add_parser("verify", parents=[common], help="reproduce published constants")
    p.add_argument("--check", nargs="*", help="subset of checks to run")
    p.add_argument("--with-lr-table", action="store_true", help="also run the LR power simulation")
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
        ok = True
        if isinstance(out, tuple):
            out, ok = out
        if isinstance(out, dict):
            out = _render(out, args.format, args.precision)
        sys.stdout.write(out)
        return 0 if ok else 1
    except (CliError, SampleFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
