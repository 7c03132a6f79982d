"""Command-line entry point.

Subcommands:

* ``theory``      -- closed-form and finite-threshold extremogram table for
                     the base-b AR(1) model.
* ``simulate``    -- generate one series from a model spec, write it as CSV.
* ``extremogram`` -- estimate the extremogram of one generated series,
                     including the exact pair-count decomposition per lag.
* ``experiment``  -- replicated study: writes results.csv, bands.csv and
                     summary.json.
* ``diagnose``    -- covariance-decay measurements and the block-scheme
                     sanity report.

Specs are JSON files with a ``schema_version`` field (see README).  Floats in
CSV output are serialized with 17 significant digits and '\\n' line endings,
so identical configs and seeds produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .diagnostics import covariance_decay
from .empirical import BlockScheme, check_block_scheme
from .extremogram import (
    ExtremogramConfig,
    InfeasibleLagError,
    estimate_extremogram,
    pa_extremogram_ar1,
    theoretical_extremogram_ar1,
)
from .montecarlo import (
    SCHEMA_VERSION,
    ExperimentFailedError,
    ExperimentSpec,
    coverage_check,
    derive_replicate_seed,
    run_experiment,
)
from .normalize import normalize_hard_threshold
from .processes import InvalidSpecError, ModelSpec, generate

RESULTS_HEADER = "replicate,h,rho_hat,rho_pa,error,scaled_error"
BANDS_HEADER = "h,rho_pa,mean_rho_hat,band_lo,band_hi,err_band_lo,err_band_hi"


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _write_lines(path: Path, lines: list[str]) -> None:
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="")


def _load_spec(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        d = json.load(fh)
    if not isinstance(d, dict):
        raise ValueError("spec file must contain a JSON object")
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported schema_version {d.get('schema_version')!r} (expected {SCHEMA_VERSION})"
        )
    return d


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("CLUSTER_EXT_THREADS")
    return int(env) if env else 1


def cmd_theory(args) -> int:
    lags = range(args.lags + 1)
    rows = [
        (h, theoretical_extremogram_ar1(args.b, h), pa_extremogram_ar1(args.b, h, args.vn))
        for h in lags
    ]
    if args.format == "json":
        payload = [{"h": h, "rho": rho, "rho_pa": pa} for h, rho, pa in rows]
        text = json.dumps(payload, indent=2)
    else:
        lines = ["h,rho,rho_pa"] + [f"{h},{_fmt(rho)},{_fmt(pa)}" for h, rho, pa in rows]
        text = "\n".join(lines)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        name = "theory.json" if args.format == "json" else "theory.csv"
        _write_lines(out / name, text.split("\n"))
    else:
        print(text)
    return 0


def cmd_simulate(args) -> int:
    d = _load_spec(args.spec)
    model = ModelSpec.from_dict(d["model"])
    n = int(d["n"])
    seed = args.seed if args.seed is not None else int(d["seed"])
    series = generate(model, n, seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    lines = ["i,x"] + [f"{i},{_fmt(x)}" for i, x in enumerate(series.values)]
    _write_lines(out / "series.csv", lines)
    print(f"wrote {out / 'series.csv'} ({n} values, seed {seed})")
    return 0


def _extremogram_config(d: dict, n: int) -> ExtremogramConfig:
    from .clusters import SetSpec, half_line

    scheme_d = d["scheme"]
    scheme = BlockScheme(n=n, r_n=int(scheme_d["r_n"]), l_n=int(scheme_d["l_n"]))
    v_n = float(d["v_n"]) if d.get("v_n") is not None else 1.0 / math.sqrt(n)
    u_n = float(d["u_n"]) if d.get("u_n") is not None else 1.0 - v_n
    lags = d["lags"]
    if isinstance(lags, int):
        lags = list(range(lags + 1))
    A = SetSpec.from_dict(d["A"]) if "A" in d else half_line(1.0)
    B = SetSpec.from_dict(d["B"]) if "B" in d else half_line(1.0)
    return ExtremogramConfig(A=A, B=B, lags=tuple(lags), u_n=u_n, v_n=v_n, scheme=scheme)


def cmd_extremogram(args) -> int:
    d = _load_spec(args.spec)
    model = ModelSpec.from_dict(d["model"])
    n = int(d["n"])
    seed = args.seed if args.seed is not None else int(d["seed"])
    cfg = _extremogram_config(d, n)
    series = generate(model, n, seed)
    ns = normalize_hard_threshold(series, cfg.u_n, v_n=cfg.v_n)
    est = estimate_extremogram(ns, cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    lines = ["h,rho_hat,numerator,denominator,block_sum,delta_sum,remainder"]
    for j, h in enumerate(est.lags):
        dec = est.decompositions[j]
        lines.append(
            f"{h},{_fmt(est.rho_hat[j])},{est.numerators[j]},{est.denominator},"
            f"{dec.block_sum},{dec.delta_sum},{dec.remainder}"
        )
    _write_lines(out / "extremogram.csv", lines)
    print(f"wrote {out / 'extremogram.csv'}")
    return 0


def cmd_experiment(args) -> int:
    d = _load_spec(args.spec)
    spec = ExperimentSpec.from_dict(d)
    if args.seed is not None:
        spec = ExperimentSpec.from_dict({**d, "base_seed": args.seed})
    result = run_experiment(spec, threads=_threads(args))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    lines = [RESULTS_HEADER]
    for row, r in enumerate(result.replicate_ids):
        for j, h in enumerate(result.lags):
            lines.append(
                f"{r},{h},{_fmt(result.rho_hat[row, j])},{_fmt(result.pa[j])},"
                f"{_fmt(result.errors[row, j])},{_fmt(result.scaled_errors[row, j])}"
            )
    _write_lines(out / "results.csv", lines)

    mean_err = result.errors.mean(axis=0)
    lines = [BANDS_HEADER]
    for j, h in enumerate(result.lags):
        lines.append(
            f"{h},{_fmt(result.pa[j])},{_fmt(result.mean_rho_hat[j])},"
            f"{_fmt(result.band_lo[j])},{_fmt(result.band_hi[j])},"
            f"{_fmt(result.err_band_lo[j])},{_fmt(result.err_band_hi[j])}"
        )
    _write_lines(out / "bands.csv", lines)

    report = check_block_scheme(spec.scheme, spec.v_n)
    summary = {
        "config": spec.to_dict(),
        "replicates_kept": list(result.replicate_ids),
        "replicates_excluded": list(result.excluded),
        "mean_rho_hat": result.mean_rho_hat.tolist(),
        "rho_pa": result.pa.tolist(),
        "band_lo": result.band_lo.tolist(),
        "band_hi": result.band_hi.tolist(),
        "mean_error": mean_err.tolist(),
        "coverage": coverage_check(result).tolist(),
        "block_scheme_report": report.to_dict(),
        # Finite-sample surrogate for the limiting normality of the scaled
        # errors; not a reproduction of any published figure-of-merit.
        "normality_diagnostic": [
            {"h": h, "statistic": s, "p_value": p}
            for h, (s, p) in zip(result.lags, result.normality)
        ]
        if result.normality is not None
        else None,
    }
    with open(out / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    print(f"wrote {out / 'results.csv'}, {out / 'bands.csv'}, {out / 'summary.json'}")
    return 0


def cmd_diagnose(args) -> int:
    d = _load_spec(args.spec)
    model = ModelSpec.from_dict(d["model"])
    n = int(d["n"])
    replicates = int(d.get("replicates", 10))
    lags = d.get("lags", 5)
    if isinstance(lags, int):
        lags = list(range(1, lags + 1))
    seed = args.seed if args.seed is not None else int(d["seed"])
    series = [
        generate(model, n, derive_replicate_seed(seed, r)) for r in range(replicates)
    ]
    if model.kind == "base_b_ar1":
        envelope = lambda l: float(model.b) ** (-l)  # noqa: E731
    elif model.kind == "gaussian_ar1":
        envelope = lambda l: abs(model.phi) ** l  # noqa: E731
    else:
        envelope = lambda l: 1.0  # noqa: E731
    report = covariance_decay(series, lags, envelope)
    payload: dict = {"model": model.to_dict(), "decay": report.to_rows()}
    if "scheme" in d:
        scheme = BlockScheme(n=n, r_n=int(d["scheme"]["r_n"]), l_n=int(d["scheme"]["l_n"]))
        v_n = float(d["v_n"]) if d.get("v_n") is not None else 1.0 / math.sqrt(n)
        payload["block_scheme_report"] = check_block_scheme(scheme, v_n).to_dict()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "csv":
        lines = ["lag,measured,std_error,bound,pass"]
        for row in report.to_rows():
            lines.append(
                f"{row['lag']},{_fmt(row['measured'])},{_fmt(row['std_error'])},"
                f"{_fmt(row['bound'])},{str(row['pass']).lower()}"
            )
        _write_lines(out / "diagnostics.csv", lines)
        print(f"wrote {out / 'diagnostics.csv'}")
    else:
        with open(out / "diagnostics.json", "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        print(f"wrote {out / 'diagnostics.json'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusterext",
        description="Extremogram and cluster-functional statistics for weakly dependent series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_spec: bool = True) -> None:
        if needs_spec:
            p.add_argument("--spec", required=True, help="JSON spec file")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="seed override")
        p.add_argument("--threads", type=int, default=None, help="worker threads")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("theory", help="closed-form extremogram table for base-b AR(1)")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--lags", type=int, required=True, help="max lag (table covers 0..lags)")
    p.add_argument("--vn", type=float, required=True)
    p.add_argument("--out", default=None, help="output directory (prints to stdout if omitted)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("simulate", help="generate one series")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("extremogram", help="estimate the extremogram of one series")
    common(p)
    p.set_defaults(func=cmd_extremogram)

    p = sub.add_parser("experiment", help="replicated study with bands")
    common(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("diagnose", help="covariance-decay and block-scheme report")
    common(p)
    p.set_defaults(func=cmd_diagnose)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        ValueError,
        KeyError,
        InvalidSpecError,
        InfeasibleLagError,
        ExperimentFailedError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
