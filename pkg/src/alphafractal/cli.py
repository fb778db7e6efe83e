"""Command-line surface.

    alphafractal build  --config cfg.json [--grid M] [--depth K | --eps E]
                        [--mode cont|lip] [--out DIR]
    alphafractal verify --config cfg.json --suite error|stability|sensitivity|operator|all
                        [--trials T] [--seed S] [--out DIR] [overrides]
    alphafractal sweep  --manifest manifest.json [--out DIR]

Exit codes: 0 success, 1 bound violation, 2 invalid input.  Invalid input
produces one machine-readable JSON diagnostic line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import campaigns, configio, depend, norms
from .core import build_partition
from .engine import trajectory_interpolant
from .errors import AlphaFractalError
from .report import BoundReport


def _diagnostic(code: str, detail: str) -> None:
    print(json.dumps({"error": code, "detail": detail}), file=sys.stderr)


def _overrides(args) -> dict:
    return {
        "grid": args.grid,
        "depth": args.depth,
        "eps": args.eps,
        "mode": args.mode,
    }


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_build(args) -> int:
    try:
        cfg = configio.load_config(args.config, overrides=_overrides(args))
        report = cfg.validation()
        if not report.ok:
            _diagnostic(report.problems[0][0], report.summary())
            return 2
        interp = trajectory_interpolant(cfg)
    except AlphaFractalError as exc:
        _diagnostic(type(exc).__name__, str(exc))
        return 2
    out = _out_dir(args)
    configio.write_curve_csv(out / "curve.csv", cfg.grid, cfg.germ_values,
                             interp.values.ys)
    summary = {
        "grid_points": int(cfg.grid.size),
        "depth_used": interp.depth,
        "alpha_sup": cfg.alpha_sup,
        "germ_sup": cfg.germ_sup,
        "base_gap_sup": cfg.base_gap_sup,
        "r_bound": cfg.r_bound,
        "interpolant_sup": float(np.max(np.abs(interp.values.ys))),
        "knot_residual_max": float(np.max(interp.knot_residuals())),
        "validation": {
            "ok": report.ok,
            "alpha_sup": report.alpha_sup,
            "endpoint_residuals": [list(r) for r in report.endpoint_residuals],
            "degenerate_levels": list(report.degenerate_levels),
        },
    }
    if cfg.mode == "lipschitz":
        lip = norms.check_lip_hypothesis(cfg)
        summary["lip_hypothesis"] = lip.to_json_dict()
    configio.write_summary_json(out / "summary.json", summary)
    print(f"wrote {out / 'curve.csv'} and {out / 'summary.json'} "
          f"(depth {interp.depth}, grid {cfg.grid.size})")
    return 0


def cmd_verify(args) -> int:
    try:
        cfg = configio.load_config(args.config, overrides=_overrides(args))
        cfg.validation().raise_if_failed()
        reports = campaigns.run_suite(args.suite, cfg, args.trials, args.seed,
                                      t_scale=args.t_scale, s_scale=args.s_scale)
    except AlphaFractalError as exc:
        _diagnostic(type(exc).__name__, str(exc))
        return 2
    out = _out_dir(args)
    configio.write_report_csv(out / "report.csv", reports)
    configio.write_reports_json(out / "report.json", reports)
    failing = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failing)}/{len(reports)} bound checks passed "
          f"(suite {args.suite}, trials {args.trials}, seed {args.seed})")
    for r in failing:
        print(str(r))
    return 1 if failing else 0


def _run_experiment(cfg, exp: dict, base_dir: Path) -> list[BoundReport]:
    domain = cfg.domain
    kind = exp["kind"]
    if kind == "base":
        bases_a = [configio.funcspec_from_dict(s, domain, base_dir)
                   for s in exp["bases_a"]]
        bases_b = [configio.funcspec_from_dict(s, domain, base_dir)
                   for s in exp["bases_b"]]
        return [depend.base_dependence(cfg, bases_a, bases_b)]
    if kind == "scaling":
        alphas_a = [[configio.funcspec_from_dict(s, domain, base_dir) for s in level]
                    for level in exp["alphas_a"]]
        alphas_b = [[configio.funcspec_from_dict(s, domain, base_dir) for s in level]
                    for level in exp["alphas_b"]]
        return [depend.scaling_dependence(cfg, alphas_a, alphas_b,
                                          float(exp.get("s_cap", 0.99)))]
    partition = build_partition(exp["knots"])
    return depend.partition_continuity(cfg, partition,
                                       halvings=int(exp.get("halvings", 3)))


def cmd_sweep(args) -> int:
    try:
        cfg, experiments = configio.load_manifest(args.manifest)
        cfg.validation().raise_if_failed()
        reports = []
        for k, exp in enumerate(experiments):
            try:
                for rep in _run_experiment(cfg, exp, Path(args.manifest).parent):
                    reports.append(BoundReport(f"{rep.name}[exp={k}]", rep.predicted,
                                               rep.observed, rep.tolerance, rep.inputs))
            except KeyError as exc:
                raise AlphaFractalError(
                    f"experiment {k} ({exp.get('kind')}) missing field {exc}"
                ) from exc
    except AlphaFractalError as exc:
        _diagnostic(type(exc).__name__, str(exc))
        return 2
    out = _out_dir(args)
    configio.write_report_csv(out / "results.csv", reports)
    failing = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failing)}/{len(reports)} sweep rows passed")
    for r in failing:
        print(str(r))
    return 1 if failing else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alphafractal",
        description="Non-stationary fractal interpolation: build curves, "
                    "verify closed-form bounds, run dependence sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--grid", type=int, default=None, help="grid size override")
        p.add_argument("--depth", type=int, default=None, help="fixed truncation depth")
        p.add_argument("--eps", type=float, default=None, help="tail tolerance")
        p.add_argument("--mode", choices=["cont", "lip", "continuous", "lipschitz"],
                       default=None)
        p.add_argument("--out", default=".", help="output directory")

    p = sub.add_parser("build", help="build the interpolant and export the curve")
    p.add_argument("--config", required=True)
    common(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("verify", help="run a randomized bound-verification suite")
    p.add_argument("--config", required=True)
    p.add_argument("--suite", choices=list(campaigns.SUITES), default="all")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-scale", type=float, default=0.1,
                   help="sensitivity suite: scaling-jitter magnitude")
    p.add_argument("--s-scale", type=float, default=0.1,
                   help="sensitivity suite: additive-term magnitude")
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("sweep", help="run dependence experiments from a manifest")
    p.add_argument("--manifest", required=True)
    common(p)
    p.set_defaults(fn=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
