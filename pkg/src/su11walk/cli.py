"""Command-line front end: run experiments, tabulate overlaps, cross-check,
and render charts.

Exit codes: 0 on success, 1 on runtime failure, 2 on usage or config
errors.  Outputs are deterministic: the same config always yields
byte-identical files.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .charts import ChartColumnError, render_chart
from .config import (
    ChartSpec,
    ConfigError,
    CrossCheckSuite,
    ExperimentConfig,
    OverlapConfig,
    load_json,
)
from .frames import site_angles, site_labels, su11_overlap
from .oracle import cross_check, default_suite
from .tables import ResultTable, atomic_write_text, read_table, render_csv, render_json, write_csv, write_json
from .walk import PHASE_MODES, run


def _metadata(name: str, config_json: str) -> dict[str, str]:
    digest = hashlib.sha256(config_json.encode("utf-8")).hexdigest()
    return {
        "generator": f"su11walk {__version__}",
        "table": name,
        "config": config_json,
        "config_sha256": digest,
    }


def _site_order(n_sites: int) -> np.ndarray:
    return np.argsort(site_labels(n_sites), kind="stable")


def _probabilities_table(cfg: ExperimentConfig, trajectories: dict) -> ResultTable:
    labels = site_labels(cfg.n_sites)
    angles = site_angles(cfg.n_sites)
    order = _site_order(cfg.n_sites)
    columns = ["site", "theta"] + [f"P[{label}]" for label in trajectories]
    rows = []
    for i in order:
        row = [int(labels[i]), float(angles[i])]
        row += [float(traj.probabilities[-1][i]) for traj in trajectories.values()]
        rows.append(row)
    name = f"{cfg.name}_probabilities"
    return ResultTable(name, columns, rows, _metadata(name, cfg.canonical_json()))


def _per_step_table(cfg: ExperimentConfig, trajectories: dict, kind: str) -> ResultTable:
    columns = ["step"] + [f"{kind}[{label}]" for label in trajectories]
    rows = []
    for l in range(cfg.steps + 1):
        row = [l]
        for traj in trajectories.values():
            value = traj.sigma[l] if kind == "sigma" else traj.entropy[l]
            row.append(float(value))
        rows.append(row)
    name = f"{cfg.name}_{kind}"
    return ResultTable(name, columns, rows, _metadata(name, cfg.canonical_json()))


def _gram_row_table(cfg: ExperimentConfig, trajectories: dict) -> ResultTable:
    labels = site_labels(cfg.n_sites)
    angles = site_angles(cfg.n_sites)
    order = _site_order(cfg.n_sites)
    columns = ["site", "theta"] + [f"abs_overlap[{label}]" for label in trajectories]
    rows = []
    for i in order:
        row = [int(labels[i]), float(angles[i])]
        for traj in trajectories.values():
            # |<site_0|site_n>| for site n = labels[i]
            row.append(float(abs(traj.gram.generator[(-labels[i]) % cfg.n_sites])))
        rows.append(row)
    name = f"{cfg.name}_gram_row"
    return ResultTable(name, columns, rows, _metadata(name, cfg.canonical_json()))


def _overlap_curve_table(cfg: ExperimentConfig, trajectories: dict) -> ResultTable:
    thetas = np.linspace(-np.pi, np.pi, 361)
    columns = ["theta"] + [f"abs_overlap[{label}]" for label in trajectories]
    rows = []
    frames = [traj.frame for traj in trajectories.values()]
    for theta in thetas:
        rows.append([float(theta)] + [float(abs(f.overlap(float(theta)))) for f in frames])
    name = f"{cfg.name}_overlap_curve"
    return ResultTable(name, columns, rows, _metadata(name, cfg.canonical_json()))


_TABLE_BUILDERS = {
    "probabilities": _probabilities_table,
    "sigma": lambda cfg, trajs: _per_step_table(cfg, trajs, "sigma"),
    "entropy": lambda cfg, trajs: _per_step_table(cfg, trajs, "entropy"),
    "gram-row": _gram_row_table,
    "overlap-curve": _overlap_curve_table,
}


def _write_table(table: ResultTable, out_dir: Path, fmt: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    suffix = "csv" if fmt == "csv" else "json"
    path = out_dir / f"{table.name.replace('-', '_')}.{suffix}"
    if fmt == "csv":
        write_csv(table, path)
    else:
        write_json(table, path)
    return path


def cmd_run(args) -> int:
    cfg = ExperimentConfig.from_dict(load_json(args.config))
    if args.mode:
        cfg = cfg.with_phase_mode(args.mode)
    trajectories = {
        frame.label: run(
            frame,
            cfg.n_sites,
            cfg.steps,
            start=cfg.start,
            coin_amps=cfg.coin_amps,
            phase_mode=cfg.phase_mode,
        )
        for frame in cfg.frames
    }
    for kind in cfg.outputs:
        table = _TABLE_BUILDERS[kind](cfg, trajectories)
        path = _write_table(table, Path(args.out), args.format)
        print(f"wrote {path}")
    return 0


def cmd_overlap(args) -> int:
    cfg = OverlapConfig.from_dict(load_json(args.config))
    thetas = np.linspace(-np.pi, np.pi, cfg.theta_points)
    columns = ["theta"]
    combos = [(k, r) for k in cfg.k_values for r in cfg.r_values]
    columns += [f"abs_overlap[k={k:g},r={r:g}]" for k, r in combos]
    rows = []
    for theta in thetas:
        row = [float(theta)]
        row += [float(abs(su11_overlap(k, r, float(theta)))) for k, r in combos]
        rows.append(row)
    name = f"{cfg.name}_overlap"
    table = ResultTable(name, columns, rows, _metadata(name, cfg.canonical_json()))
    path = _write_table(table, Path(args.out), args.format)
    print(f"wrote {path}")
    return 0


def cmd_crosscheck(args) -> int:
    if args.config:
        suite = CrossCheckSuite.from_dict(load_json(args.config))
    else:
        suite = CrossCheckSuite(name="default", cases=default_suite())
    reports = [cross_check(case) for case in suite.cases]
    for report in reports:
        if report.expected_divergence:
            status = "EXPECTED-DIVERGENCE"
        else:
            status = "PASS" if report.passed else "FAIL"
        print(f"{status} {report.case.label()} max|dP|={report.max_dp:.3e}")
    doc = {
        "generator": f"su11walk {__version__}",
        "suite": suite.name,
        "all_passed": all(r.passed for r in reports),
        "results": [r.to_dict() for r in reports],
    }
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{suite.name}_crosscheck.json"
    atomic_write_text(path, json.dumps(doc, indent=2) + "\n")
    print(f"wrote {path}")
    return 0 if doc["all_passed"] else 1


def cmd_chart(args) -> int:
    spec = ChartSpec.from_dict(load_json(args.config))
    table = read_table(spec.table)
    svg = render_chart(table, spec)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / spec.out_name
    atomic_write_text(path, svg)
    print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su11walk",
        description="Quantum walk on a circle of coherent-state sites.",
    )
    parser.add_argument("--version", action="version", version=f"su11walk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a walk experiment config and write tables")
    p_run.add_argument("--config", required=True, help="experiment config JSON")
    p_run.add_argument("--out", default=".", help="output directory")
    p_run.add_argument("--format", choices=("csv", "json"), default="csv")
    p_run.add_argument("--mode", choices=PHASE_MODES, default=None, help="phase-mode override")
    p_run.set_defaults(func=cmd_run)

    p_ov = sub.add_parser("overlap", help="tabulate overlap magnitudes over a (k, r) grid")
    p_ov.add_argument("--config", required=True, help="overlap config JSON")
    p_ov.add_argument("--out", default=".", help="output directory")
    p_ov.add_argument("--format", choices=("csv", "json"), default="csv")
    p_ov.set_defaults(func=cmd_overlap)

    p_cc = sub.add_parser("crosscheck", help="compare the engine against the ladder oracle")
    p_cc.add_argument("--config", default=None, help="suite JSON (default: built-in grid)")
    p_cc.add_argument("--out", default=".", help="output directory")
    p_cc.set_defaults(func=cmd_crosscheck)

    p_ch = sub.add_parser("chart", help="render a result table as an SVG chart")
    p_ch.add_argument("--config", required=True, help="chart spec JSON")
    p_ch.add_argument("--out", default=".", help="output directory")
    p_ch.set_defaults(func=cmd_chart)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ChartColumnError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure: bad data, I/O, numerical guardrails
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
