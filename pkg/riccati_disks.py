#!/usr/bin/env python3
"""
Riccati invariant disks - command line interface

Propagates circles under constant potentials, runs the shipped enclosure
scenarios and writes trajectories, oracle solutions and containment
reports as CSV/JSON.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np
import pandas as pd

from src.config import RunConfig, load_run_config
from src.core.disk import ComplexValue
from src.core.errors import BlowUp, DegenerateToLine, EngineError
from src.core.grid import Grid
from src.flow.moebius import ConstantFlow, circle_track
from src.logger import get_engine_logger, scenario_context
from src.oracle.containment import containment_report
from src.oracle.integrate import integrate_riccati
from src.scenarios import CheckOptions, build_scenario, list_scenarios, run_checks, run_scenario

logger = logging.getLogger("src.cli")

EXIT_ENGINE = 1
EXIT_DEGENERATE = 2
EXIT_CONTAINMENT = 3
EXIT_BLOWUP = 4

TRAJECTORY_COLUMNS = ["x", "alpha", "beta", "R", "D", "case", "jump"]
FLOAT_FORMAT = "%.15g"


def parse_complex(text: str) -> complex:
    """'re,im' or a single real number."""
    return ComplexValue.parse(text).to_complex()


def parse_range(text: str) -> np.ndarray:
    """'start:stop:step' with stop included, or a comma-separated list."""
    if ":" not in text:
        return np.array([float(v) for v in text.split(",")])
    parts = [float(v) for v in text.split(":")]
    if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
        raise argparse.ArgumentTypeError(f"Range must be start:stop:step with step > 0, got {text!r}")
    start, stop, step = parts
    n = int(round((stop - start) / step)) + 1
    return start + step * np.arange(n)


def write_table(rows, path, columns=None):
    frame = pd.DataFrame(rows, columns=columns)
    if path is None:
        frame.to_csv(sys.stdout, index=False, float_format=FLOAT_FORMAT)
    else:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
        logger.info(f"Wrote {len(frame)} rows to {path}")


def write_json(data, path):
    text = json.dumps(data, indent=2, default=str)
    if path is None:
        print(text)
    else:
        Path(path).write_text(text + "\n")
        logger.info(f"Wrote {path}")


def write_sidecar(output, config: dict):
    """Resolved configuration next to every file output."""
    if output is not None:
        write_json(config, f"{output}.config.json")


def _scenario_params(args) -> dict:
    params = {}
    for name in ("c", "T0"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    if getattr(args, "airy_offset", None) is not None:
        params["airy_b_offset"] = args.airy_offset
    if getattr(args, "wkb_modification", None) is not None:
        params["wkb_c_modification"] = args.wkb_modification
    return params


def _run_config(args) -> RunConfig:
    return load_run_config(scenario=args.scenario, variant=args.variant, grid_size=args.grid,
                           seeds=getattr(args, "seeds", None),
                           containment_tol=getattr(args, "containment_tol", None),
                           oracle_tol=args.oracle_tol,
                           output_format=getattr(args, "format", None), output=args.output,
                           workers=getattr(args, "workers", None))


def cmd_flow(args):
    """Circles under the constant-potential flow"""
    flow = ConstantFlow(args.zeta)
    rows = circle_track(flow, args.m0, args.R0, [float(x) for x in args.xs])
    write_table(rows, args.output, ["x", "re_m", "im_m", "R", "degenerate"])
    write_sidecar(args.output, {"command": "flow", "zeta": [flow.zeta.real, flow.zeta.imag],
                                "m0": [args.m0.real, args.m0.imag], "R0": args.R0,
                                "xs": [float(x) for x in args.xs]})
    degenerate = [row["x"] for row in rows if row["degenerate"]]
    if degenerate:
        print(f"Circle degenerates to a line (x={degenerate[0]:.12g})", file=sys.stderr)
        return EXIT_DEGENERATE
    return 0


def cmd_estimate(args):
    """Run a scenario and check containment"""
    config = _run_config(args)
    scenario = build_scenario(config.scenario, config.variant, **_scenario_params(args))
    run = run_scenario(scenario, config.grid_size)

    report = {"scenario": scenario.name, "seeds": config.seeds, "tol": config.containment_tol}
    passed, worst, per_trajectory = True, np.inf, {}
    with scenario_context(scenario.name):
        for label, traj in run.trajectories.items():
            cr = containment_report(traj, run.V, config.seeds, config.containment_tol,
                                    config.oracle_tol, workers=config.workers,
                                    progress=args.progress)
            per_trajectory[label] = cr.to_dict()
            passed = passed and cr.passed
            worst = min(worst, cr.worst_margin)
        report.update({"worst_margin": worst, "pass": passed, "trajectories": per_trajectory,
                       "constants": run.trajectory.constants})
        if args.checks:
            skip = {"containment"}
            names = [n for n in scenario.doc.checks if n not in skip]
            results = run_checks(run, names, CheckOptions(config.seeds, config.containment_tol,
                                                          config.oracle_tol, config.workers))
            report["checks"] = [r.to_dict() for r in results]

    output = config.output
    if config.output_format == "json":
        data = {"report": report,
                "trajectories": {label: t.rows() for label, t in run.trajectories.items()}}
        write_json(data, output)
    else:
        for label, traj in run.trajectories.items():
            path = output
            if output is not None and label not in ("main", "upper"):
                path = str(Path(output).with_suffix(f".{label}.csv"))
            if output is None and len(run.trajectories) > 1:
                print(f"# {label}")
            write_table(traj.rows(), path, TRAJECTORY_COLUMNS)
        report_path = None if output is None else str(Path(output).with_suffix(".report.json"))
        write_json(report, report_path)
    write_sidecar(output, {"command": "estimate", "config": config.model_dump(),
                           "scenario": scenario.doc.model_dump()})

    if not passed:
        failures = [r["first_failure_x"] for r in per_trajectory.values()
                    if r["first_failure_x"] is not None]
        print(f"Containment fails (x={min(failures):.12g}), worst margin {worst:.3e}", file=sys.stderr)
        return EXIT_CONTAINMENT
    return 0


def cmd_oracle(args):
    """Reference Riccati solution for a scenario's potential"""
    config = _run_config(args)
    scenario = build_scenario(config.scenario, config.variant, **_scenario_params(args))
    a, b = scenario.doc.domain
    sol = integrate_riccati(scenario.V, args.y0, Grid.uniform(a, b, config.grid_size),
                            config.oracle_tol)
    write_table(sol.rows(), config.output, ["x", "re_y", "im_y"])
    write_sidecar(config.output, {"command": "oracle", "config": config.model_dump(),
                                  "y0": [args.y0.real, args.y0.imag],
                                  "scenario": scenario.doc.model_dump()})
    return 0


def cmd_list_scenarios(args):
    """List the shipped scenarios"""
    print(f"\n{'=' * 70}")
    print("SCENARIOS")
    print(f"{'=' * 70}")
    for name in list_scenarios():
        doc = build_scenario(name).doc
        print(f"{name:<22} {doc.estimate:<20} {doc.description}")
    print(f"{'=' * 70}\n")
    return 0


def _add_scenario_args(p):
    p.add_argument("--scenario", default="turning_point",
                   help="Scenario name or JSON file (default: turning_point)")
    p.add_argument("--variant", help="Scenario variant (turning_point: baseline, flipped, real_tail)")
    p.add_argument("--grid", type=int, help="Grid points (default: RICCATI_GRID or 2048)")
    p.add_argument("--oracle-tol", type=float, help="Oracle rtol/atol (default: 1e-10)")
    p.add_argument("-o", "--output", help="Output file (default: stdout)")
    p.add_argument("--c", type=float, help="Scenario constant c")
    p.add_argument("--T0", type=float, help="Initial T for total-variation scenarios")
    p.add_argument("--airy-offset", type=float, help="Airy slope offset in units of |b| (axis_crossing)")
    p.add_argument("--wkb-modification", type=float, help="WKB potential factor (axis_crossing)")


def build_parser():
    parser = argparse.ArgumentParser(
        description='Riccati invariant disks - rigorous enclosures for y\' = V - y^2',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s flow --zeta 2,-1 --m0 0,0 --R0 1 --xs 0:1:0.1
  %(prog)s estimate --scenario turning_point --variant baseline -o tp.csv
  %(prog)s estimate --scenario negative_increasing --c 1.5
  %(prog)s oracle --scenario turning_point --y0 0,2.5
  %(prog)s list-scenarios
        """
    )
    parser.add_argument("--log-level", default="INFO",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Log level (default: INFO)")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    flow_parser = subparsers.add_parser("flow", help="Propagate a circle under a constant potential")
    flow_parser.add_argument("--zeta", type=parse_complex, required=True, help="sqrt(V) as re,im")
    flow_parser.add_argument("--m0", type=parse_complex, required=True, help="Initial center as re,im")
    flow_parser.add_argument("--R0", type=float, required=True, help="Initial radius")
    flow_parser.add_argument("--xs", type=parse_range, required=True, help="start:stop:step or list")
    flow_parser.add_argument("-o", "--output", help="Output CSV (default: stdout)")

    est_parser = subparsers.add_parser("estimate", help="Run a scenario and verify containment")
    _add_scenario_args(est_parser)
    est_parser.add_argument("--seeds", type=int, help="Oracle seeds on the initial circle (default: 16)")
    est_parser.add_argument("--containment-tol", type=float, help="Containment tolerance (default: 1e-4)")
    est_parser.add_argument("--format", choices=["csv", "json"], help="Output format (default: csv)")
    est_parser.add_argument("--workers", type=int, help="Threads for oracle seeds (default: 1)")
    est_parser.add_argument("--checks", action="store_true", help="Also run the scenario's checks")
    est_parser.add_argument("--progress", action="store_true", help="Show a progress bar over seeds")

    oracle_parser = subparsers.add_parser("oracle", help="Reference Riccati solution")
    _add_scenario_args(oracle_parser)
    oracle_parser.add_argument("--y0", type=parse_complex, required=True, help="Initial value as re,im")

    subparsers.add_parser("list-scenarios", help="List shipped scenarios")
    return parser


COMMANDS = {
    "flow": cmd_flow,
    "estimate": cmd_estimate,
    "oracle": cmd_oracle,
    "list-scenarios": cmd_list_scenarios,
}


def main(argv=None):
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    get_engine_logger(getattr(logging, args.log_level))
    if args.command not in COMMANDS:
        parser.print_help()
        return EXIT_ENGINE
    try:
        return COMMANDS[args.command](args)
    except DegenerateToLine as e:
        print(f"Degenerate circle: {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    except BlowUp as e:
        print(f"Oracle blow-up: {e}", file=sys.stderr)
        return EXIT_BLOWUP
    except EngineError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ENGINE
    except ValueError as e:
        print(f"Invalid input: {e}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
