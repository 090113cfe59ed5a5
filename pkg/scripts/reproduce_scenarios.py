#!/usr/bin/env python3
"""Run every bundled scenario in both modes and write CSV/SVG/JSON artifacts.

Produces one output directory per scenario under --out, each containing
trajectory.csv, trajectory.svg, and outcome.json, plus a console summary of
outcomes and the dual-mode separation (per-step planar distance between the
cascade trajectory and the idealized self-steering reference).
"""

import argparse
from pathlib import Path

from fuzzydock.cli import load_scenario_file, write_outcome_json, write_trajectory_csv, write_trajectory_svg
from fuzzydock.simulation import Scenario, convergence_metric, run


def main() -> None:
    repo = Path(__file__).resolve().parent.parent
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scenarios", type=Path, default=repo / "scenarios")
    parser.add_argument("--out", type=Path, default=repo / "out")
    args = parser.parse_args()

    paths = sorted(args.scenarios.glob("*.json"))
    if not paths:
        raise SystemExit(f"no scenario files under {args.scenarios}")
    for path in paths:
        scenario = load_scenario_file(path)
        scenario = Scenario(
            scenario.initial, scenario.params, scenario.tolerances,
            scenario.max_steps, "both", scenario.label,
        )
        cascade, reference = run(scenario)
        out_dir = args.out / path.stem
        out_dir.mkdir(parents=True, exist_ok=True)
        write_trajectory_csv(out_dir / "trajectory.csv", [cascade, reference])
        write_outcome_json(out_dir / "outcome.json", scenario.label, [cascade, reference])
        write_trajectory_svg(out_dir / "trajectory.svg", scenario.label, [cascade, reference])
        report = convergence_metric(cascade, reference)
        print(
            f"{path.stem}: cascade {cascade.outcome.kind} in {cascade.outcome.steps} steps, "
            f"reference {reference.outcome.kind} in {reference.outcome.steps} steps, "
            f"peak separation {max(report.distances):.2f}, "
            f"last-10-step mean {report.tail_mean:.2f} -> {out_dir}"
        )


if __name__ == "__main__":
    main()
