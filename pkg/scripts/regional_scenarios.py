"""Compose the three reference regions' diffusion overlays side by side.

Uses the builtin scorecards to derive each region's intensity factors,
anchors every curve to a stylized baseline share, and prints the derived
(ceiling, speed) parameters next to the published constants, plus the
share trajectories to the horizon. Real regional baselines would come
from trained models; this script isolates the policy-overlay arithmetic.

    python scripts/regional_scenarios.py [--target production|capacity]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from entrans import scoring  # noqa: E402
from entrans.diffusion import PolicyIntensity, ScenarioBounds  # noqa: E402
from entrans.scenario import ScenarioSpec, compose_scenarios  # noqa: E402

# Stylized starting shares, roughly matching each region's renewable
# penetration at the start of the forecast window.
START_SHARES = {"singapore": 0.005, "london": 0.03, "california": 0.20}
POLICY_START = 2020
HORIZON = 2025


def region_report(region: str, target_kind: str):
    f_c = scoring.compute_factor(scoring.builtin_scorecard(region, "ceiling")).value
    f_p = scoring.compute_factor(scoring.builtin_scorecard(region, "speed")).value
    totals = {year: 1000.0 for year in range(POLICY_START, HORIZON + 1)}
    baseline = {POLICY_START: START_SHARES[region] * totals[POLICY_START]}
    bounds = ScenarioBounds(target_kind)
    if START_SHARES[region] >= bounds.c_base:
        bounds = ScenarioBounds(target_kind, c_base=START_SHARES[region] + 0.05)
    spec = ScenarioSpec(
        region=region,
        target_kind=target_kind,
        policy_start=POLICY_START,
        horizon=HORIZON,
        intensity=PolicyIntensity(f_c, f_p, source=f"builtin:{region}"),
        totals=totals,
        bounds=bounds,
    )
    return compose_scenarios(spec, baseline)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--target", default="production", choices=["production", "capacity"]
    )
    args = parser.parse_args()

    print(f"target: {args.target}, window {POLICY_START} -> {HORIZON}\n")
    print(f"{'region':<12} {'f_c':>6} {'f_p':>6} {'c':>8} {'p':>8}")
    reports = {}
    for region in ("singapore", "london", "california"):
        report = region_report(region, args.target)
        reports[region] = report
        params = report.params["policy"]
        print(
            f"{region:<12} {report.intensity.f_c:>6.3f} {report.intensity.f_p:>6.3f} "
            f"{params.c:>8.4f} {params.p:>8.4f}"
        )
    print("\npolicy-scenario share by year:")
    years = reports["singapore"].years
    print(f"{'year':<6}" + "".join(f"{r:>12}" for r in reports))
    for i, year in enumerate(years):
        row = "".join(f"{reports[r].policy_share[i]:>12.4f}" for r in reports)
        print(f"{year:<6}{row}")


if __name__ == "__main__":
    main()
