"""Regenerate the JSON fixtures consumed by the frontend test suite.

The explorer's client-side factor preview and chart builders are tested
against values produced by the engine itself (the same code paths the
HTTP API serves), so the vitest suite stays hermetic while still proving
agreement with the server arithmetic. Rerun after changing the scoring
rules, report schema, or the shipped fixture bundle.

    python scripts/export_ui_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

import dataclasses  # noqa: E402

from entrans import scenario, scoring  # noqa: E402
from entrans.diffusion import PolicyIntensity  # noqa: E402

FIXTURE_DIR = ROOT / "data" / "fixture"
OUT_DIR = ROOT / "frontend" / "tests" / "fixtures"


def factor_sweep() -> dict:
    cards = {}
    base_factors = {}
    sweep = []
    for region in scoring.BUILTIN_REGIONS:
        for kind in scoring.FACTOR_KINDS:
            card = scoring.builtin_scorecard(region, kind)
            key = f"{region}-{kind}"
            cards[key] = scoring.card_to_doc(card)
            base_factors[key] = scoring.compute_factor(card).value
            for index in card.indices:
                if index.kind != scoring.FIVE_LEVEL:
                    continue
                for score in scoring.FIVE_LEVEL_SCORES:
                    entries = dict(card.entries)
                    entries[index.id] = score
                    edited = scoring.PolicyScorecard(
                        region=card.region,
                        factor_kind=card.factor_kind,
                        indices=card.indices,
                        entries=entries,
                    )
                    sweep.append(
                        {
                            "card": key,
                            "index_id": index.id,
                            "score": score,
                            "server_factor": scoring.compute_factor(edited).value,
                        }
                    )
    return {"cards": cards, "base_factors": base_factors, "sweep": sweep}


def compose_fixture_report(intensity=None, target=None) -> dict:
    doc = scenario.load_scenario_doc(FIXTURE_DIR / "fixture.spec.json")
    spec, baseline = scenario.resolve_spec(doc, base_dir=FIXTURE_DIR)
    if intensity is not None:
        spec = dataclasses.replace(
            spec, intensity=PolicyIntensity(*intensity, source="fixture-export")
        )
    report = scenario.compose_scenarios(spec, baseline)
    if target is not None:
        report = scenario.with_gap(
            report,
            scenario.analyze_gap(report, target, ceiling_headroom=spec.ceiling_headroom),
        )
    return scenario.report_to_doc(report)


def build_export_spec(report_doc: dict) -> dict:
    """The spec document the UI export produces from a report; must stay
    in sync with frontend/src/export.ts and the acceptance replay test."""
    return {
        "format": "entrans-scenario",
        "version": 1,
        "region": report_doc["region"],
        "target_kind": report_doc["target_kind"],
        "policy_start": report_doc["policy_start"],
        "horizon": report_doc["horizon"],
        "bounds": {
            k: v for k, v in report_doc["bounds"].items() if k != "target_kind"
        },
        "intensity": {
            "f_c": report_doc["intensity"]["f_c"],
            "f_p": report_doc["intensity"]["f_p"],
        },
        "totals": report_doc["totals"],
        "baseline": {"series": report_doc["baseline_input"]},
    }


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    write = lambda name, doc: (OUT_DIR / name).write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n"
    )
    write("factor_sweep.json", factor_sweep())
    # non-integral target: integral floats serialize as "450.0" in the
    # engine but "450" in the browser, which would make the byte-equality
    # fixtures trip on formatting rather than substance
    report = compose_fixture_report(target=450.5)
    write("report_fixture.json", report)
    write("report_full_intensity.json", compose_fixture_report(intensity=(1.0, 1.0)))
    write("report_zero_intensity.json", compose_fixture_report(intensity=(0.0, 0.0)))
    # canonical export bytes (no trailing newline: files as downloaded)
    (OUT_DIR / "export_expected.spec.json").write_text(
        json.dumps(build_export_spec(report), indent=2, sort_keys=True)
    )
    (OUT_DIR / "export_expected.report.json").write_text(
        json.dumps(report, indent=2, sort_keys=True)
    )
    print(f"fixtures written to {OUT_DIR}")


if __name__ == "__main__":
    main()
