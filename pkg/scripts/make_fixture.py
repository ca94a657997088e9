"""Regenerate the synthetic fixture bundle under data/fixture/.

The bundle stands in for a real region: a five-year monthly history with
two annual targets, a determinant schema, a trained capacity model, a
projected future panel, a totals projection, and a scenario spec wiring
them together. Everything is seeded; rerunning the script reproduces the
same bytes, and the tests treat the files as static inputs.

Run from the repository root:

    python scripts/make_fixture.py
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from entrans import network, panel as panel_mod, scenario  # noqa: E402

FIXTURE_DIR = ROOT / "data" / "fixture"
SEED = 7
HISTORY_START = 2016 * 12  # 2016-01, serial months
HISTORY_MONTHS = 60  # through 2020-12
FUTURE_MONTHS = 60  # 2021-01 through 2025-12
ANCHOR_SHARE = 0.065


def month_label(serial: int) -> str:
    return f"{serial // 12:04d}-{serial % 12 + 1:02d}"


def determinant_rows(count: int, offset: int = 0):
    """Deterministic synthetic determinants; `offset` continues the series."""
    rng = np.random.default_rng([SEED, 1])
    noise = rng.normal(0.0, 1.0, size=(HISTORY_MONTHS + FUTURE_MONTHS, 3))
    rows = []
    for i in range(offset, offset + count):
        gdp = 100.0 * 1.004**i * (1.0 + 0.002 * noise[i, 0])
        ir = 0.02 + 0.002 * (i // 24)
        solar = 170.0 + 40.0 * np.sin(2.0 * np.pi * (i % 12 - 5) / 12.0) + 2.0 * noise[i, 1]
        fuel = 60.0 * 1.002**i * (1.0 + 0.004 * noise[i, 2])
        market = "regulated" if i < 30 else "liberalized"
        rows.append(
            {
                "GDP": round(gdp, 4),
                "IR": round(ir, 4),
                "SOLAR": round(solar, 4),
                "FUEL": round(fuel, 4),
                "MARKET": market,
            }
        )
    return rows


def latent_capacity(row: dict, i: int) -> float:
    bump = 6.0 if row["MARKET"] == "liberalized" else 0.0
    return 60.0 + 1.1 * (row["GDP"] - 100.0) + 0.15 * (170.0 - row["FUEL"]) + bump


def latent_production(row: dict, i: int) -> float:
    return 140.0 + 2.2 * (row["GDP"] - 100.0) + 0.08 * (row["SOLAR"] - 170.0)


def write_history():
    rows = determinant_rows(HISTORY_MONTHS)
    header = ["month", "GDP", "IR", "SOLAR", "FUEL", "MARKET", "RNWXYEAR", "RNCAP"]
    lines = [",".join(header)]
    for i, row in enumerate(rows):
        serial = HISTORY_START + i
        cells = [month_label(serial)] + [str(row[c]) for c in header[1:6]]
        if serial % 12 == 11:  # December anchor
            cells.append(str(round(latent_production(row, i), 4)))
            cells.append(str(round(latent_capacity(row, i), 4)))
        else:
            cells.extend(["", ""])
        lines.append(",".join(cells))
    (FIXTURE_DIR / "history.csv").write_text("\n".join(lines) + "\n")


def write_future_panel():
    rows = determinant_rows(FUTURE_MONTHS, offset=HISTORY_MONTHS)
    header = ["month", "GDP", "IR", "SOLAR", "FUEL", "MARKET"]
    lines = [",".join(header)]
    for i, row in enumerate(rows):
        serial = HISTORY_START + HISTORY_MONTHS + i
        cells = [month_label(serial)] + [str(row[c]) for c in header[1:]]
        lines.append(",".join(cells))
    (FIXTURE_DIR / "fixture.panel.csv").write_text("\n".join(lines) + "\n")


def write_schema():
    schema = (
        panel_mod.DeterminantSpec(id="GDP", projection_rule="historical_growth", unit="index"),
        panel_mod.DeterminantSpec(id="IR", projection_rule="hold_constant", unit="rate"),
        panel_mod.DeterminantSpec(id="SOLAR", projection_rule="hold_constant", unit="hours"),
        panel_mod.DeterminantSpec(id="FUEL", projection_rule="historical_growth", unit="USD"),
        panel_mod.DeterminantSpec(
            id="MARKET",
            kind="categorical",
            projection_rule="hold_constant",
            categories=("regulated", "liberalized"),
        ),
    )
    panel_mod.save_schema(schema, FIXTURE_DIR / "fixture.schema.json")
    return schema


def train_model(schema):
    raw = panel_mod.load_panel(FIXTURE_DIR / "history.csv", schema, region="fixture")
    panel = panel_mod.standardize(raw)
    rows = panel_mod.build_labeled_rows(panel, "RNCAP")
    plan = panel_mod.SplitPlan("random_fraction", fraction=0.95, seed=SEED)
    train_rows, holdout_rows = panel_mod.split(rows, plan)
    # raw capacity labels sit near 100; standardized labels keep the
    # optimizer's bounded steps effective
    config = network.NetworkConfig(
        input_size=rows.x.shape[1], epochs=3000, seed=SEED, standardize_labels=True
    )
    model = network.build_network(config)
    model, trace = network.train(
        model,
        network.TrainingBatch(train_rows.x, train_rows.y),
        network.TrainingBatch(holdout_rows.x, holdout_rows.y),
        config,
    )
    preprocessing = {
        "input_columns": list(rows.columns),
        "standardization": {k: list(v) for k, v in panel.standardization.items()},
        "target": "RNCAP",
    }
    network.save_model(model, FIXTURE_DIR / "fixture.model.json", preprocessing=preprocessing)
    print(f"model: train MAPE {trace.train_mape:.3f}% holdout {trace.holdout_mape:.3f}%")
    return model, preprocessing


def write_totals_and_spec(model, preprocessing, schema):
    future = panel_mod.load_panel(FIXTURE_DIR / "fixture.panel.csv", schema, region="fixture")
    baseline = scenario.run_baseline(model, future, preprocessing, "capacity")
    anchor_total = baseline[2021] / ANCHOR_SHARE
    totals = {
        year: round(anchor_total * 1.02 ** (year - 2021), 4) for year in range(2021, 2026)
    }
    with open(FIXTURE_DIR / "totals.csv", "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["year", "total"])
        for year, total in totals.items():
            writer.writerow([year, total])
    spec = {
        "format": "entrans-scenario",
        "version": 1,
        "region": "fixture",
        "target_kind": "capacity",
        "policy_start": 2021,
        "horizon": 2025,
        "scorecards": {"ceiling": "builtin:singapore", "speed": "builtin:singapore"},
        "totals_file": "totals.csv",
        "baseline": {
            "model": "fixture.model.json",
            "panel": "fixture.panel.csv",
            "schema": "fixture.schema.json",
        },
    }
    (FIXTURE_DIR / "fixture.spec.json").write_text(
        json.dumps(spec, indent=2, sort_keys=True) + "\n"
    )
    print(f"baseline 2021: {baseline[2021]:.4f}, totals 2021: {totals[2021]:.4f}")
    print(f"baseline 2025: {baseline[2025]:.4f}")


def main():
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    write_history()
    write_future_panel()
    schema = write_schema()
    model, preprocessing = train_model(schema)
    write_totals_and_spec(model, preprocessing, schema)
    print(f"fixture written to {FIXTURE_DIR}")


if __name__ == "__main__":
    main()
