import io
from pathlib import Path

import numpy as np
import pytest

from entrans import panel as panel_mod
from entrans.panel import DeterminantSpec

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "data" / "fixture"


def month_sequence(start: str, count: int) -> list[str]:
    first = panel_mod.month_serial(start)
    return [panel_mod.serial_month(s) for s in range(first, first + count)]


def panel_csv(
    months,
    columns: dict[str, list],
    targets: dict[str, dict[int, float]] | None = None,
) -> str:
    """Build panel file text from explicit columns and annual targets."""
    targets = targets or {}
    header = ["month", *columns, *targets]
    lines = [",".join(header)]
    for i, month in enumerate(months):
        row = [month] + [str(columns[c][i]) for c in columns]
        year, mon = month.split("-")
        for target, values in targets.items():
            if mon == "12" and int(year) in values:
                row.append(str(values[int(year)]))
            else:
                row.append("")
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


@pytest.fixture
def simple_schema():
    return (
        DeterminantSpec(id="GDP", projection_rule="historical_growth", unit="index"),
        DeterminantSpec(id="SOLAR", projection_rule="hold_constant", unit="hours"),
    )


@pytest.fixture
def simple_panel(simple_schema):
    """24 contiguous months with two numeric columns and a capacity target."""
    months = month_sequence("2018-01", 24)
    rng = np.random.default_rng(42)
    columns = {
        "GDP": [round(100.0 * 1.01**i, 6) for i in range(24)],
        "SOLAR": list(np.round(rng.uniform(150.0, 210.0, size=24), 4)),
    }
    text = panel_csv(months, columns, {"RNCAP": {2018: 100.0, 2019: 112.0}})
    return panel_mod.load_panel(io.StringIO(text), simple_schema, region="test")
