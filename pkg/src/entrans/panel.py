"""Determinant panels: loading, encoding, standardization, interpolation,
splitting, correlation screening, and forward projection.

A panel is a contiguous monthly table of determinant series for one
region, plus annual target values anchored to December of their year.
Panel files are comma-delimited with a header row::

    month,<determinant ids...>[,RNWXYEAR][,RNCAP]

Months are ISO "YYYY-MM". Target cells carry a value only on anchor
(December) rows and are blank otherwise. Categorical determinants are
one-hot encoded on load into one indicator column per declared category,
named "<id>=<category>".
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import PanelLoadError, PanelValueError, ProjectionError, SplitError

NUMERIC = "numeric"
CATEGORICAL = "categorical"
DETERMINANT_KINDS = (NUMERIC, CATEGORICAL)

OFFICIAL_SERIES = "official_series"
HOLD_CONSTANT = "hold_constant"
HISTORICAL_GROWTH = "historical_growth"
PROJECTION_RULES = (OFFICIAL_SERIES, HOLD_CONSTANT, HISTORICAL_GROWTH)

TARGET_IDS = ("RNWXYEAR", "RNCAP")
MONTH_COLUMN = "month"
ANCHOR_MONTH = 12  # annual targets anchor to December

RANDOM_FRACTION = "random_fraction"
LAST_YEARS = "last_years"
SPLIT_MODES = (RANDOM_FRACTION, LAST_YEARS)

SCHEMA_FORMAT = "entrans-schema"
SCHEMA_VERSION = 1

_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})$")


def month_serial(month: str) -> int:
    """Months since year 0, from an ISO 'YYYY-MM' stamp."""
    m = _MONTH_RE.match(month.strip())
    if not m:
        raise PanelLoadError(f"unparseable month {month!r}; expected YYYY-MM")
    year, mon = int(m.group(1)), int(m.group(2))
    if not 1 <= mon <= 12:
        raise PanelLoadError(f"month {month!r} has month number outside 1..12")
    return year * 12 + (mon - 1)


def serial_month(serial: int) -> str:
    return f"{serial // 12:04d}-{serial % 12 + 1:02d}"


def month_year(month: str) -> int:
    return month_serial(month) // 12


@dataclass(frozen=True)
class DeterminantSpec:
    """Schema entry for one determinant."""

    id: str
    kind: str = NUMERIC
    projection_rule: str = HOLD_CONSTANT
    unit: str = ""
    categories: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in DETERMINANT_KINDS:
            raise PanelLoadError(
                f"determinant {self.id!r} has unknown kind {self.kind!r}"
            )
        if self.projection_rule not in PROJECTION_RULES:
            raise PanelLoadError(
                f"determinant {self.id!r} has unknown projection rule "
                f"{self.projection_rule!r}"
            )
        if self.kind == CATEGORICAL and not self.categories:
            raise PanelLoadError(
                f"categorical determinant {self.id!r} must declare its category set"
            )

    def encoded_columns(self) -> tuple[str, ...]:
        if self.kind == NUMERIC:
            return (self.id,)
        return tuple(f"{self.id}={c}" for c in self.categories)


@dataclass(frozen=True)
class DeterminantPanel:
    """Immutable monthly panel after encoding."""

    region: str
    months: tuple[str, ...]
    column_names: tuple[str, ...]
    columns: dict[str, np.ndarray]
    targets: dict[str, tuple[tuple[int, float], ...]]  # target id -> ((year, value), ...)
    indicator_parents: dict[str, str]  # indicator column -> determinant id
    standardization: dict[str, tuple[float, float]] | None = None

    def matrix(self, columns: tuple[str, ...] | None = None) -> np.ndarray:
        names = columns if columns is not None else self.column_names
        missing = [c for c in names if c not in self.columns]
        if missing:
            raise PanelValueError(f"panel is missing columns {missing}")
        return np.column_stack([self.columns[c] for c in names])

    def numeric_columns(self) -> tuple[str, ...]:
        return tuple(c for c in self.column_names if c not in self.indicator_parents)

    def determinant_columns(self) -> dict[str, tuple[str, ...]]:
        """Encoded column names grouped by source determinant."""
        grouped: dict[str, list[str]] = {}
        for name in self.column_names:
            det = self.indicator_parents.get(name, name)
            grouped.setdefault(det, []).append(name)
        return {det: tuple(cols) for det, cols in grouped.items()}


@dataclass(frozen=True)
class SplitPlan:
    mode: str
    fraction: float = 0.95
    holdout_years: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.mode not in SPLIT_MODES:
            raise SplitError(f"unknown split mode {self.mode!r}; expected one of {SPLIT_MODES}")
        if self.mode == RANDOM_FRACTION and not 0.0 < self.fraction <= 1.0:
            raise SplitError(f"training fraction {self.fraction} outside (0, 1]")
        if self.mode == LAST_YEARS and self.holdout_years < 1:
            raise SplitError(f"holdout years {self.holdout_years} must be positive")


@dataclass(frozen=True)
class LabelSeries:
    """Monthly labels interpolated between annual anchors."""

    target: str
    months: tuple[str, ...]
    values: np.ndarray


@dataclass(frozen=True)
class LabeledRows:
    """Training-ready rows: one determinant vector and one label per month."""

    target: str
    months: tuple[str, ...]
    columns: tuple[str, ...]
    x: np.ndarray  # (rows, columns)
    y: np.ndarray  # (rows, 1)

    def __len__(self) -> int:
        return len(self.months)


@dataclass(frozen=True)
class ScreeningReport:
    target: str
    threshold: float
    retained: tuple[str, ...]
    dropped: tuple[tuple[str, float], ...]  # (determinant id, correlation)
    warning: str | None = None


def load_schema(path) -> tuple[DeterminantSpec, ...]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise PanelLoadError(f"cannot read schema file {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != SCHEMA_FORMAT:
        raise PanelLoadError(f"{path} is not a determinant schema file")
    if doc.get("version") != SCHEMA_VERSION:
        raise PanelLoadError(
            f"schema file {path} has version {doc.get('version')!r}, "
            f"this build reads version {SCHEMA_VERSION}"
        )
    specs = []
    seen = set()
    for item in doc.get("determinants", []):
        spec = DeterminantSpec(
            id=str(item["id"]),
            kind=str(item.get("kind", NUMERIC)),
            projection_rule=str(item.get("projection_rule", HOLD_CONSTANT)),
            unit=str(item.get("unit", "")),
            categories=tuple(item.get("categories", ())),
        )
        if spec.id in seen:
            raise PanelLoadError(f"duplicate determinant id {spec.id!r} in schema")
        seen.add(spec.id)
        specs.append(spec)
    return tuple(specs)


def save_schema(specs, path) -> None:
    doc = {
        "format": SCHEMA_FORMAT,
        "version": SCHEMA_VERSION,
        "determinants": [
            {
                "id": s.id,
                "kind": s.kind,
                "projection_rule": s.projection_rule,
                "unit": s.unit,
                **({"categories": list(s.categories)} if s.kind == CATEGORICAL else {}),
            }
            for s in specs
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _read_rows(source) -> list[list[str]]:
    if hasattr(source, "read"):
        return [row for row in csv.reader(source)]
    try:
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return [row for row in csv.reader(fh)]
    except OSError as exc:
        raise PanelLoadError(f"cannot read panel file {source}: {exc}") from exc


def load_panel(source, schema, region: str | None = None) -> DeterminantPanel:
    """Load and validate a raw (unscaled) panel from a delimited file.

    Every structural violation is reported with the offending row (by line
    number and month) and column.
    """
    rows = _read_rows(source)
    if not rows:
        raise PanelLoadError("panel file is empty")
    header, data = rows[0], rows[1:]
    if not data:
        raise PanelLoadError("panel file has a header but no rows")
    if not header or header[0] != MONTH_COLUMN:
        raise PanelLoadError(
            f"first column must be {MONTH_COLUMN!r}, got {header[0] if header else None!r}"
        )
    specs = {s.id: s for s in schema}
    target_cols = [name for name in header[1:] if name in TARGET_IDS]
    det_cols = [name for name in header[1:] if name not in TARGET_IDS]
    unknown = [name for name in det_cols if name not in specs]
    if unknown:
        raise PanelLoadError(f"unknown determinant columns {unknown} not in the schema")
    missing = [sid for sid in specs if sid not in det_cols]
    if missing:
        raise PanelLoadError(f"panel is missing determinant columns {missing}")
    col_index = {name: i for i, name in enumerate(header)}

    months: list[str] = []
    serials: list[int] = []
    raw: dict[str, list] = {name: [] for name in det_cols}
    target_values: dict[str, dict[int, float]] = {t: {} for t in target_cols}
    for line_no, row in enumerate(data, start=2):
        if len(row) != len(header):
            raise PanelLoadError(
                f"row {line_no} has {len(row)} cells, header has {len(header)}"
            )
        month = row[0].strip()
        try:
            serial = month_serial(month)
        except PanelLoadError as exc:
            raise PanelLoadError(f"row {line_no}: {exc}") from exc
        if serials:
            if serial == serials[-1]:
                raise PanelLoadError(f"row {line_no}: duplicate month {month}")
            if serial < serials[-1]:
                raise PanelLoadError(
                    f"row {line_no}: month {month} is out of order (after "
                    f"{serial_month(serials[-1])})"
                )
            if serial > serials[-1] + 1:
                raise PanelLoadError(
                    f"row {line_no}: gap before {month}; missing "
                    f"{serial_month(serials[-1] + 1)}"
                )
        serials.append(serial)
        months.append(serial_month(serial))
        for name in det_cols:
            cell = row[col_index[name]].strip()
            spec = specs[name]
            if spec.kind == NUMERIC:
                try:
                    raw[name].append(float(cell))
                except ValueError:
                    raise PanelLoadError(
                        f"row {line_no} ({month}), column {name!r}: "
                        f"unparseable numeric cell {cell!r}"
                    ) from None
            else:
                if cell not in spec.categories:
                    raise PanelLoadError(
                        f"row {line_no} ({month}), column {name!r}: category "
                        f"{cell!r} not in declared set {list(spec.categories)}"
                    )
                raw[name].append(cell)
        for target in target_cols:
            cell = row[col_index[target]].strip()
            if cell == "":
                continue
            if serial % 12 + 1 != ANCHOR_MONTH:
                raise PanelLoadError(
                    f"row {line_no} ({month}), column {target!r}: target values "
                    f"belong on December anchor rows only"
                )
            try:
                target_values[target][serial // 12] = float(cell)
            except ValueError:
                raise PanelLoadError(
                    f"row {line_no} ({month}), column {target!r}: "
                    f"unparseable numeric cell {cell!r}"
                ) from None

    columns: dict[str, np.ndarray] = {}
    column_names: list[str] = []
    indicator_parents: dict[str, str] = {}
    for name in det_cols:
        spec = specs[name]
        if spec.kind == NUMERIC:
            columns[name] = np.asarray(raw[name], dtype=float)
            column_names.append(name)
        else:
            for category in spec.categories:
                col = f"{name}={category}"
                columns[col] = np.asarray(
                    [1.0 if v == category else 0.0 for v in raw[name]]
                )
                column_names.append(col)
                indicator_parents[col] = name
    targets = {
        t: tuple(sorted(target_values[t].items()))
        for t in target_cols
        if target_values[t]
    }
    if region is None:
        region = Path(source).stem if not hasattr(source, "read") else ""
    return DeterminantPanel(
        region=region,
        months=tuple(months),
        column_names=tuple(column_names),
        columns=columns,
        targets=targets,
        indicator_parents=indicator_parents,
    )


def standardize(panel: DeterminantPanel) -> DeterminantPanel:
    """Scale every numeric column to (x - mean) / stddev (population
    statistics), keeping the statistics for inverse use. Indicator columns
    pass through untouched. Idempotent on already-standardized data."""
    if len(panel.months) < 2:
        raise PanelValueError("standardization needs at least 2 rows")
    stats: dict[str, tuple[float, float]] = {}
    degenerate: list[str] = []
    columns = dict(panel.columns)
    for name in panel.numeric_columns():
        values = panel.columns[name]
        mean = float(np.mean(values))
        std = float(np.std(values))
        if std == 0.0:
            degenerate.append(name)
            continue
        stats[name] = (mean, std)
        columns[name] = (values - mean) / std
    if degenerate:
        raise PanelValueError(
            f"zero-variance columns {degenerate}: drop them or mark their "
            f"determinants hold_constant-only"
        )
    return DeterminantPanel(
        region=panel.region,
        months=panel.months,
        column_names=panel.column_names,
        columns=columns,
        targets=panel.targets,
        indicator_parents=panel.indicator_parents,
        standardization=stats,
    )


def apply_standardization(
    panel: DeterminantPanel, stats: dict[str, tuple[float, float]]
) -> DeterminantPanel:
    """Standardize with externally supplied statistics (a trained model's
    training statistics) instead of fitting new ones. Columns without
    statistics (indicators) pass through."""
    columns = dict(panel.columns)
    for name, (mean, std) in stats.items():
        if name in columns:
            columns[name] = (columns[name] - mean) / std
    return DeterminantPanel(
        region=panel.region,
        months=panel.months,
        column_names=panel.column_names,
        columns=columns,
        targets=panel.targets,
        indicator_parents=panel.indicator_parents,
        standardization={k: v for k, v in stats.items() if k in panel.columns},
    )


def destandardize(panel: DeterminantPanel) -> DeterminantPanel:
    """Invert standardize(), recovering the raw columns."""
    if panel.standardization is None:
        raise PanelValueError("panel carries no standardization statistics")
    columns = dict(panel.columns)
    for name, (mean, std) in panel.standardization.items():
        columns[name] = panel.columns[name] * std + mean
    return DeterminantPanel(
        region=panel.region,
        months=panel.months,
        column_names=panel.column_names,
        columns=columns,
        targets=panel.targets,
        indicator_parents=panel.indicator_parents,
        standardization=None,
    )


def interpolate_targets(panel: DeterminantPanel, target: str) -> LabelSeries:
    """Monthly labels from piecewise-linear interpolation between the
    annual December anchors. Months outside the anchor span are excluded."""
    anchors = panel.targets.get(target, ())
    if len(anchors) < 2:
        raise PanelValueError(
            f"target {target!r} has {len(anchors)} annual value(s); "
            f"interpolation needs at least 2"
        )
    anchor_serials = np.asarray(
        [year * 12 + (ANCHOR_MONTH - 1) for year, _ in anchors], dtype=float
    )
    anchor_values = np.asarray([value for _, value in anchors], dtype=float)
    serials = np.asarray([month_serial(m) for m in panel.months], dtype=float)
    inside = (serials >= anchor_serials[0]) & (serials <= anchor_serials[-1])
    if not inside.any():
        raise PanelValueError(
            f"no panel months fall between the {target!r} anchors"
        )
    values = np.interp(serials[inside], anchor_serials, anchor_values)
    months = tuple(m for m, keep in zip(panel.months, inside) if keep)
    return LabelSeries(target=target, months=months, values=values)


def build_labeled_rows(panel: DeterminantPanel, target: str) -> LabeledRows:
    """Pair each labeled month's determinant vector with its label."""
    labels = interpolate_targets(panel, target)
    index = {m: i for i, m in enumerate(panel.months)}
    rows = [index[m] for m in labels.months]
    x = panel.matrix()[rows, :]
    return LabeledRows(
        target=target,
        months=labels.months,
        columns=panel.column_names,
        x=x,
        y=labels.values.reshape(-1, 1),
    )


def _take(rows: LabeledRows, idx) -> LabeledRows:
    idx = np.asarray(idx, dtype=int)
    return LabeledRows(
        target=rows.target,
        months=tuple(rows.months[i] for i in idx),
        columns=rows.columns,
        x=rows.x[idx],
        y=rows.y[idx],
    )


def split(rows: LabeledRows, plan: SplitPlan) -> tuple[LabeledRows, LabeledRows]:
    """Disjoint, exhaustive train/holdout partition.

    random_fraction shuffles with the plan seed and keeps the first
    fraction of rows for training; last_years reserves every row from the
    final N calendar years for the holdout. Deterministic per seed.
    """
    n = len(rows)
    if n == 0:
        raise SplitError("cannot split an empty row set")
    if plan.mode == RANDOM_FRACTION:
        order = np.random.default_rng(plan.seed).permutation(n)
        n_train = int(round(plan.fraction * n))
        train_idx, holdout_idx = order[:n_train], order[n_train:]
    else:
        years = sorted({month_year(m) for m in rows.months})
        if plan.holdout_years >= len(years):
            raise SplitError(
                f"holdout of {plan.holdout_years} year(s) leaves no training "
                f"years out of {len(years)}"
            )
        holdout_set = set(years[-plan.holdout_years:])
        flags = np.asarray([month_year(m) in holdout_set for m in rows.months])
        train_idx = np.nonzero(~flags)[0]
        holdout_idx = np.nonzero(flags)[0]
    if len(train_idx) == 0:
        raise SplitError("split produced an empty training partition")
    if len(holdout_idx) == 0:
        raise SplitError("split produced an empty holdout partition")
    return _take(rows, train_idx), _take(rows, holdout_idx)


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    if np.std(a) == 0.0 or np.std(b) == 0.0:
        return 0.0
    return float(np.corrcoef(a, b)[0, 1])


def screen_correlation(
    panel: DeterminantPanel, target: str, threshold: float = 0.1
) -> ScreeningReport:
    """Keep determinants whose absolute Pearson correlation with the
    monthly label series reaches the threshold.

    A categorical determinant is judged by its strongest indicator column.
    An empty retained set is legal but flagged with a warning.
    """
    if not 0.0 <= threshold <= 1.0:
        raise PanelValueError(f"threshold {threshold} outside [0, 1]")
    labels = interpolate_targets(panel, target)
    index = {m: i for i, m in enumerate(panel.months)}
    rows = np.asarray([index[m] for m in labels.months], dtype=int)
    retained: list[str] = []
    dropped: list[tuple[str, float]] = []
    for det, cols in panel.determinant_columns().items():
        correlations = [
            _pearson(panel.columns[c][rows], labels.values) for c in cols
        ]
        best = max(correlations, key=abs)
        if abs(best) >= threshold:
            retained.append(det)
        else:
            dropped.append((det, best))
    warning = None
    if not retained:
        warning = (
            f"no determinant reaches |r| >= {threshold} against {target}; "
            f"the screen retained nothing"
        )
    return ScreeningReport(
        target=target,
        threshold=threshold,
        retained=tuple(retained),
        dropped=tuple(dropped),
        warning=warning,
    )


def select_determinants(
    panel: DeterminantPanel, determinants
) -> DeterminantPanel:
    """Panel restricted to the encoded columns of the given determinants
    (e.g. the retained set from a correlation screen)."""
    keep = set(determinants)
    grouped = panel.determinant_columns()
    unknown = sorted(keep - set(grouped))
    if unknown:
        raise PanelValueError(f"panel has no determinants {unknown}")
    names = tuple(
        c for c in panel.column_names if panel.indicator_parents.get(c, c) in keep
    )
    if not names:
        raise PanelValueError("selection would leave the panel with no columns")
    return DeterminantPanel(
        region=panel.region,
        months=panel.months,
        column_names=names,
        columns={c: panel.columns[c] for c in names},
        targets=panel.targets,
        indicator_parents={
            c: det for c, det in panel.indicator_parents.items() if c in names
        },
        standardization=None
        if panel.standardization is None
        else {c: s for c, s in panel.standardization.items() if c in names},
    )


def load_overrides(path, schema) -> dict[str, dict[str, str]]:
    """Official future series, same delimited shape as a panel but holding
    only future months and a subset of determinant columns."""
    rows = _read_rows(path)
    if not rows:
        raise PanelLoadError("override file is empty")
    header, data = rows[0], rows[1:]
    if not header or header[0] != MONTH_COLUMN:
        raise PanelLoadError(f"override file must start with a {MONTH_COLUMN!r} column")
    known = {s.id for s in schema}
    unknown = [name for name in header[1:] if name not in known]
    if unknown:
        raise PanelLoadError(f"override file names unknown determinants {unknown}")
    series: dict[str, dict[str, str]] = {name: {} for name in header[1:]}
    for line_no, row in enumerate(data, start=2):
        if len(row) != len(header):
            raise PanelLoadError(
                f"override row {line_no} has {len(row)} cells, header has {len(header)}"
            )
        try:
            month = serial_month(month_serial(row[0]))
        except PanelLoadError as exc:
            raise PanelLoadError(f"override row {line_no}: {exc}") from exc
        for name, cell in zip(header[1:], row[1:]):
            if cell.strip() == "":
                continue
            series[name][month] = cell.strip()
    return series


def _growth_rate(values: np.ndarray, det: str) -> float:
    """Geometric mean of month-over-month ratios; defined only for series
    that never cross or touch zero. Values are raw numbers recovered from
    the standardized panel, so zero is detected up to round-trip noise."""
    if len(values) < 2:
        raise ProjectionError(
            f"determinant {det!r}: historical growth needs at least 2 observations"
        )
    tol = float(np.max(np.abs(values))) * 1e-12
    if np.any(np.abs(values) <= tol):
        raise ProjectionError(
            f"determinant {det!r} contains zero values; growth rate undefined"
        )
    if np.any(np.sign(values) != np.sign(values[0])):
        raise ProjectionError(
            f"determinant {det!r} changes sign; growth rate undefined"
        )
    n = len(values)
    return float((values[-1] / values[0]) ** (1.0 / (n - 1)))


def project_determinants(
    panel: DeterminantPanel,
    schema,
    horizon: str,
    overrides: dict[str, dict[str, str]] | None = None,
) -> DeterminantPanel:
    """Extend a standardized panel month-by-month up to the horizon.

    Rules per determinant: official_series copies the supplied override,
    hold_constant repeats the last observed raw value, historical_growth
    compounds the geometric-mean monthly growth of the raw series. The
    projected raw values are then standardized with the panel's stored
    statistics, so the output feeds the same model unchanged.
    """
    if panel.standardization is None:
        raise ProjectionError(
            "projection needs a standardized panel (statistics are required "
            "to scale the projected values)"
        )
    overrides = overrides or {}
    last_serial = month_serial(panel.months[-1])
    horizon_serial = month_serial(horizon)
    if horizon_serial <= last_serial:
        raise ProjectionError(
            f"horizon {horizon} is not after the last observed month "
            f"{panel.months[-1]}"
        )
    future_months = tuple(
        serial_month(s) for s in range(last_serial + 1, horizon_serial + 1)
    )
    steps = len(future_months)
    raw = destandardize(panel)

    future: dict[str, np.ndarray] = {}
    for spec in schema:
        cols = spec.encoded_columns()
        if spec.projection_rule == OFFICIAL_SERIES:
            series = overrides.get(spec.id)
            if series is None:
                raise ProjectionError(
                    f"determinant {spec.id!r} projects from an official series "
                    f"but no override was supplied"
                )
            cells = []
            for month in future_months:
                if month not in series:
                    raise ProjectionError(
                        f"override for {spec.id!r} is missing month {month}"
                    )
                cells.append(series[month])
            stale = [m for m in series if month_serial(m) <= last_serial]
            if stale:
                raise ProjectionError(
                    f"override for {spec.id!r} contains non-future months {sorted(stale)}"
                )
            if spec.kind == NUMERIC:
                try:
                    future[spec.id] = np.asarray([float(c) for c in cells])
                except ValueError:
                    raise ProjectionError(
                        f"override for {spec.id!r} contains non-numeric cells"
                    ) from None
            else:
                bad = [c for c in cells if c not in spec.categories]
                if bad:
                    raise ProjectionError(
                        f"override for {spec.id!r} contains unknown categories {bad}"
                    )
                for category in spec.categories:
                    future[f"{spec.id}={category}"] = np.asarray(
                        [1.0 if c == category else 0.0 for c in cells]
                    )
        elif spec.projection_rule == HOLD_CONSTANT:
            for col in cols:
                future[col] = np.full(steps, raw.columns[col][-1])
        else:  # historical_growth
            if spec.kind == CATEGORICAL:
                raise ProjectionError(
                    f"categorical determinant {spec.id!r} cannot use historical "
                    f"growth; use hold_constant or official_series"
                )
            values = raw.columns[spec.id]
            rate = _growth_rate(values, spec.id)
            future[spec.id] = values[-1] * rate ** np.arange(1, steps + 1)

    missing = [c for c in panel.column_names if c not in future]
    if missing:
        raise ProjectionError(f"schema does not cover panel columns {missing}")
    scaled: dict[str, np.ndarray] = {}
    for name in panel.column_names:
        if name in panel.standardization:
            mean, std = panel.standardization[name]
            scaled[name] = (future[name] - mean) / std
        else:
            scaled[name] = future[name]
    return DeterminantPanel(
        region=panel.region,
        months=future_months,
        column_names=panel.column_names,
        columns=scaled,
        targets={},
        indicator_parents=panel.indicator_parents,
        standardization=panel.standardization,
    )
