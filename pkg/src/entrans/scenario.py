"""End-to-end scenario composition and gap analysis.

Pipeline: a trained regressor predicts monthly output over a projected
determinant panel; the predictions aggregate to an annual absolute
baseline; the baseline share at the policy-start year anchors three
logistic curves (business-as-usual, policy, optimal) that share the same
starting point; shares times the total-consumption/total-capacity
projection give absolute trajectories. Gap analysis inverts the policy
curve to find the speed intensity needed to hit a target at the horizon.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import diffusion, network, panel as panel_mod, scoring
from .diffusion import (
    PRODUCTION,
    DiffusionParams,
    PolicyIntensity,
    RequiredIntensity,
    ScenarioBounds,
    apply_intensity,
    calibrate,
    intensity_for_ceiling,
    intensity_for_speed,
    invert_for_speed,
    s_curve,
)
from .errors import ScenarioError

class UnknownReferenceError(ScenarioError):
    """Spec references a model or panel that cannot be found."""


class InfeasibleAnchorError(ScenarioError):
    """Baseline share already at or above the business-as-usual ceiling."""


REPORT_FORMAT = "entrans-report"
REPORT_VERSION = 1
SCENARIO_FORMAT = "entrans-scenario"
SCENARIO_VERSION = 1

# Ceiling raise applied when a target sits at or above the policy ceiling:
# a logistic never attains its ceiling in finite time, so the required
# ceiling gets 5% headroom above the target share.
DEFAULT_CEILING_HEADROOM = 1.05

TABLE_TEXT = "table"
DELIMITED = "csv"
STRUCTURED_TEXT = "json"
_FORMAT_ALIASES = {
    "table": TABLE_TEXT,
    "table-text": TABLE_TEXT,
    "csv": DELIMITED,
    "delimited": DELIMITED,
    "json": STRUCTURED_TEXT,
    "structured-text": STRUCTURED_TEXT,
}


@dataclass(frozen=True)
class ScenarioSpec:
    """Resolved inputs for one scenario composition."""

    region: str
    target_kind: str
    policy_start: int
    horizon: int
    intensity: PolicyIntensity
    totals: dict[int, float]
    bounds: ScenarioBounds
    ceiling_headroom: float = DEFAULT_CEILING_HEADROOM

    def __post_init__(self):
        if self.horizon <= self.policy_start:
            raise ScenarioError(
                f"horizon {self.horizon} must be after policy start {self.policy_start}"
            )
        missing = [
            y for y in range(self.policy_start, self.horizon + 1) if y not in self.totals
        ]
        if missing:
            raise ScenarioError(f"totals projection is missing years {missing}")
        if self.ceiling_headroom <= 1.0:
            raise ScenarioError(
                f"ceiling headroom {self.ceiling_headroom} must exceed 1"
            )


@dataclass(frozen=True)
class TargetGap:
    target_value: float
    predicted_value: float
    shortfall: float
    required_f_p: RequiredIntensity
    required_f_c: RequiredIntensity | None = None


@dataclass(frozen=True)
class ScenarioReport:
    region: str
    target_kind: str
    policy_start: int
    horizon: int
    anchor_share: float
    intensity: PolicyIntensity
    bounds: ScenarioBounds
    params: dict[str, DiffusionParams]  # keys: baseline, policy, optimal
    years: tuple[int, ...]
    baseline: tuple[float, ...]
    policy: tuple[float, ...]
    optimal: tuple[float, ...]
    baseline_share: tuple[float, ...]
    policy_share: tuple[float, ...]
    optimal_share: tuple[float, ...]
    totals: dict[int, float]
    baseline_input: dict[int, float]
    gap: TargetGap | None = None


def run_baseline(
    model: network.NetworkModel,
    future_panel: panel_mod.DeterminantPanel,
    preprocessing: dict,
    target_kind: str,
) -> dict[int, float]:
    """Annual absolute baseline from monthly model predictions.

    The panel must hold raw determinant values; the model's stored input
    statistics are applied here so predictions always see the scale the
    model was trained on. Production (a flow) sums the 12 monthly values
    of each fully covered year; capacity (a stock) takes the December
    value.
    """
    if target_kind not in diffusion.TARGET_KINDS:
        raise ScenarioError(f"unknown target kind {target_kind!r}")
    columns = tuple(preprocessing["input_columns"])
    stats = {
        name: (float(pair[0]), float(pair[1]))
        for name, pair in preprocessing["standardization"].items()
    }
    raw = (
        panel_mod.destandardize(future_panel)
        if future_panel.standardization is not None
        else future_panel
    )
    missing = [c for c in columns if c not in raw.columns]
    if missing:
        raise ScenarioError(
            f"panel does not provide the model input columns {missing}"
        )
    x = raw.matrix(columns)
    for i, name in enumerate(columns):
        if name in stats:
            mean, std = stats[name]
            x[:, i] = (x[:, i] - mean) / std
    monthly = network.predict(model, x)[:, 0]

    by_year: dict[int, list[tuple[int, float]]] = {}
    for month, value in zip(raw.months, monthly):
        serial = panel_mod.month_serial(month)
        by_year.setdefault(serial // 12, []).append((serial % 12 + 1, float(value)))
    annual: dict[int, float] = {}
    for year, values in sorted(by_year.items()):
        if target_kind == PRODUCTION:
            if len(values) == 12:
                annual[year] = sum(v for _, v in values)
        else:
            december = [v for m, v in values if m == 12]
            if december:
                annual[year] = december[0]
    if not annual:
        raise ScenarioError(
            "no complete year in the panel; cannot aggregate a baseline"
        )
    return annual


def compose_scenarios(spec: ScenarioSpec, baseline: dict[int, float]) -> ScenarioReport:
    """Overlay the three co-anchored diffusion scenarios on a baseline.

    The anchor share is baseline(policy_start) / totals(policy_start); all
    three curves are calibrated to pass through it at t = 0, which makes
    the baseline <= policy <= optimal ordering hold pointwise and lets the
    policy curve collapse onto either end at intensity (0,0) or (1,1).
    """
    if spec.policy_start not in baseline:
        raise ScenarioError(
            f"baseline series does not cover the policy start year {spec.policy_start}"
        )
    bounds = spec.bounds
    anchor_value = baseline[spec.policy_start]
    if anchor_value <= 0.0:
        raise ScenarioError(
            f"baseline value {anchor_value} at {spec.policy_start} must be positive"
        )
    anchor_share = anchor_value / spec.totals[spec.policy_start]
    if anchor_share >= bounds.c_base:
        raise InfeasibleAnchorError(
            f"anchor share {anchor_share:.6f} is at or above the baseline ceiling "
            f"{bounds.c_base}; raise c_base (the region already exceeds the "
            f"business-as-usual saturation)"
        )
    anchor = (0.0, anchor_share)
    c_policy, p_policy = apply_intensity(bounds, spec.intensity)
    params = {
        "baseline": calibrate(bounds.c_base, bounds.p_base, anchor),
        "policy": calibrate(c_policy, p_policy, anchor),
        "optimal": calibrate(bounds.c_op, bounds.p_op, anchor),
    }
    years = tuple(range(spec.policy_start, spec.horizon + 1))
    t = np.asarray(years, dtype=float) - spec.policy_start
    totals = np.asarray([spec.totals[y] for y in years], dtype=float)
    shares = {name: s_curve(p, t) for name, p in params.items()}
    return ScenarioReport(
        region=spec.region,
        target_kind=spec.target_kind,
        policy_start=spec.policy_start,
        horizon=spec.horizon,
        anchor_share=anchor_share,
        intensity=spec.intensity,
        bounds=bounds,
        params=params,
        years=years,
        baseline=tuple(float(v) for v in shares["baseline"] * totals),
        policy=tuple(float(v) for v in shares["policy"] * totals),
        optimal=tuple(float(v) for v in shares["optimal"] * totals),
        baseline_share=tuple(float(v) for v in shares["baseline"]),
        policy_share=tuple(float(v) for v in shares["policy"]),
        optimal_share=tuple(float(v) for v in shares["optimal"]),
        totals={y: float(spec.totals[y]) for y in years},
        baseline_input={int(y): float(v) for y, v in sorted(baseline.items())},
    )


def analyze_gap(
    report: ScenarioReport,
    target_value: float,
    bounds: ScenarioBounds | None = None,
    totals: dict[int, float] | None = None,
    ceiling_headroom: float = DEFAULT_CEILING_HEADROOM,
) -> TargetGap:
    """Shortfall against a horizon target plus the intensity to close it.

    When the target share stays below the policy ceiling, the two-point
    logistic inversion yields the required speed and hence the required
    speed factor. When it reaches the ceiling, no speed suffices: the
    minimal ceiling factor (with headroom above the asymptote) is reported
    too, and the speed requirement is computed against that raised
    ceiling. Results beyond [0, 1] are flagged, never clamped.
    """
    if target_value <= 0.0:
        raise ScenarioError(f"target {target_value} must be positive")
    bounds = bounds if bounds is not None else report.bounds
    totals = totals if totals is not None else report.totals
    horizon = report.years[-1]
    predicted = report.policy[-1]
    shortfall = target_value - predicted
    target_share = target_value / totals[horizon]
    span_years = float(horizon - report.policy_start)
    anchor = (0.0, report.anchor_share)
    ceiling = report.params["policy"].c

    required_f_c: RequiredIntensity | None = None
    if target_share < ceiling:
        if target_share <= report.anchor_share:
            required_p = 0.0  # already met at the anchor; no growth needed
        else:
            required_p = invert_for_speed(ceiling, anchor, (span_years, target_share))
        required_f_p = intensity_for_speed(bounds, required_p)
    else:
        raised = target_share * ceiling_headroom
        required_f_c = intensity_for_ceiling(bounds, raised)
        required_p = invert_for_speed(raised, anchor, (span_years, target_share))
        required_f_p = intensity_for_speed(bounds, required_p)
        if not required_f_c.in_envelope:
            # The ceiling itself is beyond any policy, so the paired speed
            # requirement is unreachable as well.
            required_f_p = RequiredIntensity(value=required_f_p.value, in_envelope=False)
    return TargetGap(
        target_value=float(target_value),
        predicted_value=float(predicted),
        shortfall=float(shortfall),
        required_f_p=required_f_p,
        required_f_c=required_f_c,
    )


def with_gap(report: ScenarioReport, gap: TargetGap) -> ScenarioReport:
    return replace(report, gap=gap)


def _intensity_to_doc(intensity: PolicyIntensity) -> dict:
    return {"f_c": intensity.f_c, "f_p": intensity.f_p, "source": intensity.source}


def _bounds_to_doc(bounds: ScenarioBounds) -> dict:
    return {
        "target_kind": bounds.target_kind,
        "c_base": bounds.c_base,
        "c_op": bounds.c_op,
        "p_base": bounds.p_base,
        "p_op": bounds.p_op,
    }


def _required_to_doc(req: RequiredIntensity | None) -> dict | None:
    if req is None:
        return None
    return {"value": req.value, "in_envelope": req.in_envelope}


def report_to_doc(report: ScenarioReport) -> dict:
    gap = report.gap
    return {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "region": report.region,
        "target_kind": report.target_kind,
        "policy_start": report.policy_start,
        "horizon": report.horizon,
        "anchor_share": report.anchor_share,
        "intensity": _intensity_to_doc(report.intensity),
        "bounds": _bounds_to_doc(report.bounds),
        "params": {
            name: {"c": p.c, "p": p.p, "t0": p.t0} for name, p in report.params.items()
        },
        "years": list(report.years),
        "series": {
            "baseline": list(report.baseline),
            "policy": list(report.policy),
            "optimal": list(report.optimal),
        },
        "shares": {
            "baseline": list(report.baseline_share),
            "policy": list(report.policy_share),
            "optimal": list(report.optimal_share),
        },
        "totals": {str(y): v for y, v in sorted(report.totals.items())},
        "baseline_input": {str(y): v for y, v in sorted(report.baseline_input.items())},
        "gap": None
        if gap is None
        else {
            "target_value": gap.target_value,
            "predicted_value": gap.predicted_value,
            "shortfall": gap.shortfall,
            "required_f_p": _required_to_doc(gap.required_f_p),
            "required_f_c": _required_to_doc(gap.required_f_c),
        },
    }


def report_from_doc(doc: dict) -> ScenarioReport:
    if doc.get("format") != REPORT_FORMAT or doc.get("version") != REPORT_VERSION:
        raise ScenarioError("not a scenario report document")
    gap_doc = doc.get("gap")
    gap = None
    if gap_doc is not None:
        gap = TargetGap(
            target_value=float(gap_doc["target_value"]),
            predicted_value=float(gap_doc["predicted_value"]),
            shortfall=float(gap_doc["shortfall"]),
            required_f_p=RequiredIntensity(
                value=float(gap_doc["required_f_p"]["value"]),
                in_envelope=bool(gap_doc["required_f_p"]["in_envelope"]),
            ),
            required_f_c=None
            if gap_doc.get("required_f_c") is None
            else RequiredIntensity(
                value=float(gap_doc["required_f_c"]["value"]),
                in_envelope=bool(gap_doc["required_f_c"]["in_envelope"]),
            ),
        )
    intensity = PolicyIntensity(
        f_c=float(doc["intensity"]["f_c"]),
        f_p=float(doc["intensity"]["f_p"]),
        source=str(doc["intensity"].get("source", "")),
    )
    bounds = ScenarioBounds(
        target_kind=str(doc["bounds"]["target_kind"]),
        c_base=float(doc["bounds"]["c_base"]),
        c_op=float(doc["bounds"]["c_op"]),
        p_op=float(doc["bounds"]["p_op"]),
        p_base=float(doc["bounds"]["p_base"]),
    )
    params = {
        name: DiffusionParams(c=float(p["c"]), p=float(p["p"]), t0=float(p["t0"]))
        for name, p in doc["params"].items()
    }
    return ScenarioReport(
        region=str(doc["region"]),
        target_kind=str(doc["target_kind"]),
        policy_start=int(doc["policy_start"]),
        horizon=int(doc["horizon"]),
        anchor_share=float(doc["anchor_share"]),
        intensity=intensity,
        bounds=bounds,
        params=params,
        years=tuple(int(y) for y in doc["years"]),
        baseline=tuple(float(v) for v in doc["series"]["baseline"]),
        policy=tuple(float(v) for v in doc["series"]["policy"]),
        optimal=tuple(float(v) for v in doc["series"]["optimal"]),
        baseline_share=tuple(float(v) for v in doc["shares"]["baseline"]),
        policy_share=tuple(float(v) for v in doc["shares"]["policy"]),
        optimal_share=tuple(float(v) for v in doc["shares"]["optimal"]),
        totals={int(y): float(v) for y, v in doc["totals"].items()},
        baseline_input={int(y): float(v) for y, v in doc["baseline_input"].items()},
        gap=gap,
    )


def _emit_table(report: ScenarioReport) -> str:
    lines = [
        f"Scenario report: region={report.region} target={report.target_kind}",
        f"Policy window: {report.policy_start} -> {report.horizon} "
        f"(anchor share {report.anchor_share:.6f})",
        f"Intensity: f_c={report.intensity.f_c:.3f} f_p={report.intensity.f_p:.3f}",
        f"Bounds: c_base={report.bounds.c_base:g} c_op={report.bounds.c_op:g} "
        f"p_base={report.bounds.p_base:g} p_op={report.bounds.p_op:g}",
        "Curve parameters:",
    ]
    for name in ("baseline", "policy", "optimal"):
        p = report.params[name]
        lines.append(f"  {name:<9} c={p.c:.6f} p={p.p:.6f} t0={p.t0:.6f}")
    lines.append("")
    header = (
        f"  {'year':>6} {'baseline':>14} {'policy':>14} {'optimal':>14} "
        f"{'share_base':>11} {'share_pol':>11} {'share_opt':>11}"
    )
    lines.append(header)
    for i, year in enumerate(report.years):
        lines.append(
            f"  {year:>6} {report.baseline[i]:>14.4f} {report.policy[i]:>14.4f} "
            f"{report.optimal[i]:>14.4f} {report.baseline_share[i]:>11.6f} "
            f"{report.policy_share[i]:>11.6f} {report.optimal_share[i]:>11.6f}"
        )
    if report.gap is not None:
        g = report.gap
        lines.append("")
        lines.append("Gap to target:")
        lines.append(
            f"  target {g.target_value:.4f}  predicted {g.predicted_value:.4f}  "
            f"shortfall {g.shortfall:.4f}"
        )
        flag = "in envelope" if g.required_f_p.in_envelope else "OUT OF ENVELOPE"
        lines.append(f"  required f_p {g.required_f_p.value:.4f} ({flag})")
        if g.required_f_c is not None:
            flag = "in envelope" if g.required_f_c.in_envelope else "OUT OF ENVELOPE"
            lines.append(f"  required f_c {g.required_f_c.value:.4f} ({flag})")
    lines.append("")
    return "\n".join(lines)


def _emit_csv(report: ScenarioReport) -> str:
    doc = report_to_doc(report)
    meta = {k: v for k, v in doc.items() if k not in ("years", "series", "shares")}
    buf = io.StringIO()
    buf.write("#" + REPORT_FORMAT + " ")
    buf.write(json.dumps(meta, sort_keys=True, separators=(",", ":")))
    buf.write("\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["year", "baseline", "policy", "optimal",
         "baseline_share", "policy_share", "optimal_share"]
    )
    for i, year in enumerate(report.years):
        writer.writerow(
            [
                year,
                repr(report.baseline[i]),
                repr(report.policy[i]),
                repr(report.optimal[i]),
                repr(report.baseline_share[i]),
                repr(report.policy_share[i]),
                repr(report.optimal_share[i]),
            ]
        )
    return buf.getvalue()


def parse_report_csv(text: str) -> ScenarioReport:
    """Inverse of the delimited emitter; the round-trip is lossless."""
    lines = text.splitlines()
    prefix = "#" + REPORT_FORMAT + " "
    if not lines or not lines[0].startswith(prefix):
        raise ScenarioError("not a delimited scenario report")
    meta = json.loads(lines[0][len(prefix):])
    reader = csv.reader(io.StringIO("\n".join(lines[1:])))
    rows = [row for row in reader if row]
    header, data = rows[0], rows[1:]
    expected = ["year", "baseline", "policy", "optimal",
                "baseline_share", "policy_share", "optimal_share"]
    if header != expected:
        raise ScenarioError(f"unexpected report columns {header}")
    doc = dict(meta)
    doc["years"] = [int(r[0]) for r in data]
    doc["series"] = {
        "baseline": [float(r[1]) for r in data],
        "policy": [float(r[2]) for r in data],
        "optimal": [float(r[3]) for r in data],
    }
    doc["shares"] = {
        "baseline": [float(r[4]) for r in data],
        "policy": [float(r[5]) for r in data],
        "optimal": [float(r[6]) for r in data],
    }
    return report_from_doc(doc)


def emit_report(report: ScenarioReport, fmt: str = STRUCTURED_TEXT) -> str:
    """Serialize to table text, delimited rows, or structured text."""
    resolved = _FORMAT_ALIASES.get(fmt)
    if resolved is None:
        raise ScenarioError(
            f"unknown report format {fmt!r}; expected one of {sorted(set(_FORMAT_ALIASES))}"
        )
    if resolved == TABLE_TEXT:
        return _emit_table(report)
    if resolved == DELIMITED:
        return _emit_csv(report)
    return json.dumps(report_to_doc(report), indent=2, sort_keys=True) + "\n"


def _normalize_ref(ref: str) -> str:
    """Catalog id of a model/panel/schema reference: the base filename
    with its role suffixes stripped ("fixture.model.json" -> "fixture")."""
    name = Path(str(ref)).name
    for suffix in (".json", ".csv", ".model", ".panel", ".schema", ".spec"):
        if name.endswith(suffix):
            name = name[: -len(suffix)]
    return name


def load_totals_csv(path) -> dict[int, float]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows or rows[0][:2] != ["year", "total"]:
        raise ScenarioError(f"totals file {path} must have header year,total")
    return {int(r[0]): float(r[1]) for r in rows[1:]}


def _resolve_scorecard(ref: str, base_dir: Path | None, factor_kind: str):
    if isinstance(ref, str) and ref.startswith("builtin:"):
        return scoring.builtin_scorecard(ref.split(":", 1)[1], factor_kind)
    path = Path(ref)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    return scoring.load_scorecard(path)


def load_scenario_doc(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot read scenario spec {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != SCENARIO_FORMAT:
        raise ScenarioError(f"{path} is not a scenario spec file")
    if doc.get("version") != SCENARIO_VERSION:
        raise ScenarioError(
            f"scenario spec {path} has version {doc.get('version')!r}, "
            f"this build reads version {SCENARIO_VERSION}"
        )
    return doc


def resolve_spec(
    doc: dict,
    base_dir: Path | None = None,
    models: dict | None = None,
    panels: dict | None = None,
) -> tuple[ScenarioSpec, dict[int, float]]:
    """Turn a scenario spec document into a ScenarioSpec plus its baseline.

    File references resolve relative to base_dir; when catalog mappings
    are given (the HTTP service), model and panel references resolve by
    normalized id first. The baseline block is either an explicit annual
    series or a (model, panel) pair run through the regressor.
    """
    try:
        region = str(doc["region"])
        target_kind = str(doc["target_kind"])
        horizon = int(doc["horizon"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"malformed scenario spec: {exc}") from exc

    bounds_doc = doc.get("bounds", {})
    bounds = ScenarioBounds(
        target_kind=target_kind,
        c_base=float(bounds_doc.get("c_base", diffusion.BASELINE_CEILING)),
        c_op=float(bounds_doc.get("c_op", diffusion.OPTIMAL_CEILING)),
        p_op=(
            float(bounds_doc["p_op"]) if "p_op" in bounds_doc
            else diffusion.OPTIMAL_SPEED[target_kind]
        ),
        p_base=float(bounds_doc["p_base"]) if "p_base" in bounds_doc else None,
    )

    if "intensity" in doc:
        block = doc["intensity"]
        intensity = PolicyIntensity(
            f_c=float(block["f_c"]),
            f_p=float(block["f_p"]),
            source=str(block.get("source", "explicit")),
        )
    elif "scorecards" in doc:
        cards = doc["scorecards"]
        ceiling_card = _resolve_scorecard(cards["ceiling"], base_dir, scoring.CEILING)
        speed_card = _resolve_scorecard(cards["speed"], base_dir, scoring.SPEED)
        f_c = scoring.compute_factor(ceiling_card)
        f_p = scoring.compute_factor(speed_card)
        if ceiling_card.factor_kind != scoring.CEILING:
            raise ScenarioError("ceiling scorecard has the wrong factor kind")
        if speed_card.factor_kind != scoring.SPEED:
            raise ScenarioError("speed scorecard has the wrong factor kind")
        intensity = PolicyIntensity(
            f_c=f_c.value, f_p=f_p.value,
            source=f"scorecards:{ceiling_card.region}",
        )
    else:
        raise ScenarioError("scenario spec needs an intensity or scorecards block")

    if "totals" in doc:
        totals = {int(y): float(v) for y, v in doc["totals"].items()}
    elif "totals_file" in doc:
        path = Path(doc["totals_file"])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        totals = load_totals_csv(path)
    else:
        raise ScenarioError("scenario spec needs totals or totals_file")

    # policy_start defaults to the first forecast year covered by totals
    if "policy_start" in doc:
        policy_start = int(doc["policy_start"])
    elif totals:
        policy_start = min(totals)
    else:
        raise ScenarioError("scenario spec needs policy_start or non-empty totals")

    baseline_doc = doc.get("baseline")
    if not isinstance(baseline_doc, dict):
        raise ScenarioError("scenario spec needs a baseline block")
    if "series" in baseline_doc:
        baseline = {int(y): float(v) for y, v in baseline_doc["series"].items()}
    else:
        try:
            model_ref = str(baseline_doc["model"])
            panel_ref = str(baseline_doc["panel"])
        except KeyError as exc:
            raise ScenarioError(
                "baseline block needs either a series or model/panel references"
            ) from exc
        model_id = _normalize_ref(model_ref)
        if models is not None and model_id in models:
            model, preprocessing = models[model_id]
        else:
            path = Path(model_ref)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            if not path.exists():
                raise UnknownReferenceError(f"unknown model {model_ref!r}")
            model = network.load_model(path)
            preprocessing = network.load_preprocessing(path)
        if preprocessing is None:
            raise ScenarioError(
                f"model {model_ref!r} carries no preprocessing block; "
                f"train it through the pipeline so input columns are recorded"
            )
        panel_id = _normalize_ref(panel_ref)
        if panels is not None and panel_id in panels:
            future_panel = panels[panel_id]
        else:
            panel_path = Path(panel_ref)
            if base_dir is not None and not panel_path.is_absolute():
                panel_path = base_dir / panel_path
            if not panel_path.exists():
                raise UnknownReferenceError(f"unknown panel {panel_ref!r}")
            schema_ref = baseline_doc.get("schema")
            if schema_ref is None:
                raise ScenarioError("baseline block references a panel without a schema")
            schema_path = Path(str(schema_ref))
            if base_dir is not None and not schema_path.is_absolute():
                schema_path = base_dir / schema_path
            schema = panel_mod.load_schema(schema_path)
            future_panel = panel_mod.load_panel(panel_path, schema)
        baseline = run_baseline(model, future_panel, preprocessing, target_kind)

    spec = ScenarioSpec(
        region=region,
        target_kind=target_kind,
        policy_start=policy_start,
        horizon=horizon,
        intensity=intensity,
        totals=totals,
        bounds=bounds,
        ceiling_headroom=float(doc.get("ceiling_headroom", DEFAULT_CEILING_HEADROOM)),
    )
    return spec, baseline
