"""Stateless HTTP service over the scoring and scenario engine.

Models, panels, and scenario specs load once at startup into an immutable
catalog; every request is recomputed from scratch (a compose is a handful
of closed-form curve evaluations plus one batched forward pass, well
under the 100 ms budget). Request bodies are validated strictly: unknown
fields are rejected, not ignored.

Status codes: 400 malformed body, 404 unknown id, 422 infeasible anchor.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import network, panel as panel_mod, scenario, scoring
from .diffusion import PolicyIntensity
from .errors import DiffusionError, EntransError, ScenarioError, ScorecardError
from .scenario import InfeasibleAnchorError, UnknownReferenceError

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class LoadedSpec:
    doc: dict
    spec: scenario.ScenarioSpec
    baseline: dict[int, float]


@dataclass(frozen=True)
class SessionCatalog:
    """Read-only startup state shared by all requests."""

    models: dict[str, tuple[network.NetworkModel, dict]] = field(default_factory=dict)
    panels: dict[str, panel_mod.DeterminantPanel] = field(default_factory=dict)
    specs: dict[str, LoadedSpec] = field(default_factory=dict)


def load_catalog(directory) -> SessionCatalog:
    """Scan a directory for *.model.json, *.panel.csv (+ *.schema.json),
    and *.spec.json files; ids are the filenames minus role suffixes."""
    root = Path(directory)
    if not root.is_dir():
        raise EntransError(f"catalog directory {directory} does not exist")
    models: dict[str, tuple[network.NetworkModel, dict]] = {}
    panels: dict[str, panel_mod.DeterminantPanel] = {}
    specs: dict[str, LoadedSpec] = {}
    for path in sorted(root.glob("*.model.json")):
        model_id = scenario._normalize_ref(path.name)
        models[model_id] = (
            network.load_model(path),
            network.load_preprocessing(path) or {},
        )
    for path in sorted(root.glob("*.panel.csv")):
        panel_id = scenario._normalize_ref(path.name)
        schema_path = root / f"{panel_id}.schema.json"
        if not schema_path.exists():
            raise EntransError(
                f"panel {path.name} has no matching {panel_id}.schema.json"
            )
        schema = panel_mod.load_schema(schema_path)
        panels[panel_id] = panel_mod.load_panel(path, schema, region=panel_id)
    for path in sorted(root.glob("*.spec.json")):
        spec_id = scenario._normalize_ref(path.name)
        doc = scenario.load_scenario_doc(path)
        spec, baseline = scenario.resolve_spec(
            doc, base_dir=root, models=models, panels=panels
        )
        specs[spec_id] = LoadedSpec(doc=doc, spec=spec, baseline=baseline)
    return SessionCatalog(models=models, panels=panels, specs=specs)


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"schema_version": SCHEMA_VERSION, "error": message},
    )


async def _read_json_object(request: Request, allowed: set[str]):
    body = await request.body()
    if not body:
        return None, _error(400, "empty request body")
    try:
        doc = json.loads(body)
    except json.JSONDecodeError as exc:
        return None, _error(400, f"malformed JSON body: {exc}")
    if not isinstance(doc, dict):
        return None, _error(400, "request body must be a JSON object")
    unknown = sorted(set(doc) - allowed)
    if unknown:
        return None, _error(400, f"unknown request fields {unknown}")
    return doc, None


def create_app(catalog: SessionCatalog, ui_dir=None) -> FastAPI:
    app = FastAPI(title="entrans", docs_url=None, redoc_url=None)

    @app.get("/api/health")
    def health():
        return {"schema_version": SCHEMA_VERSION, "status": "ok"}

    @app.get("/api/models")
    def models():
        return {
            "schema_version": SCHEMA_VERSION,
            "models": [
                {
                    "id": model_id,
                    "input_columns": pre.get("input_columns", []),
                    "target": pre.get("target"),
                }
                for model_id, (_, pre) in sorted(catalog.models.items())
            ],
            "specs": [
                {
                    "id": spec_id,
                    "region": loaded.spec.region,
                    "target_kind": loaded.spec.target_kind,
                    "policy_start": loaded.spec.policy_start,
                    "horizon": loaded.spec.horizon,
                }
                for spec_id, loaded in sorted(catalog.specs.items())
            ],
        }

    @app.get("/api/scorecards/{region}/{kind}")
    def scorecard(region: str, kind: str):
        try:
            card = scoring.builtin_scorecard(region, kind)
        except ScorecardError as exc:
            return _error(404, str(exc))
        factor = scoring.compute_factor(card)
        return {
            "schema_version": SCHEMA_VERSION,
            "scorecard": scoring.card_to_doc(card),
            "factor": factor.value,
        }

    _factor_fields = {"format", "version", "region", "factor_kind", "indices", "entries"}

    @app.post("/api/factor")
    async def factor(request: Request):
        doc, failure = await _read_json_object(request, _factor_fields)
        if failure is not None:
            return failure
        try:
            card = scoring.card_from_doc(doc)
        except ScorecardError as exc:
            return _error(400, str(exc))
        violations = scoring.validate_scorecard(card)
        if violations:
            return {
                "schema_version": SCHEMA_VERSION,
                "factor": None,
                "violations": violations,
            }
        return {
            "schema_version": SCHEMA_VERSION,
            "factor": scoring.compute_factor(card).value,
            "violations": [],
        }

    _scenario_fields = {"schema_version", "spec_id", "spec", "intensity", "target"}

    @app.post("/api/scenario")
    async def scenario_endpoint(request: Request):
        doc, failure = await _read_json_object(request, _scenario_fields)
        if failure is not None:
            return failure
        if ("spec_id" in doc) == ("spec" in doc):
            return _error(400, "provide exactly one of spec_id or spec")
        try:
            if "spec_id" in doc:
                loaded = catalog.specs.get(str(doc["spec_id"]))
                if loaded is None:
                    return _error(404, f"unknown spec id {doc['spec_id']!r}")
                spec, baseline = loaded.spec, loaded.baseline
            else:
                spec_doc = doc["spec"]
                if not isinstance(spec_doc, dict):
                    return _error(400, "spec must be an object")
                spec, baseline = scenario.resolve_spec(
                    spec_doc, base_dir=None,
                    models=catalog.models, panels=catalog.panels,
                )
            if "intensity" in doc:
                block = doc["intensity"]
                spec = dataclasses.replace(
                    spec,
                    intensity=PolicyIntensity(
                        f_c=float(block["f_c"]),
                        f_p=float(block["f_p"]),
                        source=str(block.get("source", "request")),
                    ),
                )
            report = scenario.compose_scenarios(spec, baseline)
            if doc.get("target") is not None:
                gap = scenario.analyze_gap(
                    report,
                    float(doc["target"]),
                    ceiling_headroom=spec.ceiling_headroom,
                )
                report = scenario.with_gap(report, gap)
        except UnknownReferenceError as exc:
            return _error(404, str(exc))
        except InfeasibleAnchorError as exc:
            return _error(422, str(exc))
        except (ScenarioError, DiffusionError, ScorecardError) as exc:
            return _error(400, str(exc))
        except (KeyError, TypeError, ValueError) as exc:
            return _error(400, f"malformed request: {exc}")
        return {
            "schema_version": SCHEMA_VERSION,
            "report": scenario.report_to_doc(report),
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
