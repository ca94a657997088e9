"""Command-line surface: validate panels, train and apply models, score
policies, compose scenarios, solve gaps, and serve the HTTP API.

All subcommands are deterministic given their flags; seeds are echoed to
standard error so every run can be reproduced. Exit codes: 0 success,
1 validation or domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import network, panel as panel_mod, scenario, scoring
from .errors import EntransError

USAGE_ERROR = 2


def _echo_seed(seed: int) -> None:
    print(f"seed: {seed}", file=sys.stderr)


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_validate(args) -> int:
    schema = panel_mod.load_schema(args.schema)
    panel = panel_mod.load_panel(args.panel, schema, region=args.region)
    lines = [
        f"panel OK: region={panel.region}",
        f"months: {panel.months[0]} .. {panel.months[-1]} ({len(panel.months)} rows)",
        f"columns: {', '.join(panel.column_names)}",
    ]
    for target, anchors in sorted(panel.targets.items()):
        years = ", ".join(str(year) for year, _ in anchors)
        lines.append(f"target {target}: {len(anchors)} annual value(s) ({years})")
    if not panel.targets:
        lines.append("targets: none")
    print("\n".join(lines))
    return 0


def _parse_hidden(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise EntransError(f"cannot parse hidden sizes {text!r}; expected e.g. 12,6")


def cmd_train(args) -> int:
    _echo_seed(args.seed)
    schema = panel_mod.load_schema(args.schema)
    raw = panel_mod.load_panel(args.panel, schema, region=args.region)
    panel = panel_mod.standardize(raw)
    if args.screen_threshold is not None:
        report = panel_mod.screen_correlation(
            panel, args.target, threshold=args.screen_threshold
        )
        for det, r in report.dropped:
            print(f"screened out {det} (r={r:+.4f})", file=sys.stderr)
        if report.warning:
            print(f"warning: {report.warning}", file=sys.stderr)
            raise EntransError("correlation screen retained no determinants")
        panel = panel_mod.select_determinants(panel, report.retained)
    rows = panel_mod.build_labeled_rows(panel, args.target)
    plan = panel_mod.SplitPlan(
        mode=args.split_mode,
        fraction=args.fraction,
        holdout_years=args.holdout_years,
        seed=args.seed,
    )
    train_rows, holdout_rows = panel_mod.split(rows, plan)
    config = network.NetworkConfig(
        input_size=rows.x.shape[1],
        hidden_sizes=_parse_hidden(args.hidden),
        learning_rate=args.learning_rate,
        epochs=args.epochs,
        batch_size=args.batch_size,
        seed=args.seed,
        standardize_labels=args.standardize_labels,
        early_stop_patience=args.early_stop,
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
        "standardization": {
            name: list(pair) for name, pair in panel.standardization.items()
        },
        "target": args.target,
    }
    network.save_model(model, args.model_out, preprocessing=preprocessing)
    print(f"rows: {len(rows)} train: {len(train_rows)} holdout: {len(holdout_rows)}")
    print(f"epochs run: {len(trace.epoch_losses)}")
    print(f"train MAPE: {trace.train_mape:.4f}%")
    print(f"holdout MAPE: {trace.holdout_mape:.4f}%")
    print(f"model written to {args.model_out}")
    return 0


def cmd_predict(args) -> int:
    model = network.load_model(args.model)
    preprocessing = network.load_preprocessing(args.model)
    if preprocessing is None:
        raise EntransError(
            "model file carries no preprocessing block; cannot apply it to a panel"
        )
    schema = panel_mod.load_schema(args.schema)
    raw = panel_mod.load_panel(args.panel, schema, region=args.region)
    stats = {
        name: (float(m), float(s))
        for name, (m, s) in preprocessing["standardization"].items()
    }
    panel = panel_mod.apply_standardization(raw, stats)
    if args.project_to is not None:
        overrides = (
            panel_mod.load_overrides(args.overrides, schema)
            if args.overrides
            else None
        )
        panel = panel_mod.project_determinants(panel, schema, args.project_to, overrides)
    x = panel.matrix(tuple(preprocessing["input_columns"]))
    predictions = network.predict(model, x)[:, 0]
    lines = ["month,prediction"]
    lines += [
        f"{month},{float(value)!r}" for month, value in zip(panel.months, predictions)
    ]
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def cmd_score(args) -> int:
    if args.builtin:
        region, kind = args.builtin
        card = scoring.builtin_scorecard(region, kind)
    else:
        card = scoring.load_scorecard(args.card)
    violations = scoring.validate_scorecard(card)
    if violations:
        print("scorecard invalid:", file=sys.stderr)
        for violation in violations:
            print(f"- {violation}", file=sys.stderr)
        return 1
    factor = scoring.compute_factor(card)
    print(scoring.format_factor(factor))
    if args.report:
        print(f"region: {card.region}")
        print(f"factor kind: {card.factor_kind}")
        print(f"indices: {len(card.indices)}, weight sum 1.0, all entries valid")
    return 0


def _compose_from_spec(spec_path: str):
    doc = scenario.load_scenario_doc(spec_path)
    spec, baseline = scenario.resolve_spec(doc, base_dir=Path(spec_path).parent)
    return spec, scenario.compose_scenarios(spec, baseline)


def cmd_scenario(args) -> int:
    spec, report = _compose_from_spec(args.spec)
    if args.gap is not None:
        gap = scenario.analyze_gap(
            report, args.gap, ceiling_headroom=spec.ceiling_headroom
        )
        report = scenario.with_gap(report, gap)
    _write_output(scenario.emit_report(report, args.format), args.out)
    return 0


def cmd_gap(args) -> int:
    spec, report = _compose_from_spec(args.spec)
    gap = scenario.analyze_gap(
        report, args.target, ceiling_headroom=spec.ceiling_headroom
    )
    report = scenario.with_gap(report, gap)
    if args.format in ("json", "structured-text"):
        import json

        doc = scenario.report_to_doc(report)["gap"]
        _write_output(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        flag = "in envelope" if gap.required_f_p.in_envelope else "OUT OF ENVELOPE"
        lines = [
            f"target: {gap.target_value!r}",
            f"predicted: {gap.predicted_value!r}",
            f"shortfall: {gap.shortfall!r}",
            f"required f_p: {gap.required_f_p.value!r} ({flag})",
        ]
        if gap.required_f_c is not None:
            flag = "in envelope" if gap.required_f_c.in_envelope else "OUT OF ENVELOPE"
            lines.append(f"required f_c: {gap.required_f_c.value!r} ({flag})")
        _write_output("\n".join(lines) + "\n", args.out)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app, load_catalog

    catalog = load_catalog(args.catalog)
    app = create_app(catalog, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrans",
        description="Renewable-energy transition policy forecasting and evaluation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="load and validate a panel file")
    p.add_argument("--panel", required=True, help="panel CSV path")
    p.add_argument("--schema", required=True, help="determinant schema JSON path")
    p.add_argument("--region", default=None, help="region label (default: file stem)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("train", help="train a baseline regressor on a panel")
    p.add_argument("--panel", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--target", required=True, choices=panel_mod.TARGET_IDS)
    p.add_argument("--model-out", required=True, help="output model file")
    p.add_argument("--region", default=None)
    p.add_argument(
        "--split-mode",
        default=panel_mod.RANDOM_FRACTION,
        choices=panel_mod.SPLIT_MODES,
    )
    p.add_argument("--fraction", type=float, default=0.95, help="training fraction")
    p.add_argument("--holdout-years", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epochs", type=int, default=5000)
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--learning-rate", type=float, default=0.001)
    p.add_argument("--hidden", default=None, help="comma-separated sizes, e.g. 12,6")
    p.add_argument("--early-stop", type=int, default=None, metavar="PATIENCE")
    p.add_argument("--standardize-labels", action="store_true")
    p.add_argument(
        "--screen-threshold",
        type=float,
        default=None,
        metavar="R",
        help="drop determinants with |Pearson r| below R before training",
    )
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="apply a saved model to a panel")
    p.add_argument("--model", required=True)
    p.add_argument("--panel", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--region", default=None)
    p.add_argument("--project-to", default=None, metavar="YYYY-MM",
                   help="project determinants forward before predicting")
    p.add_argument("--overrides", default=None, help="official future series CSV")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("score", help="compute an intensity factor from a scorecard")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--card", help="scorecard JSON path")
    group.add_argument(
        "--builtin",
        nargs=2,
        metavar=("REGION", "KIND"),
        help="builtin card, e.g. --builtin singapore ceiling",
    )
    p.add_argument("--report", action="store_true", help="print a validation summary")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("scenario", help="compose a scenario report from a spec file")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument(
        "--format",
        default="table",
        choices=["table", "table-text", "csv", "delimited", "json", "structured-text"],
    )
    p.add_argument("--gap", type=float, default=None, metavar="TARGET",
                   help="also analyze the gap to this horizon target")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("gap", help="solve the intensity needed to reach a target")
    p.add_argument("--spec", required=True)
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--format", default="text", choices=["text", "json", "structured-text"])
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("serve", help="serve the HTTP API (and optionally the UI)")
    p.add_argument("--catalog", required=True, help="directory of models and specs")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui-dir", default=None, help="static UI bundle to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EntransError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
