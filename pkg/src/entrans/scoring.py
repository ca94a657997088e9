"""Policy scorecards and the intensity factors derived from them.

A scorecard assigns each evaluation index a score on the 0-100 scale; the
intensity factor is the weighted average of those scores divided by 100,
giving a fraction in [0, 1]. Two factor kinds exist: ``ceiling`` drives the
saturation level of a diffusion scenario and ``speed`` drives its growth
rate. Reference matrices and per-region scorecards for Singapore, London,
and California ship as builtins.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .errors import ScorecardError

CEILING = "ceiling"
SPEED = "speed"
FACTOR_KINDS = (CEILING, SPEED)

LINEAR_SCALED = "linear_scaled"
FIVE_LEVEL = "five_level"
CONTINUOUS_INDEX = "continuous_index"
INDEX_KINDS = (LINEAR_SCALED, FIVE_LEVEL, CONTINUOUS_INDEX)

# Legal grid for indices without a precise quantitative target.
FIVE_LEVEL_SCORES = (0.0, 25.0, 50.0, 75.0, 100.0)

WEIGHT_SUM_TOL = 1e-9

SCORECARD_FORMAT = "entrans-scorecard"
SCORECARD_VERSION = 1


@dataclass(frozen=True)
class EvaluationIndex:
    """One scored dimension of an evaluation matrix."""

    id: str
    description: str
    kind: str
    weight: float
    group: str


@dataclass(frozen=True)
class PolicyScorecard:
    """An evaluation matrix together with one region's scores."""

    region: str
    factor_kind: str
    indices: tuple[EvaluationIndex, ...]
    entries: dict[str, float]


@dataclass(frozen=True)
class IntensityFactor:
    value: float
    factor_kind: str
    provenance: str


_CEILING_MATRIX = (
    EvaluationIndex(
        id="long_term_mixture_ambition",
        description="Strength and legal force of the 2050 energy-mixture "
        "transition strategy (100 legally binding, ambitious and concrete; "
        "0 no strategy)",
        kind=FIVE_LEVEL,
        weight=0.30,
        group="A. Long-term ambition for RE development",
    ),
    EvaluationIndex(
        id="long_term_generation_target",
        description="2050 renewable generation target, scaled linearly "
        "(100 vision of fully renewable supply; 0 at most 1% or no target)",
        kind=LINEAR_SCALED,
        weight=0.30,
        group="A. Long-term ambition for RE development",
    ),
    EvaluationIndex(
        id="grid_connection_permission",
        description="Whether grid connection of renewable generators is "
        "permitted (100 permitted, 50 partially, 0 not permitted)",
        kind=FIVE_LEVEL,
        weight=0.20,
        group="B. Electricity market structure and regulation",
    ),
    EvaluationIndex(
        id="demand_side_management",
        description="Integration of demand-side market design (time-of-use "
        "tariffs, smart metering) and regulatory management (100 both, "
        "50 either, 0 neither)",
        kind=FIVE_LEVEL,
        weight=0.20,
        group="B. Electricity market structure and regulation",
    ),
)

_SPEED_MATRIX = (
    EvaluationIndex(
        id="mid_term_generation_target",
        description="2030 renewable generation target, scaled linearly "
        "(100 vision of fully renewable supply; 0 at most 1% or no target)",
        kind=LINEAR_SCALED,
        weight=0.10,
        group="A. Mid-term ambition for RE development",
    ),
    EvaluationIndex(
        id="dirty_energy_elimination",
        description="Status of a fossil-fuel phase-out strategy (100 fixed, "
        "50 under discussion, 0 none)",
        kind=FIVE_LEVEL,
        weight=0.10,
        group="A. Mid-term ambition for RE development",
    ),
    EvaluationIndex(
        id="obligations_certificates",
        description="Maturity of obligations-and-certificates policy and its "
        "regulation trend (100 mature with relaxing regulation, 0 none)",
        kind=FIVE_LEVEL,
        weight=0.18,
        group="B. Adoption of RE policy",
    ),
    EvaluationIndex(
        id="feed_in_tariff",
        description="Maturity of feed-in tariff policy and its tariff trend "
        "(100 adopted without foreseen reduction, 0 none)",
        kind=FIVE_LEVEL,
        weight=0.18,
        group="B. Adoption of RE policy",
    ),
    EvaluationIndex(
        id="financial_incentives",
        description="Maturity of financial-incentive policy and its subsidy "
        "trend (100 adopted without foreseen reduction, 0 none)",
        kind=FIVE_LEVEL,
        weight=0.14,
        group="B. Adoption of RE policy",
    ),
    EvaluationIndex(
        id="integrating_policy",
        description="Supportive policies integrating renewables into grid "
        "codes, system operation, and grid expansion (100 mature, "
        "50 preliminary, 0 none)",
        kind=FIVE_LEVEL,
        weight=0.05,
        group="B. Adoption of RE policy",
    ),
    EvaluationIndex(
        id="enabling_policy",
        description="Supportive policies enabling renewables without extra "
        "cost to government or customers (100 mature, 50 preliminary, "
        "0 none)",
        kind=FIVE_LEVEL,
        weight=0.05,
        group="B. Adoption of RE policy",
    ),
    EvaluationIndex(
        id="smart_grid_index",
        description="Regional power-grid smartness benchmark covering supply "
        "reliability, renewable integration, and network security (0-100)",
        kind=CONTINUOUS_INDEX,
        weight=0.10,
        group="C. Market structure and climate performance",
    ),
    EvaluationIndex(
        id="climate_change_performance",
        description="National climate policy performance index covering "
        "greenhouse-gas emissions and climate policy (0-100)",
        kind=CONTINUOUS_INDEX,
        weight=0.10,
        group="C. Market structure and climate performance",
    ),
)

_BUILTIN_ENTRIES = {
    ("singapore", CEILING): (25, 43, 100, 50),
    ("london", CEILING): (100, 50, 100, 100),
    ("california", CEILING): (100, 100, 100, 100),
    ("singapore", SPEED): (8, 100, 0, 50, 50, 50, 100, 66, 48.16),
    ("london", SPEED): (30, 100, 75, 75, 75, 100, 100, 89, 69.80),
    ("california", SPEED): (50, 100, 100, 75, 75, 100, 100, 93, 18.60),
}

BUILTIN_REGIONS = ("singapore", "london", "california")

# Factor results as published alongside the reference scorecards. The
# Singapore speed value (0.527) does not equal the weighted sum of that
# card's own entries (0.457); both numbers are kept on purpose so that
# downstream reproductions can cite the published constant while the
# engine always computes from the entries. Do not "fix" either value.
REPORTED_FACTORS = {
    ("singapore", CEILING): 0.504,
    ("london", CEILING): 0.850,
    ("california", CEILING): 1.000,
    ("singapore", SPEED): 0.527,
    ("london", SPEED): 0.764,
    ("california", SPEED): 0.782,
}


def builtin_matrix(factor_kind: str) -> tuple[EvaluationIndex, ...]:
    """Return the reference evaluation matrix for one factor kind."""
    if factor_kind == CEILING:
        return _CEILING_MATRIX
    if factor_kind == SPEED:
        return _SPEED_MATRIX
    raise ScorecardError(f"unknown factor kind {factor_kind!r}; expected one of {FACTOR_KINDS}")


def builtin_scorecard(region: str, factor_kind: str) -> PolicyScorecard:
    """Return the shipped scorecard for one of the three reference regions."""
    key = (region.lower(), factor_kind)
    if key not in _BUILTIN_ENTRIES:
        raise ScorecardError(
            f"no builtin scorecard for region {region!r} and kind {factor_kind!r}; "
            f"known regions: {', '.join(BUILTIN_REGIONS)}"
        )
    matrix = builtin_matrix(factor_kind)
    scores = _BUILTIN_ENTRIES[key]
    entries = {index.id: float(score) for index, score in zip(matrix, scores)}
    return PolicyScorecard(
        region=region.lower(),
        factor_kind=factor_kind,
        indices=matrix,
        entries=entries,
    )


def validate_scorecard(card: PolicyScorecard) -> list[str]:
    """List every invariant violation; an empty list means the card is valid."""
    violations: list[str] = []
    if card.factor_kind not in FACTOR_KINDS:
        violations.append(
            f"factor_kind {card.factor_kind!r} is not one of {FACTOR_KINDS}"
        )
    seen: set[str] = set()
    for index in card.indices:
        if index.id in seen:
            violations.append(f"duplicate index id {index.id!r}")
        seen.add(index.id)
        if index.kind not in INDEX_KINDS:
            violations.append(
                f"index {index.id!r} has unknown kind {index.kind!r}"
            )
        if not 0.0 < index.weight <= 1.0:
            violations.append(
                f"index {index.id!r} weight {index.weight} outside (0, 1]"
            )
    weight_sum = sum(index.weight for index in card.indices)
    if abs(weight_sum - 1.0) > WEIGHT_SUM_TOL:
        violations.append(f"index weights sum to {weight_sum!r}, expected 1.0")
    index_ids = {index.id for index in card.indices}
    for missing in sorted(index_ids - set(card.entries)):
        violations.append(f"missing entry for index {missing!r}")
    for extra in sorted(set(card.entries) - index_ids):
        violations.append(f"entry {extra!r} has no matching index")
    for index in card.indices:
        if index.id not in card.entries:
            continue
        score = card.entries[index.id]
        if not 0.0 <= score <= 100.0:
            violations.append(
                f"score {score} for index {index.id!r} outside [0, 100]"
            )
        elif index.kind == FIVE_LEVEL and score not in FIVE_LEVEL_SCORES:
            violations.append(
                f"score {score} for five-level index {index.id!r} not in "
                f"{{0, 25, 50, 75, 100}}"
            )
    return violations


def card_fingerprint(card: PolicyScorecard) -> str:
    doc = card_to_doc(card)
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def compute_factor(card: PolicyScorecard) -> IntensityFactor:
    """Weighted average of the card's scores, on the [0, 1] scale.

    Scores are stored on the printed 0-100 scale; the single division by
    100 happens here at aggregation time.
    """
    violations = validate_scorecard(card)
    if violations:
        raise ScorecardError(
            "scorecard invalid:\n" + "\n".join(f"- {v}" for v in violations)
        )
    total = sum(index.weight * card.entries[index.id] for index in card.indices)
    return IntensityFactor(
        value=total / 100.0,
        factor_kind=card.factor_kind,
        provenance=card_fingerprint(card),
    )


def format_factor(factor: IntensityFactor) -> str:
    """Three-decimal display convention used in reports and the CLI."""
    return f"{factor.value:.3f}"


def card_to_doc(card: PolicyScorecard) -> dict:
    """Serialize a card to the scorecard file schema (JSON-compatible)."""
    return {
        "format": SCORECARD_FORMAT,
        "version": SCORECARD_VERSION,
        "region": card.region,
        "factor_kind": card.factor_kind,
        "indices": [
            {
                "id": index.id,
                "description": index.description,
                "kind": index.kind,
                "weight": index.weight,
                "group": index.group,
            }
            for index in card.indices
        ],
        "entries": {index.id: card.entries[index.id] for index in card.indices if index.id in card.entries},
    }


def card_from_doc(doc: dict) -> PolicyScorecard:
    """Parse the scorecard file schema back into a card.

    Structural problems raise ScorecardError immediately; domain-invariant
    problems (weights, grids, ranges) are left to validate_scorecard so
    callers can collect them all at once.
    """
    if not isinstance(doc, dict):
        raise ScorecardError("scorecard document must be an object")
    if doc.get("format") != SCORECARD_FORMAT:
        raise ScorecardError(f"not a scorecard document (format={doc.get('format')!r})")
    if doc.get("version") != SCORECARD_VERSION:
        raise ScorecardError(
            f"unsupported scorecard version {doc.get('version')!r}, "
            f"expected {SCORECARD_VERSION}"
        )
    try:
        indices = tuple(
            EvaluationIndex(
                id=str(item["id"]),
                description=str(item.get("description", "")),
                kind=str(item["kind"]),
                weight=float(item["weight"]),
                group=str(item.get("group", "")),
            )
            for item in doc["indices"]
        )
        entries = {str(k): float(v) for k, v in doc["entries"].items()}
        region = str(doc.get("region", ""))
        factor_kind = str(doc["factor_kind"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ScorecardError(f"malformed scorecard document: {exc}") from exc
    return PolicyScorecard(
        region=region, factor_kind=factor_kind, indices=indices, entries=entries
    )


def load_scorecard(path) -> PolicyScorecard:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ScorecardError(f"cannot read scorecard file {path}: {exc}") from exc
    return card_from_doc(doc)


def save_scorecard(card: PolicyScorecard, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(card_to_doc(card), fh, indent=2, sort_keys=True)
        fh.write("\n")
