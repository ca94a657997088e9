"""Forecasting and evaluation engine for regional renewable-energy
transition policy: determinant panels feed a small feed-forward regressor
for baseline forecasts; policy scorecards become intensity factors;
logistic diffusion overlays turn both into baseline/policy/optimal
trajectories and answer inverse what-if questions."""

from .diffusion import (
    DiffusionParams,
    PolicyIntensity,
    RequiredIntensity,
    ScenarioBounds,
    apply_intensity,
    calibrate,
    intensity_for_speed,
    invert_for_speed,
    s_curve,
    trajectory,
)
from .errors import EntransError
from .network import (
    NetworkConfig,
    NetworkModel,
    TrainingBatch,
    TrainingTrace,
    backward,
    build_network,
    forward,
    load_model,
    mape,
    predict,
    rmsprop_step,
    save_model,
    smooth_loss,
    train,
)
from .panel import (
    DeterminantPanel,
    DeterminantSpec,
    LabeledRows,
    SplitPlan,
    build_labeled_rows,
    destandardize,
    interpolate_targets,
    load_panel,
    load_schema,
    project_determinants,
    screen_correlation,
    split,
    standardize,
)
from .scenario import (
    ScenarioReport,
    ScenarioSpec,
    TargetGap,
    analyze_gap,
    compose_scenarios,
    emit_report,
    run_baseline,
)
from .scoring import (
    EvaluationIndex,
    IntensityFactor,
    PolicyScorecard,
    builtin_matrix,
    builtin_scorecard,
    compute_factor,
    validate_scorecard,
)

__version__ = "0.1.0"
