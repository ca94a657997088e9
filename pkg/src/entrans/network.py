"""From-scratch feed-forward regressor used for baseline forecasts.

Architecture follows a halving rule: the first hidden layer is as wide as
the input and each further hidden layer is half (floor) of its
predecessor, with two hidden layers by default. Hidden activations are
ReLU; the output layer is identity by default (configurable to ReLU).

The loss is the smooth branch loss

    z_i = 0.5 * (x_i - y_i)^2       if |x_i - y_i| < 1
    z_i = |x_i - y_i| - 0.5         otherwise
    loss = mean_i(z_i)

whose value and first derivative are both continuous at |x - y| = 1.
Weights are updated with a squared-gradient moving average:

    E[g^2](t) = decay * E[g^2](t-1) + (1 - decay) * g^2
    w(t) = w(t-1) - lr * g / sqrt(E[g^2](t) + eps)

The eps guard keeps the first step finite (E starts at zero); setting it
to 0 recovers the bare update wherever gradients are nonzero.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .errors import ModelFileError, NetworkError

MODEL_FORMAT = "entrans-model"
MODEL_VERSION = 1

IDENTITY = "identity"
RELU = "relu"
OUTPUT_ACTIVATIONS = (IDENTITY, RELU)

WEIGHT_INIT_SCHEME = "uniform-sqrt6-fan-sum"


def default_hidden_sizes(input_size: int) -> tuple[int, int]:
    """Halving rule: first hidden layer matches the input width, the
    second is half of it (floor), and the default depth stops there."""
    if input_size < 1:
        raise NetworkError(f"input size {input_size} must be positive")
    return (input_size, max(1, input_size // 2))


@dataclass(frozen=True)
class NetworkConfig:
    input_size: int
    hidden_sizes: tuple[int, ...] | None = None
    output_size: int = 1
    learning_rate: float = 0.001
    rms_decay: float = 0.9
    rms_epsilon: float = 1e-8
    epochs: int = 5000
    batch_size: int = 32
    seed: int = 0
    output_activation: str = IDENTITY
    standardize_labels: bool = False
    early_stop_patience: int | None = None

    def __post_init__(self):
        if self.hidden_sizes is None:
            object.__setattr__(self, "hidden_sizes", default_hidden_sizes(self.input_size))
        else:
            object.__setattr__(self, "hidden_sizes", tuple(int(s) for s in self.hidden_sizes))
        for name, size in (("input_size", self.input_size), ("output_size", self.output_size)):
            if size < 1:
                raise NetworkError(f"{name} {size} must be positive")
        if any(s < 1 for s in self.hidden_sizes):
            raise NetworkError(f"hidden sizes {self.hidden_sizes} must all be positive")
        if self.learning_rate <= 0.0:
            raise NetworkError(f"learning rate {self.learning_rate} must be positive")
        if not 0.0 < self.rms_decay < 1.0:
            raise NetworkError(f"rms decay {self.rms_decay} must lie in (0, 1)")
        if self.rms_epsilon < 0.0:
            raise NetworkError(f"rms epsilon {self.rms_epsilon} must be nonnegative")
        if self.epochs < 0:
            raise NetworkError(f"epochs {self.epochs} must be nonnegative")
        if self.batch_size < 1:
            raise NetworkError(f"batch size {self.batch_size} must be positive")
        if self.output_activation not in OUTPUT_ACTIVATIONS:
            raise NetworkError(
                f"output activation {self.output_activation!r} not one of {OUTPUT_ACTIVATIONS}"
            )

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return (self.input_size, *self.hidden_sizes, self.output_size)

    def to_doc(self) -> dict:
        return {
            "input_size": self.input_size,
            "hidden_sizes": list(self.hidden_sizes),
            "output_size": self.output_size,
            "learning_rate": self.learning_rate,
            "rms_decay": self.rms_decay,
            "rms_epsilon": self.rms_epsilon,
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "seed": self.seed,
            "output_activation": self.output_activation,
            "standardize_labels": self.standardize_labels,
            "early_stop_patience": self.early_stop_patience,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "NetworkConfig":
        return cls(
            input_size=int(doc["input_size"]),
            hidden_sizes=tuple(doc["hidden_sizes"]),
            output_size=int(doc["output_size"]),
            learning_rate=float(doc["learning_rate"]),
            rms_decay=float(doc["rms_decay"]),
            rms_epsilon=float(doc["rms_epsilon"]),
            epochs=int(doc["epochs"]),
            batch_size=int(doc["batch_size"]),
            seed=int(doc["seed"]),
            output_activation=str(doc["output_activation"]),
            standardize_labels=bool(doc["standardize_labels"]),
            early_stop_patience=(
                None if doc.get("early_stop_patience") is None else int(doc["early_stop_patience"])
            ),
        )


@dataclass
class NetworkModel:
    """Layer weights plus per-parameter optimizer state.

    Mutable: train() and rmsprop_step() update it in place. forward() and
    predict() never write to it.
    """

    config: NetworkConfig
    weights: list[np.ndarray]       # weights[l] has shape (fan_in, fan_out)
    biases: list[np.ndarray]        # biases[l] has shape (fan_out,)
    rms_weights: list[np.ndarray]   # E[g^2], same shapes as weights
    rms_biases: list[np.ndarray]
    fingerprint: str
    label_scale: tuple[float, float] | None = None


@dataclass(frozen=True)
class TrainingBatch:
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if y.ndim == 1:
            y = y.reshape(-1, 1)
        if x.ndim != 2 or y.ndim != 2:
            raise NetworkError("batch inputs and labels must be 2-d")
        if x.shape[0] != y.shape[0]:
            raise NetworkError(
                f"batch has {x.shape[0]} input rows but {y.shape[0]} label rows"
            )
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            raise NetworkError("batch contains non-finite values")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __len__(self) -> int:
        return self.x.shape[0]


@dataclass(frozen=True)
class TrainingTrace:
    epoch_losses: tuple[float, ...]
    train_mape: float
    holdout_mape: float


def _config_fingerprint(config: NetworkConfig) -> str:
    doc = config.to_doc()
    doc["weight_init"] = WEIGHT_INIT_SCHEME
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def build_network(config: NetworkConfig) -> NetworkModel:
    """Seeded construction: uniform weights on +-sqrt(6 / (fan_in + fan_out)),
    zero biases, zero optimizer state. Bit-identical for a fixed seed."""
    rng = np.random.default_rng(config.seed)
    sizes = config.layer_sizes
    weights, biases, rms_w, rms_b = [], [], [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
        rms_w.append(np.zeros((fan_in, fan_out)))
        rms_b.append(np.zeros(fan_out))
    return NetworkModel(
        config=config,
        weights=weights,
        biases=biases,
        rms_weights=rms_w,
        rms_biases=rms_b,
        fingerprint=_config_fingerprint(config),
    )


def _relu(z: np.ndarray) -> np.ndarray:
    return np.maximum(z, 0.0)


def _relu_grad(z: np.ndarray) -> np.ndarray:
    # Subgradient at exactly 0 is taken as 0.
    return (z > 0.0).astype(float)


def _forward_cached(model: NetworkModel, x: np.ndarray):
    """Forward pass keeping pre-activations and activations for backprop."""
    n_layers = len(model.weights)
    activations = [x]
    preacts = []
    a = x
    for l, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = a @ w + b
        preacts.append(z)
        is_output = l == n_layers - 1
        if is_output and model.config.output_activation == IDENTITY:
            a = z
        else:
            a = _relu(z)
        activations.append(a)
    return preacts, activations


def forward(model: NetworkModel, inputs: np.ndarray) -> np.ndarray:
    """Network output for a (rows, input_size) matrix; the model is not
    mutated and repeated calls give identical results."""
    x = np.asarray(inputs, dtype=float)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    if x.shape[1] != model.config.input_size:
        raise NetworkError(
            f"input width {x.shape[1]} does not match the model input size "
            f"{model.config.input_size}"
        )
    _, activations = _forward_cached(model, x)
    return activations[-1]


def predict(model: NetworkModel, inputs: np.ndarray) -> np.ndarray:
    """forward() plus the inverse label transform when labels were scaled."""
    out = forward(model, inputs)
    if model.label_scale is not None:
        mean, std = model.label_scale
        out = out * std + mean
    return out


def smooth_loss(predictions: np.ndarray, labels: np.ndarray) -> float:
    """Mean branch loss over all elements: quadratic inside the unit
    residual band, linear outside."""
    x = np.asarray(predictions, dtype=float)
    y = np.asarray(labels, dtype=float)
    if x.shape != y.shape:
        raise NetworkError(f"prediction shape {x.shape} != label shape {y.shape}")
    if x.size == 0:
        raise NetworkError("loss of an empty batch is undefined")
    diff = x - y
    abs_diff = np.abs(diff)
    z = np.where(abs_diff < 1.0, 0.5 * diff * diff, abs_diff - 0.5)
    return float(np.mean(z))


def _loss_gradient(predictions: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """d(loss)/d(prediction), elementwise: (x - y)/n inside the unit band,
    sign(x - y)/n outside; continuous across the branch boundary."""
    diff = predictions - labels
    n = diff.size
    return np.where(np.abs(diff) < 1.0, diff, np.sign(diff)) / n


def backward(model: NetworkModel, batch: TrainingBatch) -> list[tuple[np.ndarray, np.ndarray]]:
    """Analytic gradient of smooth_loss(forward(x), y) for every weight and
    bias, as a list of (dW, db) pairs aligned with the layers."""
    if batch.x.shape[1] != model.config.input_size:
        raise NetworkError(
            f"batch width {batch.x.shape[1]} does not match input size "
            f"{model.config.input_size}"
        )
    if batch.y.shape[1] != model.config.output_size:
        raise NetworkError(
            f"label width {batch.y.shape[1]} does not match output size "
            f"{model.config.output_size}"
        )
    preacts, activations = _forward_cached(model, batch.x)
    delta = _loss_gradient(activations[-1], batch.y)
    if model.config.output_activation == RELU:
        delta = delta * _relu_grad(preacts[-1])
    grads: list[tuple[np.ndarray, np.ndarray]] = [None] * len(model.weights)
    for l in range(len(model.weights) - 1, -1, -1):
        grads[l] = (activations[l].T @ delta, delta.sum(axis=0))
        if l > 0:
            delta = (delta @ model.weights[l].T) * _relu_grad(preacts[l - 1])
    return grads


def _rms_update(param, state, g, decay, lr, eps):
    state = decay * state + (1.0 - decay) * g * g
    denom = np.sqrt(state + eps)
    # denom can only be 0 where g is 0 (eps=0, fresh state); the step
    # there is exactly 0, so guard the division instead of poisoning
    # the parameter with 0/0.
    denom = np.where(denom == 0.0, 1.0, denom)
    return param - lr * g / denom, state


def rmsprop_step(
    model: NetworkModel, gradients: list[tuple[np.ndarray, np.ndarray]]
) -> NetworkModel:
    """One in-place optimizer update; returns the model for chaining."""
    cfg = model.config
    decay, lr, eps = cfg.rms_decay, cfg.learning_rate, cfg.rms_epsilon
    for l, (gw, gb) in enumerate(gradients):
        model.weights[l], model.rms_weights[l] = _rms_update(
            model.weights[l], model.rms_weights[l], gw, decay, lr, eps
        )
        model.biases[l], model.rms_biases[l] = _rms_update(
            model.biases[l], model.rms_biases[l], gb, decay, lr, eps
        )
    return model


def mape(actual, predicted) -> float:
    """Mean absolute percentage error, in percent of the actual values."""
    a = np.asarray(actual, dtype=float).ravel()
    p = np.asarray(predicted, dtype=float).ravel()
    if a.size != p.size:
        raise NetworkError(f"series lengths differ: {a.size} vs {p.size}")
    if a.size == 0:
        raise NetworkError("cannot compute the error of empty series")
    if np.any(a == 0.0):
        raise NetworkError("actual series contains 0; percentage error undefined")
    return float(np.mean(np.abs(a - p) / a) * 100.0)


def train(
    model: NetworkModel,
    train_batch: TrainingBatch,
    holdout_batch: TrainingBatch,
    config: NetworkConfig,
) -> tuple[NetworkModel, TrainingTrace]:
    """Mini-batch training loop.

    Every epoch reshuffles the training rows with an RNG seeded by
    (config.seed, epoch), so runs are reproducible and the trace is a pure
    function of (config, data). The recorded per-epoch loss is the mean
    over all training elements seen that epoch. With early_stop_patience
    set, training stops once the holdout loss has not improved for that
    many epochs; the trace length always equals the epochs actually run.
    """
    if len(train_batch) == 0:
        raise NetworkError("training set is empty")
    n = len(train_batch)
    x_train, y_train = train_batch.x, train_batch.y
    y_fit = y_train
    if config.standardize_labels:
        mean = float(np.mean(y_train))
        std = float(np.std(y_train))
        if std == 0.0:
            std = 1.0
        model.label_scale = (mean, std)
        y_fit = (y_train - mean) / std
    y_holdout_fit = holdout_batch.y
    if model.label_scale is not None:
        mean, std = model.label_scale
        y_holdout_fit = (holdout_batch.y - mean) / std

    losses: list[float] = []
    best_holdout = np.inf
    stale = 0
    for epoch in range(config.epochs):
        rng = np.random.default_rng([config.seed, epoch])
        order = rng.permutation(n)
        z_total = 0.0
        for start in range(0, n, config.batch_size):
            idx = order[start : start + config.batch_size]
            batch = TrainingBatch(x_train[idx], y_fit[idx])
            grads = backward(model, batch)
            z_total += smooth_loss(forward(model, batch.x), batch.y) * batch.y.size
            rmsprop_step(model, grads)
        losses.append(z_total / y_fit.size)
        if config.early_stop_patience is not None:
            holdout_loss = smooth_loss(forward(model, holdout_batch.x), y_holdout_fit)
            if holdout_loss < best_holdout:
                best_holdout = holdout_loss
                stale = 0
            else:
                stale += 1
                if stale >= config.early_stop_patience:
                    break

    train_mape = mape(y_train, predict(model, x_train))
    holdout_mape = mape(holdout_batch.y, predict(model, holdout_batch.x))
    return model, TrainingTrace(
        epoch_losses=tuple(losses),
        train_mape=train_mape,
        holdout_mape=holdout_mape,
    )


def _layers_to_doc(arrays_w: list[np.ndarray], arrays_b: list[np.ndarray]) -> list[dict]:
    return [
        {"w": w.tolist(), "b": b.tolist()} for w, b in zip(arrays_w, arrays_b)
    ]


def save_model(model: NetworkModel, path, preprocessing: dict | None = None) -> None:
    """Write the versioned model container.

    `preprocessing` is an optional opaque block (input column order,
    standardization statistics, target id) stored alongside the model so a
    saved model can be applied to raw panels.
    """
    doc = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "config": model.config.to_doc(),
        "fingerprint": model.fingerprint,
        "label_scale": list(model.label_scale) if model.label_scale else None,
        "layers": _layers_to_doc(model.weights, model.biases),
        "rms": _layers_to_doc(model.rms_weights, model.rms_biases),
        "preprocessing": preprocessing,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def _read_model_doc(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ModelFileError(f"cannot read model file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"corrupt model file {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != MODEL_FORMAT:
        raise ModelFileError(f"{path} is not a model file")
    if doc.get("version") != MODEL_VERSION:
        raise ModelFileError(
            f"model file {path} has version {doc.get('version')!r}, "
            f"this build reads version {MODEL_VERSION}"
        )
    return doc


def load_model(path) -> NetworkModel:
    """Inverse of save_model; load(save(m)) reproduces predictions exactly."""
    doc = _read_model_doc(path)
    try:
        config = NetworkConfig.from_doc(doc["config"])
        weights = [np.asarray(layer["w"], dtype=float) for layer in doc["layers"]]
        biases = [np.asarray(layer["b"], dtype=float) for layer in doc["layers"]]
        rms_w = [np.asarray(layer["w"], dtype=float) for layer in doc["rms"]]
        rms_b = [np.asarray(layer["b"], dtype=float) for layer in doc["rms"]]
        fingerprint = str(doc["fingerprint"])
        label_scale = doc.get("label_scale")
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFileError(f"corrupt model file {path}: {exc}") from exc
    expected = list(zip(config.layer_sizes[:-1], config.layer_sizes[1:]))
    if [w.shape for w in weights] != expected:
        raise ModelFileError(
            f"corrupt model file {path}: layer shapes do not match the config"
        )
    return NetworkModel(
        config=config,
        weights=weights,
        biases=biases,
        rms_weights=rms_w,
        rms_biases=rms_b,
        fingerprint=fingerprint,
        label_scale=tuple(label_scale) if label_scale else None,
    )


def load_preprocessing(path) -> dict | None:
    """The preprocessing block stored next to the model, if any."""
    return _read_model_doc(path).get("preprocessing")
