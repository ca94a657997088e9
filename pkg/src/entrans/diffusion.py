"""Logistic technology-diffusion curves and their policy-intensity algebra.

The adoption share follows R(t) = c / (1 + exp(-p * (t - t0))) with ceiling
c, per-year speed p, and a time anchor t0. Ceiling and speed for a given
policy interpolate linearly between a business-as-usual floor and an
optimal benchmark:

    c_i = c_base + (c_op - c_base) * f_c
    p_i = p_base + (p_op - p_base) * f_p

where (f_c, f_p) are intensity factors in [0, 1]. The t0 anchor is solved
so a curve passes exactly through a known (time, share) point, which ties
every scenario curve to the same model-predicted starting share. Inverse
helpers answer "what speed reaches share R_T at time t_T" and "what
intensity yields that speed".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DiffusionError

PRODUCTION = "production"
CAPACITY = "capacity"
TARGET_KINDS = (PRODUCTION, CAPACITY)

# Benchmark constants: 80% saturation at the observed Danish 1994-2018
# speeds; business-as-usual saturates at 15% with one third of the speed.
OPTIMAL_CEILING = 0.80
BASELINE_CEILING = 0.15
OPTIMAL_SPEED = {PRODUCTION: 0.162, CAPACITY: 0.120}
BASELINE_SPEED_RATIO = 1.0 / 3.0


@dataclass(frozen=True)
class ScenarioBounds:
    """Ceiling/speed envelope between business-as-usual and optimal."""

    target_kind: str
    c_base: float = BASELINE_CEILING
    c_op: float = OPTIMAL_CEILING
    p_op: float | None = None
    p_base: float | None = None

    def __post_init__(self):
        if self.target_kind not in TARGET_KINDS:
            raise DiffusionError(
                f"unknown target kind {self.target_kind!r}; expected one of {TARGET_KINDS}"
            )
        if self.p_op is None:
            object.__setattr__(self, "p_op", OPTIMAL_SPEED[self.target_kind])
        if self.p_base is None:
            object.__setattr__(self, "p_base", self.p_op * BASELINE_SPEED_RATIO)
        if not 0.0 < self.c_base < self.c_op <= 1.0:
            raise DiffusionError(
                f"ceilings must satisfy 0 < c_base < c_op <= 1, got "
                f"c_base={self.c_base}, c_op={self.c_op}"
            )
        if not 0.0 < self.p_base < self.p_op:
            raise DiffusionError(
                f"speeds must satisfy 0 < p_base < p_op, got "
                f"p_base={self.p_base}, p_op={self.p_op}"
            )


@dataclass(frozen=True)
class DiffusionParams:
    """One concrete logistic curve: ceiling, speed, and time anchor."""

    c: float
    p: float
    t0: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.c <= 1.0:
            raise DiffusionError(f"ceiling c={self.c} outside (0, 1]")
        if self.p <= 0.0:
            raise DiffusionError(f"speed p={self.p} must be positive")


@dataclass(frozen=True)
class PolicyIntensity:
    """Ceiling and speed factors, both fractions in [0, 1]."""

    f_c: float
    f_p: float
    source: str = ""

    def __post_init__(self):
        for name, value in (("f_c", self.f_c), ("f_p", self.f_p)):
            if not 0.0 <= value <= 1.0:
                raise DiffusionError(f"intensity {name}={value} outside [0, 1]")


@dataclass(frozen=True)
class RequiredIntensity:
    """Inverse-solve result; out-of-envelope values are flagged, not clamped."""

    value: float
    in_envelope: bool


def s_curve(params: DiffusionParams, t):
    """Adoption share at time t (years); accepts scalars or arrays."""
    t = np.asarray(t, dtype=float)
    share = params.c / (1.0 + np.exp(-params.p * (t - params.t0)))
    if share.ndim == 0:
        return float(share)
    return share


def apply_intensity(bounds: ScenarioBounds, intensity: PolicyIntensity) -> tuple[float, float]:
    """Interpolate (ceiling, speed) between the baseline and optimal bounds."""
    c = bounds.c_base + (bounds.c_op - bounds.c_base) * intensity.f_c
    p = bounds.p_base + (bounds.p_op - bounds.p_base) * intensity.f_p
    return c, p


def calibrate(c: float, p: float, anchor: tuple[float, float]) -> DiffusionParams:
    """Solve the time offset so the curve passes exactly through the anchor.

    With anchor (t_a, R_a), t0 = t_a + ln(c / R_a - 1) / p makes
    s_curve(t_a) = R_a. The anchor share must lie strictly inside (0, c);
    a share at or above the ceiling means this curve can never reach it.
    """
    t_a, share = anchor
    if share <= 0.0:
        raise DiffusionError(f"anchor share {share} must be positive")
    if share >= c:
        raise DiffusionError(
            f"anchor share {share} is at or above the ceiling {c}; "
            "the curve cannot pass through it"
        )
    t0 = t_a + math.log(c / share - 1.0) / p
    return DiffusionParams(c=c, p=p, t0=t0)


def trajectory(params: DiffusionParams, start: float, end: float, step: float = 1.0):
    """Shares on the inclusive [start, end] grid with the given step.

    Returns (times, shares) as arrays; shares are strictly increasing
    because p > 0.
    """
    if step <= 0.0:
        raise DiffusionError(f"step {step} must be positive")
    if start > end:
        raise DiffusionError(f"start {start} is after end {end}")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    times = start + step * np.arange(count)
    return times, s_curve(params, times)


def invert_for_speed(
    c: float,
    anchor: tuple[float, float],
    target: tuple[float, float],
) -> float:
    """Speed making the curve through the anchor hit the target point.

    Closed form from the two-point logistic:
        p = [ln(c/R_a - 1) - ln(c/R_T - 1)] / (t_T - t_a)
    A target share at or above the ceiling is infeasible at any speed;
    callers must raise the ceiling instead. A target share equal to the
    anchor share yields p = 0 (degenerate: no growth needed).
    """
    t_a, share_a = anchor
    t_t, share_t = target
    if share_a <= 0.0 or share_a >= c:
        raise DiffusionError(f"anchor share {share_a} must lie in (0, {c})")
    if share_t >= c:
        raise DiffusionError(
            f"target share {share_t} is at or above the ceiling {c}; "
            "no speed can reach it (raise the ceiling factor instead)"
        )
    if share_t < share_a:
        raise DiffusionError(
            f"target share {share_t} is below the anchor share {share_a}"
        )
    if t_t <= t_a:
        raise DiffusionError(f"target time {t_t} must be after anchor time {t_a}")
    return (math.log(c / share_a - 1.0) - math.log(c / share_t - 1.0)) / (t_t - t_a)


def intensity_for_speed(bounds: ScenarioBounds, p: float) -> RequiredIntensity:
    """Invert the speed interpolation; values outside [0, 1] are flagged.

    An out-of-envelope result means the required speed is unreachable
    within the policy envelope (above optimal strength) or already met
    without any policy (below baseline).
    """
    span = bounds.p_op - bounds.p_base
    if span == 0.0:
        raise DiffusionError("speed bounds are degenerate (p_op equals p_base)")
    f_p = (p - bounds.p_base) / span
    return RequiredIntensity(value=f_p, in_envelope=0.0 <= f_p <= 1.0)


def intensity_for_ceiling(bounds: ScenarioBounds, c: float) -> RequiredIntensity:
    """Invert the ceiling interpolation; values outside [0, 1] are flagged."""
    span = bounds.c_op - bounds.c_base
    f_c = (c - bounds.c_base) / span
    return RequiredIntensity(value=f_c, in_envelope=0.0 <= f_c <= 1.0)
