"""The Region Stability index: RS = 100 / network_output - 1.

The network emits a sigmoid activation y in (0, 1); the pipeline scales it
to a 0-100 evaluation, so the transform here takes that 0-100 value. The
transform is a strictly decreasing bijection from (0, 100] onto [0, inf)
under which the 0-100 label bands map exactly onto RS class cut points:

    output > 80        <->  RS < 0.25   fragile
    50 < output <= 80  <->  0.25 <= RS < 1   vulnerable
    output <= 50       <->  RS >= 1     stable

Each boundary value is assigned to the less-fragile class.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRangeError, NonPositiveOutputError, OutOfRangeError

FRAGILE_RS_CUTOFF = 0.25
STABLE_RS_CUTOFF = 1.0


class StabilityClass(str, enum.Enum):
    FRAGILE = "fragile"
    VULNERABLE = "vulnerable"
    STABLE = "stable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RsScore:
    value: float
    category: StabilityClass
    bpnn_output: float | None = None


def classify(rs_value: float) -> StabilityClass:
    """Class bands: fragile below 0.25, vulnerable in [0.25, 1), stable from 1."""
    v = float(rs_value)
    if not math.isfinite(v):
        raise NonPositiveOutputError(f"RS value must be finite, got {v}")
    if v < FRAGILE_RS_CUTOFF:
        return StabilityClass.FRAGILE
    if v < STABLE_RS_CUTOFF:
        return StabilityClass.VULNERABLE
    return StabilityClass.STABLE


def rs_transform(bpnn_output: float) -> RsScore:
    """RS score for one 0-100 network evaluation.

    value = 100 / output - 1, singular at 0, hence the strict positivity
    requirement. Outputs above 100 (possible only for externally supplied
    evaluations, never for the sigmoid-backed network) give negative RS and
    classify as fragile.
    """
    out = float(bpnn_output)
    if not math.isfinite(out) or out <= 0.0:
        raise NonPositiveOutputError(f"network output must be > 0, got {out}")
    value = 100.0 / out - 1.0
    return RsScore(value=value, category=classify(value), bpnn_output=out)


def normalize_labels(raw, raw_min: float = 0.0, raw_max: float = 120.0) -> np.ndarray:
    """Affine min-max map of raw fragility labels onto [0, 100].

    The default raw range [0, 120] matches a 12-indicator source score of
    0-10 points each. Values outside [raw_min, raw_max] are rejected.
    """
    lo = float(raw_min)
    hi = float(raw_max)
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise DegenerateRangeError(f"raw_max must exceed raw_min, got [{lo}, {hi}]")
    a = np.asarray(raw, dtype=float)
    if not np.isfinite(a).all():
        raise OutOfRangeError("labels must be finite")
    if (a < lo).any() or (a > hi).any():
        bad = a[(a < lo) | (a > hi)][0]
        raise OutOfRangeError(f"label {bad} outside [{lo}, {hi}]")
    return (a - lo) / (hi - lo) * 100.0
