"""Surface roughness scoring.

A terrain patch is scored by comparing its laser points pairwise with a
seven-term difference polynomial: height change is evidence for
roughness, while elapsed time, horizontal separation, and the angular
rates at observation time discount it. The largest pairwise scores are
kept, weighted geometrically so a few compelling comparisons dominate
many weak ones, and the two rear-wheel scores combine through a learned
power law. A threshold on the combined score yields the binary
rugged/smooth verdict.

ParameterVector field names (alpha1..alpha10, v, omega, zeta) plus mu
form the stable 14-field serialization contract for model files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import DataError, SchemaError
from .geometry import LaserPoint

# Learned-parameter order: this is also the coordinate order of the
# training search.
PARAM_FIELDS = (
    "alpha1", "alpha2", "alpha3", "alpha4", "alpha5",
    "alpha6", "alpha7", "alpha8", "alpha9", "alpha10",
    "v", "omega", "zeta",
)
MODEL_FIELDS = PARAM_FIELDS + ("mu",)

# Exponent entries must stay non-negative so |.|^a is well-defined and
# monotone in its base.
_EXPONENT_FIELDS = ("alpha2", "alpha4", "alpha6", "alpha8", "alpha10")


class UnscorablePatchError(DataError):
    """Fewer than two points: no pairwise comparisons exist."""


class ModelFormatError(SchemaError):
    """A serialized model document is malformed."""


class InvalidParameterError(ValueError):
    """A ParameterVector violates its invariants."""


@dataclass(frozen=True)
class ParameterVector:
    """The 13 learned shape parameters of the scorer.

    alpha1/3/5/7/9 are term coefficients, alpha2/4/6/8/10 the matching
    exponents; v weights successive retained scores, omega is how many
    of the largest pairwise scores are kept, zeta is the wheel
    combination exponent.
    """

    alpha1: float
    alpha2: float
    alpha3: float
    alpha4: float
    alpha5: float
    alpha6: float
    alpha7: float
    alpha8: float
    alpha9: float
    alpha10: float
    v: float
    omega: int
    zeta: float

    def validate(self):
        for name in _EXPONENT_FIELDS:
            if getattr(self, name) < 0.0:
                raise InvalidParameterError(f"{name} must be >= 0")
        if self.v < 0.0:
            raise InvalidParameterError("v must be >= 0")
        if self.omega < 1:
            raise InvalidParameterError("omega must be >= 1")
        if self.zeta <= 0.0:
            raise InvalidParameterError("zeta must be > 0")
        return self

    def is_valid(self):
        try:
            self.validate()
        except InvalidParameterError:
            return False
        return True

    def to_array(self):
        return np.array([float(getattr(self, name)) for name in PARAM_FIELDS])

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=float)
        if arr.shape != (len(PARAM_FIELDS),):
            raise ValueError(f"expected {len(PARAM_FIELDS)} entries, got {arr.shape}")
        kwargs = dict(zip(PARAM_FIELDS, arr))
        # omega lives on an integer lattice; round half away from zero
        kwargs["omega"] = int(math.floor(kwargs["omega"] + 0.5))
        return cls(**kwargs)

    def replace(self, **kwargs):
        return replace(self, **kwargs)


def default_initial_params():
    """Documented starting point for training."""
    return ParameterVector(
        alpha1=1.0, alpha2=1.0, alpha3=0.1, alpha4=1.0, alpha5=0.1,
        alpha6=1.0, alpha7=0.1, alpha8=1.0, alpha9=0.1, alpha10=1.0,
        v=1.5, omega=10, zeta=1.0,
    )


@dataclass(frozen=True)
class ClassifierModel:
    """Learned parameters plus the classification threshold."""

    params: ParameterVector
    mu: float

    def to_mapping(self):
        out = {name: float(getattr(self.params, name)) for name in PARAM_FIELDS}
        out["omega"] = int(self.params.omega)
        out["mu"] = float(self.mu)
        return out

    @classmethod
    def from_mapping(cls, mapping):
        mapping = dict(mapping)
        missing = [name for name in MODEL_FIELDS if name not in mapping]
        if missing:
            raise ModelFormatError(f"missing model field: {missing[0]}")
        unknown = [k for k in mapping if k not in MODEL_FIELDS]
        if unknown:
            raise ModelFormatError(f"unknown model field: {unknown[0]}")
        values = {}
        for name in MODEL_FIELDS:
            try:
                values[name] = float(mapping[name])
            except (TypeError, ValueError):
                raise ModelFormatError(f"non-numeric model field: {name}") from None
        omega = values["omega"]
        if abs(omega - round(omega)) > 1e-9:
            raise ModelFormatError("non-integer model field: omega")
        values["omega"] = int(round(omega))
        mu = values.pop("mu")
        if not math.isfinite(mu):
            raise ModelFormatError("non-finite model field: mu")
        try:
            params = ParameterVector(**values).validate()
        except InvalidParameterError as exc:
            raise ModelFormatError(f"invalid model field: {exc}") from None
        return cls(params=params, mu=mu)


@dataclass(frozen=True)
class RoughnessScore:
    """Per-wheel and combined scores for one patch."""

    r_left: float
    r_right: float
    r_combined: float
    left_scorable: bool = True
    right_scorable: bool = True

    @property
    def scorable(self):
        return self.left_scorable and self.right_scorable


def _point_features(p):
    """(x, y, z, t_obs, roll_rate, pitch_rate) from a point-like value."""
    if isinstance(p, LaserPoint):
        return p.x, p.y, p.z, p.t_obs, p.roll_rate, p.pitch_rate
    seq = tuple(float(v) for v in np.asarray(p, dtype=float)[:6])
    if len(seq) != 6:
        raise ValueError("point must provide at least 6 features")
    return seq


def delta(point_a, point_b, params):
    """Pairwise difference score between two laser points.

    Height change earns positive score; time separation, horizontal
    distance, and angular rates at either observation subtract from it.
    Symmetric in its point arguments, and zero for identical points
    whose rates are zero.
    """
    ax, ay, az, at, ag, ap = _point_features(point_a)
    bx, by, bz, bt, bg, bp = _point_features(point_b)
    dz = abs(az - bz)
    dt = abs(at - bt)
    dxy = math.hypot(ax - bx, ay - by)
    return (
        params.alpha1 * dz ** params.alpha2
        - params.alpha3 * dt ** params.alpha4
        - params.alpha5 * dxy ** params.alpha6
        - params.alpha7 * abs(ag) ** params.alpha8
        - params.alpha7 * abs(bg) ** params.alpha8
        - params.alpha9 * abs(ap) ** params.alpha10
        - params.alpha9 * abs(bp) ** params.alpha10
    )


def score_window(points, params):
    """All-pairs scores reduced to the omega largest, sorted ascending.

    Evaluates delta over every unordered pair: exactly (n^2 - n) / 2
    evaluations for n points.
    """
    pts = list(points)
    n = len(pts)
    if n < 2:
        raise UnscorablePatchError(f"need at least 2 points to score a patch, got {n}")
    scores = []
    for i in range(n):
        for j in range(i + 1, n):
            scores.append(delta(pts[i], pts[j], params))
    scores.sort()
    keep = min(int(params.omega), len(scores))
    return scores[-keep:]


def accumulate(window, v, omega):
    """Weighted sum of an ascending score window: sum of w[i] * v**i.

    The retained scores (at most omega of them) are summed with
    geometrically increasing weights, so with v > 1 the largest score
    dominates.
    """
    if len(window) > omega:
        raise ValueError(f"window holds {len(window)} scores but omega is {omega}")
    total = 0.0
    for i, w in enumerate(window):
        total += w * v ** i
    return total


def combine(r_left, r_right, zeta):
    """Two-wheel combination: r_left**zeta + r_right**zeta.

    Negative per-wheel scores are clamped to zero first (a real
    exponent of a negative base is undefined, and a negative score
    carries no roughness evidence).
    """
    left = max(float(r_left), 0.0)
    right = max(float(r_right), 0.0)
    return left ** zeta + right ** zeta


def classify(r_combined, model):
    """True iff the combined score strictly exceeds the threshold."""
    return r_combined > model.mu


def score_patch(left_points, right_points, params):
    """Full per-patch scoring: window, accumulation, wheel combination.

    A wheel with fewer than two points is unscorable; its score is
    zero and the patch is flagged so downstream statistics can exclude
    it.
    """
    sides = []
    flags = []
    for pts in (left_points, right_points):
        pts = list(pts) if not isinstance(pts, np.ndarray) else pts
        n = len(pts)
        if n < 2:
            sides.append(0.0)
            flags.append(False)
            continue
        window = score_window(pts, params)
        sides.append(accumulate(window, params.v, params.omega))
        flags.append(True)
    return RoughnessScore(
        r_left=sides[0],
        r_right=sides[1],
        r_combined=combine(sides[0], sides[1], params.zeta),
        left_scorable=flags[0],
        right_scorable=flags[1],
    )


# ---------------------------------------------------------------------------
# model persistence: a flat key-value text document with 14 numeric fields


def save_model(path, model):
    lines = ["# terrain roughness classifier model"]
    mapping = model.to_mapping()
    for name in MODEL_FIELDS:
        value = mapping[name]
        lines.append(f"{name} {value:d}" if isinstance(value, int) else f"{name} {value:.17g}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model(path):
    mapping = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ModelFormatError(f"line {lineno}: expected 'name value', got {line!r}")
            key, value = parts
            if key in mapping:
                raise ModelFormatError(f"duplicate model field: {key}")
            mapping[key] = value
    return ClassifierModel.from_mapping(mapping)


def _check_fields():
    names = tuple(f.name for f in fields(ParameterVector))
    assert names == PARAM_FIELDS, "PARAM_FIELDS out of sync with ParameterVector"


_check_fields()
