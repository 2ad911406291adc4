"""Hot scoring kernels with a compiled core and a pure-numpy fallback.

Training re-scores every patch for every candidate parameter vector, so
the pairwise polynomial plus top-omega reduction is the dominant cost
of the whole pipeline. The pair geometry (height/time/distance
differences and per-point rate magnitudes) never changes across
candidates, so it is precomputed once into a PairFeatures block and the
kernels only re-evaluate the parameter-dependent part.

Backend selection happens at import: the compiled extension is used
when present, otherwise the numpy implementation. Set
SHOCKCAST_KERNEL=pure or SHOCKCAST_KERNEL=compiled to force one
(forcing "compiled" raises if the extension is missing). Both backends
implement the same contract and are compared directly in the test
suite and in benchmarks/bench_kernels.py.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PairFeatures",
    "backend_name",
    "available_backends",
    "score_sets",
    "score_sets_using",
]


def _as_f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def _as_i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


@dataclass(frozen=True)
class PairFeatures:
    """Parameter-independent pair features for many point sets.

    Pair arrays are concatenated across sets and sliced by
    pair_offsets; ridx/cidx index into the concatenated per-point rate
    arrays.
    """

    dz: np.ndarray            # (pairs,) |z_r - z_c|
    dt: np.ndarray            # (pairs,) |t_r - t_c|
    dxy: np.ndarray           # (pairs,) horizontal distance
    ridx: np.ndarray          # (pairs,) int64 first-point index
    cidx: np.ndarray          # (pairs,) int64 second-point index
    pair_offsets: np.ndarray  # (n_sets + 1,) int64
    g_abs: np.ndarray         # (points,) |roll_rate|
    p_abs: np.ndarray         # (points,) |pitch_rate|

    @property
    def n_sets(self):
        return len(self.pair_offsets) - 1

    @property
    def n_pairs(self):
        return len(self.dz)

    @classmethod
    def from_point_sets(cls, point_sets):
        """Build features from a sequence of (k, >=6) point arrays.

        Point columns are (x, y, z, t_obs, roll_rate, pitch_rate, ...).
        Sets with fewer than two points contribute no pairs and score 0.
        """
        dz, dt, dxy, ridx, cidx = [], [], [], [], []
        g_abs, p_abs = [], []
        offsets = [0]
        triu_cache = {}
        point_base = 0
        n_pairs = 0
        for pts in point_sets:
            pts = np.asarray(pts, dtype=float)
            k = pts.shape[0]
            if k >= 2:
                if k not in triu_cache:
                    triu_cache[k] = np.triu_indices(k, 1)
                ii, jj = triu_cache[k]
                dz.append(np.abs(pts[ii, 2] - pts[jj, 2]))
                dt.append(np.abs(pts[ii, 3] - pts[jj, 3]))
                dxy.append(np.hypot(pts[ii, 0] - pts[jj, 0], pts[ii, 1] - pts[jj, 1]))
                ridx.append(ii + point_base)
                cidx.append(jj + point_base)
                n_pairs += len(ii)
            if k > 0:
                g_abs.append(np.abs(pts[:, 4]))
                p_abs.append(np.abs(pts[:, 5]))
            point_base += k
            offsets.append(n_pairs)

        def cat(parts, dtype):
            if not parts:
                return np.empty(0, dtype=dtype)
            return np.ascontiguousarray(np.concatenate(parts), dtype=dtype)

        return cls(
            dz=cat(dz, np.float64),
            dt=cat(dt, np.float64),
            dxy=cat(dxy, np.float64),
            ridx=cat(ridx, np.int64),
            cidx=cat(cidx, np.int64),
            pair_offsets=_as_i64(offsets),
            g_abs=cat(g_abs, np.float64),
            p_abs=cat(p_abs, np.float64),
        )


def _select_backend():
    choice = os.environ.get("SHOCKCAST_KERNEL", "auto").strip().lower() or "auto"
    if choice not in ("auto", "compiled", "pure"):
        raise ValueError(f"SHOCKCAST_KERNEL must be auto, compiled, or pure; got {choice!r}")
    if choice != "pure":
        try:
            from . import _fast
            return _fast, "compiled"
        except ImportError:
            if choice == "compiled":
                raise
    from . import pure
    return pure, "pure"


_impl, _BACKEND = _select_backend()


def backend_name():
    """Name of the active backend: 'compiled' or 'pure'."""
    return _BACKEND


def available_backends():
    """All importable backends, keyed by name."""
    from . import pure
    out = {"pure": pure}
    try:
        from . import _fast
        out["compiled"] = _fast
    except ImportError:
        pass
    return out


def _kernel_args(features, params):
    alphas = np.array(
        [params.alpha1, params.alpha2, params.alpha3, params.alpha4, params.alpha5,
         params.alpha6, params.alpha7, params.alpha8, params.alpha9, params.alpha10],
        dtype=np.float64,
    )
    omega = int(params.omega)
    if omega < 1:
        raise ValueError("omega must be >= 1")
    vpow = float(params.v) ** np.arange(omega, dtype=np.float64)
    return (
        _as_f64(features.dz), _as_f64(features.dt), _as_f64(features.dxy),
        _as_i64(features.ridx), _as_i64(features.cidx), _as_i64(features.pair_offsets),
        _as_f64(features.g_abs), _as_f64(features.p_abs),
        alphas, _as_f64(vpow),
    )


def score_sets(features, params):
    """Accumulated (unclamped) score of every point set under params.

    Equivalent to score_window + accumulate per set; sets without pairs
    score 0.
    """
    return _impl.score_sets(*_kernel_args(features, params))


def score_sets_using(impl, features, params):
    """Run a specific backend module (for benchmarks and equivalence tests)."""
    return impl.score_sets(*_kernel_args(features, params))
