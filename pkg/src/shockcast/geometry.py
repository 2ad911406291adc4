"""Laser-scan geometry: pose interpolation, scan projection, patch selection.

The scanner sweeps a single plane, tilted downward, and the third
dimension comes from vehicle motion: each planar scan is projected
through the vehicle pose at its timestamp and accumulated into a 3-D
point cloud. Scans (75 Hz) and pose samples (100 Hz) are asynchronous,
so poses are interpolated to scan time first.

Frames and conventions:
  * world: x forward along the initial heading, y left, z up
  * orientation: (roll, pitch, yaw), right-handed rotations about the
    body x/y/z axes, composed as Rz(yaw) @ Ry(pitch) @ Rx(roll);
    positive pitch tips the nose down (right-handed about the left-
    pointing y axis)
  * beam azimuth: 0 at the fan center, positive toward +y (left)
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError

# Reported range for beams without a return; such beams are dropped at
# projection time.
NO_RETURN_RANGE = 81.91

SCAN_BEAM_COUNT = 181

# Column layout of point arrays used throughout the pipeline. The first
# six columns are the per-point features consumed by the scorer; beam
# index is carried only to make tie-breaking deterministic.
POINT_COLUMNS = ("x", "y", "z", "t_obs", "roll_rate", "pitch_rate", "beam")


class ExtrapolationError(DataError):
    """Pose queried outside the time span covered by the log."""


@dataclass(frozen=True)
class RawScan:
    """One planar sweep: 181 range readings at fixed angular spacing."""

    timestamp: float               # [s]
    ranges: np.ndarray             # (181,) [m]; NO_RETURN_RANGE marks dropouts
    angular_resolution: float = 0.5  # [deg] between adjacent beams
    scan_frequency: float = 75.0     # [Hz]

    def __post_init__(self):
        ranges = np.asarray(self.ranges, dtype=float)
        if ranges.shape != (SCAN_BEAM_COUNT,):
            raise ValueError(f"scan must have exactly {SCAN_BEAM_COUNT} ranges, got {ranges.shape}")
        if np.any(ranges < 0.0):
            raise ValueError("ranges must be non-negative")
        object.__setattr__(self, "ranges", ranges)


@dataclass(frozen=True)
class PoseSample:
    """Vehicle pose plus the angular rates used as noise indicators."""

    timestamp: float                             # [s]
    position: tuple[float, float, float]         # (x, y, z) [m], world frame
    orientation: tuple[float, float, float]      # (roll, pitch, yaw) [rad]
    roll_rate: float = 0.0                       # [rad/s]
    pitch_rate: float = 0.0                      # [rad/s]


@dataclass(frozen=True)
class LaserPoint:
    """One projected laser return with its observation-time context.

    The scorer consumes (x, y, z, t_obs, roll_rate, pitch_rate). The
    beam index is provenance only: it makes ordering ties in patch
    selection deterministic.
    """

    x: float
    y: float
    z: float
    t_obs: float          # [s] timestamp of the source scan
    roll_rate: float      # [rad/s] at observation time
    pitch_rate: float     # [rad/s] at observation time
    beam: int = -1

    def as_row(self):
        return np.array(
            [self.x, self.y, self.z, self.t_obs, self.roll_rate, self.pitch_rate, float(self.beam)]
        )


@dataclass(frozen=True)
class MountGeometry:
    """Where the scanner sits on the vehicle and how it is aimed."""

    laser_height: float = 2.0              # [m] above the rear-axle ground point
    tilt: float = math.radians(10.0)       # [rad] downward from horizontal
    lateral_offset: float = 0.0            # [m] +y (left) of the vehicle centerline
    forward_offset: float = 0.0            # [m] +x (forward) of the rear axle

    def __post_init__(self):
        # tilt 0 (horizontal fan) is allowed for bench setups and tests
        if not 0.0 <= self.tilt < math.pi / 2:
            raise ValueError("tilt must lie in [0, pi/2)")
        if self.laser_height <= 0.0:
            raise ValueError("laser_height must be positive")

    def offset_vector(self):
        return np.array([self.forward_offset, self.lateral_offset, self.laser_height])


def rotation_matrix(roll, pitch, yaw):
    """World-from-body rotation, Rz(yaw) @ Ry(pitch) @ Rx(roll)."""
    cr, sr = math.cos(roll), math.sin(roll)
    cp, sp = math.cos(pitch), math.sin(pitch)
    cy, sy = math.cos(yaw), math.sin(yaw)
    return np.array(
        [
            [cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr],
            [sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr],
            [-sp, cp * sr, cp * cr],
        ]
    )


def beam_azimuths(beam_count=SCAN_BEAM_COUNT, angular_resolution=0.5):
    """Azimuth of each beam [rad]; beam (count-1)/2 is the fan center."""
    idx = np.arange(beam_count, dtype=float)
    return np.radians((idx - (beam_count - 1) / 2.0) * angular_resolution)


def beam_directions(beam_count=SCAN_BEAM_COUNT, angular_resolution=0.5, tilt=0.0):
    """Unit beam directions in the vehicle body frame, (count, 3).

    Each beam starts as (cos az, sin az, 0) in the scan plane and the
    whole fan is pitched down by the mount tilt.
    """
    az = beam_azimuths(beam_count, angular_resolution)
    ct, st = math.cos(tilt), math.sin(tilt)
    return np.column_stack([ct * np.cos(az), np.sin(az), -st * np.cos(az)])


# ---------------------------------------------------------------------------
# pose interpolation


def interpolate_pose(poses, t):
    """Linearly interpolate a pose log at time t.

    Exact at sample timestamps; raises ExtrapolationError outside the
    logged span. Angles are interpolated linearly (desk-scale logs stay
    far from wraparound).
    """
    if not poses:
        raise ValueError("pose log is empty")
    times = [p.timestamp for p in poses]
    if t < times[0] or t > times[-1]:
        raise ExtrapolationError(f"t={t} outside pose span [{times[0]}, {times[-1]}]")
    i = bisect.bisect_left(times, t)
    if i < len(times) and times[i] == t:
        return poses[i]
    lo, hi = poses[i - 1], poses[i]
    w = (t - lo.timestamp) / (hi.timestamp - lo.timestamp)

    def lerp(a, b):
        return a + w * (b - a)

    return PoseSample(
        timestamp=t,
        position=tuple(lerp(a, b) for a, b in zip(lo.position, hi.position)),
        orientation=tuple(lerp(a, b) for a, b in zip(lo.orientation, hi.orientation)),
        roll_rate=lerp(lo.roll_rate, hi.roll_rate),
        pitch_rate=lerp(lo.pitch_rate, hi.pitch_rate),
    )


def interpolate_pose_arrays(pose_times, positions, orientations, rates, query_times):
    """Vectorized pose interpolation for the pipeline fast path.

    pose_times (m,), positions (m,3), orientations (m,3), rates (m,2).
    Returns (positions, orientations, rates) at the query times.
    """
    qt = np.asarray(query_times, dtype=float)
    if qt.size and (qt.min() < pose_times[0] or qt.max() > pose_times[-1]):
        raise ExtrapolationError("query times outside pose span")
    out_pos = np.column_stack([np.interp(qt, pose_times, positions[:, k]) for k in range(3)])
    out_ang = np.column_stack([np.interp(qt, pose_times, orientations[:, k]) for k in range(3)])
    out_rates = np.column_stack([np.interp(qt, pose_times, rates[:, k]) for k in range(2)])
    return out_pos, out_ang, out_rates


# ---------------------------------------------------------------------------
# projection


def project_scan_array(scan_time, ranges, angular_resolution, position, orientation, rates, mount,
                       no_return=NO_RETURN_RANGE):
    """Project one scan into the world frame; returns an (n, 7) point array.

    Beams at or beyond the no-return sentinel are dropped. Columns
    follow POINT_COLUMNS.
    """
    ranges = np.asarray(ranges, dtype=float)
    valid = ranges < no_return
    if not np.any(valid):
        return np.empty((0, len(POINT_COLUMNS)))
    beams = np.nonzero(valid)[0]
    dirs = beam_directions(ranges.shape[0], angular_resolution, mount.tilt)[beams]
    local = mount.offset_vector() + ranges[beams, None] * dirs
    rot = rotation_matrix(*orientation)
    world = np.asarray(position) + local @ rot.T
    out = np.empty((beams.size, len(POINT_COLUMNS)))
    out[:, 0:3] = world
    out[:, 3] = scan_time
    out[:, 4] = rates[0]
    out[:, 5] = rates[1]
    out[:, 6] = beams
    return out


def project_scan(scan, pose, mount):
    """Project a RawScan through a pose; returns a list of LaserPoint.

    The pose must already be interpolated to the scan timestamp.
    """
    if abs(pose.timestamp - scan.timestamp) > 1e-9:
        raise ValueError("pose timestamp does not match scan timestamp; interpolate first")
    arr = project_scan_array(
        scan.timestamp,
        scan.ranges,
        scan.angular_resolution,
        pose.position,
        pose.orientation,
        (pose.roll_rate, pose.pitch_rate),
        mount,
    )
    return points_from_array(arr)


def points_from_array(arr):
    return [
        LaserPoint(x=r[0], y=r[1], z=r[2], t_obs=r[3], roll_rate=r[4], pitch_rate=r[5], beam=int(r[6]))
        for r in np.asarray(arr, dtype=float)
    ]


def points_to_array(points):
    """Normalize a cloud (LaserPoint list or array) to an (n, 7) array."""
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
        if arr.ndim != 2 or arr.shape[1] < 6:
            raise ValueError("point array must be (n, >=6)")
        if arr.shape[1] == 6:
            arr = np.column_stack([arr, np.full(arr.shape[0], -1.0)])
        return arr[:, :7]
    rows = [p.as_row() if isinstance(p, LaserPoint) else np.asarray(p, dtype=float) for p in points]
    if not rows:
        return np.empty((0, len(POINT_COLUMNS)))
    return points_to_array(np.vstack([r if r.shape[0] >= 7 else np.append(r, -1.0) for r in rows]))


# ---------------------------------------------------------------------------
# patch selection


def _distance_to_polyline(xy, path):
    """Min distance from each (x, y) row to a polyline (m, 2)."""
    path = np.asarray(path, dtype=float).reshape(-1, 2)
    if path.shape[0] == 1:
        return np.hypot(xy[:, 0] - path[0, 0], xy[:, 1] - path[0, 1])
    a = path[:-1]                       # (m-1, 2) segment starts
    d = path[1:] - a                    # (m-1, 2) segment vectors
    seg_len2 = np.maximum(np.einsum("ij,ij->i", d, d), 1e-300)
    # (n, m-1) projection parameter clipped to the segment
    t = np.clip(((xy[:, None, :] - a[None]) * d[None]).sum(-1) / seg_len2[None], 0.0, 1.0)
    closest = a[None] + t[..., None] * d[None]
    dist = np.hypot(xy[:, None, 0] - closest[..., 0], xy[:, None, 1] - closest[..., 1])
    return dist.min(axis=1)


def select_patch_points_array(cloud, wheel_path, corridor_radius, n_points):
    """Array fast path of select_patch_points; cloud is (n, 7)."""
    if corridor_radius <= 0.0:
        raise ValueError("corridor_radius must be positive")
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    cloud = points_to_array(cloud)
    if cloud.shape[0] == 0:
        return cloud
    dist = _distance_to_polyline(cloud[:, 0:2], wheel_path)
    inside = dist <= corridor_radius
    if not np.any(inside):
        return cloud[:0]
    sub = cloud[inside]
    # nearest first; ties by earlier observation time, then lower beam index
    order = np.lexsort((sub[:, 6], sub[:, 3], dist[inside]))
    return sub[order[:n_points]]


def select_patch_points(cloud, wheel_path, corridor_radius, n_points):
    """Pick up to n_points cloud points within the wheel corridor.

    Points whose (x, y) distance to the predicted wheel track exceeds
    corridor_radius are excluded; the nearest survivors win. An empty
    result is valid and means the patch is unscorable.
    """
    as_list = not isinstance(cloud, np.ndarray)
    selected = select_patch_points_array(points_to_array(cloud), wheel_path, corridor_radius, n_points)
    return points_from_array(selected) if as_list else selected
