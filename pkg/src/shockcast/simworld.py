"""Synthetic test world: terrain, traversal, laser, pose error, and shock.

Stands in for unavailable field data. The world is deliberately simple
but reproduces the phenomena the estimator must cope with:

  * sparse low bumps (centimeters) on smoothly undulating ground
  * a planar tilted laser scanned at 75 Hz, ray-cast from the true pose
  * reported poses corrupted by slowly drifting orientation error, so
    the projected z error between two scans grows linearly with the
    time between them, plus white jitter with occasional high-noise
    bursts (the bursts also show up in the reported angular rates)
  * a z accelerometer carrying gravity, per-bump shock transients whose
    amplitude is linear in speed and bump height, a damped sub-10 Hz
    suspension resonance rung by each shock, and white noise

Everything is seeded; no wall-clock entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError
from .geometry import (
    NO_RETURN_RANGE,
    MountGeometry,
    PoseSample,
    RawScan,
    beam_directions,
    rotation_matrix,
)
from .labeling import MPH_TO_MPS, ImuSample

# Lateral footprint of a bump: full height out to the core half-width,
# cosine taper to zero at the outer half-width. Wide enough to cover
# both wheel corridors.
BUMP_LATERAL_CORE = 2.0
BUMP_LATERAL_EXTENT = 3.0


@dataclass(frozen=True)
class Bump:
    """One localized ridge across the track."""

    s: float          # [m] along-track center
    lateral: float    # [m] lateral center (0 = track centerline)
    height: float     # [m] peak height
    width: float      # [m] full along-track extent


@dataclass(frozen=True)
class TerrainProfile:
    """Heightfield: smooth base undulation plus sparse bumps."""

    track_length: float
    base_amplitudes: np.ndarray    # [m]
    base_wavelengths: np.ndarray   # [m]
    base_phases: np.ndarray        # [rad]
    crown: float = 0.002           # [1/m] lateral camber curvature
    bumps: tuple[Bump, ...] = ()

    def base_height(self, s, lateral=0.0):
        s = np.asarray(s, dtype=float)
        out = np.zeros_like(s)
        for a, lam, ph in zip(self.base_amplitudes, self.base_wavelengths, self.base_phases):
            out = out + a * np.sin(2.0 * np.pi * s / lam + ph)
        return out - self.crown * np.square(np.asarray(lateral, dtype=float))

    def base_slope(self, s):
        """d(base)/ds at the centerline (analytic)."""
        s = np.asarray(s, dtype=float)
        out = np.zeros_like(s)
        for a, lam, ph in zip(self.base_amplitudes, self.base_wavelengths, self.base_phases):
            k = 2.0 * np.pi / lam
            out = out + a * k * np.cos(k * s + ph)
        return out

    def bump_height(self, s, lateral=0.0):
        s = np.asarray(s, dtype=float)
        lateral = np.broadcast_to(np.asarray(lateral, dtype=float), s.shape)
        out = np.zeros_like(s)
        for b in self.bumps:
            half = b.width / 2.0
            ds = np.abs(s - b.s)
            mask = ds < half
            if not np.any(mask):
                continue
            profile = np.zeros_like(s)
            profile[mask] = b.height * np.cos(np.pi * (s[mask] - b.s) / b.width) ** 2
            dl = np.abs(lateral - b.lateral)
            lat_gain = np.clip((BUMP_LATERAL_EXTENT - dl) / (BUMP_LATERAL_EXTENT - BUMP_LATERAL_CORE), 0.0, 1.0)
            taper = np.where(dl <= BUMP_LATERAL_CORE, 1.0, np.sin(lat_gain * np.pi / 2.0) ** 2)
            out = out + profile * taper
        return out

    def height(self, s, lateral=0.0):
        return self.base_height(s, lateral) + self.bump_height(s, lateral)

    def bump_intervals(self):
        """(n, 2) sorted array of along-track bump extents."""
        if not self.bumps:
            return np.empty((0, 2))
        iv = np.array([[b.s - b.width / 2.0, b.s + b.width / 2.0] for b in self.bumps])
        return iv[np.argsort(iv[:, 0])]


def generate_terrain(seed, length, bump_density=6.0, height_range=(0.01, 0.15), *,
                     big_fraction=0.4, big_range=(0.08, 0.15), small_range=(0.01, 0.045),
                     width_range=(0.35, 0.5), min_spacing=8.0,
                     cluster_prob=0.35, cluster_span=(2, 4), cluster_gap=(4.0, 12.0),
                     base_amplitude=0.03, edge_margin=25.0):
    """Deterministically generate a terrain profile.

    bump_density is bumps per km (Poisson count over the course).
    Heights are drawn from a bimodal mix - tall bumps from big_range
    with probability big_fraction, low texture from small_range
    otherwise - clipped to height_range. A fraction of bumps arrive in
    short clusters, mimicking washboard sections.
    """
    if bump_density < 0.0:
        raise ConfigError("bump_density must be >= 0")
    lo, hi = height_range
    if not 0.005 <= lo < hi <= 0.5:
        raise ConfigError("height_range must lie within [0.005, 0.5] m")
    rng = np.random.default_rng([int(seed), 0x7E11])

    rel = base_amplitude / 0.03 if base_amplitude > 0 else 0.0
    amplitudes = np.array([0.030, 0.018, 0.009]) * rel
    wavelengths = np.array([83.0, 151.0, 293.0])
    phases = rng.uniform(0.0, 2.0 * np.pi, size=3)

    n_target = int(rng.poisson(bump_density * length / 1000.0))
    positions: list[float] = []
    lo_s, hi_s = edge_margin, length - edge_margin
    guard = 0
    while len(positions) < n_target and guard < 10000 and hi_s > lo_s:
        guard += 1
        pos = float(rng.uniform(lo_s, hi_s))
        if positions and min(abs(pos - p) for p in positions) < min_spacing:
            continue
        group = [pos]
        if rng.uniform() < cluster_prob:
            size = int(rng.integers(cluster_span[0], cluster_span[1] + 1))
            at = pos
            for _ in range(size - 1):
                at += float(rng.uniform(*cluster_gap))
                if at > hi_s:
                    break
                group.append(at)
        for g in group:
            if len(positions) >= n_target:
                break
            if positions and min(abs(g - p) for p in positions) < cluster_gap[0]:
                continue
            positions.append(g)

    bumps = []
    for pos in positions:
        if rng.uniform() < big_fraction:
            height = float(rng.uniform(*big_range))
        else:
            height = float(rng.uniform(*small_range))
        height = float(np.clip(height, lo, hi))
        width = float(rng.uniform(*width_range))
        bumps.append(Bump(s=pos, lateral=0.0, height=height, width=width))
    bumps.sort(key=lambda b: b.s)

    return TerrainProfile(
        track_length=float(length),
        base_amplitudes=amplitudes,
        base_wavelengths=wavelengths,
        base_phases=phases,
        bumps=tuple(bumps),
    )


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class SimConfig:
    """Everything the traversal simulator needs besides the terrain."""

    mount: MountGeometry = field(default_factory=lambda: MountGeometry(
        laser_height=2.0, tilt=math.radians(10.0), lateral_offset=0.0, forward_offset=1.5))
    beam_count: int = 181
    angular_resolution: float = 0.5       # [deg]
    scan_frequency: float = 75.0          # [Hz]
    pose_rate: float = 100.0              # [Hz]
    max_range: float = NO_RETURN_RANGE    # [m] no-return sentinel

    speed_mph: float = 15.0               # constant plan when speed_profile is None
    speed_profile: tuple | None = None    # (s_knots [m], mph_knots) piecewise-linear
    track_width: float = 1.5              # [m] rear wheels at +-track_width/2

    # pose-error model: triangle-wave orientation drift sized so the
    # projected z error grows at z_error_rate per second of inter-scan
    # time, plus white jitter with occasional high-noise bursts
    z_error_rate: float = 0.05            # [m/s]
    drift_period: float = 12.0            # [s]
    orientation_jitter: float = 3.5e-4    # [rad] 1-sigma per pose sample
    burst_rate_per_km: float = 2.0
    burst_duration: float = 0.7           # [s]
    burst_scale: float = 12.0             # jitter multiplier inside bursts

    # shock model: filtered peak is linear in speed and bump height
    shock_gain: float = 0.39              # [Gs per (mph * m of bump height)]
    impulse_carrier: float = 20.0         # [Hz] inside the filter passband
    impulse_duration: float = 0.07        # [s]
    resonance_freq: float = 4.5           # [Hz] suspension mode (must be < 10)
    resonance_damping: float = 0.15
    resonance_gain: float = 0.6           # resonance amplitude relative to impulse
    imu_noise: float = 0.004              # [Gs] white noise 1-sigma
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.resonance_freq < 10.0:
            raise ConfigError("resonance_freq must lie in (0, 10) Hz so the shock filter removes it")
        for name in ("scan_frequency", "pose_rate", "drift_period", "impulse_duration"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"{name} must be positive")
        if self.speed_profile is None and self.speed_mph <= 0.0:
            raise ConfigError("speed_mph must be positive")

    def plan_speed(self, s):
        """Planned speed [mph] at along-track position(s) s."""
        if self.speed_profile is None:
            return np.full_like(np.asarray(s, dtype=float), self.speed_mph)
        knots_s, knots_v = self.speed_profile
        return np.interp(np.asarray(s, dtype=float), knots_s, knots_v)

    def nominal_intercept(self):
        """Horizontal distance from axle to the center-beam ground hit [m]."""
        return self.mount.forward_offset + self.mount.laser_height / math.tan(self.mount.tilt)

    def drift_amplitude(self):
        """Orientation drift amplitude [rad] realizing z_error_rate."""
        d_h = self.mount.laser_height / math.tan(self.mount.tilt)
        return self.z_error_rate * self.drift_period / (4.0 * d_h)


# ---------------------------------------------------------------------------
# sensor log


@dataclass
class SensorLog:
    """Time-ordered simulated sensor streams plus ground truth.

    Streams are stored as arrays; the .scans/.poses/.true_poses/.imu
    properties materialize the per-record dataclasses for small logs
    and contract-level tests. true_* arrays are noise-free and exist
    for oracles only - the estimator pipeline must never read them.
    """

    scan_times: np.ndarray          # (ns,)
    scan_ranges: np.ndarray         # (ns, beams)
    pose_times: np.ndarray          # (np,)
    pose_pos: np.ndarray            # (np, 3) reported
    pose_rpy: np.ndarray            # (np, 3) reported
    pose_rates: np.ndarray          # (np, 2) reported (roll_rate, pitch_rate)
    true_pos: np.ndarray
    true_rpy: np.ndarray
    true_rates: np.ndarray
    imu_times: np.ndarray           # (ni,)
    imu_accel: np.ndarray           # (ni,) raw z accel [Gs]
    speed_times: np.ndarray
    speed_mph: np.ndarray
    ground_truth_bumps: tuple[Bump, ...]
    config: SimConfig
    s_start: float                  # [m] terrain span owned by this log
    s_end: float
    origin_s: float                 # [m] along-track position at speed_times[0]

    @property
    def scans(self):
        return [
            RawScan(timestamp=float(t), ranges=r,
                    angular_resolution=self.config.angular_resolution,
                    scan_frequency=self.config.scan_frequency)
            for t, r in zip(self.scan_times, self.scan_ranges)
        ]

    def _pose_list(self, pos, rpy, rates):
        return [
            PoseSample(timestamp=float(t), position=tuple(p), orientation=tuple(o),
                       roll_rate=float(r[0]), pitch_rate=float(r[1]))
            for t, p, o, r in zip(self.pose_times, pos, rpy, rates)
        ]

    @property
    def poses(self):
        return self._pose_list(self.pose_pos, self.pose_rpy, self.pose_rates)

    @property
    def true_poses(self):
        return self._pose_list(self.true_pos, self.true_rpy, self.true_rates)

    @property
    def imu(self):
        return [ImuSample(timestamp=float(t), accel_z=float(a))
                for t, a in zip(self.imu_times, self.imu_accel)]

    def odometry(self):
        """(times, s) with s integrated from the speed series."""
        from .labeling import odometry_from_speeds
        return self.speed_times, self.origin_s + odometry_from_speeds(self.speed_times, self.speed_mph)


# ---------------------------------------------------------------------------
# building blocks


def _triangle_wave(t, period, phase):
    """Unit triangle wave in [-1, 1] with the given period and phase."""
    ph = np.mod((np.asarray(t, dtype=float) + phase) / period, 1.0)
    return 4.0 * np.abs(ph - 0.5) - 1.0


def integrate_motion(config, length, dt):
    """March along the track; returns (times, s, mph) sampled every dt.

    Trapezoid-consistent so that re-integrating the returned speed
    series reproduces s exactly.
    """
    times = [0.0]
    s = [0.0]
    v = [float(config.plan_speed(0.0))]
    while s[-1] < length:
        v_here = v[-1]
        s_pred = s[-1] + v_here * MPH_TO_MPS * dt
        v_next = float(config.plan_speed(min(s_pred, length)))
        if v_here <= 0.0 or v_next <= 0.0:
            raise ConfigError("speed plan must stay positive over the whole course")
        s_next = s[-1] + 0.5 * (v_here + v_next) * MPH_TO_MPS * dt
        times.append(times[-1] + dt)
        s.append(s_next)
        v.append(v_next)
    return np.array(times), np.array(s), np.array(v)


def cast_scan(terrain, origin, directions, max_range=NO_RETURN_RANGE):
    """Ray-cast one scan fan against the heightfield.

    Fixed-point iteration against the smooth base surface finds the
    nominal intercept; beams whose ray can touch a bump are refined by
    marching plus bisection against the full heightfield. Returns
    ranges with no-return beams at max_range.
    """
    ox, oy, oz = origin
    d = np.asarray(directions, dtype=float)
    dz = d[:, 2]
    n = d.shape[0]
    ranges = np.full(n, max_range)
    desc = dz < -1e-9
    if not np.any(desc):
        return ranges

    idx = np.nonzero(desc)[0]
    dzi = dz[idx]
    r = np.full(idx.size, 0.0)
    base0 = terrain.base_height(np.full(idx.size, ox), oy + 0.0)
    r = (oz - base0) / (-dzi)
    for _ in range(40):
        x = ox + r * d[idx, 0]
        y = oy + r * d[idx, 1]
        h = terrain.base_height(x, y)
        r_new = (oz - h) / (-dzi)
        if np.max(np.abs(r_new - r)) < 1e-12:
            r = r_new
            break
        r = r_new
    r = np.maximum(r, 0.0)

    intervals = terrain.bump_intervals()
    if intervals.size:
        x_flat = ox + r * d[idx, 0]
        # a beam can strike a bump only shortly before its flat
        # intercept: max bump height / descent slope plus slack
        starts, ends = intervals[:, 0], intervals[:, 1]
        reach = 1.2
        j = np.searchsorted(ends, x_flat - reach)
        j = np.minimum(j, len(starts) - 1)
        needs = (np.searchsorted(ends, x_flat - reach) < len(starts)) & (starts[j] <= x_flat + 0.05)
        if np.any(needs):
            sub = np.nonzero(needs)[0]
            r_hit = _refine_against_bumps(terrain, (ox, oy, oz), d[idx[sub]], r[sub])
            r[sub] = r_hit

    ok = (r > 0.0) & (r < max_range)
    ranges[idx[ok]] = r[ok]
    return ranges


def _refine_against_bumps(terrain, origin, dirs, r_flat, back=2.5, steps=64):
    """First heightfield intersection for beams near bumps (vectorized)."""
    ox, oy, oz = origin
    n = dirs.shape[0]
    r_lo = np.maximum(r_flat - back, 0.0)
    r_hi = r_flat + 0.1
    grid = np.linspace(0.0, 1.0, steps)
    rr = r_lo[:, None] + (r_hi - r_lo)[:, None] * grid[None, :]
    x = ox + rr * dirs[:, 0:1]
    y = oy + rr * dirs[:, 1:2]
    f = (oz + rr * dirs[:, 2:3]) - terrain.height(x.ravel(), y.ravel()).reshape(n, steps)
    below = f <= 0.0
    first = np.argmax(below, axis=1)
    none = ~below.any(axis=1)
    first = np.where(none, steps - 1, np.maximum(first, 1))
    lo = np.take_along_axis(rr, (first - 1)[:, None], axis=1).ravel()
    hi = np.take_along_axis(rr, first[:, None], axis=1).ravel()
    for _ in range(45):
        mid = 0.5 * (lo + hi)
        fm = (oz + mid * dirs[:, 2]) - terrain.height(ox + mid * dirs[:, 0], oy + mid * dirs[:, 1])
        above = fm > 0.0
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    out = 0.5 * (lo + hi)
    return np.where(none, r_flat, out)


def shock_pulse(config, dt):
    """Sampled unit shock transient (peak 1.0 at the center sample)."""
    half = config.impulse_duration / 2.0
    k = int(math.floor(half / dt))
    tau = np.arange(-k, k + 1) * dt
    envelope = np.cos(np.pi * tau / config.impulse_duration) ** 2
    return envelope * np.cos(2.0 * np.pi * config.impulse_carrier * tau)


def synthesize_imu(times, speed_mph, s_of_t, bumps, config, seed_tag=0xACCE):
    """Raw z-accelerometer stream for a motion history over the bumps.

    Shared by the traversal simulator and the controller replays so a
    re-simulated run with the original speed plan reproduces the
    original stream exactly.
    """
    times = np.asarray(times, dtype=float)
    n = times.size
    rng = np.random.default_rng([int(config.seed), int(seed_tag)])
    accel = 1.0 + rng.normal(0.0, config.imu_noise, n)
    if n < 2 or not bumps:
        return accel
    dt = times[1] - times[0]
    pulse = shock_pulse(config, dt)
    k_half = (pulse.size - 1) // 2
    zeta = config.resonance_damping
    w_res = 2.0 * np.pi * config.resonance_freq
    w_damped = w_res * math.sqrt(max(1.0 - zeta * zeta, 1e-9))
    res_len = int(min(5.0 / max(w_res * zeta, 1e-6), 10.0) / dt) + 1
    tau_res = np.arange(res_len) * dt
    res_shape = np.exp(-w_res * zeta * tau_res) * np.sin(w_damped * tau_res)

    s_of_t = np.asarray(s_of_t, dtype=float)
    for b in bumps:
        if b.s <= s_of_t[0] or b.s >= s_of_t[-1]:
            continue
        t_hit = float(np.interp(b.s, s_of_t, times))
        center = int(round((t_hit - times[0]) / dt))
        if center < 0 or center >= n:
            continue
        v_hit = float(speed_mph[min(center, n - 1)])
        amp = config.shock_gain * v_hit * b.height
        lo = max(center - k_half, 0)
        hi = min(center + k_half + 1, n)
        accel[lo:hi] += amp * pulse[lo - (center - k_half): pulse.size - ((center + k_half + 1) - hi)]
        hi_r = min(center + res_len, n)
        accel[center:hi_r] += amp * config.resonance_gain * res_shape[: hi_r - center]
    return accel


# ---------------------------------------------------------------------------
# traversal


def simulate_traversal(terrain, config):
    """Drive the course and record every sensor stream."""
    dt_pose = 1.0 / config.pose_rate
    pose_times, s_pose, v_pose = integrate_motion(config, terrain.track_length, dt_pose)
    n_pose = pose_times.size
    rng = np.random.default_rng([int(config.seed), 0x905E])

    # true pose: ride the smooth base surface, ignore bumps (suspension)
    true_pos = np.column_stack([s_pose, np.zeros(n_pose), terrain.base_height(s_pose, 0.0)])
    pitch_true = -np.arctan(terrain.base_slope(s_pose))
    true_rpy = np.column_stack([np.zeros(n_pose), pitch_true, np.zeros(n_pose)])
    true_rates = np.column_stack([
        np.gradient(true_rpy[:, 0], dt_pose),
        np.gradient(true_rpy[:, 1], dt_pose),
    ])

    # orientation error: bounded triangle drift (linear z-error growth
    # between scans) plus white jitter with bursts
    amp = config.drift_amplitude()
    phase_p, phase_r = rng.uniform(0.0, config.drift_period, size=2)
    drift_pitch = amp * _triangle_wave(pose_times, config.drift_period, phase_p)
    drift_roll = 0.5 * amp * _triangle_wave(pose_times, config.drift_period, phase_r)

    scale = np.ones(n_pose)
    total_km = terrain.track_length / 1000.0
    n_bursts = int(rng.poisson(config.burst_rate_per_km * total_km))
    burst_starts = np.sort(rng.uniform(0.0, max(pose_times[-1] - config.burst_duration, 0.0),
                                       size=n_bursts))
    for t0 in burst_starts:
        scale[(pose_times >= t0) & (pose_times < t0 + config.burst_duration)] = config.burst_scale
    jitter = rng.normal(0.0, config.orientation_jitter, size=(n_pose, 2)) * scale[:, None]

    pose_rpy = true_rpy.copy()
    pose_rpy[:, 0] += drift_roll + jitter[:, 0]
    pose_rpy[:, 1] += drift_pitch + jitter[:, 1]
    pose_rates = np.column_stack([
        np.gradient(pose_rpy[:, 0], dt_pose),
        np.gradient(pose_rpy[:, 1], dt_pose),
    ])
    pose_pos = true_pos.copy()  # error is injected through orientation only

    # scans: ray-cast from the true pose
    n_scan = int(math.floor(pose_times[-1] * config.scan_frequency)) + 1
    scan_times = np.arange(n_scan) / config.scan_frequency
    dirs_body = beam_directions(config.beam_count, config.angular_resolution, config.mount.tilt)
    offset = config.mount.offset_vector()
    scan_ranges = np.empty((n_scan, config.beam_count))
    tp = pose_times
    interp_pos = np.column_stack([np.interp(scan_times, tp, true_pos[:, k]) for k in range(3)])
    interp_rpy = np.column_stack([np.interp(scan_times, tp, true_rpy[:, k]) for k in range(3)])
    for i in range(n_scan):
        rot = rotation_matrix(*interp_rpy[i])
        origin = interp_pos[i] + rot @ offset
        dirs_world = dirs_body @ rot.T
        scan_ranges[i] = cast_scan(terrain, origin, dirs_world, config.max_range)

    imu_accel = synthesize_imu(pose_times, v_pose, s_pose, terrain.bumps, config)

    return SensorLog(
        scan_times=scan_times,
        scan_ranges=scan_ranges,
        pose_times=pose_times,
        pose_pos=pose_pos,
        pose_rpy=pose_rpy,
        pose_rates=pose_rates,
        true_pos=true_pos,
        true_rpy=true_rpy,
        true_rates=true_rates,
        imu_times=pose_times.copy(),
        imu_accel=imu_accel,
        speed_times=pose_times.copy(),
        speed_mph=v_pose,
        ground_truth_bumps=tuple(terrain.bumps),
        config=config,
        s_start=0.0,
        s_end=float(terrain.track_length),
        origin_s=0.0,
    )


def split_log(log, boundary_s):
    """Split a log into disjoint lower/upper halves by track position.

    Streams are cut at the time the vehicle crosses the boundary; a
    bump exactly on the boundary goes to the lower half.
    """
    if not log.s_start < boundary_s < log.s_end:
        raise ValueError(f"boundary {boundary_s} outside log span ({log.s_start}, {log.s_end})")
    times, s = log.odometry()
    t_cross = float(np.interp(boundary_s, s, times))

    def cut(stream_times, *arrays, lower):
        mask = stream_times < t_cross if lower else stream_times >= t_cross
        return (stream_times[mask],) + tuple(a[mask] for a in arrays)

    halves = []
    for lower in (True, False):
        st, sr = cut(log.scan_times, log.scan_ranges, lower=lower)
        pt, pp, prpy, prates, tp_, trpy, trates = cut(
            log.pose_times, log.pose_pos, log.pose_rpy, log.pose_rates,
            log.true_pos, log.true_rpy, log.true_rates, lower=lower)
        it, ia = cut(log.imu_times, log.imu_accel, lower=lower)
        vt, vm = cut(log.speed_times, log.speed_mph, lower=lower)
        bumps = tuple(b for b in log.ground_truth_bumps
                      if (b.s <= boundary_s) == lower)
        origin = log.origin_s if lower else float(np.interp(vt[0], times, s))
        halves.append(SensorLog(
            scan_times=st, scan_ranges=sr,
            pose_times=pt, pose_pos=pp, pose_rpy=prpy, pose_rates=prates,
            true_pos=tp_, true_rpy=trpy, true_rates=trates,
            imu_times=it, imu_accel=ia,
            speed_times=vt, speed_mph=vm,
            ground_truth_bumps=bumps,
            config=log.config,
            s_start=log.s_start if lower else float(boundary_s),
            s_end=float(boundary_s) if lower else log.s_end,
            origin_s=origin,
        ))
    return halves[0], halves[1]
