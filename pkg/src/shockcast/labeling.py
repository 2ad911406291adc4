"""Self-supervision labels from the z-axis accelerometer.

The raw z accelerometer mixes three things: surface shock, the gravity
vector (slowly rotating with vehicle pitch), and suspension resonance
rung up by each shock. A high-pass FIR filter strips the last two
(0-10 Hz band), leaving isolated shock transients. Each transient's
peak, divided by the vehicle speed at that instant, gives a
speed-independent ruggedness coefficient - the training label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, DataError

MPH_TO_MPS = 0.44704

DEFAULT_TAP_COUNT = 40
DEFAULT_CUTOFF_HZ = 10.0
DEFAULT_EVENT_FLOOR_G = 0.02       # smallest shock worth recording [Gs]
DEFAULT_MIN_SEPARATION_S = 0.25    # exclusion window between events [s]
DEFAULT_ASSOCIATION_RADIUS_M = 0.5


@dataclass(frozen=True)
class ImuSample:
    """One z-axis accelerometer reading (raw, gravity included)."""

    timestamp: float   # [s]
    accel_z: float     # [Gs]


@dataclass(frozen=True)
class FilterSpec:
    """FIR filter taps plus the sample rate they were designed for."""

    taps: np.ndarray
    sample_rate: float  # [Hz]

    def __post_init__(self):
        taps = np.asarray(self.taps, dtype=float)
        if taps.ndim != 1 or taps.size < 8 or taps.size % 2 != 0:
            raise ValueError("taps must be a flat even-length array (>= 8 taps)")
        if abs(taps.sum()) > 1e-6:
            raise ValueError("filter must have zero DC gain")
        object.__setattr__(self, "taps", taps)

    @property
    def tap_count(self):
        return int(self.taps.size)


@dataclass(frozen=True)
class ShockEvent:
    """A filtered accelerometer excursion attributed to one terrain feature."""

    t_peak: float       # [s]
    peak_accel: float   # [Gs], absolute value of the filtered signal
    speed: float        # [mph] at t_peak
    ruggedness: float   # [Gs/mph] = peak_accel / speed
    location: float = float("nan")  # [m] along-track, from integrated odometry


@dataclass(frozen=True)
class PatchSample:
    """Paired left/right wheel point sets with a ruggedness label.

    Point arrays are (k, >=6) with columns
    (x, y, z, t_obs, roll_rate, pitch_rate, ...).
    """

    location: float              # [m] along-track patch center
    left_points: np.ndarray
    right_points: np.ndarray
    ruggedness_label: float = 0.0

    @property
    def scorable(self):
        return len(self.left_points) >= 2 and len(self.right_points) >= 2


# ---------------------------------------------------------------------------
# filter design


def design_highpass(sample_rate, cutoff=DEFAULT_CUTOFF_HZ, tap_count=DEFAULT_TAP_COUNT):
    """Design an even-length windowed-sinc high-pass filter.

    A Hamming-windowed low-pass prototype is designed at the mirrored
    band edge and spectrally reversed (taps negated at odd indices),
    which turns the prototype's structural Nyquist zero into the
    high-pass DC zero. The cutoff is the top of the rejected band: the
    transition band sits just above it. Residual DC gain is removed by
    subtracting the tap mean.
    """
    if tap_count < 8 or tap_count % 2 != 0:
        raise ConfigError("tap_count must be even and >= 8")
    nyquist = sample_rate / 2.0
    if not 0.0 < cutoff < nyquist:
        raise ConfigError(f"cutoff must lie in (0, {nyquist}) Hz")

    transition = 3.3 * sample_rate / tap_count  # Hamming main-lobe width [Hz]
    lp_cutoff = nyquist - (cutoff + transition / 2.0)  # -6 dB point of the prototype
    if lp_cutoff <= 0.0:
        raise ConfigError("cutoff too close to Nyquist for this tap count")

    n = np.arange(tap_count, dtype=float)
    x = n - (tap_count - 1) / 2.0
    taps = 2.0 * lp_cutoff / sample_rate * np.sinc(2.0 * lp_cutoff / sample_rate * x)
    taps *= np.hamming(tap_count)
    taps /= taps.sum()           # unity prototype DC -> unity high-pass Nyquist
    taps *= (-1.0) ** n          # spectral reversal: lowpass -> highpass
    taps -= taps.mean()          # force the DC zero exactly
    return FilterSpec(taps=taps, sample_rate=float(sample_rate))


def frequency_response(spec, freqs):
    """Complex response of the taps at the given frequencies [Hz]."""
    freqs = np.atleast_1d(np.asarray(freqs, dtype=float))
    n = np.arange(spec.tap_count)
    phase = -2j * np.pi * np.outer(freqs, n) / spec.sample_rate
    return np.exp(phase) @ spec.taps


def passband_gain(spec, pulse=None):
    """Peak output of the filter for a unit shock pulse.

    With no pulse given, a unit impulse is used and the result is the
    largest tap magnitude. The simulator uses this to convert raw
    impulse amplitudes into filtered peaks.
    """
    if pulse is None:
        return float(np.max(np.abs(spec.taps)))
    return float(np.max(np.abs(np.convolve(pulse, spec.taps))))


# ---------------------------------------------------------------------------
# filtering


def imu_arrays(samples):
    """Normalize an IMU stream (ImuSample list or arrays) to (t, accel)."""
    if isinstance(samples, tuple) and len(samples) == 2:
        t, a = samples
        return np.asarray(t, dtype=float), np.asarray(a, dtype=float)
    t = np.array([s.timestamp for s in samples], dtype=float)
    a = np.array([s.accel_z for s in samples], dtype=float)
    return t, a


def filter_accel(samples, spec):
    """High-pass filter an IMU stream; returns values aligned to input times.

    The convolution output is shifted back by the filter's group delay
    (tap_count / 2 samples) so peaks stay time-registered with the
    input. The ends carry the usual transient where the kernel only
    partially overlaps the data.
    """
    times, accel = imu_arrays(samples)
    if accel.size < spec.tap_count:
        raise DataError(f"stream of {accel.size} samples is shorter than the {spec.tap_count}-tap filter")
    dt = np.diff(times)
    expected = 1.0 / spec.sample_rate
    if dt.size and (np.max(np.abs(dt - expected)) > 1e-6 * max(1.0, expected)):
        raise DataError("IMU stream is not uniformly sampled at the filter's sample rate")
    full = np.convolve(accel, spec.taps)
    shift = spec.tap_count // 2
    return full[shift:shift + accel.size]


# ---------------------------------------------------------------------------
# event extraction


def odometry_from_speeds(speed_times, speed_mph):
    """Integrate a speed series into along-track position [m]."""
    t = np.asarray(speed_times, dtype=float)
    v = np.asarray(speed_mph, dtype=float) * MPH_TO_MPS
    s = np.zeros_like(t)
    if t.size > 1:
        mid = 0.5 * (v[1:] + v[:-1])
        s[1:] = np.cumsum(mid * np.diff(t))
    return s


def extract_events(times, filtered, speed_times, speed_mph,
                   min_separation=DEFAULT_MIN_SEPARATION_S,
                   floor=DEFAULT_EVENT_FLOOR_G,
                   origin_s=0.0,
                   stats=None):
    """Segment a filtered accelerometer series into shock events.

    Local maxima of the absolute signal above the floor are taken
    largest-first, each claiming an exclusion window of
    +-min_separation. The speed at each surviving peak converts it to
    a ruggedness coefficient; peaks at non-positive speed are discarded
    (and counted in stats["discarded_nonpositive_speed"] when a dict is
    passed). Event locations come from speed-integrated odometry,
    offset by origin_s.
    """
    times = np.asarray(times, dtype=float)
    mag = np.abs(np.asarray(filtered, dtype=float))
    speed_times = np.asarray(speed_times, dtype=float)
    speed_mph = np.asarray(speed_mph, dtype=float)
    if times.size and speed_times.size:
        if times[0] < speed_times[0] - 1e-9 or times[-1] > speed_times[-1] + 1e-9:
            raise DataError("speed series does not cover the filtered series")

    discarded = 0
    events = []
    if mag.size >= 3:
        inner = mag[1:-1]
        is_peak = (inner >= mag[:-2]) & (inner > mag[2:]) & (inner > floor)
        idx = np.nonzero(is_peak)[0] + 1
        # largest first; earlier peak wins ties
        order = np.lexsort((times[idx], -mag[idx]))
        idx = idx[order]
        odo = odometry_from_speeds(speed_times, speed_mph)
        accepted_times = []
        for i in idx:
            t = times[i]
            if any(abs(t - ta) < min_separation for ta in accepted_times):
                continue
            accepted_times.append(t)
            speed = float(np.interp(t, speed_times, speed_mph))
            if speed <= 0.0:
                discarded += 1
                continue
            peak = float(mag[i])
            events.append(ShockEvent(
                t_peak=float(t),
                peak_accel=peak,
                speed=speed,
                ruggedness=peak / speed,
                location=origin_s + float(np.interp(t, speed_times, odo)),
            ))
    if stats is not None:
        stats["discarded_nonpositive_speed"] = discarded
    events.sort(key=lambda e: e.t_peak)
    return events


def label_patches(events, patches, association_radius=DEFAULT_ASSOCIATION_RADIUS_M):
    """Label each patch with the worst nearby shock.

    A patch's label is the maximum ruggedness coefficient among events
    within association_radius of its along-track location, or 0 when
    none are near.
    """
    if not events:
        return [replace(p, ruggedness_label=0.0) for p in patches]
    ev_s = np.array([e.location for e in events])
    ev_r = np.array([e.ruggedness for e in events])
    if np.any(~np.isfinite(ev_s)):
        raise DataError("events must carry along-track locations to label patches")
    order = np.argsort(ev_s)
    ev_s, ev_r = ev_s[order], ev_r[order]
    labeled = []
    for p in patches:
        lo = np.searchsorted(ev_s, p.location - association_radius)
        hi = np.searchsorted(ev_s, p.location + association_radius, side="right")
        label = float(ev_r[lo:hi].max()) if hi > lo else 0.0
        labeled.append(replace(p, ruggedness_label=label))
    return labeled


def export_filtered_series(path, times, filtered, speed_times, speed_mph):
    """Write the filtered series as delimited text for plotting."""
    speeds = np.interp(times, speed_times, speed_mph)
    with open(path, "w") as fh:
        fh.write("# time_s filtered_g speed_mph\n")
        for t, f, v in zip(times, filtered, speeds):
            fh.write(f"{t:.6f} {f:.9g} {v:.6f}\n")


def export_events(path, events):
    """Write shock events as delimited text for plotting."""
    with open(path, "w") as fh:
        fh.write("# t_peak_s peak_g speed_mph ruggedness_g_per_mph location_m\n")
        for e in events:
            fh.write(f"{e.t_peak:.6f} {e.peak_accel:.9g} {e.speed:.6f} {e.ruggedness:.9g} {e.location:.6f}\n")
