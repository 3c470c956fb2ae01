"""Objects in the radar field of view and their vibration models."""

from dataclasses import dataclass, field

import numpy as np

from .config import RangeGrid
from .errors import SceneError

KIND_HUMAN = "human"
KIND_STATIC = "static_clutter"
KIND_VIBRATING = "vibrating_clutter"
OBJECT_KINDS = (KIND_HUMAN, KIND_STATIC, KIND_VIBRATING)


@dataclass(frozen=True)
class Static:
    """No displacement: v[l] = 0."""

    def sample(self, frames: np.ndarray, f_s: float) -> np.ndarray:
        return np.zeros(np.shape(frames))


@dataclass(frozen=True)
class Tones:
    """Sum-of-cosines displacement: v[l] = sum_q a_q cos(2*pi*g_q*l*T_s).

    For humans the designated ground-truth rates default to the first tone
    (respiration) and second tone (heartbeat) unless given explicitly.
    """

    tones: tuple  # ((amplitude [m], frequency [Hz]), ...)
    rr_hz: float | None = None
    hr_hz: float | None = None

    def validate(self, f_s: float) -> None:
        for a, g in self.tones:
            if not (0.0 <= g < f_s / 2.0):
                raise SceneError(f"tone frequency {g} Hz outside [0, f_s/2) with f_s={f_s} Hz")

    def sample(self, frames: np.ndarray, f_s: float) -> np.ndarray:
        t = np.asarray(frames, dtype=float) / f_s
        v = np.zeros_like(t)
        for a, g in self.tones:
            v += a * np.cos(2.0 * np.pi * g * t)
        return v

    def designated_rates(self) -> tuple:
        """Ground-truth (respiration, heartbeat) frequencies in Hz."""
        rr = self.rr_hz if self.rr_hz is not None else (self.tones[0][1] if self.tones else None)
        hr = self.hr_hz if self.hr_hz is not None else (self.tones[1][1] if len(self.tones) > 1 else None)
        return rr, hr


@dataclass(frozen=True)
class Trace:
    """Recorded displacement samples [m] at the slow-time frame rate."""

    samples: tuple
    sample_rate_hz: float
    source: str | None = None  # originating CSV path, kept for serialization

    def validate(self, f_s: float) -> None:
        if abs(self.sample_rate_hz - f_s) > 1e-9 * f_s:
            raise SceneError(
                f"trace sample rate {self.sample_rate_hz} Hz does not match f_s = {f_s} Hz"
            )

    def sample(self, frames: np.ndarray, f_s: float) -> np.ndarray:
        frames = np.asarray(frames)
        if frames.max(initial=0) > len(self.samples):
            raise SceneError(
                f"trace has {len(self.samples)} samples but frame {int(frames.max())} requested"
            )
        data = np.asarray(self.samples, dtype=float)
        return data[frames - 1]


@dataclass(frozen=True)
class ObjectSpec:
    """One reflector in the FOV, snapped onto the range grid."""

    kind: str
    x_m: float                 # reflection amplitude
    d_requested: float         # requested distance [m]
    vibration: object          # Static | Tones | Trace
    bin: int = -1              # grid-snapped range bin
    d_effective: float = -1.0  # grid-snapped distance [m]


@dataclass(frozen=True)
class Scene:
    """A snapped collection of objects, one per range bin."""

    objects: tuple
    grid: RangeGrid

    @property
    def bins(self) -> np.ndarray:
        return np.array([o.bin for o in self.objects], dtype=int)

    @property
    def human_bins(self) -> np.ndarray:
        return np.array([o.bin for o in self.objects if o.kind == KIND_HUMAN], dtype=int)

    def humans(self) -> list:
        return [o for o in self.objects if o.kind == KIND_HUMAN]

    def snap_report(self) -> list:
        """(kind, requested, effective, delta) per object, for CLI output."""
        return [
            (o.kind, o.d_requested, o.d_effective, o.d_effective - o.d_requested)
            for o in self.objects
        ]


def snap_scene(objects, grid: RangeGrid, f_s: float | None = None) -> Scene:
    """Snap requested object distances to the nearest Nyquist range bin.

    ``objects`` is an iterable of (kind, x_m, d_requested, vibration) tuples or
    unsnapped ObjectSpec instances. Bin 0 (DC) is not allowed and no two
    objects may share a bin.
    """
    snapped = []
    by_bin = {}
    for obj in objects:
        if isinstance(obj, ObjectSpec):
            kind, x_m, d_req, vib = obj.kind, obj.x_m, obj.d_requested, obj.vibration
        else:
            kind, x_m, d_req, vib = obj
        if kind not in OBJECT_KINDS:
            raise SceneError(f"unknown object kind {kind!r}")
        if not (0.0 < d_req <= grid.d_max):
            raise SceneError(
                f"{kind} at {d_req} m is outside the detectable range (0, {grid.d_max:.4f}] m"
            )
        if f_s is not None and hasattr(vib, "validate"):
            vib.validate(f_s)
        b = int(round(d_req / grid.delta_d))
        if b < 1:
            raise SceneError(f"{kind} at {d_req} m snaps to the DC bin; move it outward")
        if b >= len(grid):
            raise SceneError(f"{kind} at {d_req} m snaps past the last range bin")
        if b in by_bin:
            other = by_bin[b]
            raise SceneError(
                f"bin collision at bin {b}: {other.kind} at {other.d_requested} m "
                f"and {kind} at {d_req} m"
            )
        spec = ObjectSpec(
            kind=kind, x_m=x_m, d_requested=d_req, vibration=vib,
            bin=b, d_effective=b * grid.delta_d,
        )
        by_bin[b] = spec
        snapped.append(spec)
    return Scene(objects=tuple(snapped), grid=grid)
