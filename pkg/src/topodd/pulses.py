"""Propagators for physical pulse models.

Frame convention, used by every model here::

    H(t) = 1/2 * [[ Delta(t),                  Omega(t) e^{i phi}],
                  [ Omega(t) e^{-i phi},       -Delta(t)         ]]

so a constant pulse gives ``a = cos(W T/2) - i (Delta/W) sin(W T/2)`` and
``b = -i (Omega/W) sin(W T/2) e^{i phi}`` with ``W = sqrt(Omega^2 + Delta^2)``.
Frequencies are angular (rad/s), times in seconds.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid
from scipy.interpolate import CubicSpline

from .phase import ZERO, Phase, PhaseLike
from .su2 import IDENTITY, Unitary2

DEFAULT_RABI = 2 * math.pi * 25e6
DEFAULT_DURATION = 20e-9


class IntegrationError(RuntimeError):
    """The step-halving integrator did not converge within its step budget."""

    def __init__(self, message: str, defect: float):
        super().__init__(f"{message} (achieved defect {defect:.3g})")
        self.defect = defect


@dataclass(frozen=True)
class RectPulse:
    """Constant-amplitude pulse; ``area = rabi * duration``."""

    rabi: float
    duration: float
    detuning: float = 0.0
    phase: Phase = ZERO

    def __post_init__(self):
        if not self.rabi >= 0:
            raise ValueError(f"rabi frequency must be >= 0, got {self.rabi}")
        if not self.duration > 0:
            raise ValueError(f"duration must be > 0, got {self.duration}")
        object.__setattr__(self, "phase", Phase.of(self.phase))

    @property
    def area(self) -> float:
        return self.rabi * self.duration

    def with_phase(self, phase: PhaseLike) -> "RectPulse":
        return replace(self, phase=Phase.of(phase))


def rect_propagator(p: RectPulse) -> Unitary2:
    w = math.hypot(p.rabi, p.detuning)
    if w == 0.0:
        return IDENTITY
    half = 0.5 * w * p.duration
    if p.detuning == 0.0:
        # exact reduction to the resonant form
        return Unitary2(math.cos(half), -1j * math.sin(half) * cmath.exp(1j * p.phase.radians))
    s = math.sin(half) / w
    a = complex(math.cos(half), -p.detuning * s)
    b = -1j * p.rabi * s * cmath.exp(1j * p.phase.radians)
    return Unitary2(a, b)


def free_propagator(detuning: float, tau: float) -> Unitary2:
    if tau < 0:
        raise ValueError(f"free-evolution time must be >= 0, got {tau}")
    return Unitary2(cmath.exp(-0.5j * detuning * tau), 0.0)


# --- time-dependent profiles -------------------------------------------------
#
# Profiles are small frozen dataclasses rather than closures so that shaped
# pulses stay picklable for process-pool scans.


@dataclass(frozen=True)
class ConstantProfile:
    rabi0: float
    detuning0: float = 0.0

    def rabi(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.rabi0)

    def detuning(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.detuning0)


@dataclass(frozen=True)
class LandauZenerProfile:
    """Constant coupling with a linear detuning sweep through resonance at t = 0."""

    rabi0: float
    slope: float

    def rabi(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.rabi0)

    def detuning(self, t):
        return self.slope * np.asarray(t, dtype=float)


@dataclass(frozen=True)
class AllenEberlyProfile:
    """``Omega0 sech(t/width)`` coupling with ``Delta0 tanh(t/width)`` detuning."""

    rabi0: float
    detuning0: float
    width: float

    def rabi(self, t):
        return self.rabi0 / np.cosh(np.asarray(t, dtype=float) / self.width)

    def detuning(self, t):
        return self.detuning0 * np.tanh(np.asarray(t, dtype=float) / self.width)


@dataclass(frozen=True, eq=False)
class SampledProfile:
    """Cubic-spline interpolation of user-supplied samples."""

    times: np.ndarray
    rabi_samples: np.ndarray
    detuning_samples: np.ndarray
    _splines: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "_splines",
            (CubicSpline(self.times, self.rabi_samples), CubicSpline(self.times, self.detuning_samples)),
        )

    def rabi(self, t):
        return self._splines[0](t)

    def detuning(self, t):
        return self._splines[1](t)


@dataclass(frozen=True)
class ModifiedProfile:
    """Rabi frequency scaled by ``rabi_scale`` and a constant ``detuning_offset`` added."""

    base: object
    rabi_scale: float = 1.0
    detuning_offset: float = 0.0

    def rabi(self, t):
        return self.rabi_scale * self.base.rabi(t)

    def detuning(self, t):
        return self.base.detuning(t) + self.detuning_offset


@dataclass(frozen=True)
class ReversedProfile:
    """Time reversal about ``center``: ``f(t) -> f(2*center - t)``."""

    base: object
    center: float = 0.0

    def rabi(self, t):
        return self.base.rabi(2 * self.center - np.asarray(t, dtype=float))

    def detuning(self, t):
        return self.base.detuning(2 * self.center - np.asarray(t, dtype=float))


@dataclass(frozen=True, eq=False)
class ShapedPulse:
    """A time-dependent pulse on a uniform grid ``times``.

    ``profile`` supplies ``rabi(t)`` and ``detuning(t)``; the sampled arrays are
    its values on the grid.
    """

    times: np.ndarray
    profile: object
    phase: Phase = ZERO
    model: str = "custom"

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if times.ndim != 1 or len(times) < 2:
            raise ValueError("time grid needs at least 2 points")
        if not np.all(np.diff(times) > 0):
            raise ValueError("time grid must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "phase", Phase.of(self.phase))

    @property
    def rabi(self) -> np.ndarray:
        return np.asarray(self.profile.rabi(self.times), dtype=float)

    @property
    def detuning(self) -> np.ndarray:
        return np.asarray(self.profile.detuning(self.times), dtype=float)

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0])

    @property
    def area(self) -> float:
        return float(trapezoid(self.rabi, self.times))

    def with_phase(self, phase: PhaseLike) -> "ShapedPulse":
        return replace(self, phase=Phase.of(phase))

    def modified(self, rabi_scale: float = 1.0, detuning_offset: float = 0.0) -> "ShapedPulse":
        return replace(self, profile=ModifiedProfile(self.profile, rabi_scale, detuning_offset))

    def reversed(self) -> "ShapedPulse":
        center = 0.5 * (self.times[0] + self.times[-1])
        return replace(self, profile=ReversedProfile(self.profile, center))


def make_lz_pulse(
    rabi0: float = DEFAULT_RABI,
    slope: float = 0.0,
    half_window: float = DEFAULT_DURATION / 2,
    grid_points: int = 257,
    phase: PhaseLike = 0,
) -> ShapedPulse:
    if grid_points < 64:
        raise ValueError("grid_points must be >= 64")
    if half_window <= 0:
        raise ValueError("half_window must be > 0")
    times = np.linspace(-half_window, half_window, grid_points)
    return ShapedPulse(times, LandauZenerProfile(rabi0, slope), Phase.of(phase), "LandauZener")


def make_ae_pulse(
    rabi0: float = DEFAULT_RABI,
    detuning0: float = 0.0,
    width: Optional[float] = None,
    window_mult: float = 8.0,
    grid_points: int = 257,
    phase: PhaseLike = 0,
) -> ShapedPulse:
    """Allen-Eberly pulse truncated to ``|t| <= window_mult * width``.

    ``width`` defaults to ``1 / rabi0``, which makes the untruncated area pi.
    """
    if width is None:
        width = 1.0 / rabi0
    if grid_points < 64:
        raise ValueError("grid_points must be >= 64")
    if width <= 0:
        raise ValueError("width must be > 0")
    if window_mult < 5:
        raise ValueError("window_mult must be >= 5")
    half = window_mult * width
    times = np.linspace(-half, half, grid_points)
    return ShapedPulse(times, AllenEberlyProfile(rabi0, detuning0, width), Phase.of(phase), "AllenEberly")


def shaped_from_samples(times, rabi, detuning, phase: PhaseLike = 0) -> ShapedPulse:
    times = np.asarray(times, dtype=float)
    profile = SampledProfile(times, np.asarray(rabi, dtype=float), np.asarray(detuning, dtype=float))
    return ShapedPulse(times, profile, Phase.of(phase), "custom")


def rect_as_shaped(p: RectPulse, grid_points: int = 65) -> ShapedPulse:
    times = np.linspace(0.0, p.duration, grid_points)
    return ShapedPulse(times, ConstantProfile(p.rabi, p.detuning), p.phase, "custom")


# --- integrator ----------------------------------------------------------------

_EYE = np.eye(2, dtype=complex)


def _generator(pulse: ShapedPulse, t: np.ndarray) -> np.ndarray:
    """Stack of ``-i H(t)`` matrices, shape ``(len(t), 2, 2)``."""
    omega = np.asarray(pulse.profile.rabi(t), dtype=float)
    delta = np.asarray(pulse.profile.detuning(t), dtype=float)
    e = cmath.exp(1j * pulse.phase.radians)
    out = np.empty((len(t), 2, 2), dtype=complex)
    out[:, 0, 0] = -0.5j * delta
    out[:, 1, 1] = 0.5j * delta
    out[:, 0, 1] = -0.5j * omega * e
    out[:, 1, 0] = -0.5j * omega * e.conjugate()
    return out


def _ordered_product(mats: np.ndarray) -> np.ndarray:
    """``mats[-1] @ ... @ mats[0]`` by pairwise reduction."""
    while len(mats) > 1:
        if len(mats) % 2:
            mats = np.concatenate([mats, _EYE[None]])
        mats = mats[1::2] @ mats[0::2]
    return mats[0]


def _rk4_propagator(pulse: ShapedPulse, steps: int) -> np.ndarray:
    t0, t1 = pulse.times[0], pulse.times[-1]
    h = (t1 - t0) / steps
    k = np.arange(steps)
    a0 = _generator(pulse, t0 + h * k)
    am = _generator(pulse, t0 + h * (k + 0.5))
    a1 = _generator(pulse, t0 + h * (k + 1))
    k1 = a0
    k2 = am @ (_EYE + 0.5 * h * k1)
    k3 = am @ (_EYE + 0.5 * h * k2)
    k4 = a1 @ (_EYE + h * k3)
    steps_mats = _EYE + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return _ordered_product(steps_mats)


def integrate_propagator(
    pulse: ShapedPulse,
    tol: float = 1e-10,
    max_steps: int = 2**21,
) -> Unitary2:
    """Integrate the two-level Schroedinger equation with fixed-step RK4.

    The step count starts at the grid resolution (at least 64) and is doubled
    until two successive propagators agree to ``tol``. The result is projected
    back onto SU(2).
    """
    if not 1e-12 <= tol <= 1e-6:
        raise ValueError(f"tol must lie in [1e-12, 1e-6], got {tol}")
    steps = max(64, len(pulse.times) - 1)
    prev = _rk4_propagator(pulse, steps)
    err = float("inf")
    while True:
        steps *= 2
        if steps > max_steps:
            raise IntegrationError(f"no convergence within {max_steps} steps", err)
        cur = _rk4_propagator(pulse, steps)
        err = float(np.max(np.abs(cur - prev)))
        if err < tol:
            break
        prev = cur
    a = 0.5 * (cur[0, 0] + cur[1, 1].conjugate())
    b = 0.5 * (cur[0, 1] - cur[1, 0].conjugate())
    norm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    return Unitary2(complex(a) / norm, complex(b) / norm)
