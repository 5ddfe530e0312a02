"""Hardware-style protocols and robustness scans.

A protocol prepares one of the six Pauli eigenstates with an ideal rotation,
applies the decoupling block with a pulse-area error ``xi`` and a detuning
``Delta = (Delta/Omega) * Omega``, undoes the preparation and reports the
ground-state population ``p0``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional, Union

import numpy as np

from .pulses import (
    DEFAULT_DURATION,
    DEFAULT_RABI,
    RectPulse,
    ShapedPulse,
    free_propagator,
    integrate_propagator,
    rect_propagator,
)
from .sequences import PhaseList
from .su2 import IDENTITY, Unitary2, compose, dagger, rephasing_error

_H = math.sqrt(0.5)

# Ideal SU(2) rotations taking |0> to each Pauli eigenstate.
PREPARATIONS = {
    "0": IDENTITY,
    "1": Unitary2(0.0, -1j),  # X, up to global phase
    "+": Unitary2(_H, -_H),  # Ry(pi/2)
    "-": Unitary2(_H, _H),  # Ry(-pi/2)
    "+i": Unitary2(_H, 0.5j * math.sqrt(2)),  # Rx(-pi/2)
    "-i": Unitary2(_H, -0.5j * math.sqrt(2)),  # Rx(pi/2)
}
STATES = tuple(PREPARATIONS)


@dataclass(frozen=True)
class SequenceSpec:
    """Phase list plus the pulse model every element shares.

    ``pulse`` supplies the nominal (error-free) pulse; its own phase is
    ignored. With ``symmetric`` set, a delay ``tau/2`` precedes the first
    pulse and follows the last, and ``tau`` separates neighbors.
    """

    phases: PhaseList
    pulse: Union[RectPulse, ShapedPulse] = field(
        default_factory=lambda: RectPulse(DEFAULT_RABI, DEFAULT_DURATION)
    )
    delay: float = 0.0
    symmetric: bool = True
    tol: float = 1e-10

    def __post_init__(self):
        if self.delay < 0:
            raise ValueError(f"delay must be >= 0, got {self.delay}")

    @property
    def name(self) -> str:
        return self.phases.name

    @property
    def nominal_rabi(self) -> float:
        if isinstance(self.pulse, RectPulse):
            return self.pulse.rabi
        return float(np.max(np.abs(self.pulse.rabi)))

    @property
    def model(self) -> str:
        return "rect" if isinstance(self.pulse, RectPulse) else self.pulse.model

    def delays(self) -> list[float]:
        n = len(self.phases)
        if self.symmetric:
            return [self.delay / 2] + [self.delay] * (n - 1) + [self.delay / 2]
        return [0.0] + [self.delay] * (n - 1) + [0.0]


@dataclass(frozen=True)
class Protocol:
    preparation: str
    sequence: SequenceSpec

    def __post_init__(self):
        if self.preparation not in PREPARATIONS:
            raise ValueError(f"unknown preparation {self.preparation!r}; choose from {STATES}")


def _pulse_propagator(seq: SequenceSpec, xi: float, detuning: float) -> Unitary2:
    base = seq.pulse
    if isinstance(base, RectPulse):
        return rect_propagator(RectPulse(base.rabi * (1.0 + xi), base.duration, detuning))
    shaped = base.with_phase(0).modified(rabi_scale=1.0 + xi, detuning_offset=detuning)
    return integrate_propagator(shaped, tol=seq.tol)


def dd_propagator(seq: SequenceSpec, xi: float, delta_over_omega: float) -> Unitary2:
    """Propagator of the decoupling block alone, delays included."""
    detuning = delta_over_omega * seq.nominal_rabi
    pulse0 = _pulse_propagator(seq, xi, detuning)
    delays = seq.delays()
    total = free_propagator(detuning, delays[0]) if delays[0] else IDENTITY
    for phi, tau in zip(seq.phases, delays[1:]):
        total = compose(pulse0.with_phase(phi), total)
        if tau:
            total = compose(free_propagator(detuning, tau), total)
    return total


def _population(prep: Unitary2, u_dd: Unitary2) -> float:
    full = compose(dagger(prep), compose(u_dd, prep))
    return min(1.0, abs(full.a) ** 2)


def run_protocol(proto: Protocol, xi: float, delta_over_omega: float) -> float:
    """Ground-state population ``|<0| U_prep^dag U_DD U_prep |0>|^2``."""
    u = dd_propagator(proto.sequence, xi, delta_over_omega)
    return _population(PREPARATIONS[proto.preparation], u)


@dataclass(eq=False)
class ScanResult:
    """Grid of populations ``p0[i, j]`` at ``(xi[i], delta_over_omega[j])``.

    1D scans keep the fixed axis as a single point, so the arrays are always
    2D; ``epsilon`` holds the rephasing error of the decoupling block.
    """

    xi: np.ndarray
    delta_over_omega: np.ndarray
    p0: np.ndarray
    epsilon: np.ndarray
    sequence: str
    model: str = "rect"
    axes: str = "2d"
    state: str = "1"
    created: Optional[str] = None

    def __post_init__(self):
        self.xi = np.asarray(self.xi, dtype=float)
        self.delta_over_omega = np.asarray(self.delta_over_omega, dtype=float)
        shape = (len(self.xi), len(self.delta_over_omega))
        self.p0 = np.asarray(self.p0, dtype=float).reshape(shape)
        self.epsilon = np.asarray(self.epsilon, dtype=float).reshape(shape)

    @property
    def axis(self) -> np.ndarray:
        """The varying axis of a 1D scan."""
        if self.axes == "area":
            return self.xi
        if self.axes == "detuning":
            return self.delta_over_omega
        raise ValueError("2D scan has no single axis")

    @property
    def curve(self) -> np.ndarray:
        return self.p0.ravel() if self.axes != "2d" else self.p0


def _row(args) -> tuple[list[float], list[float]]:
    proto, xi, deltas = args
    prep = PREPARATIONS[proto.preparation]
    p0, eps = [], []
    for d in deltas:
        u = dd_propagator(proto.sequence, xi, d)
        p0.append(_population(prep, u))
        eps.append(rephasing_error(u))
    return p0, eps


def _evaluate(proto: Protocol, xis, deltas, workers: int):
    tasks = [(proto, float(x), [float(d) for d in deltas]) for x in xis]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, tasks))
    else:
        rows = [_row(t) for t in tasks]
    # map() preserves task order, so assembly is by grid index at any worker count
    return np.array([r[0] for r in rows]), np.array([r[1] for r in rows])


def _stamp(timestamp: bool) -> Optional[str]:
    return datetime.now(timezone.utc).isoformat(timespec="seconds") if timestamp else None


def scan_1d(
    proto: Protocol,
    axis: str,
    lo: float = -1.0,
    hi: float = 1.0,
    points: int = 201,
    workers: int = 1,
    timestamp: bool = False,
) -> ScanResult:
    if points < 2:
        raise ValueError("points must be >= 2")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    grid = np.linspace(lo, hi, points)
    if axis == "area":
        xis, deltas = grid, np.zeros(1)
    elif axis == "detuning":
        xis, deltas = np.zeros(1), grid
    else:
        raise ValueError(f"axis must be 'area' or 'detuning', got {axis!r}")
    p0, eps = _evaluate(proto, xis, deltas, workers)
    return ScanResult(xis, deltas, p0, eps, proto.sequence.name, proto.sequence.model, axis,
                      proto.preparation, _stamp(timestamp))


def scan_2d(
    proto: Protocol,
    xi_range: tuple[float, float] = (-1.0, 1.0),
    delta_range: tuple[float, float] = (-1.0, 1.0),
    nx: int = 41,
    ny: int = 41,
    workers: int = 1,
    timestamp: bool = False,
) -> ScanResult:
    if nx < 2 or ny < 2:
        raise ValueError("nx and ny must be >= 2")
    for name, (lo, hi) in (("xi_range", xi_range), ("delta_range", delta_range)):
        if not lo < hi:
            raise ValueError(f"{name}: need lo < hi, got [{lo}, {hi}]")
    xis = np.linspace(*xi_range, nx)
    deltas = np.linspace(*delta_range, ny)
    p0, eps = _evaluate(proto, xis, deltas, workers)
    return ScanResult(xis, deltas, p0, eps, proto.sequence.name, proto.sequence.model, "2d",
                      proto.preparation, _stamp(timestamp))


def six_state_scan(
    seq: SequenceSpec,
    axis: str,
    lo: float = -1.0,
    hi: float = 1.0,
    points: int = 201,
    workers: int = 1,
) -> dict[str, ScanResult]:
    return {s: scan_1d(Protocol(s, seq), axis, lo, hi, points, workers) for s in STATES}


def robust_width(scan: ScanResult, threshold: float = 0.01) -> float:
    """Length of the interval around 0 on which ``p0 >= 1 - threshold``.

    Edges are located by linear interpolation between the last passing and
    first failing grid points; an edge that never fails is the axis end.
    """
    if not 0 < threshold < 1:
        raise ValueError("threshold must lie in (0, 1)")
    x = scan.axis
    y = scan.curve
    level = 1.0 - threshold
    i0 = int(np.argmin(np.abs(x)))
    if y[i0] < level:
        return 0.0

    def edge(step):
        i = i0
        while 0 <= i + step < len(x):
            j = i + step
            if y[j] < level:
                frac = (y[i] - level) / (y[i] - y[j])
                return x[i] + frac * (x[j] - x[i])
            i = j
        return x[i]

    return float(edge(+1) - edge(-1))


def plateau_cells(scan: ScanResult, threshold: float = 0.01) -> int:
    """Number of grid cells with ``p0 >= 1 - threshold``."""
    return int(np.count_nonzero(scan.p0 >= 1.0 - threshold))


def sample_shots(scan: ScanResult, shots: int = 512, seed: Optional[int] = None) -> ScanResult:
    """Binomial shot-noise resampling of the populations, for comparison with hardware plots."""
    rng = np.random.default_rng(seed)
    p = np.clip(scan.p0, 0.0, 1.0)
    sampled = rng.binomial(shots, p) / shots
    return ScanResult(scan.xi, scan.delta_over_omega, sampled, scan.epsilon, scan.sequence,
                      f"{scan.model}+shots{shots}", scan.axes, scan.state, scan.created)
