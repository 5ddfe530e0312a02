"""Phase lists for Tn and reference decoupling sequences, and their cancellation checks."""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath
import numpy as np

from .phase import PI, Phase
from .pulses import RectPulse
from .su2 import compose_all, rephasing_error_up_to_sign, resonant_pulse

SUM_TOL = 1e-12
IDENTITY_TOL = 1e-10
MAX_DETUNING_ORDER = 12
# Returned by detuning_order when every tested derivative vanishes.
BEYOND_RESOLUTION = MAX_DETUNING_ORDER + 1

FAMILIES = ("tn", "cpmg", "xy4", "xy8", "kdd", "ur")


@dataclass(frozen=True)
class PhaseList:
    name: str
    phases: tuple

    def __post_init__(self):
        phases = tuple(Phase.of(p) for p in self.phases)
        if not phases:
            raise ValueError("a phase list needs at least one phase")
        object.__setattr__(self, "phases", phases)

    def __len__(self):
        return len(self.phases)

    def __iter__(self):
        return iter(self.phases)

    def __getitem__(self, k):
        return self.phases[k]

    @property
    def radians(self) -> list[float]:
        return [p.radians for p in self.phases]


@dataclass(frozen=True)
class ConditionReport:
    sum_condition: bool
    sum_residual: float
    pi_pairing: bool
    palindrome_pi_shift: bool
    commuting_neighbors: bool


def tn_phases(n: int) -> PhaseList:
    """Tn phases ``phi_k = (k-1)(n/2-k)/(n/2) * pi`` for ``k = 1..n``, reduced mod 2 pi."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 2 or n % 2:
        raise ValueError(f"Tn needs an even n >= 2, got {n!r}")
    half = n // 2
    return PhaseList(f"T{n}", tuple(Phase(Fraction((k - 1) * (half - k), half)) for k in range(1, n + 1)))


_XY4 = (0, Fraction(1, 2), 0, Fraction(1, 2))
_XY8 = _XY4 + _XY4[::-1]
# Knill composite pi pulse, applied about x and y in an XY4 pattern.
_KNILL = (Fraction(1, 6), 0, Fraction(1, 2), 0, Fraction(1, 6))
_KDD = tuple(k + base for base in _XY4 for k in _KNILL)


def _ur_phases(n: int) -> tuple:
    # phi_k = (k-1)(k-2)/2 * Phi + (k-1) * phi_2
    if n % 4 == 0:
        big_phi = Fraction(1, n // 4)
        phi2 = Fraction(1)
    else:
        m = (n - 2) // 4
        big_phi = Fraction(2 * m, 2 * m + 1)
        phi2 = big_phi
    return tuple(Fraction((k - 1) * (k - 2), 2) * big_phi + (k - 1) * phi2 for k in range(1, n + 1))


def _repeat(block: tuple, n: int, family: str) -> tuple:
    if n < len(block) or n % len(block):
        raise ValueError(f"{family} needs n to be a positive multiple of {len(block)}, got {n}")
    return block * (n // len(block))


def reference_phases(family: str, n: int) -> PhaseList:
    """Phase lists of the standard decoupling families.

    ``CPMG`` is ``n`` pulses of equal phase. ``XY4``, ``XY8`` and ``KDD`` (20
    pulses) are repeated to length ``n``. ``UR`` is the universally robust
    family for even ``n >= 4``.
    """
    fam = family.lower()
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if fam == "cpmg":
        return PhaseList(f"CPMG{n}", (0,) * n)
    if fam == "xy4":
        return PhaseList(f"XY4x{n // 4}" if n > 4 else "XY4", _repeat(_XY4, n, "XY4"))
    if fam == "xy8":
        return PhaseList(f"XY8x{n // 8}" if n > 8 else "XY8", _repeat(_XY8, n, "XY8"))
    if fam == "kdd":
        return PhaseList(f"KDDx{n // 20}" if n > 20 else "KDD", _repeat(_KDD, n, "KDD"))
    if fam == "ur":
        if n < 4 or n % 2:
            raise ValueError(f"UR needs an even n >= 4, got {n}")
        return PhaseList(f"UR{n}", _ur_phases(n))
    raise ValueError(f"unsupported sequence family {family!r}")


def get_sequence(family: str, n: int) -> PhaseList:
    if family.lower() == "tn":
        return tn_phases(n)
    return reference_phases(family, n)


def check_pi_pairing(p: Iterable[Phase]) -> bool:
    """True iff the phases split into pairs that differ by exactly pi."""
    counts = Counter(Phase.of(x) for x in p)
    if sum(counts.values()) % 2:
        return False
    for phase, count in counts.items():
        partner = phase + PI
        if phase < partner and counts.get(partner, 0) != count:
            return False
    return True


def check_sum_condition(p: Iterable[Phase]) -> tuple[bool, float]:
    """Whether ``sum_k exp(i phi_k)`` vanishes, with its magnitude.

    A pi-paired list cancels exactly and reports a residual of 0.
    """
    phases = [Phase.of(x) for x in p]
    if not phases:
        raise ValueError("empty phase list")
    if check_pi_pairing(phases):
        return True, 0.0
    residual = abs(sum(cmath.exp(1j * x.radians) for x in phases))
    return residual < SUM_TOL, residual


def check_palindrome_pi_shift(p: Sequence[Phase]) -> bool:
    phases = [Phase.of(x) for x in p]
    n = len(phases)
    if n == 0 or n % 2:
        return False
    half = n // 2
    first = phases[:half]
    if first != first[::-1]:
        return False
    return all(phases[k + half] == phases[k] + PI for k in range(half))


def check_commuting_neighbors(p: Sequence[Phase]) -> bool:
    """Neighboring generators commute: every consecutive difference is a multiple of pi."""
    phases = [Phase.of(x) for x in p]
    return all((b - a).value in (0, 1) for a, b in zip(phases, phases[1:]))


def check_conditions(p: Sequence[Phase]) -> ConditionReport:
    ok, residual = check_sum_condition(p)
    return ConditionReport(
        sum_condition=ok,
        sum_residual=residual,
        pi_pairing=check_pi_pairing(p),
        palindrome_pi_shift=check_palindrome_pi_shift(p),
        commuting_neighbors=check_commuting_neighbors(p),
    )


def area_error_propagator(p: Sequence[Phase], xi: float):
    """Resonant composition with every pulse area equal to ``pi (1 + xi)``."""
    area = math.pi * (1.0 + xi)
    return compose_all(resonant_pulse(area, phi) for phi in p)


def verify_identity_all_orders(p: Sequence[Phase], samples: int = 201) -> tuple[bool, float]:
    """Compose the sequence for ``samples`` area errors in [-1, 1] and report the worst
    sign-minimized rephasing error."""
    if samples < 1:
        raise ValueError("samples must be positive")
    xis = np.linspace(-1.0, 1.0, samples) if samples > 1 else np.zeros(1)
    worst = max(rephasing_error_up_to_sign(area_error_propagator(p, float(xi))) for xi in xis)
    return worst < IDENTITY_TOL, worst


def _mp_sequence(phases: Sequence[Phase], area, delta):
    """Cayley-Klein pair of the rectangular-pulse sequence at detuning ``delta``
    (units of the Rabi frequency), in mpmath arithmetic."""
    w = mpmath.sqrt(1 + delta**2)
    half = w * area / 2
    s = mpmath.sin(half) / w
    a0 = mpmath.mpc(mpmath.cos(half), -delta * s)
    b0 = mpmath.mpc(0, -s)
    a, b = mpmath.mpc(1), mpmath.mpc(0)
    for phi in phases:
        bk = b0 * mpmath.expjpi(mpmath.mpf(phi.numerator) / phi.denominator)
        a, b = a0 * a - bk * mpmath.conj(b), a0 * b + bk * mpmath.conj(a)
    return a, b


def detuning_order(
    p: Sequence[Phase],
    pulse: Optional[RectPulse] = None,
    max_order: int = MAX_DETUNING_ORDER,
    dps: int = 60,
) -> int:
    """Lowest order ``k >= 1`` at which the propagator departs from +-I in ``Delta/Omega``.

    The Taylor coefficients of ``U11 - s`` and ``U12`` at zero detuning, with
    ``s`` the sign of ``U11`` there, are taken by high-precision finite
    differences. The rephasing error then grows as ``|Delta/Omega|^k``.
    Returns :data:`BEYOND_RESOLUTION` if all orders up to ``max_order`` vanish.

    Only the ratio ``Delta/Omega`` matters for a rectangular pi pulse, so
    ``pulse`` is checked for area pi and otherwise only fixes units.
    """
    phases = [Phase.of(x) for x in p]
    if pulse is not None and abs(pulse.area - math.pi) > 1e-9:
        raise ValueError(f"detuning order is defined for pi pulses, got area {pulse.area}")
    with mpmath.workdps(dps):
        area_mp = mpmath.pi
        a_at_0, _ = _mp_sequence(phases, area_mp, mpmath.mpf(0))
        sign = 1 if mpmath.re(a_at_0) >= 0 else -1
        ca = mpmath.taylor(lambda d: _mp_sequence(phases, area_mp, d)[0] - sign, 0, max_order)
        cb = mpmath.taylor(lambda d: _mp_sequence(phases, area_mp, d)[1], 0, max_order)
        floor = mpmath.mpf(10) ** (-dps // 2)
        for k in range(1, max_order + 1):
            if abs(ca[k]) > floor or abs(cb[k]) > floor:
                return k
    return BEYOND_RESOLUTION
