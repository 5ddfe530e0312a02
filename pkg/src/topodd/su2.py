"""SU(2) propagators in Cayley-Klein form and the error metrics built on them.

A propagator is stored as the pair ``(a, b)`` of the matrix

    [[ a,   b ],
     [-b*,  a*]]

so products, inverses and pulse phases reduce to a handful of complex
multiplications.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .phase import Phase, PhaseLike

UNITARITY_TOL = 1e-12
# Construction-time guard only; the 1e-12 bound above is what tests enforce.
_VALIDATION_TOL = 1e-9

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_MATRIX = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class Unitary2:
    """Special-unitary 2x2 propagator parameterized by Cayley-Klein ``a`` and ``b``."""

    a: complex
    b: complex

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        if not (cmath.isfinite(a) and cmath.isfinite(b)):
            raise ValueError(f"non-finite Cayley-Klein parameters ({a}, {b})")
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > _VALIDATION_TOL:
            raise ValueError(f"|a|^2 + |b|^2 = {norm!r}, not unitary")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def matrix(self) -> np.ndarray:
        a, b = self.a, self.b
        return np.array([[a, b], [-b.conjugate(), a.conjugate()]], dtype=complex)

    @classmethod
    def from_matrix(cls, m) -> "Unitary2":
        """Project a (numerically) unitary matrix with det 1 onto Cayley-Klein form."""
        m = np.asarray(m, dtype=complex)
        a = 0.5 * (m[0, 0] + m[1, 1].conjugate())
        b = 0.5 * (m[0, 1] - m[1, 0].conjugate())
        return cls(complex(a), complex(b))

    def unitarity_defect(self) -> float:
        return abs(abs(self.a) ** 2 + abs(self.b) ** 2 - 1.0)

    def normalized(self) -> "Unitary2":
        norm = math.sqrt(abs(self.a) ** 2 + abs(self.b) ** 2)
        return Unitary2(self.a / norm, self.b / norm)

    def with_phase(self, phase: PhaseLike) -> "Unitary2":
        """Imprint a constant drive phase: ``b -> b * exp(i*phi)``."""
        return Unitary2(self.a, self.b * cmath.exp(1j * Phase.of(phase).radians))

    def __matmul__(self, other: "Unitary2") -> "Unitary2":
        return compose(self, other)


IDENTITY = Unitary2(1.0, 0.0)


def compose(second: Unitary2, first: Unitary2) -> Unitary2:
    """Matrix product ``second @ first``: ``first`` acts first."""
    a1, b1, a2, b2 = first.a, first.b, second.a, second.b
    return Unitary2(a2 * a1 - b2 * b1.conjugate(), a2 * b1 + b2 * a1.conjugate())


def compose_all(propagators) -> Unitary2:
    """Time-ordered product of an iterable of propagators, earliest first."""
    total = IDENTITY
    for u in propagators:
        total = compose(u, total)
    return total


def dagger(u: Unitary2) -> Unitary2:
    return Unitary2(u.a.conjugate(), -u.b)


def resonant_pulse(area: float, phase: PhaseLike = 0) -> Unitary2:
    """On-resonance pulse of the given area (radians) and drive phase."""
    half = 0.5 * area
    phi = Phase.of(phase).radians
    return Unitary2(math.cos(half), -1j * math.sin(half) * cmath.exp(1j * phi))


def rephasing_error(u: Unitary2) -> float:
    """``|U11 - 1| + |U12|``: distance of ``u`` from the identity."""
    return abs(u.a - 1.0) + abs(u.b)


def rephasing_error_up_to_sign(u: Unitary2) -> float:
    """Rephasing error minimized over the global sign, ``min(eps(U), eps(-U))``.

    ``-I`` is the same physical operation as ``I`` in SU(2).
    """
    return min(abs(u.a - 1.0), abs(u.a + 1.0)) + abs(u.b)


def phase_insensitive_error(u: Unitary2) -> float:
    """Diagnostic variant ``1 - |U11| + |U12|``, blind to any global phase."""
    return 1.0 - abs(u.a) + abs(u.b)


def transition_probability(u: Unitary2) -> float:
    return abs(u.b) ** 2


def m_matrix(phase: PhaseLike) -> np.ndarray:
    """Generator ``M(phi) = [[0, e^{i phi}], [e^{-i phi}, 0]]``; squares to the identity."""
    e = cmath.exp(1j * Phase.of(phase).radians)
    return np.array([[0, e], [e.conjugate(), 0]], dtype=complex)


def commutator_m(phi1: PhaseLike, phi2: PhaseLike) -> np.ndarray:
    m1, m2 = m_matrix(phi1), m_matrix(phi2)
    return m1 @ m2 - m2 @ m1


def exp_m(theta: float, phase: PhaseLike) -> np.ndarray:
    """``exp(-i*theta*M(phi)) = cos(theta) I - i sin(theta) M(phi)``, valid because M^2 = I."""
    return math.cos(theta) * IDENTITY_MATRIX - 1j * math.sin(theta) * m_matrix(phase)
