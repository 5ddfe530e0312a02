"""OpenQASM 3 export of the X - DD - X hardware protocol.

A pulse of area ``theta`` about the axis set by drive phase ``phi`` is written,
in time order, as ``rz(phi); rx(theta); rz(-phi)``, whose matrix
``Rz(-phi) Rx(theta) Rz(phi)`` equals the simulator's phased pulse.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .sequences import PhaseList
from .su2 import IDENTITY, Unitary2, compose, resonant_pulse

DEFAULT_SHOTS = 512

_PI_ANGLE = re.compile(r"^(-)?(?:(\d+)\*)?pi(?:/(\d+))?$")
_GATE = re.compile(r"^(x|rx|rz)(?:\(([^)]*)\))?\s+q\[0\];$")
_SHOTS = re.compile(r"^//\s*shots:\s*(\d+)")


def format_pi(multiple: Fraction) -> str:
    """Exact angle text, e.g. ``Fraction(4, 3) -> '4*pi/3'``."""
    multiple = Fraction(multiple)
    if multiple == 0:
        return "0"
    sign = "-" if multiple < 0 else ""
    num, den = abs(multiple.numerator), multiple.denominator
    body = "pi" if num == 1 else f"{num}*pi"
    return sign + body + (f"/{den}" if den != 1 else "")


def parse_angle(text: str):
    """Angle text to a ``Fraction`` multiple of pi when exact, else a float in radians."""
    text = text.strip()
    if text == "0":
        return Fraction(0)
    m = _PI_ANGLE.match(text)
    if m:
        value = Fraction(int(m.group(2) or 1), int(m.group(3) or 1))
        return -value if m.group(1) else value
    return float(text)


def _radians(angle) -> float:
    return float(angle) * math.pi if isinstance(angle, Fraction) else angle


def emit_qasm(phases: PhaseList, xi: float = 0.0, shots: int = DEFAULT_SHOTS) -> str:
    theta = math.pi * (1.0 + xi)
    lines = [
        "OPENQASM 3.0;",
        'include "stdgates.inc";',
        f"// sequence: {phases.name} ({len(phases)} pulses), pulse-area error xi = {xi:.17g}",
        f"// shots: {shots}",
        "// pulse about axis phi (time order): rz(phi); rx(theta); rz(-phi)",
        "qubit[1] q;",
        "bit[1] c;",
        "x q[0];",
    ]
    for phi in phases:
        lines += [
            f"rz({format_pi(phi.value)}) q[0];",
            f"rx({theta:.17g}) q[0];",
            f"rz({format_pi(-phi.value)}) q[0];",
        ]
    lines += ["x q[0];", "c[0] = measure q[0];"]
    return "\n".join(lines) + "\n"


@dataclass
class QasmProgram:
    shots: int
    gates: list  # (name, angle) with angle None, Fraction (of pi) or float (radians)

    def count(self, name: str) -> int:
        return sum(1 for g, _ in self.gates if g == name)

    def angles(self, name: str) -> list:
        return [a for g, a in self.gates if g == name]

    def unitary(self) -> Unitary2:
        """SU(2) product of the gates (``x`` taken as ``-i X``)."""
        total = IDENTITY
        for name, angle in self.gates:
            if name == "x":
                u = Unitary2(0.0, -1j)
            elif name == "rx":
                u = resonant_pulse(_radians(angle), 0)
            else:
                half = 0.5 * _radians(angle)
                u = Unitary2(complex(math.cos(half), -math.sin(half)), 0.0)
            total = compose(u, total)
        return total


def parse_qasm(text: str) -> QasmProgram:
    """Read back programs written by :func:`emit_qasm`."""
    shots = DEFAULT_SHOTS
    gates = []
    for raw in text.splitlines():
        line = raw.strip()
        m = _SHOTS.match(line)
        if m:
            shots = int(m.group(1))
            continue
        m = _GATE.match(line)
        if m:
            name, arg = m.group(1), m.group(2)
            gates.append((name, parse_angle(arg) if arg is not None else None))
    return QasmProgram(shots, gates)
