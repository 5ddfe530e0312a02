"""CSV and JSON serialization of scan results.

CSV layout (LF line endings, 17 significant digits)::

    # sequence=T10 model=rect axes=2d state=1 nx=41 ny=41
    xi,delta_over_omega,p0,epsilon
    -1,-1,0.53...,1.2...

Rows run over ``delta_over_omega`` fastest (row-major in ``xi``).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .simulator import ScanResult

COLUMNS = "xi,delta_over_omega,p0,epsilon"


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _header(scan: ScanResult) -> dict:
    meta = {
        "sequence": scan.sequence,
        "model": scan.model,
        "axes": scan.axes,
        "state": scan.state,
        "nx": str(len(scan.xi)),
        "ny": str(len(scan.delta_over_omega)),
    }
    if scan.created:
        meta["created"] = scan.created
    return meta


def to_csv(scan: ScanResult) -> str:
    meta = _header(scan)
    lines = ["# " + " ".join(f"{k}={v}" for k, v in meta.items()), COLUMNS]
    for i, xi in enumerate(scan.xi):
        for j, d in enumerate(scan.delta_over_omega):
            lines.append(",".join(_fmt(v) for v in (xi, d, scan.p0[i, j], scan.epsilon[i, j])))
    return "\n".join(lines) + "\n"


def from_csv(text: str) -> ScanResult:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing '# key=value' header line")
    meta = dict(tok.split("=", 1) for tok in lines[0][1:].split())
    if lines[1] != COLUMNS:
        raise ValueError(f"unexpected column header {lines[1]!r}")
    nx, ny = int(meta["nx"]), int(meta["ny"])
    data = np.array([[float(v) for v in line.split(",")] for line in lines[2:] if line], dtype=float)
    if data.shape != (nx * ny, 4):
        raise ValueError(f"expected {nx * ny} data rows, found {len(data)}")
    return ScanResult(
        xi=data[::ny, 0],
        delta_over_omega=data[:ny, 1],
        p0=data[:, 2].reshape(nx, ny),
        epsilon=data[:, 3].reshape(nx, ny),
        sequence=meta["sequence"],
        model=meta["model"],
        axes=meta["axes"],
        state=meta["state"],
        created=meta.get("created"),
    )


def to_json(scan: ScanResult) -> str:
    doc = {
        "sequence": scan.sequence,
        "model": scan.model,
        "axes": scan.axes,
        "state": scan.state,
        "created": scan.created,
        "columns": COLUMNS.split(","),
        "xi": scan.xi.tolist(),
        "delta_over_omega": scan.delta_over_omega.tolist(),
        "p0": scan.p0.tolist(),
        "epsilon": scan.epsilon.tolist(),
    }
    return json.dumps(doc, indent=1) + "\n"


def from_json(text: str) -> ScanResult:
    doc = json.loads(text)
    return ScanResult(
        xi=doc["xi"],
        delta_over_omega=doc["delta_over_omega"],
        p0=doc["p0"],
        epsilon=doc["epsilon"],
        sequence=doc["sequence"],
        model=doc["model"],
        axes=doc["axes"],
        state=doc["state"],
        created=doc.get("created"),
    )


def write_scan(scan: ScanResult, path, fmt: str = "csv") -> None:
    text = to_csv(scan) if fmt == "csv" else to_json(scan)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_scan(path) -> ScanResult:
    text = Path(path).read_text(encoding="utf-8")
    return from_json(text) if text.lstrip().startswith("{") else from_csv(text)
