"""Figures for scan results, written straight to files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

STATE_LABELS = {"0": r"$|0\rangle$", "1": r"$|1\rangle$", "+": r"$|+\rangle$",
                "-": r"$|-\rangle$", "+i": r"$|{+i}\rangle$", "-i": r"$|{-i}\rangle$"}


def _style():
    plt.rcParams.update({
        "font.size": 10,
        "axes.labelsize": 11,
        "axes.linewidth": 0.8,
        "xtick.direction": "in",
        "ytick.direction": "in",
        "savefig.bbox": "tight",
    })


def plot_scan(scan, path, title=None):
    """Heatmap for a 2D scan, population curve for a 1D scan."""
    _style()
    fig, ax = plt.subplots(figsize=(4.5, 3.6))
    if scan.axes == "2d":
        extent = [scan.delta_over_omega[0], scan.delta_over_omega[-1], scan.xi[0], scan.xi[-1]]
        im = ax.imshow(scan.p0, origin="lower", extent=extent, aspect="auto",
                       vmin=0, vmax=1, cmap="viridis", interpolation="nearest")
        fig.colorbar(im, ax=ax, label=r"$P_0$")
        ax.set_xlabel(r"$\Delta/\Omega$")
        ax.set_ylabel(r"$\xi$")
    else:
        ax.plot(scan.axis, scan.curve, lw=1.5)
        ax.set_xlabel(r"$\xi$" if scan.axes == "area" else r"$\Delta/\Omega$")
        ax.set_ylabel(r"$P_0$")
        ax.set_ylim(-0.02, 1.02)
    ax.set_title(title or scan.sequence)
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_curves(scans, path, title=None):
    """Overlay 1D scans, e.g. the six initial states; ``scans`` maps label -> ScanResult."""
    _style()
    fig, ax = plt.subplots(figsize=(4.5, 3.4))
    first = None
    for label, scan in scans.items():
        first = first or scan
        ax.plot(scan.axis, scan.curve, lw=1.2, label=STATE_LABELS.get(label, label))
    ax.set_xlabel(r"$\xi$" if first.axes == "area" else r"$\Delta/\Omega$")
    ax.set_ylabel(r"$P_0$")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(frameon=False, fontsize=8)
    ax.set_title(title or first.sequence)
    fig.savefig(path, dpi=150)
    plt.close(fig)
