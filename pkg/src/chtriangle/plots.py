"""Figure rendering for the report path.  All output goes to files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .boundary import CurveSample, PointCloud, heisenberg_coords
from .core import BallPoint
from .scan import MonotonicityReport, ScanResult

_STYLE = {
    "figure.dpi": 120,
    "savefig.dpi": 150,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.2,
}


def save_scan_figure(result: ScanResult, path: str) -> str:
    """Discriminant and length/angle curves for the two governing words."""
    with plt.rc_context(_STYLE):
        fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
        for label, pts in sorted(result.samples.items()):
            ts = [p.t for p in pts]
            ax1.plot(ts, [p.disc for p in pts], label=f"W_{label}")
            ax2.plot(ts, [p.lambda_or_angle() for p in pts], label=f"W_{label}")
        ax1.axhline(0.0, color="k", lw=0.8)
        for label, root in result.crossings.items():
            if root is not None:
                ax1.axvline(root, color="crimson", ls="--", lw=0.9)
                ax1.annotate(f"W_{label}: t={root:.6f}", (root, 0.0), textcoords="offset points", xytext=(4, 8), fontsize=8)
        ax1.set_ylabel("trace discriminant")
        ax1.set_yscale("symlog")
        ax1.legend(loc="best")
        ax2.set_xlabel("deformation parameter t")
        ax2.set_ylabel("translation length / rotation angle")
        ax2.legend(loc="best")
        title = f"{result.spec}"
        if result.transition:
            title += f"  critical t*={result.critical_t:.9f} (word {result.degenerate_word})"
        fig.suptitle(title)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def save_limitset_figure(cloud: PointCloud, pole: BallPoint, path: str) -> str:
    """3-d scatter of a boundary cloud in the chart centered away from the pole."""
    zeta, v = heisenberg_coords(cloud.zw, pole)
    keep = np.isfinite(v) & (np.abs(v) < 50) & (np.abs(zeta) < 50)
    with plt.rc_context(_STYLE):
        fig = plt.figure(figsize=(6, 6))
        ax = fig.add_subplot(projection="3d")
        ax.scatter(zeta[keep].real, zeta[keep].imag, v[keep], s=1.5, alpha=0.6, linewidths=0)
        ax.set_xlabel("Re zeta")
        ax.set_ylabel("Im zeta")
        ax.set_zlabel("v")
        meta = cloud.meta
        ax.set_title(f"limit set {meta.get('spec', '')} t={meta.get('t', 0):.4f} n={len(cloud)}")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def save_boundary_figure(curves: list[CurveSample], pole: BallPoint, path: str) -> str:
    with plt.rc_context(_STYLE):
        fig = plt.figure(figsize=(6, 6))
        ax = fig.add_subplot(projection="3d")
        for c in curves:
            zeta, v = heisenberg_coords(c.zw, pole)
            keep = np.isfinite(v) & (np.abs(v) < 50) & (np.abs(zeta) < 50)
            ax.plot(zeta[keep].real, zeta[keep].imag, v[keep], lw=0.8, alpha=0.8)
        ax.set_xlabel("Re zeta")
        ax.set_ylabel("Im zeta")
        ax.set_zlabel("v")
        ax.set_title(f"{len(curves)} boundary curves")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def save_monotonicity_figure(report: MonotonicityReport, path: str) -> str:
    ts = np.linspace(report.t_lo, report.t_hi, report.grid)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(7, 4))
        for label, curve in sorted(report.lambda_curves.items()):
            ax.plot(ts, curve, label=f"W_{label}")
        ax.set_xlabel("deformation parameter t")
        ax.set_ylabel("translation length")
        ax.set_title(
            f"{report.spec}: {len(report.checked)} words length<={report.max_len}, "
            f"{len(report.violations)} violations"
        )
        ax.legend(loc="best")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
