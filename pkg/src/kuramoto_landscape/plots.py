"""Figure rendering for sweep, census, and trajectory reports.

All functions render straight to a file with the Agg backend; nothing here
opens a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_sweep(report, path) -> None:
    """Three-panel heatmap of cond1, cond2, and the cond3 margin over the
    (alpha, mu) grid, with the reference margin noted in each title."""
    fig, axes = plt.subplots(1, 3, figsize=(13, 3.8), constrained_layout=True)
    extent = [
        report.mu_values[0],
        report.mu_values[-1],
        report.alpha_values[0],
        report.alpha_values[-1],
    ]
    panels = [
        (report.cond1, f"cond1 (< {report.reference_margins[0]})"),
        (report.cond2, f"cond2 (< {report.reference_margins[1]})"),
        (report.cond3_margin, f"cond3 margin (> {report.reference_margins[2]})"),
    ]
    for ax, (grid, title) in zip(axes, panels):
        im = ax.imshow(grid, origin="lower", aspect="auto", extent=extent)
        ax.set_xlabel(r"$\mu$")
        ax.set_ylabel(r"$\alpha$")
        ax.set_title(title)
        fig.colorbar(im, ax=ax)
    fig.suptitle(f"certificate sweep, eps={report.epsilon}, delta={report.delta}")
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_trajectory(meta, path) -> None:
    """Energy and normalized order parameter along an integrated trajectory."""
    fig, ax1 = plt.subplots(figsize=(7, 4), constrained_layout=True)
    t = np.asarray(meta.times)
    ax1.plot(t, meta.energies, color="tab:blue", label="energy")
    ax1.set_xlabel("t")
    ax1.set_ylabel("energy", color="tab:blue")
    ax2 = ax1.twinx()
    ax2.plot(t, meta.order_mags, color="tab:red", label="|r|/n")
    ax2.set_ylabel("|r| / n", color="tab:red")
    ax2.set_ylim(0, 1.05)
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_census(reports, path) -> None:
    """Scatter of energy vs order magnitude for the deduplicated equilibria,
    sized by basin hit count and colored by classification."""
    colors = {
        "global-max": "tab:green",
        "spurious-local-max": "tab:red",
        "saddle-or-unstable": "tab:orange",
        "inconclusive": "tab:gray",
    }
    fig, ax = plt.subplots(figsize=(7, 4.5), constrained_layout=True)
    seen = set()
    for rep in reports:
        label = rep.classification if rep.classification not in seen else None
        seen.add(rep.classification)
        ax.scatter(
            rep.order_magnitude,
            rep.energy,
            s=30 + 8 * rep.hit_count,
            color=colors.get(rep.classification, "tab:gray"),
            alpha=0.75,
            label=label,
        )
    ax.set_xlabel("|r| / n")
    ax.set_ylabel("energy")
    ax.set_xlim(-0.02, 1.05)
    ax.legend(loc="best")
    ax.set_title(f"landscape census: {len(reports)} distinct equilibria")
    fig.savefig(path, dpi=150)
    plt.close(fig)
