"""Figure rendering for the experiment drivers (PNG files, Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import FitResult, sin_squared_model
from .interferometer import Interferogram


def save_interferogram_figure(ig: Interferogram, path: str | Path, title: str) -> None:
    fig, ax = plt.subplots(figsize=(7.2, 4.2))
    ax.plot(ig.tau_s * 1e15, ig.g2, lw=0.7, color="tab:blue")
    ax.axhline(1.0, color="0.55", ls="--", lw=0.8, label="baseline")
    ax.set_xlabel("delay tau (fs)")
    ax.set_ylabel("coincidence rate (baseline units)")
    ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_theta_sweep_figure(
    thetas: np.ndarray, g2: np.ndarray, path: str | Path, fit: FitResult | None = None
) -> None:
    fig, ax = plt.subplots(figsize=(7.2, 4.2))
    ax.plot(thetas / np.pi, g2, ".", ms=3, color="tab:blue", label="simulation")
    if fit is not None:
        dense = np.linspace(thetas[0], thetas[-1], 1200)
        curve = sin_squared_model(dense, fit.amplitude, np.pi / fit.period, fit.phase, fit.offset)
        ax.plot(dense / np.pi, curve, lw=0.9, color="tab:orange", label="sin^2 fit")
    ax.set_xlabel("pump plate phase theta (units of pi)")
    ax.set_ylabel("coincidence rate at tau = 0")
    ax.set_title("zero-delay coincidence versus pump plate phase")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_concurrence_figure(
    thetas: np.ndarray, c_i: np.ndarray, c_real: np.ndarray, path: str | Path
) -> None:
    fig, ax = plt.subplots(figsize=(7.2, 4.2))
    ax.plot(thetas / np.pi, c_i, lw=1.0, color="tab:blue", label="cos t |Phi+> + i sin t |Psi+>")
    ax.plot(thetas / np.pi, c_real, lw=1.0, color="tab:orange", label="cos t |Phi+> + sin t |Psi+>")
    ax.set_xlabel("superposition parameter t (units of pi)")
    ax.set_ylabel("concurrence")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title("entanglement of the two superposition families")
    ax.legend(loc="lower left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_residuals_figure(residuals: np.ndarray, path: str | Path, tolerance: float) -> None:
    fig, ax = plt.subplots(figsize=(7.2, 4.2))
    floor = np.maximum(np.asarray(residuals), 1e-18)
    ax.semilogy(np.arange(len(residuals)), floor, ".", ms=4, color="tab:blue")
    ax.axhline(tolerance, color="tab:red", ls="--", lw=0.8, label=f"tolerance {tolerance:g}")
    ax.set_xlabel("word index")
    ax.set_ylabel("distance to matrix prediction")
    ax.set_title("continuous evolution versus 2x2 matrix products")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
