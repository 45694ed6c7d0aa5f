"""Figure rendering for the CLI report paths.

Each renderer takes the rows the CLI just wrote to its table file and
saves a PNG next to it.  Styling is kept minimal and deterministic.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .amplifier import SEQ_LABELS

_DPI = 150


def _label(seq: str) -> str:
    return SEQ_LABELS.get(seq, seq)


def _by_seq(rows, key):
    out: dict[str, tuple[list, list]] = {}
    for r in rows:
        xs, ys = out.setdefault(r.seq, ([], []))
        xs.append(r.alpha_i if hasattr(r, "alpha_i") else r.alpha_f)
        ys.append(getattr(r, key))
    return out


def render_sweep(rows, path: str) -> None:
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.6))
    for ax, key, title in zip(
        axes, ("f_max", "gain", "ein_avg"), ("max fidelity", "amplitude gain", "EIN")
    ):
        for seq, (xs, ys) in sorted(_by_seq(rows, key).items()):
            ax.plot(xs, ys, label=_label(seq))
        if key == "ein_avg":
            for seq, (xs, ys) in sorted(_by_seq(rows, "ein_0").items()):
                ax.plot(xs, ys, linestyle="--", label=f"{_label(seq)} (phase 0)")
        ax.set_xlabel(r"$\alpha_i$")
        ax.set_title(title)
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def render_scs_sweep(rows, path: str) -> None:
    parities = sorted({r.parity for r in rows})
    fig, axes = plt.subplots(len(parities), 3, figsize=(12, 3.6 * len(parities)), squeeze=False)
    for i, par in enumerate(parities):
        sub = [r for r in rows if r.parity == par]
        for j, (key, title) in enumerate(
            (("f_max", "max fidelity"), ("gain_scs", "gain"), ("dphi_amplified", "phase uncertainty"))
        ):
            ax = axes[i][j]
            for seq, (xs, ys) in sorted(_by_seq(sub, key).items()):
                ax.plot(xs, ys, label=_label(seq))
            if key == "dphi_amplified":
                bare = {}
                for r in sub:
                    bare.setdefault(r.alpha_i, r.dphi_bare)
                xs = sorted(bare)
                ax.plot(xs, [bare[x] for x in xs], "k-.", label="bare cat")
            ax.set_xlabel(r"$\alpha_i$")
            ax.set_title(f"{title} ({par})")
            ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def render_squeezed_fit(rows, path: str) -> None:
    parities = sorted({r.parity for r in rows})
    fig, axes = plt.subplots(len(parities), 2, figsize=(9, 3.6 * len(parities)), squeeze=False)
    for i, par in enumerate(parities):
        sub = [r for r in rows if r.parity == par]
        for j, (key, title) in enumerate(
            (("f_max", "max fidelity"), ("squeezing_db", "required squeezing (dB)"))
        ):
            ax = axes[i][j]
            for seq, (xs, ys) in sorted(_by_seq(sub, key).items()):
                ax.plot(xs, ys, label=_label(seq))
            ax.set_xlabel(r"$\alpha_f$")
            ax.set_title(f"{title} ({par})")
            ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def render_wigner(grid: np.ndarray, xs: np.ndarray, ys: np.ndarray, path: str) -> None:
    fig, ax = plt.subplots(figsize=(5.4, 4.4))
    vmax = float(np.max(np.abs(grid)))
    mesh = ax.pcolormesh(xs, ys, grid, cmap="RdBu_r", vmin=-vmax, vmax=vmax, shading="auto")
    fig.colorbar(mesh, ax=ax, label="W(x, y)")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
