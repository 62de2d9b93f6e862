"""Figure rendering for the sweep commands.

Matplotlib is imported lazily with the Agg backend so the rest of the
package works without any display and without the import cost.
"""

from __future__ import annotations

from typing import Sequence


def _axes():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    return fig, ax


def render_eta_sweep(
    eta: Sequence[float],
    qcrb_upper: Sequence[float],
    qcrb_lower: Sequence[float],
    qcrb_two_arm: Sequence[float],
    path: str,
    title: str = "",
) -> None:
    """Phase-estimation bound against the input photon split."""
    fig, ax = _axes()
    ax.plot(eta, qcrb_upper, "-", label="upper arm")
    ax.plot(eta, qcrb_lower, "--", label="lower arm")
    ax.plot(eta, qcrb_two_arm, "-.", label="two arms")
    ax.set_yscale("log")
    ax.set_xlabel(r"$\eta$ (mode-b share of input photons)")
    ax.set_ylabel(r"$\Delta\phi_{\mathrm{QCRB}}$ (rad)")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)


def render_nin_sweep(
    n_in: Sequence[float],
    qfi_two_coherent: Sequence[float],
    qfi_coherent_squeezed: Sequence[float],
    hofmann_n2: Sequence[float],
    path: str,
    title: str = "",
) -> None:
    """Optimal Fisher information against the total input photon number."""
    fig, ax = _axes()
    ax.plot(n_in, qfi_two_coherent, "-.", label="two coherent (optimal)")
    ax.plot(n_in, qfi_coherent_squeezed, "--", label="coherent + squeezed (optimal)")
    ax.plot(n_in, hofmann_n2, "-", label=r"$\langle \hat{N}^2 \rangle$ bound")
    ax.set_yscale("log")
    ax.set_xlabel(r"$N_\mathrm{in}$ (total input photons)")
    ax.set_ylabel("QFI (rad$^{-2}$)")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
