"""
Zero modes at the exceptional point
===================================

At gamma = kappa**(N/2) the open chain has a single coalescing zero mode.
Its amplitudes are known in closed form, so we can check them directly
against the dense Hamiltonian and look at how strongly they sit on the
two ends of the chain.
"""

# %%
import numpy as np

from ptzeromode import (
    ChainSpec,
    analytic_zero_mode,
    build_hamiltonian,
    dirac_profile,
    evanescent_k,
    residual,
)

from _plotting import plt, save

N = 28

# %% [markdown]
# The closed-form state is annihilated by H(gamma_c) to machine precision.

# %%
for kappa in (0.1, 0.3, 0.5, 0.7, 0.9):
    h = build_hamiltonian(ChainSpec.at_ep(N, kappa))
    r = residual(h, analytic_zero_mode(N, kappa))
    print(f"kappa={kappa:.1f}  residual={r:.2e}")

# %% [markdown]
# Odd sites decay away from site 1 and even sites decay away from site N.
# The decay length in unit cells is 1/|ln kappa|.

# %%
profiles = {}
for kappa in (0.3, 0.5, 0.7):
    profiles[kappa] = dirac_profile(analytic_zero_mode(N, kappa))
    xi = evanescent_k(kappa).decay_length
    print(f"kappa={kappa:.1f}  P(1)={profiles[kappa][0]:.4f}  decay length={xi:.3f} cells")

# %%
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    sites = np.arange(1, N + 1)
    for kappa, p in profiles.items():
        ax.plot(sites, p, "o-", ms=3, label=f"kappa = {kappa}")
    ax.set_xlabel("site l")
    ax.set_ylabel("Dirac probability")
    ax.set_yscale("log")
    ax.legend()
    save(fig, "zero_mode_profiles.png")
