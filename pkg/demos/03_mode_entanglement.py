"""
Mode entanglement of the zero mode
==================================

Split the chain into a left mode A and a right mode B of N0 sites each.
The zero mode overlaps the single-particle Bell state of A and B with
fidelity sqrt((1 - kappa**N0) / (1 - kappa**N)).
"""

# %%
import numpy as np

from ptzeromode import analytic_zero_mode, fidelity_closed_form, fidelity_numeric, spatial_modes

from _plotting import plt, save

N = 28

# %%
for kappa in (0.3, 0.5, 0.9):
    for n0 in (4, 8, N):
        rep = fidelity_numeric(analytic_zero_mode(N, kappa), spatial_modes(N, n0, kappa))
        print(f"kappa={kappa} N0={n0:2d}  F={rep.f_numeric:.10f}  |closed - numeric|={rep.discrepancy:.1e}")

# %% [markdown]
# Once kappa**N0 is small the two ends already hold essentially the whole
# state, so a short mode suffices.

# %%
n0s = np.arange(2, N + 1, 2)
curves = {k: [fidelity_closed_form(N, int(m), k) for m in n0s] for k in (0.3, 0.5, 0.7, 0.9, 1.0)}
for k, f in curves.items():
    print(f"kappa={k}: F(N0=2)={f[0]:.4f}, F(N0=8)={f[3]:.4f}")

# %%
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    for k, f in curves.items():
        ax.plot(n0s, f, "o-", ms=3, label=f"kappa = {k}")
    ax.set_xlabel("N0")
    ax.set_ylabel("F")
    ax.legend()
    save(fig, "mode_entanglement.png")
