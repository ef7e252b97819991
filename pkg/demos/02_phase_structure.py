"""
PT phase structure and the exceptional point
============================================

Below gamma_c the spectrum is real. Above it one conjugate pair leaves the
real axis. Bisection on that indicator recovers gamma_c = kappa**(N/2),
and the left/right eigenvector overlap collapses on approach.
"""

# %%
import numpy as np

from ptzeromode import (
    ChainSpec,
    build_hamiltonian,
    classify_phase,
    critical_gamma,
    eigendecompose,
    find_ep,
)

from _plotting import plt, save

# %% [markdown]
# Uniform hopping (kappa = 1) breaks at gamma = 1.

# %%
for gamma in (0.5, 1.5):
    c = classify_phase(eigendecompose(build_hamiltonian(ChainSpec.open(28, 1.0, gamma))))
    print(f"gamma={gamma}: {c.n_real} real, {c.n_complex} nonreal ({c.label.value})")

# %%
for n, kappa in [(8, 0.5), (12, 0.5), (12, 0.7), (28, 1.0)]:
    gamma = find_ep(ChainSpec.open(n, kappa), 0.0, 1.5)
    print(f"N={n:2d} kappa={kappa}: bisection {gamma:.12f}  kappa**(N/2) {critical_gamma(n, kappa):.12f}")

# %% [markdown]
# The smallest biorthogonal overlap goes to zero as the two midgap
# eigenvectors merge.

# %%
n, kappa = 12, 0.5
gc = critical_gamma(n, kappa)
fractions = np.linspace(0.0, 0.999, 40)
overlap = [
    eigendecompose(build_hamiltonian(ChainSpec.open(n, kappa, f * gc))).pairing_condition
    for f in fractions
]
print(f"pairing condition at gamma/gamma_c = {fractions[-1]}: {overlap[-1]:.3e}")

# %%
if plt is not None:
    kappas = np.linspace(0.1, 1.0, 19)
    gammas = np.linspace(0.0, 1.2, 61)
    broken = np.array(
        [
            [
                classify_phase(eigendecompose(build_hamiltonian(ChainSpec.open(12, k, g)))).n_complex
                for k in kappas
            ]
            for g in gammas
        ]
    )
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.pcolormesh(kappas, gammas, broken > 0, shading="nearest", cmap="Greys")
    ax1.plot(kappas, kappas**6, "r-", label="kappa**(N/2)")
    ax1.set_xlabel("kappa")
    ax1.set_ylabel("gamma")
    ax1.set_title("broken phase (N = 12)")
    ax1.legend()
    ax2.plot(fractions, overlap)
    ax2.set_xlabel("gamma / gamma_c")
    ax2.set_ylabel("min |<l|r>|")
    save(fig, "phase_structure.png")
