"""
Closed-form zero modes of the chain at its exceptional point and of the ring.

With ``M = N/2`` unit cells the coalescing zero mode has amplitudes::

    site 2j-1 :      Omega * (-kappa)**(j-1)
    site 2j   : -1j * Omega * (-kappa)**(M-j)          j = 1 .. M

and the adjoint state (zero mode of ``H^dagger``) flips the sign of the
even-site part. ``Omega**2 = (1 - kappa**2) / (2 - 2 kappa**N)``, which
tends to ``1/N`` as kappa -> 1.

Every analytic constructor returns a Dirac-normalized state whose site-1
amplitude is real and positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ShapeError
from .lattice import validate_kappa, validate_size
from .states import StateVector, as_amplitudes

__all__ = [
    "EvanescentSolution",
    "StateVector",
    "normalization_constant",
    "analytic_zero_mode",
    "adjoint_zero_mode",
    "hermitian_zero_pair",
    "edge_states",
    "dirac_profile",
    "residual",
    "evanescent_k",
]


def _geometric_norm2(kappa: float, n_terms: int) -> float:
    """``sum_{m<n_terms} kappa**(2m)``, exact at kappa = 1."""
    if kappa == 1.0:
        return float(n_terms)
    return (1.0 - kappa ** (2 * n_terms)) / (1.0 - kappa**2)


def normalization_constant(n_sites: int, kappa: float) -> float:
    """Dirac normalization ``Omega`` of the zero mode."""
    n_sites = validate_size(n_sites)
    kappa = validate_kappa(kappa)
    return float(np.sqrt(1.0 / (2.0 * _geometric_norm2(kappa, n_sites // 2))))


def _sublattice_parts(n_sites: int, kappa: float) -> tuple[np.ndarray, np.ndarray]:
    half = n_sites // 2
    j = np.arange(1, half + 1)
    odd = (-kappa) ** (j - 1)
    even = (-kappa) ** (half - j)
    return odd, even


def _zero_mode(n_sites, kappa, even_sign: int, label: str) -> StateVector:
    n_sites = validate_size(n_sites)
    kappa = validate_kappa(kappa)
    omega = normalization_constant(n_sites, kappa)
    odd, even = _sublattice_parts(n_sites, kappa)
    amps = np.empty(n_sites, dtype=complex)
    amps[0::2] = omega * odd
    amps[1::2] = even_sign * 1j * omega * even
    return StateVector(amps, label=label)


def analytic_zero_mode(n_sites: int, kappa: float) -> StateVector:
    """Coalescing zero mode of the open chain at ``gamma = kappa**(N/2)``."""
    return _zero_mode(n_sites, kappa, -1, "psi_zm")


def adjoint_zero_mode(n_sites: int, kappa: float) -> StateVector:
    """Zero mode of ``H^dagger`` at the EP; equals ``1j * P @ psi_zm``."""
    return _zero_mode(n_sites, kappa, +1, "eta_zm")


def hermitian_zero_pair(n_sites: int, kappa: float) -> tuple[StateVector, StateVector]:
    """Degenerate zero modes ``(psi_plus, psi_minus)`` of the ring at ``lam = kappa**(N/2)``.

    ``psi_minus`` coincides with :func:`analytic_zero_mode` and ``psi_plus``
    with :func:`adjoint_zero_mode`.
    """
    plus = _zero_mode(n_sites, kappa, +1, "psi_plus")
    minus = _zero_mode(n_sites, kappa, -1, "psi_minus")
    return plus, minus


def edge_states(n_sites: int, kappa: float) -> tuple[StateVector, StateVector]:
    """Left and right SSH edge states truncated to ``n_sites`` and renormalized.

    ``psi_L`` lives on odd sites and decays away from site 1; ``psi_R``
    lives on even sites and decays away from site N. At finite N they equal
    ``(psi_plus + psi_minus)/sqrt(2)`` and ``-1j (psi_plus - psi_minus)/sqrt(2)``
    after renormalization.
    """
    n_sites = validate_size(n_sites)
    kappa = validate_kappa(kappa)
    odd, even = _sublattice_parts(n_sites, kappa)
    left = np.zeros(n_sites, dtype=complex)
    right = np.zeros(n_sites, dtype=complex)
    left[0::2] = odd
    right[1::2] = even
    return (
        StateVector(left, label="psi_L").normalized(),
        StateVector(right, label="psi_R").normalized(),
    )


def dirac_profile(state) -> np.ndarray:
    """Local Dirac probability ``|psi_l|**2 / ||psi||**2`` on every site."""
    prob = np.abs(as_amplitudes(state)) ** 2
    total = prob.sum()
    if total == 0.0:
        raise ParameterError("Dirac profile is undefined for the zero vector")
    return prob / total


def residual(h, state) -> float:
    """``||H psi|| / (||H||_2 ||psi||)``; zero for an exact zero mode."""
    h = np.asarray(h, dtype=complex)
    amps = as_amplitudes(state)
    if h.ndim != 2 or h.shape != (amps.size, amps.size):
        raise ShapeError(f"operator shape {h.shape} does not act on dimension {amps.size}")
    denom = np.linalg.norm(h, 2) * np.linalg.norm(amps)
    if denom == 0.0:
        raise ParameterError("residual is undefined for a zero operator or zero state")
    return float(np.linalg.norm(h @ amps) / denom)


@dataclass(frozen=True)
class EvanescentSolution:
    """Complex bulk wavenumbers of the zero-energy evanescent waves.

    ``k_minus = pi - 1j ln kappa`` solves ``kappa + exp(1j k) = 0`` and
    ``k_plus = pi + 1j ln kappa`` solves ``kappa + exp(-1j k) = 0``.
    """

    kappa: float
    k_plus: complex
    k_minus: complex
    determinant_residual: float

    @property
    def decay_length(self) -> float:
        """Decay length in unit cells, ``1/|ln kappa|``."""
        return 1.0 / abs(self.k_minus.imag)


def _determinant(kappa: float, k: complex) -> complex:
    return (kappa + np.exp(1j * k)) * (kappa + np.exp(-1j * k))


def evanescent_k(kappa: float) -> EvanescentSolution:
    kappa = validate_kappa(kappa)
    if kappa >= 1.0:
        raise ParameterError("no evanescent solution for kappa >= 1 (k = pi is a propagating wave)")
    log_k = np.log(kappa)
    k_minus = complex(np.pi, -log_k)
    k_plus = complex(np.pi, log_k)
    resid = max(abs(_determinant(kappa, k_minus)), abs(_determinant(kappa, k_plus)))
    return EvanescentSolution(kappa, k_plus, k_minus, float(resid))
