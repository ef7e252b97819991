"""
Mode entanglement of the zero mode between the two ends of the chain.

Mode A is supported on the first ``n0/2`` odd sites and mode B on the last
``n0/2`` even sites. A single particle shared between the two modes is
represented by its site amplitudes, so the two-mode Bell state
``(|1>_A|0>_B + |0>_A|1>_B)/sqrt(2)`` becomes ``(psi_A + psi_B)/sqrt(2)``
and every fidelity is a vector inner product.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Integral

import numpy as np

from .errors import NumericalError, ParameterError
from .lattice import validate_kappa, validate_size
from .states import StateVector, as_amplitudes
from .zeromode import _geometric_norm2, analytic_zero_mode

__all__ = [
    "SpatialModePair",
    "EntanglementReport",
    "validate_n0",
    "spatial_modes",
    "bell_target",
    "fidelity_closed_form",
    "fidelity_numeric",
]

FIDELITY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SpatialModePair:
    psi_a: StateVector
    psi_b: StateVector
    n_sites: int
    n0: int
    kappa: float
    omega0: float

    @property
    def n_b(self) -> int:
        """First cell index ``(N - n0 + 2)/2`` of mode B."""
        return (self.n_sites - self.n0 + 2) // 2


@dataclass(frozen=True)
class EntanglementReport:
    f_closed: float
    f_numeric: float
    n: int
    n0: int
    kappa: float

    @property
    def discrepancy(self) -> float:
        return abs(self.f_closed - self.f_numeric)


def validate_n0(n_sites: int, n0) -> int:
    if isinstance(n0, bool) or not isinstance(n0, Integral):
        raise ParameterError(f"N0 must be an integer, got {n0!r}")
    n0 = int(n0)
    if n0 % 2:
        raise ParameterError(f"N0 must be even, got {n0}")
    if not 2 <= n0 <= n_sites:
        raise ParameterError(f"N0 must lie in [2, N={n_sites}], got {n0}")
    return n0


def spatial_modes(n_sites: int, n0: int, kappa: float) -> SpatialModePair:
    n_sites = validate_size(n_sites)
    kappa = validate_kappa(kappa)
    n0 = validate_n0(n_sites, n0)
    half, cells = n_sites // 2, n0 // 2
    omega0 = float(np.sqrt(1.0 / _geometric_norm2(kappa, cells)))

    psi_a = np.zeros(n_sites, dtype=complex)
    j = np.arange(1, cells + 1)
    psi_a[2 * j - 2] = omega0 * (-kappa) ** (j - 1)

    psi_b = np.zeros(n_sites, dtype=complex)
    n_b = (n_sites - n0 + 2) // 2
    j = np.arange(n_b, half + 1)
    psi_b[2 * j - 1] = -1j * omega0 * (-kappa) ** (half - j)

    return SpatialModePair(
        StateVector(psi_a, label="psi_A"),
        StateVector(psi_b, label="psi_B"),
        n_sites,
        n0,
        kappa,
        omega0,
    )


def bell_target(pair: SpatialModePair) -> StateVector:
    """``(psi_A + psi_B)/sqrt(2)``: one particle maximally shared by A and B."""
    amps = (pair.psi_a.amplitudes + pair.psi_b.amplitudes) / np.sqrt(2.0)
    return StateVector(amps, label="bell")


def fidelity_closed_form(n_sites: int, n0: int, kappa: float) -> float:
    """``sqrt((1 - kappa**n0) / (1 - kappa**N))``, continued by ``sqrt(n0/N)`` at kappa = 1."""
    n_sites = validate_size(n_sites)
    kappa = validate_kappa(kappa)
    n0 = validate_n0(n_sites, n0)
    if n0 == n_sites:
        return 1.0
    if kappa == 1.0:
        return float(np.sqrt(n0 / n_sites))
    return float(np.sqrt((1.0 - kappa**n0) / (1.0 - kappa**n_sites)))


def fidelity_numeric(zero_mode, pair: SpatialModePair) -> EntanglementReport:
    """Overlap ``|<psi_zm|bell>|`` evaluated as an inner product.

    ``zero_mode`` must be the zero mode for the same ``(N, kappa)`` as
    ``pair``, up to a global phase.
    """
    amps = as_amplitudes(zero_mode)
    if amps.size != pair.n_sites:
        raise ParameterError(f"zero mode has {amps.size} sites, mode pair has {pair.n_sites}")
    reference = analytic_zero_mode(pair.n_sites, pair.kappa).amplitudes
    norm = np.linalg.norm(amps)
    if norm == 0.0 or 1.0 - abs(np.vdot(reference, amps)) / norm > 1e-9:
        raise ParameterError(
            f"zero mode does not match N={pair.n_sites}, kappa={pair.kappa} of the mode pair"
        )

    target = bell_target(pair).amplitudes
    f_numeric = min(float(abs(np.vdot(amps / norm, target))), 1.0)
    f_closed = fidelity_closed_form(pair.n_sites, pair.n0, pair.kappa)
    report = EntanglementReport(f_closed, f_numeric, pair.n_sites, pair.n0, pair.kappa)
    if report.discrepancy > FIDELITY_TOL:
        raise NumericalError(
            f"closed-form and numeric fidelity differ by {report.discrepancy:.3e}"
        )
    return report
