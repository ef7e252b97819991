"""
Dimerized chain with end-site gain/loss and its Hermitian ring partner.

Sites are labelled ``l = 1 .. N`` and stored at array index ``l - 1``. The
intra-cell bonds ``(2j-1, 2j)`` carry hopping ``-kappa`` and the inter-cell
bonds ``(2j, 2j+1)`` carry hopping ``-1``, which fixes the energy unit.

Two boundary conditions are supported:

* :class:`OpenGainLoss` -- open chain with potentials ``+i gamma`` on site 1
  and ``-i gamma`` on site N (PT symmetric, non-Hermitian for gamma > 0);
* :class:`Ring` -- Hermitian ring closed by a bond ``-lam`` between sites 1
  and N.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from numbers import Integral, Real
from typing import Union

import numpy as np

from .errors import ParameterError, ShapeError
from .states import as_amplitudes

__all__ = [
    "OpenGainLoss",
    "Ring",
    "ChainSpec",
    "SymmetryOperator",
    "validate_size",
    "validate_kappa",
    "critical_gamma",
    "critical_lambda",
    "build_hamiltonian",
    "hermiticity_defect",
    "parity_operator",
    "time_reversal",
    "pt_commutator_norm",
]


def validate_size(n_sites) -> int:
    """Check that ``n_sites`` is a positive integer with N and N/2 even."""
    if isinstance(n_sites, bool) or not isinstance(n_sites, Integral):
        raise ParameterError(f"N must be an integer, got {n_sites!r}")
    n_sites = int(n_sites)
    if n_sites <= 0 or n_sites % 4 != 0:
        raise ParameterError("N must be even with N/2 even")
    return n_sites


def validate_kappa(kappa) -> float:
    if isinstance(kappa, bool) or not isinstance(kappa, Real):
        raise ParameterError(f"kappa must be a real number, got {kappa!r}")
    kappa = float(kappa)
    if not 0.0 < kappa <= 1.0:
        raise ParameterError(f"kappa must lie in (0, 1], got {kappa}")
    return kappa


@dataclass(frozen=True)
class OpenGainLoss:
    """Open chain with ``+i gamma`` on site 1 and ``-i gamma`` on site N."""

    gamma: float = 0.0

    def __post_init__(self):
        gamma = float(self.gamma)
        if not np.isfinite(gamma) or gamma < 0.0:
            raise ParameterError(f"gamma must be finite and >= 0, got {self.gamma}")
        object.__setattr__(self, "gamma", gamma)


@dataclass(frozen=True)
class Ring:
    """Hermitian ring; ``lam`` is the hopping amplitude of the closing bond."""

    lam: float = 0.0

    def __post_init__(self):
        lam = float(self.lam)
        if not np.isfinite(lam):
            raise ParameterError(f"lambda must be finite, got {self.lam}")
        object.__setattr__(self, "lam", lam)


Boundary = Union[OpenGainLoss, Ring]


@dataclass(frozen=True)
class ChainSpec:
    """Geometry and couplings of one chain; validated on construction."""

    n_sites: int
    kappa: float
    boundary: Boundary = OpenGainLoss()

    def __post_init__(self):
        object.__setattr__(self, "n_sites", validate_size(self.n_sites))
        object.__setattr__(self, "kappa", validate_kappa(self.kappa))
        if not isinstance(self.boundary, (OpenGainLoss, Ring)):
            raise ParameterError(f"unknown boundary {self.boundary!r}")

    @classmethod
    def open(cls, n_sites: int, kappa: float, gamma: float = 0.0) -> ChainSpec:
        return cls(n_sites, kappa, OpenGainLoss(gamma))

    @classmethod
    def ring(cls, n_sites: int, kappa: float, lam: float = 0.0) -> ChainSpec:
        return cls(n_sites, kappa, Ring(lam))

    @classmethod
    def at_ep(cls, n_sites: int, kappa: float, offset: float = 0.0) -> ChainSpec:
        """Open chain at ``gamma = kappa**(N/2) + offset``."""
        return cls.open(n_sites, kappa, critical_gamma(n_sites, kappa) + offset)

    @property
    def gamma(self) -> float:
        if isinstance(self.boundary, OpenGainLoss):
            return self.boundary.gamma
        return 0.0

    @property
    def gamma_c(self) -> float:
        return critical_gamma(self.n_sites, self.kappa)

    @property
    def is_hermitian(self) -> bool:
        return isinstance(self.boundary, Ring) or self.boundary.gamma == 0.0

    def with_gamma(self, gamma: float) -> ChainSpec:
        return replace(self, boundary=OpenGainLoss(gamma))


def critical_gamma(n_sites: int, kappa: float) -> float:
    """Gain/loss strength ``kappa**(N/2)`` at which the zero modes coalesce."""
    n_sites = validate_size(n_sites)
    return validate_kappa(kappa) ** (n_sites // 2)


def critical_lambda(n_sites: int, kappa: float) -> float:
    """Ring closing bond at which the ring hosts a degenerate zero-mode pair."""
    return critical_gamma(n_sites, kappa)


def build_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Dense single-particle Hamiltonian; ``h[i, j]`` is the amplitude j -> i."""
    n = spec.n_sites
    bonds = np.where(np.arange(n - 1) % 2 == 0, -spec.kappa, -1.0)
    h = np.zeros((n, n), dtype=complex)
    idx = np.arange(n - 1)
    h[idx, idx + 1] = bonds
    h[idx + 1, idx] = bonds

    if isinstance(spec.boundary, OpenGainLoss):
        h[0, 0] += 1j * spec.boundary.gamma
        h[-1, -1] -= 1j * spec.boundary.gamma
    else:
        h[0, -1] += -spec.boundary.lam
        h[-1, 0] += -spec.boundary.lam
    return h


def hermiticity_defect(h) -> float:
    """Largest entry of ``|H - H^dagger|``."""
    h = np.asarray(h)
    return float(np.max(np.abs(h - h.conj().T)))


@dataclass(frozen=True, eq=False)
class SymmetryOperator:
    """Parity (a permutation matrix) or time reversal (complex conjugation).

    ``matrix`` is ``None`` for time reversal, which acts only through
    ``conjugates``.
    """

    kind: str
    matrix: np.ndarray | None
    conjugates: bool = False

    @property
    def dim(self) -> int | None:
        return None if self.matrix is None else self.matrix.shape[0]

    def apply(self, state) -> np.ndarray:
        amps = as_amplitudes(state)
        if self.conjugates:
            amps = amps.conj()
        if self.matrix is None:
            return amps.copy()
        if amps.size != self.dim:
            raise ShapeError(f"operator acts on dimension {self.dim}, state has {amps.size}")
        return self.matrix @ amps


def parity_operator(n_sites: int) -> SymmetryOperator:
    """Site reflection ``l -> N + 1 - l`` as an antidiagonal permutation."""
    if isinstance(n_sites, bool) or not isinstance(n_sites, Integral) or n_sites < 2:
        raise ParameterError(f"parity needs at least 2 sites, got {n_sites!r}")
    p = np.fliplr(np.eye(int(n_sites)))
    p.setflags(write=False)
    return SymmetryOperator("parity", p)


def time_reversal() -> SymmetryOperator:
    return SymmetryOperator("time_reversal", None, conjugates=True)


def pt_commutator_norm(h, p: SymmetryOperator) -> float:
    """Max-entry magnitude of ``[H, PT]`` with ``PT x = P conj(x)``.

    As an antilinear map ``H P K - P K H = (H P - P conj(H)) K`` so the
    magnitude of the linear factor is returned.
    """
    h = np.asarray(h, dtype=complex)
    if p.matrix is None:
        raise ParameterError("pt_commutator_norm needs the parity operator")
    if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] != p.dim:
        raise ShapeError(f"Hamiltonian shape {h.shape} does not match parity dimension {p.dim}")
    comm = h @ p.matrix - p.matrix @ h.conj()
    return float(np.max(np.abs(comm)))
