"""
Non-Hermitian eigendecomposition, PT-phase classification and EP location.

Right eigenvectors solve ``H r = E r``; left eigenvectors solve
``H^dagger l = conj(E) l`` so that ``<l|H = E <l|``. Both sets are stored
Dirac-normalized. Their overlap ``|<l_i|r_i>|`` tends to zero when two
eigenvectors coalesce at an exceptional point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BracketError, ConvergenceError, NumericalError, ParameterError, ShapeError
from .lattice import ChainSpec, OpenGainLoss, build_hamiltonian
from .states import StateVector, as_amplitudes

__all__ = [
    "Phase",
    "Spectrum",
    "PhaseClassification",
    "eigendecompose",
    "classify_phase",
    "default_tol_imag",
    "find_ep",
    "biorthogonal_overlap",
    "null_space_dimension",
    "midgap_splitting",
]


class Phase(str, Enum):
    UNBROKEN = "unbroken"
    BROKEN = "broken"


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sorted eigenvalues with matched right/left eigenvectors (as columns)."""

    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    pair_overlaps: np.ndarray
    max_residual: float

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    @property
    def pairing_condition(self) -> float:
        """Smallest ``|<l_i|r_i>|``; small values flag proximity to an EP."""
        return float(np.min(self.pair_overlaps))

    def right(self, i: int) -> StateVector:
        return StateVector(self.right_vectors[:, i])

    def left(self, i: int) -> StateVector:
        return StateVector(self.left_vectors[:, i])

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))


@dataclass(frozen=True)
class PhaseClassification:
    n_real: int
    n_complex: int
    label: Phase


def _square(h) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {h.shape}")
    return h


def _sort_order(values: np.ndarray) -> np.ndarray:
    return np.lexsort((values.imag, values.real))


def _eig(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eig(h)
    except np.linalg.LinAlgError as exc:
        cond = np.linalg.cond(h) if np.all(np.isfinite(h)) else np.inf
        raise NumericalError(
            f"eigensolver failed ({exc}); matrix 2-norm condition number {cond:.3e}"
        ) from exc


def eigendecompose(h, tol_resid: float = 1e-10) -> Spectrum:
    """Eigenvalues and paired right/left eigenvectors of a dense matrix.

    Left vectors come from a separate solve of ``H^dagger`` and are matched
    greedily to the right vectors by nearest ``conj`` eigenvalue, in sorted
    order.

    Parameters
    ----------
    h : array_like, shape (N, N)
    tol_resid : float
        Largest accepted ``||H r - E r||`` in units of ``||H||_2``.

    Raises
    ------
    NumericalError
        If LAPACK fails or an eigenpair violates ``tol_resid``.
    """
    if tol_resid <= 0:
        raise ParameterError(f"tol_resid must be positive, got {tol_resid}")
    h = _square(h)

    w, vr = _eig(h)
    order = _sort_order(w)
    w, vr = w[order], vr[:, order]
    vr = vr / np.linalg.norm(vr, axis=0)

    wl, vl = _eig(h.conj().T)
    vl = vl / np.linalg.norm(vl, axis=0)
    target = wl.conj()
    unused = np.ones(w.size, dtype=bool)
    match = np.empty(w.size, dtype=int)
    for i, e in enumerate(w):
        dist = np.where(unused, np.abs(target - e), np.inf)
        j = int(np.argmin(dist))
        match[i] = j
        unused[j] = False
    vl = vl[:, match]

    scale = max(np.linalg.norm(h, 2), np.finfo(float).tiny)
    resid = np.linalg.norm(h @ vr - vr * w, axis=0) / scale
    max_resid = float(np.max(resid))
    if not np.isfinite(max_resid) or max_resid > tol_resid:
        raise NumericalError(f"eigenpair residual {max_resid:.3e} exceeds {tol_resid:.1e}")

    overlaps = np.abs(np.einsum("ij,ij->j", vl.conj(), vr))
    return Spectrum(w, vr, vl, overlaps, max_resid)


def default_tol_imag(eigenvalues) -> float:
    """``1e-9 * max(1, spectral radius)``."""
    radius = float(np.max(np.abs(eigenvalues))) if np.size(eigenvalues) else 0.0
    return 1e-9 * max(1.0, radius)


def _classify(eigenvalues: np.ndarray, tol_imag: float | None) -> PhaseClassification:
    if tol_imag is None:
        tol_imag = default_tol_imag(eigenvalues)
    elif tol_imag <= 0:
        raise ParameterError(f"tol_imag must be positive, got {tol_imag}")
    n_complex = int(np.count_nonzero(np.abs(eigenvalues.imag) > tol_imag))
    n_real = eigenvalues.size - n_complex
    return PhaseClassification(n_real, n_complex, Phase.BROKEN if n_complex else Phase.UNBROKEN)


def classify_phase(spectrum: Spectrum, tol_imag: float | None = None) -> PhaseClassification:
    """Count real and nonreal eigenvalues; any nonreal one means broken PT."""
    return _classify(spectrum.eigenvalues, tol_imag)


def _phase_at(spec: ChainSpec, gamma: float, tol_imag: float | None) -> Phase:
    h = build_hamiltonian(spec.with_gamma(gamma))
    try:
        eigs = np.linalg.eigvals(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed at gamma={gamma!r}: {exc}") from exc
    return _classify(eigs, tol_imag).label


def find_ep(
    spec_template: ChainSpec,
    gamma_lo: float,
    gamma_hi: float,
    tol_gamma: float = 1e-10,
    tol_imag: float | None = None,
    max_iter: int = 200,
) -> float:
    """Locate the PT-breaking threshold in gamma by bisection.

    The indicator is the presence of nonreal eigenvalues. ``gamma_lo`` must
    lie in the unbroken phase and ``gamma_hi`` in the broken phase. Returns
    the midpoint of the final bracket, whose width is at most ``tol_gamma``.
    """
    if not isinstance(spec_template.boundary, OpenGainLoss):
        raise ParameterError("find_ep needs an open chain with gain/loss boundary")
    if tol_gamma <= 0:
        raise ParameterError(f"tol_gamma must be positive, got {tol_gamma}")
    if not 0.0 <= gamma_lo < gamma_hi:
        raise BracketError(f"need 0 <= gamma_lo < gamma_hi, got [{gamma_lo}, {gamma_hi}]")

    lo, hi = float(gamma_lo), float(gamma_hi)
    if _phase_at(spec_template, lo, tol_imag) is not Phase.UNBROKEN:
        raise BracketError(f"gamma_lo={lo} is already in the broken phase")
    if _phase_at(spec_template, hi, tol_imag) is not Phase.BROKEN:
        raise BracketError(f"gamma_hi={hi} is still in the unbroken phase")

    for _ in range(max_iter):
        if hi - lo <= tol_gamma:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # bracket is at floating-point resolution
            return mid
        if _phase_at(spec_template, mid, tol_imag) is Phase.BROKEN:
            hi = mid
        else:
            lo = mid
    raise ConvergenceError(
        f"bisection did not reach width {tol_gamma:g} in {max_iter} steps (width {hi - lo:.3e})"
    )


def biorthogonal_overlap(left, right) -> complex:
    """``<left|right>``; the left vector is conjugated here."""
    l, r = as_amplitudes(left), as_amplitudes(right)
    if l.size != r.size:
        raise ShapeError(f"dimension mismatch: {l.size} vs {r.size}")
    return complex(np.vdot(l, r))


def null_space_dimension(h, tol: float = 1e-10) -> int:
    """Number of singular values of ``h`` not exceeding ``tol``."""
    s = np.linalg.svd(_square(h), compute_uv=False)
    return int(np.count_nonzero(s <= tol))


def midgap_splitting(spectrum: Spectrum) -> float:
    """Distance between the two eigenvalues closest to zero."""
    if spectrum.dim < 2:
        raise ParameterError("need at least two eigenvalues")
    near = spectrum.eigenvalues[np.argsort(np.abs(spectrum.eigenvalues))[:2]]
    return float(abs(near[0] - near[1]))
