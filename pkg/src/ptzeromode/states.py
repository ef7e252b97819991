"""Single-particle state vectors in the site basis."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ParameterError, ShapeError


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex site amplitudes, site ``l`` stored at index ``l - 1``.

    The array is copied and frozen on construction. ``StateVector`` converts
    to an ndarray through ``np.asarray`` so it can be passed to any numpy
    routine directly.
    """

    amplitudes: np.ndarray
    label: str = ""

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex, copy=True)
        if amps.ndim != 1 or amps.size == 0:
            raise ShapeError(f"state must be a non-empty 1-D array, got shape {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n_sites: int, site: int) -> StateVector:
        """Localized state ``|site>`` (1-based site index)."""
        if not 1 <= site <= n_sites:
            raise ParameterError(f"site must lie in 1..{n_sites}, got {site}")
        amps = np.zeros(n_sites, dtype=complex)
        amps[site - 1] = 1.0
        return cls(amps, label=f"|{site}>")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @cached_property
    def dirac_norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> StateVector:
        norm = self.dirac_norm
        if norm == 0.0:
            raise ParameterError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / norm, label=self.label)

    def __len__(self) -> int:
        return self.dim

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.amplitudes
        return self.amplitudes.astype(dtype)

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"StateVector{tag}(dim={self.dim}, norm={self.dirac_norm:.6g})"


def as_amplitudes(state) -> np.ndarray:
    """Return the complex 1-D amplitude array of a state or array-like."""
    amps = np.asarray(state, dtype=complex)
    if amps.ndim != 1:
        raise ShapeError(f"expected a 1-D state, got shape {amps.shape}")
    return amps
