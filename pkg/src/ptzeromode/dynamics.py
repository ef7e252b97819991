"""
Schrodinger evolution under the (generally non-Hermitian) chain Hamiltonian.

The step propagator ``U = expm(-1j H dt)`` is built once per run by scaling
and squaring. The state is advanced by powers of ``U``, in chunks at most
1000 time units long whose operator norm never exceeds ``1e6``. After every
chunk the working state is Dirac-renormalized and the discarded factor is
added to ``log_norm``, so ``exp(log_norm) * psi`` reconstructs the
unnormalized trajectory.

Eigenvector-based propagation is avoided on purpose. Close to the EP the
eigenvector matrix is nearly singular and its inverse is unreliable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Integral

import numpy as np
import scipy.linalg

from .errors import NumericalError, ParameterError
from .lattice import ChainSpec, build_hamiltonian
from .states import StateVector
from .zeromode import analytic_zero_mode, dirac_profile

__all__ = [
    "EvolutionPlan",
    "EvolutionTrace",
    "propagate",
    "fig4_scenario",
    "steady_state_check",
    "MAX_DT",
    "RENORM_INTERVAL",
    "RENORM_THRESHOLD",
]

MAX_DT = 0.5
RENORM_INTERVAL = 1e3
RENORM_THRESHOLD = 1e6

FIG4_N = 28
FIG4_KAPPA = 0.5
FIG4_GAMMA_OFFSET = 1e-10
FIG4_TAU = 8e5
FIG4_DT = 0.1
FIG4_RECORD_EVERY = 1000


@dataclass(frozen=True, eq=False)
class EvolutionPlan:
    """Everything needed to run one propagation.

    ``record_every`` is the number of steps between fidelity samples.
    ``target`` defaults to the analytic zero mode of ``spec``.
    """

    spec: ChainSpec
    initial: StateVector
    t_max: float
    n_steps: int
    snapshot_times: tuple[float, ...] = ()
    record_every: int = 1
    target: StateVector | None = None

    def __post_init__(self):
        if not isinstance(self.initial, StateVector):
            object.__setattr__(self, "initial", StateVector(self.initial))
        if self.initial.dim != self.spec.n_sites:
            raise ParameterError(
                f"initial state has {self.initial.dim} sites, chain has {self.spec.n_sites}"
            )
        if self.initial.dirac_norm == 0.0:
            raise ParameterError("initial state must be nonzero")
        if not np.isfinite(self.t_max) or self.t_max < 0:
            raise ParameterError(f"t_max must be finite and >= 0, got {self.t_max}")
        for name in ("n_steps", "record_every"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, Integral) or value < 1:
                raise ParameterError(f"{name} must be a positive integer, got {value!r}")
        if self.dt > MAX_DT:
            raise ParameterError(f"time step dt={self.dt:g} exceeds the limit {MAX_DT}")

        snaps = tuple(sorted(float(t) for t in self.snapshot_times))
        for t in snaps:
            if not 0.0 <= t <= self.t_max:
                raise ParameterError(f"snapshot time {t:g} outside [0, t_max={self.t_max:g}]")
        object.__setattr__(self, "snapshot_times", snaps)

        if self.target is None:
            target = analytic_zero_mode(self.spec.n_sites, self.spec.kappa)
        else:
            target = StateVector(self.target).normalized()
            if target.dim != self.spec.n_sites:
                raise ParameterError("target state dimension does not match the chain")
        object.__setattr__(self, "target", target)

    @property
    def dt(self) -> float:
        return self.t_max / self.n_steps


@dataclass(frozen=True, eq=False)
class EvolutionTrace:
    times: np.ndarray
    fidelity: np.ndarray
    log_norm: np.ndarray
    snapshots: dict[float, np.ndarray] = field(default_factory=dict)
    final_state: StateVector | None = None

    @property
    def final_profile(self) -> np.ndarray:
        return dirac_profile(self.final_state)


def _snapshot_step(t: float, dt: float, n_steps: int) -> int:
    if dt == 0.0:
        return 0
    return min(int(round(t / dt)), n_steps)


def propagate(plan: EvolutionPlan) -> EvolutionTrace:
    """Evolve ``plan.initial`` and record ``f(t) = |<target|psi~(t)>|``.

    Raises
    ------
    NumericalError
        If the state becomes non-finite; the message names the time reached.
    """
    h = build_hamiltonian(plan.spec)
    dt, n_steps = plan.dt, plan.n_steps
    target = plan.target.amplitudes

    # steps at which something is recorded
    if plan.t_max == 0.0:
        record_steps = [0]
    else:
        record_steps = list(range(0, n_steps + 1, plan.record_every))
        if record_steps[-1] != n_steps:
            record_steps.append(n_steps)
    snap_steps: dict[int, list[float]] = {}
    for t in plan.snapshot_times:
        snap_steps.setdefault(_snapshot_step(t, dt, n_steps), []).append(t)
    events = sorted(set(record_steps) | set(snap_steps))
    record_set = set(record_steps)

    step_op = scipy.linalg.expm(-1j * dt * h)
    powers: dict[int, np.ndarray] = {1: step_op}

    def power(m: int) -> np.ndarray:
        if m not in powers:
            powers[m] = np.linalg.matrix_power(step_op, m)
        return powers[m]

    # largest power-of-two chunk within the time limit whose norm stays bounded
    limit = max(1, int(RENORM_INTERVAL / dt)) if dt > 0 else 1
    max_chunk = 1
    while 2 * max_chunk <= limit:
        doubled = powers[max_chunk] @ powers[max_chunk]
        if not np.linalg.norm(doubled, 2) <= RENORM_THRESHOLD:
            break
        max_chunk *= 2
        powers[max_chunk] = doubled

    psi = plan.initial.amplitudes.copy()
    log_norm = float(np.log(np.linalg.norm(psi)))
    psi = psi / np.linalg.norm(psi)

    times, fids, logs = [], [], []
    snapshots: dict[float, np.ndarray] = {}
    current = 0
    for step in events:
        remaining = step - current
        while remaining > 0:
            m = min(remaining, max_chunk)
            psi = power(m) @ psi
            norm = np.linalg.norm(psi)
            if not np.isfinite(norm) or norm == 0.0:
                raise NumericalError(
                    f"state became non-finite or vanished at t={(current + m) * dt:.6g}"
                )
            log_norm += float(np.log(norm))
            psi = psi / norm
            current += m
            remaining -= m
        if step in record_set:
            times.append(step * dt)
            fids.append(min(float(abs(np.vdot(target, psi))), 1.0))
            logs.append(log_norm)
        for t in snap_steps.get(step, ()):
            snapshots[t] = dirac_profile(psi)

    return EvolutionTrace(
        times=np.array(times),
        fidelity=np.array(fids),
        log_norm=np.array(logs),
        snapshots=snapshots,
        final_state=StateVector(psi, label="psi(t_max)"),
    )


def fig4_scenario(
    gamma_offset: float = FIG4_GAMMA_OFFSET,
    dt: float = FIG4_DT,
    t_max: float = FIG4_TAU,
    initial_site: int = 1,
    record_every: int = FIG4_RECORD_EVERY,
    n_sites: int = FIG4_N,
    kappa: float = FIG4_KAPPA,
) -> EvolutionPlan:
    """Entanglement generation just above the EP, starting from ``|1>``.

    Defaults: N = 28, kappa = 0.5, gamma = kappa**14 + 1e-10, tau = 8e5,
    dt = 0.1, snapshots at 0, tau/4, tau/2, 3tau/4 and tau.
    """
    spec = ChainSpec.at_ep(n_sites, kappa, gamma_offset)
    if dt <= 0:
        raise ParameterError(f"dt must be positive, got {dt}")
    n_steps = max(1, int(round(t_max / dt)))
    snaps = tuple(t_max * q for q in (0.0, 0.25, 0.5, 0.75, 1.0))
    return EvolutionPlan(
        spec=spec,
        initial=StateVector.basis(n_sites, initial_site),
        t_max=t_max,
        n_steps=n_steps,
        snapshot_times=snaps,
        record_every=record_every,
    )


def steady_state_check(trace: EvolutionTrace, window: float) -> float:
    """``max |f(t) - f(t_end)|`` over the last ``window`` time units."""
    span = float(trace.times[-1] - trace.times[0])
    if window < 0 or window > span:
        raise ParameterError(f"window {window:g} exceeds the trace span {span:g}")
    t_end = trace.times[-1]
    tail = trace.fidelity[trace.times >= t_end - window]
    return float(np.max(np.abs(tail - trace.fidelity[-1])))
