"""Exit criteria. Run ``pytest tests/test_acceptance.py`` for the summary table."""

import time

import numpy as np
import pytest

from ptzeromode import (
    ChainSpec,
    EvolutionPlan,
    StateVector,
    adjoint_zero_mode,
    analytic_zero_mode,
    biorthogonal_overlap,
    build_hamiltonian,
    classify_phase,
    critical_gamma,
    dirac_profile,
    eigendecompose,
    evanescent_k,
    fidelity_closed_form,
    fidelity_numeric,
    find_ep,
    fig4_scenario,
    hermitian_zero_pair,
    null_space_dimension,
    parity_operator,
    propagate,
    residual,
    spatial_modes,
    steady_state_check,
)

SIZES = (4, 8, 12, 16, 20, 24, 28)
KAPPAS = (0.1, 0.3, 0.5, 0.7, 0.9)
GRID = [(n, k) for n in SIZES for k in KAPPAS]


@pytest.mark.acceptance(1, "exact zero mode: residual(H(gamma_c), psi_zm) <= 1e-12 on the grid")
def test_exact_zero_mode():
    worst = max(
        residual(build_hamiltonian(ChainSpec.at_ep(n, k)), analytic_zero_mode(n, k)) for n, k in GRID
    )
    print(f"AC1 worst residual {worst:.2e}")
    assert worst <= 1e-12


@pytest.mark.acceptance(2, "adjoint zero mode, self-orthogonality and eta = iP psi within 1e-12")
def test_adjoint_and_self_orthogonality():
    worst = [0.0, 0.0, 0.0]
    for n, k in GRID:
        h = build_hamiltonian(ChainSpec.at_ep(n, k))
        psi, eta = analytic_zero_mode(n, k), adjoint_zero_mode(n, k)
        worst[0] = max(worst[0], residual(h.conj().T, eta))
        worst[1] = max(worst[1], abs(biorthogonal_overlap(eta, psi)))
        image = 1j * parity_operator(n).apply(psi)
        worst[2] = max(worst[2], float(np.linalg.norm(eta.amplitudes - image)))
    print(f"AC2 worst residual {worst[0]:.2e}, overlap {worst[1]:.2e}, parity gap {worst[2]:.2e}")
    assert max(worst) <= 1e-12


@pytest.mark.acceptance(3, "EP location by bisection matches kappa**(N/2) within 1e-8; kappa=1 gives 1 +- 1e-6")
def test_ep_location():
    for n, k in [(8, 0.5), (12, 0.5), (12, 0.7)]:
        gamma = find_ep(ChainSpec.open(n, k), 0.0, 1.5, tol_gamma=1e-10)
        assert abs(gamma - critical_gamma(n, k)) <= 1e-8
    gamma = find_ep(ChainSpec.open(28, 1.0), 0.5, 1.5, tol_gamma=1e-10)
    print(f"AC3 kappa=1 EP at {gamma!r}")
    assert abs(gamma - 1.0) <= 1e-6


@pytest.mark.acceptance(4, "kappa=1, N=28: 28 real at gamma=0.5; 26 real + 2 imaginary at gamma=1.5")
def test_phase_structure_uniform_chain():
    below = classify_phase(eigendecompose(build_hamiltonian(ChainSpec.open(28, 1.0, 0.5))))
    assert below.n_real == 28
    spectrum = eigendecompose(build_hamiltonian(ChainSpec.open(28, 1.0, 1.5)))
    above = classify_phase(spectrum)
    assert (above.n_real, above.n_complex) == (26, 2)
    tol = 1e-9 * max(1.0, spectrum.spectral_radius)
    pair = spectrum.eigenvalues[np.abs(spectrum.eigenvalues.imag) > tol]
    assert abs(pair[0] - pair[1].conjugate()) <= 1e-9
    assert np.max(np.abs(pair.real)) <= 1e-9


@pytest.mark.acceptance(5, "ring at lambda_c annihilates psi_+ and psi_- (<= 1e-12); null space dimension 2")
def test_hermitian_correspondence():
    for n in (8, 16, 28):
        ring = build_hamiltonian(ChainSpec.ring(n, 0.5, critical_gamma(n, 0.5)))
        plus, minus = hermitian_zero_pair(n, 0.5)
        assert residual(ring, plus) <= 1e-12
        assert residual(ring, minus) <= 1e-12
        assert null_space_dimension(ring, 1e-10) == 2


@pytest.mark.acceptance(6, "fidelity: numeric = closed form within 1e-12; F(28,8,0.5) = 0.9980450; F(N0=N) = 1")
def test_fidelity_formula():
    for n in (12, 20, 28):
        for n0 in (4, 8, n):
            for k in (0.3, 0.5, 0.9):
                report = fidelity_numeric(analytic_zero_mode(n, k), spatial_modes(n, n0, k))
                assert abs(report.f_numeric - fidelity_closed_form(n, n0, k)) <= 1e-12
                if n0 == n:
                    assert fidelity_closed_form(n, n0, k) == 1.0
    assert abs(fidelity_closed_form(28, 8, 0.5) - 0.9980450) <= 1e-6


@pytest.mark.acceptance(7, "entanglement generation from |1>: f(0), f(tau) >= 0.95, steady state, final profile, runtime <= 60 s")
def test_fig4_reproduction():
    start = time.perf_counter()
    plan = fig4_scenario()
    assert plan.spec.n_sites == 28 and plan.spec.kappa == 0.5
    assert plan.spec.gamma == 0.5**14 + 1e-10 and plan.dt == pytest.approx(0.1)
    trace = propagate(plan)
    elapsed = time.perf_counter() - start
    tau = plan.t_max
    steady = steady_state_check(trace, tau / 10)
    l1 = float(np.abs(trace.final_profile - dirac_profile(analytic_zero_mode(28, 0.5))).sum())
    print(
        f"AC7 f(0)={trace.fidelity[0]:.6f} f(tau)={trace.fidelity[-1]:.6f} "
        f"steady={steady:.2e} L1={l1:.4f} runtime={elapsed:.2f}s"
    )
    assert trace.times[-1] == pytest.approx(8e5)
    assert abs(trace.fidelity[0] - 0.612372) <= 1e-5
    assert trace.fidelity[-1] >= 0.95
    assert steady <= 0.01
    assert l1 <= 0.05
    assert elapsed <= 60.0


@pytest.mark.acceptance(8, "zero-mode profiles: normalized, reflection symmetric, decreasing inward, P(1) grows as kappa falls")
def test_fig2_profiles():
    p1 = []
    for k in (0.3, 0.5, 0.7):
        profile = dirac_profile(analytic_zero_mode(28, k))
        assert abs(profile.sum() - 1) <= 1e-12
        assert np.max(np.abs(profile - profile[::-1])) <= 1e-12
        assert np.all(np.diff(profile[0::2]) < 0)
        assert np.all(np.diff(profile[1::2]) > 0)
        p1.append(profile[0])
    assert p1[0] > p1[1] > p1[2]


@pytest.mark.acceptance(9, "evanescent roots satisfy the determinant condition within 1e-12")
def test_evanescent_condition():
    for k in (0.1, 0.5, 0.9):
        sol = evanescent_k(k)
        for root in (sol.k_plus, sol.k_minus):
            value = abs(k + np.exp(1j * root)) * abs(k + np.exp(-1j * root))
            assert value <= 1e-12


@pytest.mark.acceptance(10, "propagator: Hermitian norm conserved to 1e-10 over t=1e3; Richardson error <= 1e-8")
def test_propagator_correctness():
    rng = np.random.default_rng(2024)
    psi0 = StateVector(rng.normal(size=8) + 1j * rng.normal(size=8)).normalized()
    trace = propagate(EvolutionPlan(ChainSpec.open(8, 0.5), psi0, 1e3, 10_000, record_every=100))
    assert np.max(np.abs(np.exp(trace.log_norm) - 1.0)) <= 1e-10

    worst = 0.0
    for _ in range(5):
        psi0 = StateVector(rng.normal(size=8) + 1j * rng.normal(size=8)).normalized()
        spec = ChainSpec.open(8, 0.5, 0.3)
        coarse = propagate(EvolutionPlan(spec, psi0, 1.0, 10))
        fine = propagate(EvolutionPlan(spec, psi0, 1.0, 20))
        a = coarse.final_state.amplitudes * np.exp(coarse.log_norm[-1])
        b = fine.final_state.amplitudes * np.exp(fine.log_norm[-1])
        worst = max(worst, float(np.linalg.norm(a - b)))
    print(f"AC10 Richardson difference {worst:.2e}")
    assert worst <= 1e-8
