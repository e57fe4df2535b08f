import numpy as np
import pytest

from nhq import dynamics, model, observables, spectral
from nhq.errors import DomainError


def random_density(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def test_purity_entropy_basics():
    assert np.isclose(observables.purity(np.eye(4) / 4), 0.25)
    assert np.isclose(observables.linear_entropy(np.diag([1.0, 0, 0, 0])), 0.0)
    assert np.isclose(
        observables.normalized_linear_entropy(np.eye(8) / 8), 1.0)


def test_hs_distance_identity():
    rng = np.random.default_rng(31)
    rho, sigma = random_density(rng, 4), random_density(rng, 4)
    direct = np.trace((rho - sigma) @ (rho - sigma)).real
    assert np.isclose(observables.hs_distance_sq(rho, sigma), direct)
    assert observables.hs_distance_sq(rho, rho) < 1e-14


def test_l1_coherence():
    rho = np.array([[0.5, 0.2 + 0.1j], [0.2 - 0.1j, 0.5]])
    assert np.isclose(observables.l1_coherence(rho),
                      2 * abs(0.2 + 0.1j))
    # single qubit: equals 2|rho_fe| = |<sigma_y>| for real-drive dynamics
    assert observables.l1_coherence(np.eye(2) / 2) == 0.0


def brute_force_concurrence(rho):
    sy = np.array([[0, -1j], [1j, 0]])
    rt = np.kron(sy, sy) @ rho.conj() @ np.kron(sy, sy)
    from scipy.linalg import sqrtm
    m = sqrtm(sqrtm(rho) @ rt @ sqrtm(rho))
    a = np.sort(np.real(np.linalg.eigvals(m)))[::-1]
    return max(0.0, a[0] - a[1] - a[2] - a[3])


def test_concurrence_known_states():
    bell = np.zeros((4, 4), dtype=complex)
    bell[1, 1] = bell[2, 2] = 0.5
    bell[1, 2] = bell[2, 1] = -0.5
    assert np.isclose(observables.concurrence(bell), 1.0)
    assert observables.concurrence(np.eye(4) / 4) == 0.0
    product = np.diag([0.25, 0.25, 0.25, 0.25]).astype(complex)
    assert observables.concurrence(product) == 0.0


def test_concurrence_against_sqrtm_definition():
    rng = np.random.default_rng(41)
    for _ in range(20):
        rho = random_density(rng, 4)
        assert np.isclose(observables.concurrence(rho),
                          brute_force_concurrence(rho), atol=1e-8)


def test_concurrence_local_unitary_invariance():
    rng = np.random.default_rng(43)
    rho = random_density(rng, 4)
    from scipy.linalg import expm
    for _ in range(5):
        h1 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        h2 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        u = np.kron(expm(1j * (h1 + h1.conj().T)), expm(1j * (h2 + h2.conj().T)))
        assert np.isclose(observables.concurrence(u @ rho @ u.conj().T),
                          observables.concurrence(rho), atol=1e-9)


def test_x_state_concurrence_matches_general():
    rng = np.random.default_rng(47)
    for _ in range(20):
        d = rng.uniform(0.1, 1.0, size=4)
        d = d / d.sum()
        r14 = rng.uniform(0, np.sqrt(d[0] * d[3])) * np.exp(2j * np.pi * rng.uniform())
        r23 = rng.uniform(0, np.sqrt(d[1] * d[2])) * np.exp(2j * np.pi * rng.uniform())
        rho = np.diag(d).astype(complex)
        rho[0, 3], rho[3, 0] = r14, np.conj(r14)
        rho[1, 2], rho[2, 1] = r23, np.conj(r23)
        assert np.isclose(observables.x_state_concurrence(rho),
                          observables.concurrence(rho), atol=1e-9)
    with pytest.raises(DomainError):
        full = random_density(rng, 4)
        observables.x_state_concurrence(full)


def test_entropy_peak_time_undriven():
    g, p = 6.0, 0.2
    tc = observables.entropy_peak_time(g, p)
    assert np.isclose(tc, np.log(1 / p - 1) / g)
    spec = model.SystemSpec(1, 0.0, g)
    rho0 = model.make_initial_state("diagonal_product", 1, p=p)
    t = np.linspace(0.0, 4 * tc, 4001)
    traj = dynamics.evolve_nojump_ode(spec, rho0, t)
    s = np.array([observables.linear_entropy(x) for x in traj.states])
    k = int(np.argmax(s))
    assert abs(t[k] - tc) < 2e-3
    assert abs(s[k] - 0.5) < 1e-6
    with pytest.raises(DomainError):
        observables.entropy_peak_time(g, 0.7)


def test_heating_time_is_two_mode_entropy_argmax():
    spec = model.SystemSpec(2, 3.0, 6.0, eta=0.1)
    for p in (0.6, 0.7, 0.8):
        rho0 = model.make_initial_state("diagonal_product", 2, p=p)
        th = observables.heating_time(spec, rho0)
        t = np.linspace(0.0, 8.0, 8001)
        red = dynamics.two_mode_state(spec, rho0, t)
        s = np.array([observables.linear_entropy(x) for x in red.states])
        assert abs(t[int(np.argmax(s))] - th) < 5e-3


def test_heating_time_weak_drive_limit():
    # the perturbative gap is accurate only when Omega_c << gamma_e (eta -> 1)
    g, eta = 6.0, 0.9
    om = spectral.critical_drive(eta, g) + 0.05
    spec = model.SystemSpec(2, om, g, eta=eta)
    rho0 = model.make_initial_state("diagonal_product", 2, p=0.7)
    exact = observables.heating_time(spec, rho0)
    approx = observables.heating_time_weak_drive(spec, 0.7)
    assert abs(approx - exact) / exact < 0.02


def test_crossing_time_formula_on_two_mode_route():
    spec = model.SystemSpec(2, 3.0, 6.0, eta=0.1)
    t = np.linspace(0.0, 8.0, 8001)
    ra = model.make_initial_state("diagonal_product", 2, p=0.7)
    rb = model.make_initial_state("diagonal_product", 2, p=0.5)
    tx = observables.crossing_time_formula(spec, ra, rb)
    sa = np.array([observables.linear_entropy(x) for x in
                   dynamics.two_mode_state(spec, ra, t).states])
    sb = np.array([observables.linear_entropy(x) for x in
                   dynamics.two_mode_state(spec, rb, t).states])
    events = observables.detect_crossing(t, sa, sb)
    assert any(abs(e - tx) / tx < 0.01 for e in events)


def test_detect_crossing_refinement_and_tangency():
    t = np.linspace(0.0, 1.0, 11)
    a = t - 0.4567
    b = np.zeros_like(t)
    events = observables.detect_crossing(t, a, b)
    assert len(events) == 1 and abs(events[0] - 0.4567) < 1e-4
    # tangency (both flanks below 1e-9) is not a crossing
    c = np.full_like(t, 1e-12)
    c[5] = -1e-12
    assert observables.detect_crossing(t, c, b) == []


def test_mode_weight_series_conventions():
    spec = model.SystemSpec(2, 3.0, 6.0, eta=0.1)
    rho0 = model.make_initial_state("diagonal_product", 2, p=0.9)
    t = np.linspace(0.0, 30.0, 61)
    w_diag = observables.mode_weight_series(spec, rho0, t, "diagonal")
    w_all = observables.mode_weight_series(spec, rho0, t, "all")
    assert np.allclose(w_diag.sum(axis=1), 1.0)
    assert np.all(w_all <= w_diag + 1e-12)
    # late times: the slowest mode dominates the diagonal weights
    ms = spectral.decompose(spec)
    slow = int(np.argmax(ms.eigenvalues.imag))
    assert w_diag[-1, slow] > 0.99
    with pytest.raises(DomainError):
        observables.mode_weight_series(spec, rho0, t, "bogus")
