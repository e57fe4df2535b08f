import numpy as np
import pytest

from scipy.linalg import expm

from nhq import dynamics, model, observables, spectral
from nhq.errors import DomainError, InvalidGrid


def conditional_reference(spec, rho0, t):
    h = model.build_h_eff(spec)
    out = []
    for tk in t:
        u = expm(-1j * h * tk)
        raw = u @ rho0 @ u.conj().T
        out.append(raw / np.trace(raw).real)
    return np.array(out)


def test_mode_route_matches_matrix_exponential():
    spec = model.SystemSpec(2, 3.0, 6.0, eta=0.1)
    rho0 = model.make_initial_state("diagonal_product", 2, p=0.7)
    t = np.linspace(0.0, 3.0, 31)
    traj = dynamics.evolve_modes(spec, rho0, t)
    ref = conditional_reference(spec, rho0, t)
    assert np.abs(traj.states - ref).max() < 1e-12


def test_ode_route_matches_mode_route_long_horizon():
    spec = model.SystemSpec(2, 3.0, 6.0, eta=0.1)
    rho0 = model.make_initial_state("diagonal_product", 2, p=0.7)
    t = np.linspace(0.0, 100.0 / 6.0, 101)
    a = dynamics.evolve_modes(spec, rho0, t)
    b = dynamics.evolve_nojump_ode(spec, rho0, t)
    hs = [abs(observables.hs_distance_sq(x, y)) ** 0.5
          for x, y in zip(a.states, b.states)]
    assert max(hs) < 1e-7


def test_full_route_reduces_to_nojump_without_recycling():
    # gamma_f = 0 removes the only in-manifold jump channel
    spec = model.SystemSpec(2, 2.0, 6.0, eta=0.4)
    rho0 = model.make_initial_state("maximally_mixed", 2)
    t = np.linspace(0.0, 2.0, 21)
    a = dynamics.evolve_nojump_ode(spec, rho0, t)
    b = dynamics.evolve_full_lindblad(spec, rho0, t)
    assert np.abs(a.states - b.states).max() < 1e-8


def test_full_route_recycling_changes_dynamics():
    spec = model.SystemSpec(1, 1.0, 6.0, gamma_f=1.0)
    rho0 = model.make_initial_state("diagonal_product", 1, p=1.0)
    t = np.linspace(0.0, 1.0, 11)
    a = dynamics.evolve_nojump_ode(spec, rho0, t)
    b = dynamics.evolve_full_lindblad(spec, rho0, t)
    assert np.abs(a.states - b.states).max() > 1e-3


def test_trace_monotone_and_states_normalized():
    spec = model.SystemSpec(2, 1.0, 6.0, eta=0.5)
    rho0 = model.make_initial_state("maximally_mixed", 2)
    t = np.linspace(0.0, 4.0, 41)
    traj = dynamics.evolve_modes(spec, rho0, t)
    assert np.all(np.diff(traj.raw_trace) <= 1e-12)
    tr = np.einsum("tii->t", traj.states).real
    assert np.abs(tr - 1.0).max() < 1e-12


def test_bad_grid_and_state_rejected():
    spec = model.SystemSpec(1, 1.0, 6.0)
    rho0 = model.make_initial_state("diagonal_product", 1, p=0.5)
    with pytest.raises(InvalidGrid):
        dynamics.evolve_modes(spec, rho0, [1.0, 2.0])
    with pytest.raises(Exception):
        dynamics.evolve_modes(spec, np.diag([0.7, 0.7]), [0.0, 1.0])


def test_bloch_closed_form_below_ep():
    g = 6.0
    t = np.linspace(0.0, 5.0, 201)
    for om in (0.5, 1.0, 1.4):
        for p in (0.2, 0.5, 0.8):
            spec = model.SystemSpec(1, om, g)
            bl = dynamics.bloch_closed_form(spec, p, t)
            rho0 = model.make_initial_state("diagonal_product", 1, p=p)
            ode = dynamics.evolve_nojump_ode(spec, rho0, t)
            y = -2.0 * ode.states[:, 0, 1].imag
            z = (ode.states[:, 0, 0] - ode.states[:, 1, 1]).real
            assert np.abs(bl.y - y).max() < 1e-8
            assert np.abs(bl.z - z).max() < 1e-8
            # closed-form states agree entrywise as well
            assert np.abs(bl.states() - ode.states).max() < 1e-8


def test_bloch_closed_form_at_ep():
    g = 6.0
    spec = model.SystemSpec(1, g / 4.0, g)
    t = np.linspace(0.0, 10.0, 401)
    for p in (0.1, 0.5, 0.9):
        bl = dynamics.bloch_closed_form(spec, p, t)
        rho0 = model.make_initial_state("diagonal_product", 1, p=p)
        ode = dynamics.evolve_nojump_ode(spec, rho0, t)
        y = -2.0 * ode.states[:, 0, 1].imag
        z = (ode.states[:, 0, 0] - ode.states[:, 1, 1]).real
        assert np.abs(bl.y - y).max() < 1e-7
        assert np.abs(bl.z - z).max() < 1e-7
    assert bl.y_ss == -1.0 and bl.z_ss == 0.0


def test_bloch_steady_state_identities():
    g = 6.0
    for om in (0.3, 0.9, 1.45):
        spec = model.SystemSpec(1, om, g)
        t = np.linspace(0.0, 60.0, 61)
        bl = dynamics.bloch_closed_form(spec, 0.3, t)
        kappa = np.sqrt(g ** 2 / 4 - 4 * om ** 2)
        beta = g / 2 - kappa
        assert np.isclose(4 * om ** 2 + beta ** 2, g * beta)
        assert np.isclose(bl.z_ss, 2 * kappa / g)
        assert np.isclose(bl.y[-1], bl.y_ss, atol=1e-9)
        assert np.isclose(bl.z[-1], bl.z_ss, atol=1e-9)
        assert np.isclose(bl.y_ss ** 2 + bl.z_ss ** 2, 1.0)  # pure steady state


def test_hs_closed_form_at_ep():
    g, p = 6.0, 0.9
    spec = model.SystemSpec(1, g / 4.0, g)
    t = np.linspace(0.0, 8.0, 161)
    rho0 = model.make_initial_state("diagonal_product", 1, p=p)
    ode = dynamics.evolve_nojump_ode(spec, rho0, t)
    rho_ss = 0.5 * np.array([[1.0, 1j], [-1j, 1.0]])
    num = np.array([observables.hs_distance_sq(s, rho_ss) for s in ode.states])
    cf = dynamics.hs_distance_sq_closed_form_ep(g, p, t)
    assert np.abs(num - cf).max() < 1e-7


def test_bloch_domain_checks():
    with pytest.raises(DomainError):
        dynamics.bloch_closed_form(model.SystemSpec(1, 3.0, 6.0), 0.5,
                                   [0.0, 1.0])
    with pytest.raises(DomainError):
        dynamics.bloch_closed_form(model.SystemSpec(2, 1.0, 6.0), 0.5,
                                   [0.0, 1.0])


def test_two_mode_reduction_converges_to_full():
    """The reduction keeps only the two subradiant modes; its distance to the
    exact conditional state shrinks as the superradiant pair dies out and
    meets 0.01 only at late times (the superradiant pair decays just
    0.6/us faster than the subradiant modes at these parameters)."""
    spec = model.SystemSpec(2, 3.0, 6.0, eta=0.1)
    rho0 = model.make_initial_state("diagonal_product", 2, p=0.7)
    t = np.linspace(0.0, 20.0, 201)
    full = dynamics.evolve_modes(spec, rho0, t)
    red = dynamics.two_mode_state(spec, rho0, t)
    hs = np.array([abs(observables.hs_distance_sq(a, b)) ** 0.5
                   for a, b in zip(full.states, red.states)])
    # envelope decays: compare late-window maxima
    assert hs[t >= 15.0].max() < 0.01
    assert hs[(t >= 10) & (t < 15)].max() < hs[(t >= 5) & (t < 10)].max()
    assert hs[(t >= 5) & (t < 10)].max() < hs[(t >= 0) & (t < 5)].max()


def test_two_mode_purity_formula():
    spec = model.SystemSpec(2, 3.0, 6.0, eta=0.1)
    rho0 = model.make_initial_state("diagonal_product", 2, p=0.7)
    t = np.linspace(0.0, 10.0, 101)
    red = dynamics.two_mode_state(spec, rho0, t)
    eps = dynamics.epsilon_ratio(spec, rho0, t)
    pi_formula = (1.0 + eps ** 2) / (1.0 + eps) ** 2
    pi_num = np.array([observables.purity(s) for s in red.states])
    assert np.abs(pi_formula - pi_num).max() < 1e-10


def test_epsilon_ratio_unity_at_heating_time():
    spec = model.SystemSpec(2, 3.0, 6.0, eta=0.1)
    rho0 = model.make_initial_state("diagonal_product", 2, p=0.7)
    th = observables.heating_time(spec, rho0)
    assert abs(dynamics.epsilon_ratio(spec, rho0, th) - 1.0) < 1e-10
