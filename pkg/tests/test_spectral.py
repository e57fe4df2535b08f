import numpy as np
import pytest

from nhq import model, spectral
from nhq.errors import DomainError


def greedy_match_error(a, b):
    b = list(b)
    err = 0.0
    for lam in a:
        j = int(np.argmin([abs(lam - x) for x in b]))
        err = max(err, abs(lam - b.pop(j)))
    return err


def test_undriven_dicke_spectrum():
    g, eta = 6.0, 0.3
    ms = spectral.decompose(model.SystemSpec(2, 0.0, g, eta=eta))
    expect = np.array([0.0, -0.5j * (1 - eta) * g, -0.5j * (1 + eta) * g,
                       -1j * g])
    assert greedy_match_error(ms.eigenvalues, expect) < 1e-12


def test_sector_labels_by_overlap():
    ms = spectral.decompose(model.SystemSpec(2, 3.0, 6.0, eta=0.1))
    assert ms.sector_labels.count("antisymmetric") == 1
    assert ms.sector_labels.count("symmetric") == 3
    lam4 = ms.eigenvalues[ms.index_antisymmetric()]
    assert np.isclose(lam4, spectral.antisymmetric_eig(ms.spec), atol=1e-12)


def test_antisymmetric_eig_with_coupling():
    spec = model.SystemSpec(2, 1.0, 6.0, eta=0.2, delta=0.5, j_coupling=0.8)
    ms = spectral.decompose(spec)
    lam4 = spectral.antisymmetric_eig(spec)
    assert np.isclose(lam4, 0.5 - 0.8 - 0.5j * 0.8 * 6.0)
    assert greedy_match_error([lam4], ms.eigenvalues) < 1e-10


def test_cardano_against_block_eigensolver():
    rng = np.random.default_rng(17)
    for _ in range(100):
        spec = model.SystemSpec(2, rng.uniform(0, 4), 6.0,
                                eta=rng.uniform(0, 1))
        if abs(spectral.cubic_discriminant(spec)) <= 1e-6 * 6.0 ** 6:
            continue
        cf = spectral.cardano_symmetric_eigs(spec)
        num = np.linalg.eigvals(spectral.symmetric_block(spec))
        assert greedy_match_error(cf, num) < 1e-9 * 6.0


def test_cardano_domain():
    with pytest.raises(DomainError):
        spectral.cardano_symmetric_eigs(model.SystemSpec(2, 1.0, 6.0,
                                                         j_coupling=0.5))


def test_undriven_closed_spectrum_with_coupling():
    # at Omega=0 the coupled symmetric/antisymmetric pair sits at
    # +/-J - i(1+/-eta) gamma_e/2
    g, eta, J = 6.0, 0.25, 0.7
    ms = spectral.decompose(model.SystemSpec(2, 0.0, g, eta=eta, j_coupling=J))
    expect = [0.0, -1j * g, J - 0.5j * (1 + eta) * g,
              -J - 0.5j * (1 - eta) * g]
    assert greedy_match_error(expect, ms.eigenvalues) < 1e-10


def test_ep_drive_zeroes_discriminant():
    for eta in (0.05, 0.1, 0.5, 0.9):
        om = spectral.ep_drive(eta, 6.0)
        d = spectral.cubic_discriminant(model.SystemSpec(2, om, 6.0, eta=eta))
        assert abs(d) < 1e-9 * 6.0 ** 6
    assert spectral.ep_drive(0.0, 6.0) == 1.5


def test_ep_drive_weak_collective_scaling():
    # cube-root splitting of the third-order exceptional point
    g = 6.0
    for eta in (1e-4, 1e-3):
        approx = g / 4.0 * (1.0 - 1.5 * (eta / 2.0) ** (2.0 / 3.0))
        assert abs(spectral.ep_drive(eta, g) - approx) < 5e-3 * g / 4.0


def test_critical_drive_values():
    assert np.isclose(spectral.critical_drive(0.0, 6.0), 6.0 / (2 * np.sqrt(2)))
    assert np.isclose(spectral.critical_drive(0.5, 6.0), 1.8371173070873834)
    assert spectral.critical_drive(1.0, 6.0) == 0.0


def test_dissipative_gap_closes_at_critical_drive():
    g, eta = 6.0, 0.3
    om_c = spectral.critical_drive(eta, g)
    # at the crossing the degenerate eigenvectors mix, so sector labels from
    # the numeric eigensolver are unreliable there; use the closed forms
    spec_c = model.SystemSpec(2, om_c, g, eta=eta)
    lam4 = spectral.antisymmetric_eig(spec_c)
    sym = spectral.cardano_symmetric_eigs(spec_c)
    assert np.min(np.abs(sym - lam4)) < 1e-10
    gap_above = spectral.dissipative_gap(
        spectral.decompose(model.SystemSpec(2, om_c + 0.5, g, eta=eta)))
    assert gap_above > 1e-3


def test_weak_drive_gap_approximation():
    # 4(Omega^2 - Omega_c^2)/(gamma_e(1+eta)) is exact at the crossing and a
    # good slope only when Omega_c << gamma_e, i.e. eta near 1
    g, eta = 6.0, 0.9
    om_c = spectral.critical_drive(eta, g)
    om = om_c + 0.05
    gap = spectral.dissipative_gap(
        spectral.decompose(model.SystemSpec(2, om, g, eta=eta)))
    approx = 4.0 * (om ** 2 - om_c ** 2) / (g * (1.0 + eta))
    assert abs(gap - approx) / gap < 0.02


def test_find_degeneracies_classification():
    for eta in (0.1, 0.5):
        reps = spectral.find_degeneracies(
            model.SystemSpec(2, 0.0, 6.0, eta=eta), (0.01, 4.0),
            resolution=300)
        kinds = {r.kind.value: r for r in reps}
        assert "exceptional_point" in kinds and "diabolic_crossing" in kinds
        ep = kinds["exceptional_point"]
        assert abs(ep.omega_value - spectral.ep_drive(eta, 6.0)) < 1e-6 * 6.0
        assert ep.eigenvector_overlap > 0.99
        dc = kinds["diabolic_crossing"]
        assert abs(dc.omega_value
                   - spectral.critical_drive(eta, 6.0)) < 1e-6 * 6.0
        assert dc.eigenvector_overlap < 0.5


def test_mode_overlaps_closed_form_and_gauge():
    rng = np.random.default_rng(23)
    for _ in range(10):
        p = rng.uniform(0.05, 0.95)
        spec = model.SystemSpec(2, rng.uniform(2.2, 4.0), 6.0,
                                eta=rng.uniform(0.05, 0.95))
        ms = spectral.decompose(spec)
        rho0 = model.make_initial_state("diagonal_product", 2, p=p)
        c = spectral.mode_overlaps(ms, rho0).c
        cf = spectral.overlap_closed_form(spec, p)
        assert np.abs(c - cf).max() < 1e-10
        i4 = ms.index_antisymmetric()
        assert abs(c[i4, i4] - p * (1 - p)) < 1e-12
        # diagonal weights are gauge-invariant and sum to the trace
        assert abs(np.trace(c) - 1.0) < 1e-10


def test_mode_overlaps_reproduce_state():
    # sum_mn c_mn |psi_m^R><psi_n^L| (matching gauges) rebuilds rho0
    spec = model.SystemSpec(2, 3.0, 6.0, eta=0.1)
    ms = spectral.decompose(spec)
    rho0 = model.make_initial_state("diagonal_product", 2, p=0.7)
    r, left = spectral._unit_s_gauge(ms)
    c = spectral.mode_overlaps(ms, rho0).c
    rebuilt = sum(c[m, n] * np.outer(r[:, m], left[:, n].conj())
                  for m in range(4) for n in range(4))
    assert np.abs(rebuilt - rho0).max() < 1e-10
