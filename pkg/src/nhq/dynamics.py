"""Time evolution of conditional (no-jump) and full dissipative dynamics.

Three numerically independent routes are provided for the no-jump evolution:
a spectral mode sum, direct integration of the vectorized generator, and (for
comparison) the full recycling master equation.  A reduced two-mode
approximant and single-qubit closed forms round out the toolkit.
"""

from dataclasses import dataclass

import numpy as np

from . import model, numkernel, spectral
from .errors import (DomainError, GridMismatch, InvalidGrid,
                     NormalizationUnderflow)

EXTINCTION_TRACE = 1e-300

STATUS_OK = "ok"
STATUS_EXTINCT = "extinct"


@dataclass(frozen=True)
class Trajectory:
    """Normalized conditional states plus the raw (trace-decaying) norms.

    states[k] is the unit-trace density matrix at times[k]; raw_trace[k] is
    the surviving-population weight Tr[rho_raw(t_k)] before renormalization.
    """

    times: np.ndarray
    states: np.ndarray           # shape (nt, d, d)
    raw_trace: np.ndarray        # shape (nt,)
    route: str
    status: str = STATUS_OK

    def expect(self, op: np.ndarray) -> np.ndarray:
        return np.einsum("tij,ji->t", self.states, np.asarray(op, complex))


def _check_grid(t_grid):
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 2 or t[0] != 0.0 or np.any(np.diff(t) <= 0):
        raise InvalidGrid("time grid must start at 0 and strictly increase")
    return t


def _normalize_series(raw, times, route, log_scale=None):
    """Normalize a raw series; log_scale[k] restores any gauge rescaling.

    The normalized states only depend on raw[k] up to a positive factor, so
    integrating in a rescaled gauge and recording log_scale keeps the
    conditional states accurate long after the physical trace underflows.
    """
    tr = np.einsum("tii->t", raw).real
    states = np.empty_like(raw)
    status = STATUS_OK
    last = len(times)
    for k in range(len(times)):
        if tr[k] < EXTINCTION_TRACE:
            status = STATUS_EXTINCT
            last = k
            break
        rho = raw[k] / tr[k]
        states[k] = 0.5 * (rho + rho.conj().T)
    if status == STATUS_EXTINCT:
        for k in range(last, len(times)):
            states[k] = states[last - 1] if last > 0 else raw[0]
            tr[k] = 0.0
    if log_scale is not None:
        with np.errstate(over="ignore", under="ignore"):
            tr = tr * np.exp(np.asarray(log_scale, dtype=float))
    return Trajectory(times=times, states=states, raw_trace=tr,
                      route=route, status=status)


def evolve_modes(spec: model.SystemSpec, rho0: np.ndarray, t_grid) -> Trajectory:
    """Spectral-sum conditional evolution.

    rho_raw(t) = R [(L^dag rho0 L) o E(t)] R^dag with E_mn = exp(-i (lam_m -
    conj(lam_n)) t) and L = inv(R)^dag, which is exactly
    exp(-i H t) rho0 exp(+i H^dag t) whenever H is diagonalizable.
    """
    t = _check_grid(t_grid)
    model.validate_density_matrix(rho0)
    eig = numkernel.biorthonormalize(numkernel.eig_general(model.build_h_eff(spec)))
    r, left, lam = eig.right, eig.left, eig.eigenvalues
    core = left.conj().T @ np.asarray(rho0, complex) @ left
    # pull out the slowest pair decay e^{shift t} so the dominant mode term
    # stays O(1); otherwise every E entry underflows once gamma_slow * t
    # exceeds ~700 and the extinction fallback kicks in prematurely
    shift = 2.0 * lam.imag.max()
    phase = lam[:, None] - lam[None, :].conj() - 1j * shift
    raw = np.empty((len(t), eig.dim, eig.dim), dtype=complex)
    for k, tk in enumerate(t):
        raw[k] = r @ (core * np.exp(-1j * phase * tk)) @ r.conj().T
    return _normalize_series(raw, t, route="modes", log_scale=shift * t)


def evolve_nojump_ode(spec: model.SystemSpec, rho0: np.ndarray, t_grid,
                      rel_tol: float = 1e-10, abs_tol: float = 1e-12) -> Trajectory:
    """Conditional evolution by direct integration of d rho = -i(H rho - rho H^dag)."""
    t = _check_grid(t_grid)
    model.validate_density_matrix(rho0)
    gen = model.build_liouvillian(spec, include_jumps=False)
    # shift by the spectral abscissa (slowest mode-pair decay rate) so the
    # integrated solution stays O(1) and the normalized state stays accurate
    # long after the physical trace underflows the absolute tolerance
    shift = 2.0 * np.linalg.eigvals(model.build_h_eff(spec)).imag.max()
    gen = gen - shift * np.eye(gen.shape[0])
    y = numkernel.integrate_linear_ode(gen, model.vectorize(rho0), t,
                                       rel_tol=rel_tol, abs_tol=abs_tol)
    d = rho0.shape[0]
    raw = y.reshape(len(t), d, d)
    return _normalize_series(raw, t, route="ode", log_scale=shift * t)


def evolve_full_lindblad(spec: model.SystemSpec, rho0: np.ndarray, t_grid,
                         rel_tol: float = 1e-10, abs_tol: float = 1e-12) -> Trajectory:
    """Full master equation including the in-manifold recycling channel.

    The decay channel out of the manifold is still only monitored (it removes
    population), so the trace decays and raw_trace reports the survival
    weight, exactly as in the conditional routes.
    """
    t = _check_grid(t_grid)
    model.validate_density_matrix(rho0)
    gen = model.build_liouvillian(spec, include_jumps=True)
    shift = float(np.linalg.eigvals(gen).real.max())
    gen = gen - shift * np.eye(gen.shape[0])
    y = numkernel.integrate_linear_ode(gen, model.vectorize(rho0), t,
                                       rel_tol=rel_tol, abs_tol=abs_tol)
    d = rho0.shape[0]
    raw = y.reshape(len(t), d, d)
    return _normalize_series(raw, t, route="lindblad", log_scale=shift * t)


def two_mode_state(spec: model.SystemSpec, rho0: np.ndarray, t_grid) -> Trajectory:
    """Late-time two-mode reduction (two qubits).

    Keeps only the slowest symmetric mode and the antisymmetric mode:
    rho(t) ~ [c11 P1 + c44 exp(-2 (Im lam4 - Im lam1) t) P4] / norm, with
    P_n the unit-trace projector parts |psi_n^R><psi_n^R| (Hermitized).
    """
    t = _check_grid(t_grid)
    if spec.n_qubits != 2:
        raise DomainError("two-mode reduction is defined for two qubits")
    ms = spectral.decompose(spec)
    i1 = ms.index_slowest_symmetric()
    i4 = ms.index_antisymmetric()
    ov = spectral.mode_overlaps(ms, rho0)
    c11 = ov.c[i1, i1].real
    c44 = ov.c[i4, i4].real
    lam = ms.eigenvalues
    eigb = numkernel.biorthonormalize(ms.eig)

    def mode_proj(i):
        v = eigb.right[:, i]
        pmat = np.outer(v, v.conj())
        return pmat / np.trace(pmat).real

    p1, p4 = mode_proj(i1), mode_proj(i4)
    gap = lam[i1].imag - lam[i4].imag  # > 0: antisymmetric decays faster
    raw = np.empty((len(t), 4, 4), dtype=complex)
    for k, tk in enumerate(t):
        w4 = c44 * np.exp(-2.0 * gap * tk)
        raw[k] = c11 * p1 + w4 * p4
    return _normalize_series(raw, t, route="twomode")


def epsilon_ratio(spec: model.SystemSpec, rho0: np.ndarray, t) -> np.ndarray:
    """Two-mode weight ratio epsilon(t) = (c11/c44) exp(-2 gap t).

    The two-mode purity is (1 + eps^2)/(1 + eps)^2, invariant under
    eps -> 1/eps.
    """
    ms = spectral.decompose(spec)
    i1 = ms.index_slowest_symmetric()
    i4 = ms.index_antisymmetric()
    ov = spectral.mode_overlaps(ms, rho0)
    c11 = ov.c[i1, i1].real
    c44 = ov.c[i4, i4].real
    if c44 <= 0:
        raise DomainError("antisymmetric weight vanishes; ratio undefined")
    gap = spectral.dissipative_gap(ms)
    return (c11 / c44) * np.exp(-2.0 * gap * np.asarray(t, dtype=float))


# ----------------------------------------------------------------------
# single-qubit closed forms (Delta = 0, gamma_f = 0)
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BlochTrajectory:
    times: np.ndarray
    y: np.ndarray     # <sigma_y> = -2 Im rho_fe
    z: np.ndarray     # <sigma_f> - <sigma_e> population imbalance
    norm: np.ndarray  # survival normalization N_p(t)
    y_ss: float
    z_ss: float

    def states(self) -> np.ndarray:
        out = np.empty((len(self.times), 2, 2), dtype=complex)
        out[:, 0, 0] = 0.5 * (1.0 + self.z)
        out[:, 1, 1] = 0.5 * (1.0 - self.z)
        out[:, 0, 1] = -0.5j * self.y
        out[:, 1, 0] = 0.5j * self.y
        return out


def bloch_closed_form(spec: model.SystemSpec, p: float, t_grid) -> BlochTrajectory:
    """Exact single-qubit conditional Bloch components for rho0 = diag(p, 1-p).

    Valid below and at the exceptional point (Omega <= gamma_e/4) with
    Delta = gamma_f = 0.  Basis: index 0 = |f>, index 1 = |e>; z = +1 is the
    pure |f> dark state reached at Omega = 0.
    """
    if spec.n_qubits != 1 or spec.delta != 0 or spec.gamma_f != 0:
        raise DomainError("closed form requires one qubit with Delta=gamma_f=0")
    if not 0.0 <= p <= 1.0:
        raise DomainError("p must lie in [0, 1]")
    g, om = spec.gamma_e, spec.omega
    if om > g / 4.0 + 1e-12:
        raise DomainError("closed form requires Omega <= gamma_e/4")
    t = _check_grid(t_grid)
    dp = 2.0 * p - 1.0

    if abs(om - g / 4.0) < 1e-12 * max(g, 1.0):
        # exceptional point: kappa -> 0 polynomial forms
        norm = 1.0 + 0.5 * dp * g * t + 0.125 * (g * t) ** 2
        y = -(0.5 * dp * g * t + 0.125 * g ** 2 * t ** 2) / norm
        z = (dp + 0.5 * g * t) / norm
        return BlochTrajectory(times=t, y=y, z=z, norm=norm, y_ss=-1.0, z_ss=0.0)

    kappa = np.sqrt(g ** 2 / 4.0 - 4.0 * om ** 2)
    ch, sh = np.cosh(kappa * t), np.sinh(kappa * t)
    norm = ((1.0 + 4.0 * om ** 2 / kappa ** 2) * ch - 4.0 * om ** 2 / kappa ** 2
            + dp * g / (2.0 * kappa) * sh)
    y = -(dp * 2.0 * om / kappa * sh + om * g / kappa ** 2 * (ch - 1.0)) / norm
    z = (dp * ch + g / (2.0 * kappa) * sh) / norm
    beta = g / 2.0 - kappa
    y_ss = -4.0 * om * beta / (4.0 * om ** 2 + beta ** 2) if om > 0 else 0.0
    z_ss = (4.0 * om ** 2 - beta ** 2) / (4.0 * om ** 2 + beta ** 2) if om > 0 else 1.0
    return BlochTrajectory(times=t, y=y, z=z, norm=norm,
                           y_ss=float(y_ss), z_ss=float(z_ss))


def hs_distance_sq_closed_form_ep(gamma_e: float, p: float, t) -> np.ndarray:
    """Closed-form squared distance to the EP steady state (Omega = gamma_e/4).

    D^2(t) = 1 - (gamma t / 2)((2p-1) + gamma t / 4)/N - 2 p (1-p)/N^2 with
    N the EP survival normalization.
    """
    t = np.asarray(t, dtype=float)
    dp = 2.0 * p - 1.0
    gt = gamma_e * t
    norm = 1.0 + 0.5 * dp * gt + 0.125 * gt ** 2
    return (1.0 - 0.5 * gt * (dp + 0.25 * gt) / norm
            - 2.0 * p * (1.0 - p) / norm ** 2)
