"""State functionals, entanglement measures, and timing estimators."""

from dataclasses import dataclass

import numpy as np

from . import spectral
from .errors import DomainError, GridMismatch, ZeroOverlap


def purity(rho: np.ndarray) -> float:
    rho = np.asarray(rho)
    return float(np.einsum("ij,ji->", rho, rho).real)


def linear_entropy(rho: np.ndarray) -> float:
    return 1.0 - purity(rho)


def normalized_linear_entropy(rho: np.ndarray) -> float:
    """S_L / (1 - 1/d): equals 1 on the maximally mixed state in any dimension."""
    d = rho.shape[0]
    return linear_entropy(rho) / (1.0 - 1.0 / d)


def hs_distance_sq(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Squared Hilbert-Schmidt distance Tr[(rho - sigma)^2]."""
    if rho.shape != sigma.shape:
        raise DomainError("states must share a dimension")
    return float(purity(rho) + purity(sigma)
                 - 2.0 * np.einsum("ij,ji->", rho, sigma).real)


def l1_coherence(rho: np.ndarray) -> float:
    """Sum of off-diagonal absolute values (basis-dependent coherence)."""
    rho = np.asarray(rho)
    return float(np.abs(rho).sum() - np.abs(np.diag(rho)).sum())


_SY_SY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DomainError("concurrence is defined for two qubits")
    rho_tilde = _SY_SY @ rho.conj() @ _SY_SY
    w = np.linalg.eigvals(rho @ rho_tilde)
    lam = np.sqrt(np.clip(w.real, 0.0, None))
    lam.sort()
    return float(max(0.0, lam[-1] - lam[:-1].sum()))


def x_state_concurrence(rho: np.ndarray) -> float:
    """Concurrence of an X-shaped two-qubit state (closed form)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DomainError("X-state concurrence is defined for two qubits")
    off = [rho[0, 2], rho[0, 1], rho[1, 3], rho[2, 3]]
    if max(abs(v) for v in off) > 1e-10:
        raise DomainError("state is not of X form")
    c1 = 2.0 * (abs(rho[0, 3]) - np.sqrt(max((rho[1, 1] * rho[2, 2]).real, 0.0)))
    c2 = 2.0 * (abs(rho[1, 2]) - np.sqrt(max((rho[0, 0] * rho[3, 3]).real, 0.0)))
    return float(max(0.0, c1, c2))


# ----------------------------------------------------------------------
# timing estimators
# ----------------------------------------------------------------------

def entropy_peak_time(gamma_e: float, p: float) -> float:
    """Undriven single qubit: time of the conditional entropy maximum.

    t_c = ln(1/p - 1)/gamma_e, defined for 0 < p < 1/2 (S_L(t_c) = 1/2).
    """
    if not 0.0 < p < 0.5:
        raise DomainError("peak exists only for 0 < p < 1/2")
    return float(np.log(1.0 / p - 1.0) / gamma_e)


def heating_time(spec, rho0) -> float:
    """Two-mode equal-weight time t_h = ln(c11/c44) / (2 [Im lam4 - Im lam1]).

    This is when the two surviving mode weights cross and the reduced state
    is maximally mixed on the two-mode subspace.  Requires c11 > c44 and a
    faster-decaying symmetric mode (above the subradiant crossing).
    """
    ms = spectral.decompose(spec)
    i1 = ms.index_slowest_symmetric()
    i4 = ms.index_antisymmetric()
    ov = spectral.mode_overlaps(ms, rho0)
    c11 = ov.c[i1, i1].real
    c44 = ov.c[i4, i4].real
    if c44 <= 0.0:
        raise ZeroOverlap("initial state has no antisymmetric weight")
    gap = ms.eigenvalues[i4].imag - ms.eigenvalues[i1].imag
    if gap <= 0.0 or c11 <= c44:
        raise DomainError("no finite heating time in this configuration")
    return float(np.log(c11 / c44) / (2.0 * gap))


def heating_time_weak_drive(spec, p: float) -> float:
    """Perturbative heating time, valid just above the subradiant crossing.

    t_h ~ gamma_e (1 + eta) ln[c11 / (p(1-p))] / (8 (Omega^2 - Omega_c^2)).
    """
    g, om, eta = spec.gamma_e, spec.omega, spec.eta
    om_c = spectral.critical_drive(eta, g)
    if om <= om_c:
        raise DomainError("weak-drive form requires Omega > Omega_c")
    ms = spectral.decompose(spec)
    rho0 = np.diag([p * p, p * (1 - p), p * (1 - p), (1 - p) ** 2]).astype(complex)
    ov = spectral.mode_overlaps(ms, rho0)
    i1 = ms.index_slowest_symmetric()
    c11 = ov.c[i1, i1].real
    return float(g * (1.0 + eta) * np.log(c11 / (p * (1.0 - p)))
                 / (8.0 * (om ** 2 - om_c ** 2)))


def crossing_time_formula(spec, rho0_a, rho0_b) -> float:
    """Predicted entropy-crossing time of two initial states (two-mode regime).

    t_x = ln sqrt(c11^a c11^b / (c44^a c44^b)) / (2 [Im lam4 - Im lam1]):
    the instant the two epsilon ratios are reciprocal, where the two-mode
    purities coincide.
    """
    ms = spectral.decompose(spec)
    i1 = ms.index_slowest_symmetric()
    i4 = ms.index_antisymmetric()
    gap = ms.eigenvalues[i4].imag - ms.eigenvalues[i1].imag
    if gap <= 0.0:
        raise DomainError("no crossing below the subradiant degeneracy")
    ca = spectral.mode_overlaps(ms, rho0_a).c
    cb = spectral.mode_overlaps(ms, rho0_b).c
    arg = (ca[i1, i1].real * cb[i1, i1].real
           / (ca[i4, i4].real * cb[i4, i4].real))
    if arg <= 0.0:
        raise ZeroOverlap("vanishing mode weight; crossing time undefined")
    return float(np.log(np.sqrt(arg)) / (2.0 * gap))


def detect_crossing(times, series_a, series_b, refine_tol: float = 1e-4):
    """Locate sign changes of series_a - series_b on a shared grid.

    Returns a list of crossing times, each refined by linear interpolation to
    within refine_tol of the true crossing of the sampled curves.  Grid
    points where the difference is below 1e-9 in magnitude on both flanks are
    treated as tangency, not crossing.
    """
    t = np.asarray(times, float)
    a = np.asarray(series_a, float)
    b = np.asarray(series_b, float)
    if not (t.shape == a.shape == b.shape):
        raise GridMismatch("times and series must share a shape")
    d = a - b
    out = []
    for k in range(len(t) - 1):
        if d[k] == 0.0:
            continue
        if d[k] * d[k + 1] < 0.0:
            if abs(d[k]) < 1e-9 and abs(d[k + 1]) < 1e-9:
                continue
            t0, t1, d0, d1 = t[k], t[k + 1], d[k], d[k + 1]
            while t1 - t0 > refine_tol:
                tm = 0.5 * (t0 + t1)
                dm = d0 + (d1 - d0) * (tm - t0) / (t1 - t0)
                # linear model is exact between samples; bisect the bracket
                if d0 * dm <= 0.0:
                    t1, d1 = tm, dm
                else:
                    t0, d0 = tm, dm
            out.append(float(t0 - d0 * (t1 - t0) / (d1 - d0)))
    return out


def mode_weight_series(spec, rho0, t_grid, normalization: str = "diagonal"):
    """Time-resolved relative mode weights |c_nn(t)| under two conventions.

    c_mn(t) = c_mn exp(-i (lam_m - conj(lam_n)) t).  With
    normalization="diagonal" each diagonal weight is divided by the sum of
    diagonal weights; with "all" it is divided by the sum of |c_mn(t)| over
    the full matrix.
    """
    if normalization not in ("diagonal", "all"):
        raise DomainError("normalization must be 'diagonal' or 'all'")
    t = np.asarray(t_grid, float)
    ms = spectral.decompose(spec)
    c0 = spectral.mode_overlaps(ms, rho0).c
    lam = ms.eigenvalues
    phase = lam[:, None] - lam[None, :].conj()
    out = np.empty((len(t), len(lam)))
    for k, tk in enumerate(t):
        c = c0 * np.exp(-1j * phase * tk)
        diag = np.abs(np.diag(c))
        denom = diag.sum() if normalization == "diagonal" else np.abs(c).sum()
        out[k] = diag / denom
    return out
