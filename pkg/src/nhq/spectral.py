"""Spectral analysis: closed-form and numeric eigenstructure.

Covers the Cardano solution of the two-qubit symmetric (Dicke) sector, the
exceptional-point and subradiant-degeneracy loci, the dissipative gap, mode
sector labeling, and overlap coefficients of initial states with the
biorthogonal eigenbasis.
"""

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from . import model, numkernel
from .errors import (DefectiveMatrix, DomainError, SectorUnresolved)

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
UNASSIGNED = "unassigned"


class DegeneracyKind(Enum):
    EXCEPTIONAL_POINT = "exceptional_point"
    DIABOLIC_CROSSING = "diabolic_crossing"


@dataclass(frozen=True)
class ModeSpectrum:
    spec: model.SystemSpec
    eig: numkernel.EigDecomposition
    sector_labels: tuple
    decay_constants: np.ndarray  # gamma_n = -2 Im lambda_n

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eig.eigenvalues

    def index_antisymmetric(self) -> int:
        idx = [i for i, s in enumerate(self.sector_labels) if s == ANTISYMMETRIC]
        if len(idx) != 1:
            raise SectorUnresolved("antisymmetric mode not uniquely labeled")
        return idx[0]

    def index_slowest_symmetric(self) -> int:
        idx = [i for i, s in enumerate(self.sector_labels) if s == SYMMETRIC]
        if not idx:
            raise SectorUnresolved("no symmetric modes labeled")
        return max(idx, key=lambda i: self.eigenvalues[i].imag)


@dataclass(frozen=True)
class OverlapMatrix:
    """c[m, n] = <psi_m^L| rho0 |psi_n^R> in the unit-S gauge (two qubits)."""

    c: np.ndarray
    eigenvalues: np.ndarray

    def diagonal(self) -> np.ndarray:
        return np.diag(self.c)


@dataclass(frozen=True)
class DegeneracyReport:
    omega_value: float
    kind: DegeneracyKind
    modes_involved: tuple
    eigenvalue: complex
    eigenvector_overlap: float


def decompose(spec: model.SystemSpec, tol: float = numkernel.DEFAULT_TOL) -> ModeSpectrum:
    """Numeric eigendecomposition of H_eff with sector labels.

    Two-qubit sectors are assigned by right-eigenvector overlap with the
    antisymmetric Dicke state |A>, never by sort position.
    """
    h = model.build_h_eff(spec)
    eig = numkernel.eig_general(h, tol=tol)
    labels = [UNASSIGNED] * eig.dim
    if spec.n_qubits == 2 and not eig.defect_flag:
        a = model.dicke_states()[:, 3]
        for i in range(4):
            v = eig.right[:, i]
            ov = abs(np.vdot(a, v)) / np.linalg.norm(v)
            if ov > 0.999:
                labels[i] = ANTISYMMETRIC
            elif ov < 1e-6:
                labels[i] = SYMMETRIC
    return ModeSpectrum(spec=spec, eig=eig, sector_labels=tuple(labels),
                        decay_constants=-2.0 * eig.eigenvalues.imag)


def symmetric_block(spec: model.SystemSpec) -> np.ndarray:
    """The 3x3 symmetric-sector block of the Dicke-transformed H_eff."""
    hd = model.dicke_transform(model.build_h_eff(spec))
    return hd[:3, :3]


def _cardano_roots(a2: complex, a1: complex, a0: complex):
    """All-branch Cardano solution of x^3 + a2 x^2 + a1 x + a0 = 0.

    Returns the branch whose roots minimize the maximum polynomial residual;
    the printed closed form fixes no cube-root branch, so selection by
    residual is the unambiguous realization.
    """
    p = a1 - a2 ** 2 / 3.0
    q = 2.0 * a2 ** 3 / 27.0 - a1 * a2 / 3.0 + a0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    sq = np.sqrt(disc)
    scale = max(abs(p) ** 1.5, abs(q), 1e-300)

    def roots_from(u: complex):
        if abs(u) ** 3 < 1e-14 * scale:
            v = (-q / 2.0 - sq) ** (1.0 / 3.0) if abs(q) > 0 else 0.0
            u_ = 0.0
        else:
            u_, v = u, -p / (3.0 * u)
        x1 = u_ + v
        x23 = -0.5 * (u_ + v)
        osc = 0.5j * np.sqrt(3.0) * (u_ - v)
        return np.array([x1, x23 + osc, x23 - osc]) - a2 / 3.0

    def residual(roots):
        return max(abs(((r + a2) * r + a1) * r + a0) for r in roots)

    base = -q / 2.0 + sq
    alt = -q / 2.0 - sq
    if abs(alt) > abs(base):
        base = alt  # larger magnitude avoids cancellation in v = -p/(3u)
    u0 = base ** (1.0 / 3.0) if base != 0 else 0.0
    best, best_res = None, np.inf
    for k in range(3):
        u = u0 * np.exp(2j * np.pi * k / 3.0)
        cand = roots_from(u)
        res = residual(cand)
        if res < best_res:
            best, best_res = cand, res
    # Newton-polish each root: the analytic branch supplies the seed, the
    # polish removes floating-point cancellation in the radicals
    best = np.array(best, dtype=complex)
    for i in range(3):
        r = best[i]
        for _ in range(3):
            f = ((r + a2) * r + a1) * r + a0
            df = (3.0 * r + 2.0 * a2) * r + a1
            if df == 0:
                break
            r = r - f / df
        best[i] = r
    return best, residual(best), disc


def cardano_symmetric_eigs(spec: model.SystemSpec) -> np.ndarray:
    """Closed-form eigenvalues of the two-qubit symmetric sector.

    Requires the drive-plus-collective-decay configuration (Delta = J =
    gamma_f = 0).  Returns the three eigenvalues sorted slowest-decaying
    first (descending imaginary part, ascending real part on ties).
    """
    if spec.n_qubits != 2 or spec.delta != 0 or spec.j_coupling != 0 or spec.gamma_f != 0:
        raise DomainError("closed form requires n=2, Delta=J=gamma_f=0")
    g, om, eta = spec.gamma_e, spec.omega, spec.eta
    a2 = 0.5j * g * (3.0 + eta)
    a1 = -4.0 * om ** 2 - 0.5 * g ** 2 * (1.0 + eta)
    a0 = -2j * g * om ** 2
    roots, res, _ = _cardano_roots(a2, a1, a0)
    if res > 1e-8 * max(g, 1.0) ** 3:
        from .errors import BranchFailure
        raise BranchFailure(f"cubic residual {res:.3g} too large")
    order = numkernel._sort_order(roots)
    return roots[order]


def cubic_discriminant(spec: model.SystemSpec) -> complex:
    """D = (q/2)^2 + (p/3)^3 of the depressed symmetric-sector cubic."""
    g, om, eta = spec.gamma_e, spec.omega, spec.eta
    p = g ** 2 * (eta ** 2 + 3.0) / 12.0 - 4.0 * om ** 2
    q = 1j * g * eta / 108.0 * (72.0 * om ** 2 + g ** 2 * (9.0 - eta ** 2))
    return (q / 2.0) ** 2 + (p / 3.0) ** 3


def antisymmetric_eig(spec: model.SystemSpec) -> complex:
    """lambda_4 = Delta - J - i(1-eta) gamma_e/2 (exact for any drive)."""
    if spec.n_qubits != 2:
        raise DomainError("antisymmetric mode is defined for n=2")
    return (spec.delta - spec.j_coupling
            - 0.5j * (1.0 - spec.eta) * (spec.gamma_e + spec.gamma_f))


def ep_drive(eta: float, gamma_e: float) -> float:
    """Drive strength at which the cubic discriminant vanishes (EP locus).

    At eta = 0 the closed form degenerates (Q = 0) and the fourth-order
    exceptional point sits exactly at gamma_e / 4.
    """
    if not 0.0 <= eta <= 1.0:
        raise DomainError("eta must lie in [0, 1]")
    if eta == 0.0:
        return gamma_e / 4.0
    g = gamma_e
    q_big = (24.0 * np.sqrt(3.0) * np.sqrt(g ** 12 * eta ** 4 * (27.0 + eta ** 2) ** 3)
             + g ** 6 * eta ** 2 * (eta ** 4 + 540.0 * eta ** 2 - 5832.0))
    qc = complex(q_big) ** (1.0 / 3.0)
    rad = (g ** 2 * (12.0 + eta ** 2) / 192.0
           + g ** 4 * eta ** 2 * (eta ** 2 - 216.0) / (192.0 * qc)
           + qc / 192.0)
    if abs(rad.imag) > 1e-8 * max(abs(rad), 1.0) or rad.real < -1e-12:
        raise DomainError(f"EP radicand not a positive real: {rad}")
    return float(np.sqrt(max(rad.real, 0.0)))


def critical_drive(eta: float, gamma_e: float) -> float:
    """Subradiant (diabolic) degeneracy locus Omega_c = gamma_e sqrt(1-eta^2)/(2 sqrt 2)."""
    if abs(eta) > 1.0:
        raise DomainError("|eta| must not exceed 1")
    return gamma_e / (2.0 * np.sqrt(2.0)) * np.sqrt(1.0 - eta ** 2)


def dissipative_gap(ms: ModeSpectrum) -> float:
    """|Im lambda_4 - Im lambda_1| between the two subradiant modes."""
    lam4 = ms.eigenvalues[ms.index_antisymmetric()]
    lam1 = ms.eigenvalues[ms.index_slowest_symmetric()]
    return abs(lam4.imag - lam1.imag)


def _pair_distances(spec: model.SystemSpec, omega: float):
    w = numkernel.eig_general(
        model.build_h_eff(replace(spec, omega=omega)), tol=1e-30).eigenvalues
    d = [abs(w[a] - w[b]) for a in range(len(w)) for b in range(a + 1, len(w))]
    return np.sort(np.asarray(d)), w


def _golden_min(f, a, b, xtol):
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return float(x), float(f(x))


def find_degeneracies(spec_template: model.SystemSpec, omega_range,
                      resolution: int = 400) -> list:
    """Locate and classify eigenvalue degeneracies along an Omega sweep.

    Scans min-pairwise eigenvalue distance on a uniform grid, refines local
    minima by golden-section search, and accepts refined minima below
    1e-6 * gamma_e.  Classification is by right-eigenvector geometry at the
    located point: coalescing eigenvectors (or a defective decomposition)
    mean an exceptional point, otherwise a diabolic crossing.

    A pair that is degenerate over most of the range (a continuous symmetry,
    not a crossing) is excluded by falling back to the second-smallest pair
    distance for the scan.
    """
    lo, hi = float(omega_range[0]), float(omega_range[1])
    if not (0.0 <= lo < hi <= 10.0 * spec_template.gamma_e):
        raise DomainError("omega_range must lie within [0, 10 gamma_e]")
    g = spec_template.gamma_e
    rank = 0

    def dist(omega):
        return float(_pair_distances(spec_template, omega)[0][rank])

    grid = np.linspace(lo, hi, resolution)
    vals = np.array([dist(om) for om in grid])
    while rank + 1 < 2 ** spec_template.n_qubits and \
            np.mean(vals < 1e-6 * g) > 0.3:
        rank += 1
        vals = np.array([dist(om) for om in grid])

    candidates = []
    for i in range(len(grid)):
        left = vals[i - 1] if i > 0 else np.inf
        right = vals[i + 1] if i + 1 < len(grid) else np.inf
        if vals[i] <= left and vals[i] <= right:
            a = grid[max(i - 1, 0)]
            b = grid[min(i + 1, len(grid) - 1)]
            # plain golden-section with an absolute tolerance: Brent's
            # sqrt(eps)*|x| floor is too coarse at the square-root cusp of
            # an exceptional point
            x_star, f_star = _golden_min(dist, a, b, xtol=1e-13)
            candidates.append((x_star, f_star))

    reports = []
    for omega_star, fun in sorted(candidates):
        if fun > 1e-6 * g:
            continue
        if any(abs(omega_star - r.omega_value) < 1e-6 * g for r in reports):
            continue
        spec_star = replace(spec_template, omega=omega_star)
        eig = numkernel.eig_general(model.build_h_eff(spec_star))
        w = eig.eigenvalues
        dmat = np.abs(w[:, None] - w[None, :])
        np.fill_diagonal(dmat, np.inf)
        a, b = np.unravel_index(np.argmin(dmat), dmat.shape)
        group = [i for i in range(len(w)) if abs(w[i] - w[a]) < 1e-4 * g]
        # Eigenvectors at the refined point are arbitrary mixtures within the
        # numerically degenerate subspace, so probe the geometry at a small
        # offset where the pair has split: crossing vectors stay apart there,
        # coalescing ones are still nearly parallel.
        delta = 1e-6 * g
        omega_off = omega_star + delta if omega_star + delta <= hi \
            else omega_star - delta
        eig_off = numkernel.eig_general(
            model.build_h_eff(replace(spec_template, omega=omega_off)))
        w_off = eig_off.eigenvalues
        pair = np.argsort(np.abs(w_off - w[a]))[:2]
        va = eig_off.right[:, pair[0]] / np.linalg.norm(eig_off.right[:, pair[0]])
        vb = eig_off.right[:, pair[1]] / np.linalg.norm(eig_off.right[:, pair[1]])
        overlap = abs(np.vdot(va, vb))
        coalesce = min(np.linalg.norm(va - vb * np.exp(1j * np.angle(np.vdot(vb, va)))),
                       2.0)
        if eig.defect_flag or coalesce < 1e-3 or overlap > 0.99:
            kind = DegeneracyKind.EXCEPTIONAL_POINT
        else:
            kind = DegeneracyKind.DIABOLIC_CROSSING
        reports.append(DegeneracyReport(
            omega_value=omega_star, kind=kind, modes_involved=tuple(sorted(group)),
            eigenvalue=w[a], eigenvector_overlap=float(overlap)))
    return reports


def _unit_s_gauge(ms: ModeSpectrum):
    """Right eigenvectors rescaled to unit |S> (or unit |A>) Dicke component.

    This is the gauge in which the closed-form overlap coefficients are
    stated; left vectors are recomputed as inv(R)^dagger so biorthonormality
    is preserved.
    """
    if ms.eig.defect_flag:
        raise DefectiveMatrix("overlap matrix undefined at an exceptional point")
    dicke = model.dicke_states()
    s, a = dicke[:, 1], dicke[:, 3]
    r = ms.eig.right.copy()
    for i in range(4):
        ref = a if ms.sector_labels[i] == ANTISYMMETRIC else s
        comp = np.vdot(ref, r[:, i])
        if abs(comp) > 1e-12:
            r[:, i] = r[:, i] / comp
    left = np.linalg.inv(r).conj().T
    return r, left


def mode_overlaps(ms: ModeSpectrum, rho0: np.ndarray) -> OverlapMatrix:
    """Overlap coefficients c_mn = <psi_m^L| rho0 |psi_n^R>.

    For two qubits the unit-S gauge is used so symmetric-sector entries agree
    with the closed form; the diagonal (the physical mode weights, summing to
    Tr rho0 = 1) is gauge-invariant.
    """
    if ms.spec.n_qubits == 2:
        r, left = _unit_s_gauge(ms)
    else:
        if ms.eig.defect_flag:
            raise DefectiveMatrix("overlap matrix undefined at an exceptional point")
        e = numkernel.biorthonormalize(ms.eig)
        r, left = e.right, e.left
    c = left.conj().T @ np.asarray(rho0, dtype=complex) @ r
    return OverlapMatrix(c=c, eigenvalues=ms.eigenvalues.copy())


def overlap_closed_form(spec: model.SystemSpec, p: float) -> np.ndarray:
    """Closed-form c_mn for a diagonal product state (two qubits, Delta=J=0).

    Symmetric-sector entries (m, n in the sorted symmetric triple):
        c_mn = [p(1-p) + 2 Omega^2 (p^2/(lam_m lam_n)
                + (1-p)^2/((i gamma_e + lam_m)(i gamma_e + lam_n)))] / s_m,
        s_m = 1 + 2 Omega^2 (1/lam_m^2 + 1/(i gamma_e + lam_m)^2);
    the antisymmetric diagonal is p(1-p) and all cross terms vanish.
    Modes are ordered to match `decompose` (descending Im, with the
    antisymmetric mode placed at its sorted position).
    """
    ms = decompose(spec)
    lam = ms.eigenvalues
    g, om = spec.gamma_e, spec.omega
    i4 = ms.index_antisymmetric()
    c = np.zeros((4, 4), dtype=complex)
    sym = [i for i in range(4) if i != i4]
    for m in sym:
        s_m = 1.0 + 2.0 * om ** 2 * (1.0 / lam[m] ** 2 + 1.0 / (1j * g + lam[m]) ** 2)
        for n in sym:
            c[m, n] = (p * (1.0 - p)
                       + 2.0 * om ** 2 * (p ** 2 / (lam[m] * lam[n])
                                          + (1.0 - p) ** 2 / ((1j * g + lam[m])
                                                              * (1j * g + lam[n])))) / s_m
    c[i4, i4] = p * (1.0 - p)
    return c
