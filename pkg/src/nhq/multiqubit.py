"""Beyond two qubits: collective spectra and entropy dynamics for n <= 6."""

from dataclasses import dataclass

import numpy as np

from . import dynamics, model, numkernel, observables
from .errors import DimensionTooLarge, DomainError

MAX_QUBITS = 6


@dataclass(frozen=True)
class MultiqubitSpectrum:
    spec: model.SystemSpec
    eigenvalues: np.ndarray
    antisym_multiplicity: int
    defect_flag: bool


def multiqubit_spectrum(spec: model.SystemSpec,
                        degeneracy_tol: float = 1e-8) -> MultiqubitSpectrum:
    """Full H_eff spectrum with the multiplicity of the dark antisymmetric family.

    antisym_multiplicity counts eigenvalues within degeneracy_tol * gamma_e of
    (n//2) * [Delta - J - i(1-eta)(gamma_e+gamma_f)/2], the drive-independent
    eigenvalue of the fully paired singlet states.  For even n these are the
    total-spin-zero states (multiplicity 1, 2, 5 for n = 2, 4, 6); odd chains
    have no drive-independent family and the count is normally zero.
    """
    if spec.n_qubits > MAX_QUBITS:
        raise DimensionTooLarge(f"at most {MAX_QUBITS} qubits supported")
    eig = numkernel.eig_general(model.build_h_eff(spec), tol=1e-30)
    w = eig.eigenvalues
    target = (spec.n_qubits // 2) * (
        spec.delta - spec.j_coupling
        - 0.5j * (1.0 - spec.eta) * (spec.gamma_e + spec.gamma_f))
    mult = int(np.sum(np.abs(w - target) < degeneracy_tol * spec.gamma_e))
    cond_flag = bool(eig.condition > 1e8)
    return MultiqubitSpectrum(spec=spec, eigenvalues=w,
                              antisym_multiplicity=mult, defect_flag=cond_flag)


def normalized_linear_entropy_series(spec: model.SystemSpec, rho0: np.ndarray,
                                     t_grid, rel_tol: float = 1e-10,
                                     abs_tol: float = 1e-12) -> np.ndarray:
    """S_L(t)/(1 - 1/d) along the conditional no-jump evolution."""
    if spec.n_qubits > MAX_QUBITS:
        raise DimensionTooLarge(f"at most {MAX_QUBITS} qubits supported")
    traj = dynamics.evolve_nojump_ode(spec, rho0, t_grid,
                                      rel_tol=rel_tol, abs_tol=abs_tol)
    return np.array([observables.normalized_linear_entropy(s)
                     for s in traj.states])
