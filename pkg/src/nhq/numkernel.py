"""Dense complex linear algebra and ODE propagation for small systems.

Everything here is generic numerics: a general (non-symmetric) complex
eigendecomposition with biorthonormalized left/right vectors, and a thin
adaptive-RK wrapper used to propagate linear master equations. No physics
lives in this module.
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate, linalg

from .errors import DefectiveMatrix, DimensionMismatch, InvalidGrid, StepUnderflow

DEFAULT_TOL = 1e-8
DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12
MAX_DIM = 4096


@dataclass(frozen=True)
class EigDecomposition:
    """Eigenvalues plus biorthonormalized right/left eigenvectors.

    Columns of ``right`` are right eigenvectors r_n, columns of ``left`` are
    left eigenvectors l_n with <l_m|r_n> = delta_mn when ``defect_flag`` is
    False.  Ordering: descending imaginary part (slowest-decaying mode first
    under gamma_n = -2 Im lambda_n), ties broken by ascending real part, then
    by original index.
    """

    eigenvalues: np.ndarray
    right: np.ndarray
    left: np.ndarray
    defect_flag: bool
    condition: float

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


def _sort_order(w: np.ndarray) -> np.ndarray:
    # lexsort uses the last key as primary
    return np.lexsort((np.arange(len(w)), w.real, -w.imag))


def eig_general(a: np.ndarray, tol: float = DEFAULT_TOL) -> EigDecomposition:
    """Full eigendecomposition of a general complex square matrix.

    The left eigenvectors are obtained as the columns of inv(R)^dagger, which
    enforces biorthonormality exactly whenever R is invertible.  When the
    eigenvector matrix is numerically rank-deficient (condition > 1/tol) the
    decomposition is flagged defective and the raw LAPACK left vectors are
    returned unscaled.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_DIM:
        raise DimensionMismatch(f"dim {a.shape[0]} exceeds supported maximum {MAX_DIM}")
    if not np.all(np.isfinite(a)):
        raise DimensionMismatch("matrix contains non-finite entries")

    w, vl, vr = linalg.eig(a, left=True, right=True)
    order = _sort_order(w)
    w, vl, vr = w[order], vl[:, order], vr[:, order]

    cond = float(np.linalg.cond(vr))
    defective = not np.isfinite(cond) or cond > 1.0 / tol
    if defective:
        left = vl
    else:
        left = np.linalg.inv(vr).conj().T
    return EigDecomposition(eigenvalues=w, right=vr, left=left,
                            defect_flag=defective, condition=cond)


def biorthonormalize(decomp: EigDecomposition, tol: float = DEFAULT_TOL) -> EigDecomposition:
    """Rescale left eigenvectors so that <l_m|r_n> = delta_mn.

    Raises DefectiveMatrix for flagged decompositions: at an exceptional
    point no biorthonormal basis exists and callers must fall back to ODE
    propagation.
    """
    if decomp.defect_flag:
        raise DefectiveMatrix(
            f"eigenvector matrix condition {decomp.condition:.3g} exceeds 1/tol")
    left = np.linalg.inv(decomp.right).conj().T
    gram = left.conj().T @ decomp.right
    err = np.max(np.abs(gram - np.eye(decomp.dim)))
    if err > max(tol, 1e3 * np.finfo(float).eps * decomp.condition):
        raise DefectiveMatrix(f"biorthonormalization residual {err:.3g} exceeds tol")
    return replace(decomp, left=left)


def integrate_linear_ode(generator: np.ndarray, y0: np.ndarray, t_grid,
                         rel_tol: float = DEFAULT_RTOL,
                         abs_tol: float = DEFAULT_ATOL) -> np.ndarray:
    """Propagate dy/dt = G y on a strictly increasing grid starting at 0.

    Returns an array of shape (len(t_grid), len(y0)).  Purely a wrapper around
    an embedded Runge-Kutta 5(4) pair; the generator is applied verbatim.
    """
    generator = np.asarray(generator, dtype=complex)
    y0 = np.asarray(y0, dtype=complex)
    t_grid = np.asarray(t_grid, dtype=float)
    if generator.shape != (y0.size, y0.size):
        raise DimensionMismatch("generator shape does not match initial vector")
    if t_grid.ndim != 1 or t_grid.size == 0:
        raise InvalidGrid("time grid must be a non-empty 1-d array")
    if t_grid[0] != 0.0 or (t_grid.size > 1 and np.any(np.diff(t_grid) <= 0)):
        raise InvalidGrid("time grid must start at 0 and increase strictly")

    if t_grid.size == 1:
        return y0[np.newaxis, :].copy()

    sol = integrate.solve_ivp(
        lambda _t, y: generator @ y,
        (t_grid[0], t_grid[-1]), y0, t_eval=t_grid,
        method="RK45", rtol=rel_tol, atol=abs_tol)
    if not sol.success:
        raise StepUnderflow(sol.message)
    return sol.y.T
