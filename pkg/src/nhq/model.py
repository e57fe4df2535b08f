"""Physical objects: system specification, Hamiltonians, Liouvillians, states.

Conventions (fixed globally):
  * per-qubit basis {|f>, |e>} with |f> first; qubit 1 is the leftmost tensor
    factor, so the two-qubit computational order is {ff, fe, ef, ee};
  * rates in rad/us, times in us;
  * density matrices are vectorized row-major, vec(rho) = rho.reshape(-1),
    i.e. (rho_11, rho_12, ..., rho_14, rho_21, ...) for two qubits.

The effective non-Hermitian Hamiltonian is

    H_eff = sum_j [ Delta |e><e|_j + Omega (|e><f|_j + |f><e|_j) ]
          + J sum_{j!=k} |e><f|_j |f><e|_k
          - (i/2) sum_{jk} Gamma^e_{jk} A_j^+ A_k       A_j = |f><e|_j
          - (i/2) sum_{jk} Gamma^f_{jk} R_j^+ R_k       R_j = |e><f|_j

with Gamma^a_{jk} = gamma_a (delta_jk + eta (1 - delta_jk)).  The e-channel
jump ejects population to an unmodeled ground level |g>, so inside the
{f, e}^n manifold it appears only through H_eff (monitored, trace-decaying);
the f-channel (f -> e) recycles within the manifold.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (DimensionMismatch, DimensionTooLarge, InvalidSpec,
                     InvalidState, PositivityViolation)

KET_F = 0
KET_E = 1


@dataclass(frozen=True)
class SystemSpec:
    """Validated physical parameter set."""

    n_qubits: int
    omega: float
    gamma_e: float
    eta: float = 0.0
    delta: float = 0.0
    j_coupling: float = 0.0
    gamma_f: float = 0.0

    def __post_init__(self):
        if not (1 <= self.n_qubits <= 6):
            raise InvalidSpec(f"n_qubits must be in [1, 6], got {self.n_qubits}")
        if self.gamma_e <= 0:
            raise InvalidSpec("gamma_e must be positive")
        if self.gamma_f < 0:
            raise InvalidSpec("gamma_f must be non-negative")
        if self.omega < 0:
            raise InvalidSpec("omega must be non-negative")
        # Gamma_{jk} = gamma (delta_jk + eta(1-delta_jk)) is PSD iff
        # -1/(n-1) <= eta <= 1 (eigenvalues gamma(1-eta) and gamma(1+(n-1)eta)).
        lo = -1.0 if self.n_qubits == 1 else -1.0 / (self.n_qubits - 1)
        if not (lo - 1e-12 <= self.eta <= 1.0 + 1e-12):
            raise InvalidSpec(
                f"eta={self.eta} outside PSD-compatible range [{lo}, 1] for "
                f"n={self.n_qubits}")

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits


def _op_on(n: int, j: int, op: np.ndarray) -> np.ndarray:
    """Embed a single-qubit operator on qubit j (0-based) of an n-qubit chain."""
    out = np.array([[1.0 + 0.0j]])
    for k in range(n):
        out = np.kron(out, op if k == j else np.eye(2))
    return out


def lowering_e(n: int, j: int) -> np.ndarray:
    """A_j = |f><e| on qubit j (monitored e-channel, within the manifold)."""
    return _op_on(n, j, np.array([[0, 1], [0, 0]], dtype=complex))


def lowering_f(n: int, j: int) -> np.ndarray:
    """R_j = |e><f| on qubit j (f -> e recycling channel)."""
    return _op_on(n, j, np.array([[0, 0], [1, 0]], dtype=complex))


def collective_rate_matrix(n: int, gamma: float, eta: float) -> np.ndarray:
    g = np.full((n, n), eta * gamma)
    np.fill_diagonal(g, gamma)
    return g


def build_h_eff(spec: SystemSpec) -> np.ndarray:
    n, d = spec.n_qubits, spec.dim
    h = np.zeros((d, d), dtype=complex)
    proj_e = np.array([[0, 0], [0, 1]], dtype=complex)
    sig_x = np.array([[0, 1], [1, 0]], dtype=complex)
    for j in range(n):
        h += spec.delta * _op_on(n, j, proj_e)
        h += spec.omega * _op_on(n, j, sig_x)
    ops_e = [lowering_e(n, j) for j in range(n)]
    ops_f = [lowering_f(n, j) for j in range(n)]
    for j in range(n):
        for k in range(n):
            if j != k:
                h += spec.j_coupling * ops_f[j] @ ops_e[k]  # |e><f|_j |f><e|_k
    ge = collective_rate_matrix(n, spec.gamma_e, spec.eta)
    gf = collective_rate_matrix(n, spec.gamma_f, spec.eta)
    for j in range(n):
        for k in range(n):
            if ge[j, k] != 0.0:
                h += -0.5j * ge[j, k] * (ops_e[j].conj().T @ ops_e[k])
            if gf[j, k] != 0.0:
                h += -0.5j * gf[j, k] * (ops_f[j].conj().T @ ops_f[k])
    return h


def vectorize(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho, dtype=complex).reshape(-1)


def unvectorize(vec: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(vec.size)))
    return np.asarray(vec, dtype=complex).reshape(d, d)


def _left_mult(a: np.ndarray) -> np.ndarray:
    """Superoperator for rho -> a rho under row-major vectorization."""
    return np.kron(a, np.eye(a.shape[0]))


def _right_mult(b: np.ndarray) -> np.ndarray:
    """Superoperator for rho -> rho b under row-major vectorization."""
    return np.kron(np.eye(b.shape[0]), b.T)


def _sandwich(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator for rho -> a rho b under row-major vectorization."""
    return np.kron(a, b.T)


def build_liouvillian(spec: SystemSpec, include_jumps: bool) -> np.ndarray:
    """Generator for the vectorized density matrix.

    include_jumps=False: the no-jump (post-selected) generator
    -i(H_eff rho - rho H_eff^+); trace-decaying at rate gamma_e * <n_e> plus
    the monitored part of the f channel.

    include_jumps=True: adds the in-manifold recycling terms,
    sum_{jk} Gamma^f_{jk} R_k rho R_j^+.  The e-channel jump deposits
    population in |g>, outside the simulated manifold, so the trace of the
    manifold block still decays at gamma_e * <n_e>; the missing weight is the
    leakage bookkept by the dynamics layer.
    """
    if include_jumps and spec.n_qubits > 3:
        raise DimensionTooLarge("full-jump Liouvillian limited to n <= 3")
    h = build_h_eff(spec)
    lv = -1j * (_left_mult(h) - _right_mult(h.conj().T))
    if include_jumps and spec.gamma_f > 0:
        n = spec.n_qubits
        gf = collective_rate_matrix(n, spec.gamma_f, spec.eta)
        ops_f = [lowering_f(n, j) for j in range(n)]
        for j in range(n):
            for k in range(n):
                if gf[j, k] != 0.0:
                    lv += gf[j, k] * _sandwich(ops_f[k], ops_f[j].conj().T)
    return lv


_DICKE_U = np.array([
    [1, 0, 0, 0],
    [0, 1 / np.sqrt(2), 0, 1 / np.sqrt(2)],
    [0, 1 / np.sqrt(2), 0, -1 / np.sqrt(2)],
    [0, 0, 1, 0],
], dtype=complex)  # columns: |ff>, |S>, |ee>, |A>


def dicke_states():
    """Columns |ff>, |S>, |ee>, |A> in the computational basis."""
    return _DICKE_U.copy()


def dicke_transform(h: np.ndarray) -> np.ndarray:
    """U^+ H U in the basis {|ff>, |S>, |ee>, |A>} (two-qubit only)."""
    h = np.asarray(h, dtype=complex)
    if h.shape != (4, 4):
        raise DimensionMismatch("dicke_transform expects a 4x4 matrix")
    return _DICKE_U.conj().T @ h @ _DICKE_U


def validate_density_matrix(rho: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidState("density matrix must be square")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise InvalidState("density matrix is not Hermitian within 1e-10")
    if abs(np.trace(rho).real - 1.0) > 1e-10:
        raise InvalidState("density matrix trace differs from 1 beyond 1e-10")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise InvalidState("density matrix has an eigenvalue below -tol")
    return rho


def diagonal_product_state(p: float, n: int) -> np.ndarray:
    """(p|f><f| + (1-p)|e><e|)^{x n}."""
    if not 0.0 <= p <= 1.0:
        raise InvalidState("p must lie in [0, 1]")
    one = np.diag([p, 1.0 - p]).astype(complex)
    rho = np.array([[1.0 + 0.0j]])
    for _ in range(n):
        rho = np.kron(rho, one)
    return rho


def maximally_mixed_state(n: int) -> np.ndarray:
    d = 2 ** n
    return np.eye(d, dtype=complex) / d


def single_qubit_coherent_state(p: float, c: complex) -> np.ndarray:
    """rho = [[p, c], [c*, 1-p]]; requires |c| <= sqrt(p(1-p))."""
    if not 0.0 <= p <= 1.0:
        raise InvalidState("p must lie in [0, 1]")
    if abs(c) > np.sqrt(p * (1.0 - p)) + 1e-12:
        raise PositivityViolation("|c| exceeds sqrt(p(1-p))")
    return np.array([[p, c], [np.conj(c), 1.0 - p]], dtype=complex)


def make_initial_state(kind: str, n: int, **kwargs) -> np.ndarray:
    """Factory over the named initial-state families used in the figures."""
    if kind == "diagonal_product":
        return diagonal_product_state(kwargs["p"], n)
    if kind == "maximally_mixed":
        return maximally_mixed_state(n)
    if kind == "single_qubit_coherent":
        if n != 1:
            raise DimensionMismatch("coherent initial state is single-qubit")
        return single_qubit_coherent_state(kwargs["p"],
                                           kwargs.get("coherence", 0.0))
    if kind == "explicit":
        return validate_density_matrix(kwargs["matrix"])
    raise InvalidState(f"unknown initial-state kind {kind!r}")
