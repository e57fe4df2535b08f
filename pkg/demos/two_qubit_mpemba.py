"""Informational Mpemba effect for two interacting lossy qubits.

Two driven qubits with correlated decay (eta > 0) relax toward the
entangled antisymmetric steady state once the drive exceeds the critical
value.  A maximally mixed start (p = 1/2) -- the *most* disordered initial
condition -- purifies and entangles faster than a nearly pure product state
(p = 0.9), because it carries less weight on the slowest decay mode.

Run:  python3 demos/two_qubit_mpemba.py
"""
import numpy as np

from nhq import dynamics, model, observables, spectral

GAMMA_E = 6.0
ETA = 0.1
OMEGA = 3.0


def first_time(t, series, pred):
    idx = np.nonzero(pred(series))[0]
    return t[idx[0]] if idx.size else np.nan


def main():
    spec = model.SystemSpec(2, OMEGA, GAMMA_E, eta=ETA)
    om_c = spectral.critical_drive(ETA, GAMMA_E)
    ms = spectral.decompose(spec)
    print(f"critical drive Omega_c = {om_c:.4f} rad/us (running at {OMEGA})")
    print(f"dissipative gap = {spectral.dissipative_gap(ms):.6f} rad/us")

    t = np.linspace(0.0, 60.0, 12001)
    runs = {}
    for p in (0.5, 0.9):
        rho0 = model.make_initial_state("diagonal_product", 2, p=p)
        traj = dynamics.evolve_modes(spec, rho0, t)
        ent = np.array([observables.normalized_linear_entropy(r)
                        for r in traj.states])
        con = np.array([observables.concurrence(r) for r in traj.states])
        runs[p] = (ent, con)
        # closed-form weight of the slow antisymmetric mode
        c = spectral.mode_overlaps(ms, rho0).diagonal()
        print(f"p={p}: slow-mode weight c_44 = "
              f"{c[ms.index_antisymmetric()].real:.4f}")

    crossings = observables.detect_crossing(t, runs[0.9][0], runs[0.5][0])
    print(f"\nentropy trajectories cross at t = {crossings[-1]:.2f} us "
          f"({len(crossings)} crossings; the drive-cycle transient recrosses "
          "twice before the ordering settles)")

    print("\n  p     t(S_L < 0.01)   t(C > 0.99)")
    for p in (0.5, 0.9):
        ent, con = runs[p]
        te = first_time(t, ent, lambda s: s < 0.01)
        tc = first_time(t, con, lambda s: s > 0.99)
        print(f"  {p}    {te:8.2f} us     {tc:8.2f} us")

    print("\nThe maximally mixed state reaches both the low-entropy and the "
          "high-concurrence targets well before the nearly pure p = 0.9 "
          "product state: more initial disorder, faster ordering.")


if __name__ == "__main__":
    main()
