"""Frozen figure presets: fixed parameter tables for reproducible CSVs.

Every preset is an immutable dict consumed by the CLI runners; grids are
frozen so repeated runs emit byte-identical files.
"""

from .model import SystemSpec

GAMMA_E = 6.0  # rad/us, the rate used in every figure


def _evolve(spec, p_values, observables, route="ode", t_max=5.0, points=1001,
            kind="evolve"):
    return {
        "kind": kind,
        "spec": spec,
        "p_values": tuple(p_values),
        "observables": tuple(observables),
        "route": route,
        "t_max": float(t_max),
        "t_points": int(points),
    }


def _sweep(spec, omega_range, omega_points, t_max, t_points,
           observables=("purity",), route="ode"):
    return {
        "kind": "sweep",
        "spec": spec,
        "initial": "maximally_mixed",
        "omega_range": tuple(float(x) for x in omega_range),
        "omega_points": int(omega_points),
        "t_max": float(t_max),
        "t_points": int(t_points),
        "observables": tuple(observables),
        "route": route,
    }


def _spectrum(spec, omega_range=(0.0, 4.0), points=401):
    return {
        "kind": "spectrum",
        "spec": spec,
        "omega_range": tuple(float(x) for x in omega_range),
        "omega_points": int(points),
    }


_SQ_EP = SystemSpec(n_qubits=1, omega=GAMMA_E / 4.0, gamma_e=GAMMA_E)
_TQ = lambda eta, omega: SystemSpec(n_qubits=2, omega=omega, gamma_e=GAMMA_E,
                                    eta=eta)

_FIG2_P = (0.1, 0.25, 0.5, 0.75, 0.9)
_FIG4_P = (0.5, 0.7, 0.9, 0.99)

PRESETS = {
    # single qubit at the exceptional point, diagonal initial states
    "Fig2a": _evolve(_SQ_EP, _FIG2_P, ("hs_distance_sq",)),
    "Fig2b": _evolve(_SQ_EP, _FIG2_P, ("linear_entropy",)),
    "Fig2c": _evolve(_SQ_EP, _FIG2_P, ("l1_coherence",)),

    # two-qubit purity heatmaps from the maximally mixed state
    "Fig3a": _sweep(_TQ(0.0, 0.0), (0.0, 4.0), 81, 5.0, 251),
    "Fig3b": _sweep(_TQ(0.5, 0.0), (0.0, 4.0), 81, 5.0, 251),
    "Fig3c": _sweep(_TQ(1.0, 0.0), (0.0, 4.0), 81, 5.0, 251),
    # matching eigenvalue spectra vs drive
    "Fig3d": _spectrum(_TQ(0.0, 0.0)),
    "Fig3e": _spectrum(_TQ(0.5, 0.0)),
    "Fig3f": _spectrum(_TQ(1.0, 0.0)),

    # two-qubit relaxation anomaly at eta=0.1, Omega=3
    "Fig4a": _evolve(_TQ(0.1, 3.0), _FIG4_P, ("linear_entropy",),
                     route="modes", t_max=10.0, points=2001),
    "Fig4b": _evolve(_TQ(0.1, 3.0), _FIG4_P, ("concurrence",),
                     route="modes", t_max=10.0, points=2001),
    "Fig4c": _evolve(_TQ(0.1, 3.0), (0.5,), ("mode_weights",),
                     route="modes", t_max=10.0, points=2001),
    "Fig4d": _evolve(_TQ(0.1, 3.0), (0.9,), ("mode_weights",),
                     route="modes", t_max=10.0, points=2001),
    "Fig4e": _evolve(_TQ(0.1, 3.0), (0.99,), ("mode_weights",),
                     route="modes", t_max=10.0, points=2001),

    # supplementary spectra across the collective-dissipation range
    "SMspec-a": _spectrum(_TQ(0.0, 0.0)),
    "SMspec-b": _spectrum(_TQ(0.01, 0.0)),
    "SMspec-c": _spectrum(_TQ(0.1, 0.0)),
    "SMspec-d": _spectrum(_TQ(0.5, 0.0)),
    "SMspec-e": _spectrum(_TQ(1.0, 0.0)),

    # supplementary purity heatmaps
    "SMpurity-a": _sweep(_TQ(0.0, 0.0), (0.0, 4.0), 81, 5.0, 251),
    "SMpurity-b": _sweep(_TQ(0.1, 0.0), (0.0, 4.0), 81, 5.0, 251),
    "SMpurity-c": _sweep(_TQ(0.5, 0.0), (0.0, 4.0), 81, 5.0, 251),
    "SMpurity-d": _sweep(_TQ(1.0, 0.0), (0.0, 4.0), 81, 5.0, 251),

    # multiqubit informational-anomaly curves (normalized linear entropy)
    "SM3q": _evolve(SystemSpec(n_qubits=3, omega=1.0, gamma_e=GAMMA_E, eta=0.8),
                    (0.5, 0.2, 0.1, 0.01), ("normalized_linear_entropy",),
                    route="ode", t_max=20.0, points=1001),
    "SM4q-a": _evolve(SystemSpec(n_qubits=4, omega=3.0, gamma_e=GAMMA_E, eta=0.01),
                      _FIG4_P, ("normalized_linear_entropy",),
                      route="ode", t_max=10.0, points=1001),
    "SM4q-b": _evolve(SystemSpec(n_qubits=4, omega=3.0, gamma_e=GAMMA_E, eta=0.1),
                      _FIG4_P, ("normalized_linear_entropy",),
                      route="ode", t_max=10.0, points=1001),
    "SM4q-c": _evolve(SystemSpec(n_qubits=4, omega=3.0, gamma_e=GAMMA_E, eta=0.5),
                      _FIG4_P, ("normalized_linear_entropy",),
                      route="ode", t_max=10.0, points=1001),
    "SM4q-d": _evolve(SystemSpec(n_qubits=4, omega=3.0, gamma_e=GAMMA_E, eta=1.0),
                      _FIG4_P, ("normalized_linear_entropy",),
                      route="ode", t_max=10.0, points=1001),
}
