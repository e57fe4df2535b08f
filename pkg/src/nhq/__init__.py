"""Driven non-Hermitian qubit systems: spectra, conditional dynamics,
informational anomalous relaxation, and fast entangled-state purification.

Modules
-------
numkernel    dense eigen/biorthogonal decompositions and linear ODE driver
model        system specification, effective Hamiltonian, generators, states
spectral     closed-form and numeric eigenstructure, degeneracy location
dynamics     mode-sum / ODE / full-recycling evolution, closed Bloch forms
observables  purity, entropies, coherence, concurrence, timing estimators
multiqubit   n = 3..6 spectra and normalized-entropy dynamics
presets      frozen figure parameter tables
cli          batch CSV interface (`nhq` console script)
"""

from .model import SystemSpec, make_initial_state
from .spectral import (antisymmetric_eig, cardano_symmetric_eigs,
                       critical_drive, decompose, dissipative_gap, ep_drive,
                       find_degeneracies, mode_overlaps)
from .dynamics import (bloch_closed_form, evolve_full_lindblad, evolve_modes,
                       evolve_nojump_ode, two_mode_state)
from .observables import (concurrence, crossing_time_formula, detect_crossing,
                          entropy_peak_time, heating_time, hs_distance_sq,
                          l1_coherence, linear_entropy, purity)

__all__ = [
    "SystemSpec", "make_initial_state",
    "antisymmetric_eig", "cardano_symmetric_eigs", "critical_drive",
    "decompose", "dissipative_gap", "ep_drive", "find_degeneracies",
    "mode_overlaps",
    "bloch_closed_form", "evolve_full_lindblad", "evolve_modes",
    "evolve_nojump_ode", "two_mode_state",
    "concurrence", "crossing_time_formula", "detect_crossing",
    "entropy_peak_time", "heating_time", "hs_distance_sq", "l1_coherence",
    "linear_entropy", "purity",
]
