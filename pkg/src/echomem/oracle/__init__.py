"""Brute-force integrator of the coupled mode-atom amplitude equations.

Ground truth for the closed-form pipeline: a finite ensemble of atoms with
stratified detunings coupled to a discretized field-mode comb, evolved as a
single-excitation Schrodinger problem.
"""

from .ensemble import DiscretizedEnsemble
from .dynamics import (ModeGrid, build_hamiltonian, EigenPropagator,
                       propagate_ode, rz_map)
from .protocol import (AbsorptionResult, RetrievalResult, OracleConfig,
                       OracleProtocolResult, integrate_absorption,
                       integrate_pulse, integrate_retrieval,
                       run_protocol_oracle)

__all__ = [
    "DiscretizedEnsemble", "ModeGrid", "build_hamiltonian", "EigenPropagator",
    "propagate_ode", "rz_map", "AbsorptionResult", "RetrievalResult",
    "OracleConfig", "OracleProtocolResult", "integrate_absorption",
    "integrate_pulse", "integrate_retrieval", "run_protocol_oracle",
]
