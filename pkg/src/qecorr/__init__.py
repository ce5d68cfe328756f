"""Exact simulation and correlation analysis of qubit-environment pure dephasing.

The package propagates the joint state of a qubit (or a Bell pair of
qubits) coupled to a small environment through exact conditional
unitaries, and evaluates three correlation detectors at any time:
separability, zero discord with respect to the environment, and zero
discord with respect to the qubit.  A brute-force discord oracle and
standard entanglement measures (concurrence, negativity) provide
independent cross-checks.
"""

from qecorr.linalg import (
    DEFAULT_TOL,
    commutator_residual,
    hermitian_eig,
    is_normal,
    partial_trace,
    partial_transpose,
    tensor,
    unitary_exp,
)
from qecorr.model import (
    DephasingModel,
    EnvironmentState,
    JointState,
    QubitPureState,
    conditional_evolutions,
    evolve_joint,
    joint_evolution_operator,
    qubit_blocks,
    qubit_coherence,
)
from qecorr.correlations import (
    CorrelationReport,
    EigenphaseDecomposition,
    RijFamily,
    analyze,
    block_discord_check,
    build_Rij,
    discord_oracle,
    env_discord_check,
    ginibre_density,
    qubit_discord_check,
    random_hermitian,
    separability_check,
    simultaneous_eigenbasis,
)
from qecorr.twoqubit import (
    CycleTimes,
    TwoQubitModel,
    concurrence_closed_form,
    cycle_times,
    evolve_bell,
    fig1_curve,
    negativity,
    wootters_concurrence,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "CorrelationReport",
    "CycleTimes",
    "DephasingModel",
    "EigenphaseDecomposition",
    "EnvironmentState",
    "JointState",
    "QubitPureState",
    "RijFamily",
    "TwoQubitModel",
    "analyze",
    "block_discord_check",
    "build_Rij",
    "commutator_residual",
    "concurrence_closed_form",
    "conditional_evolutions",
    "cycle_times",
    "discord_oracle",
    "env_discord_check",
    "evolve_bell",
    "evolve_joint",
    "fig1_curve",
    "ginibre_density",
    "hermitian_eig",
    "is_normal",
    "joint_evolution_operator",
    "negativity",
    "partial_trace",
    "partial_transpose",
    "qubit_blocks",
    "qubit_coherence",
    "qubit_discord_check",
    "random_hermitian",
    "separability_check",
    "simultaneous_eigenbasis",
    "tensor",
    "unitary_exp",
    "wootters_concurrence",
]
