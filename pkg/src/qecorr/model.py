"""Pure-dephasing qubit-environment model and its exact propagation.

The Hamiltonian is block diagonal in the qubit pointer basis: each
pointer state ``|i>`` drives the environment with its own generator
``H_env + coupling_i`` (plus the qubit self-energy ``eps_i``, kept as a
global phase).  Propagation is always from t = 0 through exact
spectral exponentials, so there is no integrator drift anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from qecorr.linalg import (
    HERM_TOL,
    check_density,
    check_hermitian,
    hermitian_eig,
    partial_trace,
    tensor,
    unitary_exp,
)


def _frozen_array(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DephasingModel:
    """Energies and environment operators of a pure-dephasing Hamiltonian.

    ``env_hamiltonian`` is the free environment generator, and
    ``coupling0``/``coupling1`` are the environment operators switched
    on by the qubit pointer states.  Energies are in units of inverse
    time (hbar = 1).
    """

    env_hamiltonian: np.ndarray
    coupling0: np.ndarray
    coupling1: np.ndarray
    eps0: float = 0.0
    eps1: float = 0.0

    def __post_init__(self):
        h = check_hermitian(self.env_hamiltonian, name="env_hamiltonian")
        v0 = check_hermitian(self.coupling0, name="coupling0")
        v1 = check_hermitian(self.coupling1, name="coupling1")
        if not (h.shape == v0.shape == v1.shape):
            raise ValueError(
                "operator dimension mismatch: env_hamiltonian "
                f"{h.shape}, coupling0 {v0.shape}, coupling1 {v1.shape}"
            )
        object.__setattr__(self, "env_hamiltonian", _frozen_array(h))
        object.__setattr__(self, "coupling0", _frozen_array(v0))
        object.__setattr__(self, "coupling1", _frozen_array(v1))

    @property
    def env_dim(self) -> int:
        return self.env_hamiltonian.shape[0]


@dataclass(frozen=True)
class QubitPureState:
    """Superposition amplitudes of the qubit pointer states."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"amplitudes not normalized: |a|^2+|b|^2 = {norm}")

    def ket(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)

    def density(self) -> np.ndarray:
        k = self.ket()
        return np.outer(k, k.conj())


@dataclass(frozen=True)
class EnvironmentState:
    """Initial environment density matrix with cached spectral data."""

    rho0: np.ndarray
    weights: np.ndarray = field(init=False)
    basis: np.ndarray = field(init=False)

    def __post_init__(self):
        r = check_density(self.rho0, name="rho0")
        object.__setattr__(self, "rho0", _frozen_array(r))
        w, v = hermitian_eig(r, tol=HERM_TOL)
        weights = np.clip(w.real, 0.0, None)
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "basis", _frozen_array(v))

    @property
    def dim(self) -> int:
        return self.rho0.shape[0]


@dataclass(frozen=True)
class JointState:
    """Bipartite density matrix with subsystem dimensions ``(qubit_dim, env_dim)``."""

    matrix: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        m = check_density(self.matrix, name="joint state")
        dims = tuple(int(d) for d in self.dims)
        if dims[0] not in (2, 4):
            raise ValueError(f"system side must be one or two qubits, got dim {dims[0]}")
        if math.prod(dims) != m.shape[0]:
            raise ValueError(f"subsystem dims {dims} do not match matrix dim {m.shape[0]}")
        object.__setattr__(self, "matrix", _frozen_array(m))
        object.__setattr__(self, "dims", dims)


def conditional_evolutions(model: DephasingModel, t: float) -> tuple[np.ndarray, np.ndarray]:
    """The environment unitaries conditioned on each pointer state.

    ``w_i(t) = exp(-i eps_i t) exp(-i (H_env + coupling_i) t)``; the
    qubit self-energy rides along as a global phase so that the joint
    evolution operator assembled from these blocks is exact.
    """
    w0 = np.exp(-1j * model.eps0 * t) * unitary_exp(
        model.env_hamiltonian + model.coupling0, t
    )
    w1 = np.exp(-1j * model.eps1 * t) * unitary_exp(
        model.env_hamiltonian + model.coupling1, t
    )
    return w0, w1


def joint_evolution_operator(model: DephasingModel, t: float) -> np.ndarray:
    """Full evolution operator, block diagonal in the pointer basis."""
    w0, w1 = conditional_evolutions(model, t)
    n = model.env_dim
    u = np.zeros((2 * n, 2 * n), dtype=complex)
    u[:n, :n] = w0
    u[n:, n:] = w1
    return u


def evolve_joint(
    psi: QubitPureState,
    env: EnvironmentState,
    model: DephasingModel,
    t: float,
) -> JointState:
    """Exact joint state at time ``t`` from the product initial state."""
    if env.dim != model.env_dim:
        raise ValueError(
            f"environment dim {env.dim} does not match model dim {model.env_dim}"
        )
    u = joint_evolution_operator(model, t)
    sigma0 = tensor(psi.density(), env.rho0)
    sigma = u @ sigma0 @ u.conj().T
    sigma = (sigma + sigma.conj().T) / 2
    return JointState(sigma, (2, model.env_dim))


def qubit_blocks(sigma: JointState) -> np.ndarray:
    """Environment-space blocks ``<k| sigma |q>``, shape ``(2, 2, N, N)``."""
    if sigma.dims[0] != 2:
        raise ValueError("qubit_blocks requires a single-qubit system side")
    n = sigma.dims[1]
    return sigma.matrix.reshape(2, n, 2, n).transpose(0, 2, 1, 3)


def qubit_coherence(sigma: JointState) -> float:
    """Magnitude of the off-diagonal element of the reduced qubit state."""
    if sigma.dims[0] != 2:
        raise ValueError("qubit_coherence requires a single-qubit system side")
    rho_q = partial_trace(sigma.matrix, sigma.dims, keep=0)
    return float(abs(rho_q[0, 1]))
