"""Bell pair with one qubit locally coupled to a small environment.

The initial state is ``(|00> + |11>)/sqrt(2)`` of the two qubits times
an arbitrary environment density matrix; only qubit A couples.  The
pair never leaves the span of ``|00>`` and ``|11>``, so its
entanglement reduces to the single coherence between those states,
with a closed form in the common eigenbasis that is cross-checked
against an independent Wootters-concurrence computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qecorr.correlations import EigenphaseDecomposition, joint_eigenbasis
from qecorr.linalg import (
    DEFAULT_TOL,
    InvariantViolationError,
    as_complex_matrix,
    check_hermitian,
    partial_trace,
    partial_transpose,
    unitary_exp,
)
from qecorr.model import EnvironmentState, JointState, _frozen_array
from qecorr.timeseries import TimeSeries

_PAULI_YY = np.zeros((4, 4), dtype=complex)
_PAULI_YY[0, 3] = _PAULI_YY[3, 0] = -1.0
_PAULI_YY[1, 2] = _PAULI_YY[2, 1] = 1.0


@dataclass(frozen=True)
class TwoQubitModel:
    """Two qubits, one locally coupled to an environment."""

    env_hamiltonian: np.ndarray
    coupling_a: np.ndarray
    env: EnvironmentState
    eps_a: float = 0.0
    eps_b: float = 0.0

    def __post_init__(self):
        h = check_hermitian(self.env_hamiltonian, name="env_hamiltonian")
        v = check_hermitian(self.coupling_a, name="coupling_a")
        if h.shape != v.shape or h.shape[0] != self.env.dim:
            raise ValueError(
                f"operator dims {h.shape}, {v.shape} inconsistent with "
                f"environment dim {self.env.dim}"
            )
        object.__setattr__(self, "env_hamiltonian", _frozen_array(h))
        object.__setattr__(self, "coupling_a", _frozen_array(v))

    @property
    def env_dim(self) -> int:
        return self.env.dim


@dataclass(frozen=True)
class CycleTimes:
    """Revival and midcycle times of the static-eigenbasis entanglement cycle."""

    phi0: float
    phi1: float
    period: float
    t_p: tuple[float, ...]
    t_q: tuple[float, ...]


def pair_mismatch_operator(model: TwoQubitModel, t: float) -> np.ndarray:
    """Environment unitary felt by the coupled branch, self-energy phases included."""
    return np.exp(-1j * (model.eps_a + model.eps_b) * t) * unitary_exp(
        model.env_hamiltonian + model.coupling_a, t
    )


def evolve_bell(model: TwoQubitModel, t: float) -> JointState:
    """Exact pair-environment state at time ``t``; dims ``(4, env_dim)``.

    The state is supported on the ``|00>``, ``|11>`` two-qubit subspace
    with environment blocks ``rho0 / 2``, ``rho0 w(t) / 2`` and
    ``w(t)^dag rho0 w(t) / 2``, where ``w`` is the branch mismatch
    unitary.  The free environment evolution shared by both branches is
    a local frame choice and drops out of every reported quantity.
    """
    n = model.env_dim
    w = pair_mismatch_operator(model, t)
    rho = model.env.rho0
    sigma = np.zeros((4, n, 4, n), dtype=complex)
    sigma[0, :, 0, :] = rho / 2
    sigma[0, :, 3, :] = rho @ w / 2
    sigma[3, :, 0, :] = w.conj().T @ rho / 2
    sigma[3, :, 3, :] = w.conj().T @ rho @ w / 2
    return JointState(sigma.reshape(4 * n, 4 * n), (4, n))


def pair_eigenbasis(model: TwoQubitModel, t: float, tol: float = DEFAULT_TOL) -> EigenphaseDecomposition:
    """Common eigenbasis of the environment state and the branch mismatch unitary."""
    return joint_eigenbasis(model.env.rho0, pair_mismatch_operator(model, t), tol)


def concurrence_closed_form(decomp: EigenphaseDecomposition) -> float:
    """``|sum_n c_n exp(i phase_n)|``: pair concurrence of the restricted state."""
    return float(abs(np.sum(decomp.weights * np.exp(1j * decomp.phases))))


def _psd_sqrt(rho: np.ndarray, floor: float = 1e-13) -> np.ndarray:
    w, v = np.linalg.eigh(rho)
    w = np.where(w > floor * max(1.0, float(w.max())), w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def wootters_concurrence(rho) -> float:
    """Two-qubit concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_i`` are computed as singular values of
    ``sqrt(rho) (sy x sy) sqrt(rho)^*``, which matches the usual
    square-rooted eigenvalues of ``rho rho~`` but stays accurate when
    the state is rank deficient.
    """
    a = as_complex_matrix(rho, "rho")
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-qubit state, got {a.shape}")
    s = _psd_sqrt(a)
    lam = np.linalg.svd(s @ _PAULI_YY @ s.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def negativity(rho, dims, cut) -> float:
    """Absolute sum of negative partial-transpose eigenvalues across ``cut``.

    ``cut`` lists the subsystem indices forming one side of the
    bipartition (the side that gets transposed).  A Bell pair gives
    1/2 in this convention.
    """
    a = as_complex_matrix(rho, "rho")
    dims = tuple(int(d) for d in dims)
    cut = (cut,) if isinstance(cut, (int, np.integer)) else tuple(int(c) for c in cut)
    if not cut or not set(cut) < set(range(len(dims))) or len(set(cut)) != len(cut):
        raise ValueError(f"cut {cut} is not a proper bipartition of {len(dims)} subsystems")
    pt = partial_transpose(a, dims, cut)
    eig = np.linalg.eigvalsh(pt)
    return float(-eig[eig < 0].sum())


def cycle_times(phi0: float, phi1: float, count: int = 3) -> CycleTimes:
    """Revival times ``t_p`` and midcycle times ``t_q`` for static eigenphases.

    With eigenphases ``phi_n t`` the pair state revives whenever the
    two branch phases realign (``t_p``) and reaches its entanglement
    minimum when they are opposite (``t_q``), i.e. at odd multiples of
    half the period ``2 pi / |phi1 - phi0|``.
    """
    gap = abs(phi1 - phi0)
    if gap == 0.0:
        raise ValueError("equal eigenphase rates: no dephasing cycle exists")
    if count < 1:
        raise ValueError("count must be positive")
    period = 2 * np.pi / gap
    t_p = tuple(p * period for p in range(count))
    t_q = tuple((2 * q + 1) * np.pi / gap for q in range(count))
    for tq in t_q:
        if abs(np.exp(1j * phi0 * tq) + np.exp(1j * phi1 * tq)) > 1e-9:
            raise InvariantViolationError("midcycle time does not oppose the branch phases")
    for tp in t_p:
        if abs(np.exp(1j * phi0 * tp) - np.exp(1j * phi1 * tp)) > 1e-9:
            raise InvariantViolationError("revival time does not realign the branch phases")
    return CycleTimes(phi0=phi0, phi1=phi1, period=period, t_p=t_p, t_q=t_q)


def diagonal_pair_model(c0: float, phi0: float = 0.0, phi1: float = 1.0) -> TwoQubitModel:
    """Minimal qubit-environment realization of the static-eigenbasis cycle.

    A qubit environment prepared diagonal with weights ``(c0, 1 - c0)``
    and coupling ``diag(phi0, phi1)``, free Hamiltonian and qubit
    self-energies zero.
    """
    if not 0.0 <= c0 <= 1.0:
        raise ValueError(f"c0 must lie in [0, 1], got {c0}")
    env = EnvironmentState(np.diag([c0, 1.0 - c0]).astype(complex))
    return TwoQubitModel(
        env_hamiltonian=np.zeros((2, 2), dtype=complex),
        coupling_a=np.diag([phi0, phi1]).astype(complex),
        env=env,
    )


def fig1_curve(c0: float, phi_gap: float = 1.0, samples: int = 129) -> TimeSeries:
    """Pair concurrence over one full cycle for the minimal diagonal model.

    Every sample of the closed form is cross-checked against the
    Wootters concurrence of the reduced state of the full evolution;
    the two computations share no code path.
    """
    if not 0.5 <= c0 <= 1.0:
        raise ValueError(f"c0 must lie in [1/2, 1], got {c0}")
    if phi_gap <= 0.0:
        raise ValueError("phi_gap must be positive")
    if samples < 2:
        raise ValueError("need at least two samples")
    model = diagonal_pair_model(c0, 0.0, phi_gap)
    period = 2 * np.pi / phi_gap
    series = TimeSeries(("c0", "t", "t_normalized", "concurrence"))
    for t in np.linspace(0.0, period, samples):
        closed = concurrence_closed_form(pair_eigenbasis(model, t))
        sigma = evolve_bell(model, t)
        reduced = partial_trace(sigma.matrix, (2, 2, sigma.dims[1]), keep=(0, 1))
        oracle = wootters_concurrence(reduced)
        if abs(closed - oracle) > 1e-10:
            raise InvariantViolationError(
                f"closed-form concurrence {closed!r} disagrees with "
                f"Wootters value {oracle!r} at t={t!r}"
            )
        series.append(float(c0), float(t), float(t / period), closed)
    return series
