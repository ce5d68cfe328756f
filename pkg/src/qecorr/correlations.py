"""Correlation detectors for pure-dephasing joint states.

Three detectors are implemented, each returning a raw Frobenius
residual next to its boolean verdict so that any verdict can be
re-derived at a different tolerance:

* separability of the joint state (commutator form and conjugated
  form, which are asserted to agree),
* zero discord with respect to the environment (the six block
  commutation conditions, evaluated literally),
* zero discord with respect to the qubit (pairwise commutators of the
  two-by-two blocks in the common eigenbasis).

A brute-force discord oracle built on the original entropic definition
(projective qubit measurements minimized over the Bloch sphere) and
the general block criterion for zero discord provide cross-checks that
share no code path with the detectors above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from qecorr.linalg import (
    DEFAULT_TOL,
    InvariantViolationError,
    as_complex_matrix,
    commutator_residual,
    hermitian_eig,
    residual_verdict,
)
from qecorr.model import (
    DephasingModel,
    EnvironmentState,
    QubitPureState,
    conditional_evolutions,
)

# Weights below this cutoff are treated as absent in "for all n with
# c_n != 0" conditions.
ACTIVE_WEIGHT_CUTOFF = 1e-12

# Relative gap below which eigenvalues of rho0 count as degenerate.
CLUSTER_GAP = 1e-9

# Reconstruction tolerance for the common eigenbasis.
RECONSTRUCTION_TOL = 1e-9


class NotSeparableError(ValueError):
    """Raised when a common eigenbasis is requested for an entangled state."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class CorrelationReport:
    """Residuals and verdicts of the three detectors at one time."""

    t: float
    sep_residual: float
    separable: bool
    env_discord_residual: float
    env_zero_discord: bool
    qubit_discord_residual: float
    qubit_zero_discord: bool
    tolerance_used: float


@dataclass(frozen=True)
class EigenphaseDecomposition:
    """Common eigenbasis of the initial environment state and the mismatch unitary.

    ``basis`` holds the eigenvectors as columns, ``weights`` the
    environment eigenvalues in that basis, and ``phases`` the mismatch
    eigenphases in ``(-pi, pi]`` with the convention that the mismatch
    operator reconstructs as ``sum_n exp(-i phase_n) |n><n|``.
    """

    basis: np.ndarray
    weights: np.ndarray
    phases: np.ndarray


@dataclass(frozen=True)
class RijFamily:
    """The four conditionally evolved environment matrices ``w_i rho0 w_j^dag``."""

    r00: np.ndarray
    r01: np.ndarray
    r10: np.ndarray
    r11: np.ndarray

    def pairs(self):
        return (
            (self.r00, self.r11),
            (self.r00, self.r01),
            (self.r00, self.r10),
            (self.r11, self.r01),
            (self.r11, self.r10),
            (self.r01, self.r10),
        )


def dephasing_operator(model: DephasingModel, t: float) -> np.ndarray:
    """Mismatch unitary ``w0^dag(t) w1(t)`` that drives all decoherence."""
    w0, w1 = conditional_evolutions(model, t)
    return w0.conj().T @ w1


def separability_residuals(
    env: EnvironmentState, model: DephasingModel, t: float
) -> tuple[float, float, float]:
    """Commutator-form and conjugated-form residuals plus their common scale."""
    w0, w1 = conditional_evolutions(model, t)
    w = w0.conj().T @ w1
    rho = env.rho0
    res_comm = commutator_residual(rho, w)
    res_conj = float(
        np.linalg.norm(w0.conj().T @ rho @ w0 - w1.conj().T @ rho @ w1)
    )
    scale = float(np.linalg.norm(rho)) * float(np.linalg.norm(w))
    return res_comm, res_conj, scale


def separability_check(
    env: EnvironmentState,
    model: DephasingModel,
    t: float,
    tol: float = DEFAULT_TOL,
) -> tuple[bool, float]:
    """Zero-entanglement test for the state generated at time ``t``.

    The verdict comes from the commutator of the initial environment
    state with the mismatch unitary; the equivalent conjugated form is
    evaluated as well and the two verdicts must agree.
    """
    res_comm, res_conj, scale = separability_residuals(env, model, t)
    separable = residual_verdict(res_comm, tol, scale)
    if separable != residual_verdict(res_conj, tol, scale):
        raise InvariantViolationError(
            "separability criterion forms disagree: "
            f"commutator residual {res_comm:.3e}, conjugated residual {res_conj:.3e}"
        )
    return separable, res_comm


def build_Rij(env: EnvironmentState, model: DephasingModel, t: float) -> RijFamily:
    w0, w1 = conditional_evolutions(model, t)
    rho = env.rho0
    return RijFamily(
        r00=w0 @ rho @ w0.conj().T,
        r01=w0 @ rho @ w1.conj().T,
        r10=w1 @ rho @ w0.conj().T,
        r11=w1 @ rho @ w1.conj().T,
    )


def env_discord_check(family: RijFamily, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Zero discord with respect to the environment via the block conditions.

    All six pairwise commutators of the conditionally evolved
    environment matrices are evaluated literally; the normality of the
    off-diagonal block coincides with the last of them.  The residual
    is the largest Frobenius norm found.
    """
    residual = max(commutator_residual(a, b) for a, b in family.pairs())
    norms = [float(np.linalg.norm(m)) for m in (family.r00, family.r01, family.r10, family.r11)]
    scale = max(norms) ** 2
    return residual_verdict(residual, tol, scale), residual


def joint_eigenbasis(rho0, w, tol: float = DEFAULT_TOL) -> EigenphaseDecomposition:
    """Diagonalize a density matrix and a unitary in one orthonormal basis.

    The density matrix is diagonalized first; within every cluster of
    degenerate eigenvalues the projected unitary is diagonalized by a
    complex Schur decomposition (diagonal there because the projection
    of a commuting unitary onto an invariant subspace is normal).
    Raises :class:`NotSeparableError` when no common basis exists.
    """
    rho0 = as_complex_matrix(rho0, "rho0")
    w = as_complex_matrix(w, "w")
    res = commutator_residual(rho0, w)
    scale = float(np.linalg.norm(rho0)) * float(np.linalg.norm(w))
    if not residual_verdict(res, tol, scale):
        raise NotSeparableError("no common eigenbasis: operators do not commute", res)

    weights, basis = hermitian_eig(rho0)
    n = rho0.shape[0]
    gap = CLUSTER_GAP * max(1.0, float(np.linalg.norm(rho0)))
    phases = np.zeros(n)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and weights[stop] - weights[stop - 1] < gap:
            stop += 1
        block = basis[:, start:stop]
        wb = block.conj().T @ w @ block
        if stop - start == 1:
            lam = np.array([wb[0, 0]])
        else:
            tmat, z = scipy.linalg.schur(wb, output="complex")
            block = block @ z
            lam = np.diagonal(tmat).copy()
        phi = -np.angle(lam)
        phi = np.where(phi <= -np.pi, phi + 2 * np.pi, phi)
        order = np.argsort(phi, kind="stable")
        basis[:, start:stop] = block[:, order]
        phases[start:stop] = phi[order]
        start = stop

    recon_rho = (basis * weights) @ basis.conj().T
    recon_w = (basis * np.exp(-1j * phases)) @ basis.conj().T
    err = max(
        float(np.linalg.norm(recon_rho - rho0)),
        float(np.linalg.norm(recon_w - w)),
    )
    if not residual_verdict(err, RECONSTRUCTION_TOL, scale):
        raise NotSeparableError("common eigenbasis reconstruction failed", err)
    return EigenphaseDecomposition(basis=basis, weights=np.clip(weights, 0.0, None), phases=phases)


def simultaneous_eigenbasis(
    env: EnvironmentState,
    model: DephasingModel,
    t: float,
    tol: float = DEFAULT_TOL,
) -> EigenphaseDecomposition:
    """Common eigenbasis of the initial environment state and the mismatch unitary."""
    return joint_eigenbasis(env.rho0, dephasing_operator(model, t), tol)


def qubit_discord_check(
    psi: QubitPureState,
    decomp: EigenphaseDecomposition,
    tol: float = DEFAULT_TOL,
) -> tuple[bool, float]:
    """Zero discord with respect to the qubit for a separable state.

    In the common eigenbasis the joint state is a mixture of weighted
    two-by-two qubit blocks, one per environment eigenvector; discord
    with respect to the qubit vanishes exactly when all blocks with
    non-negligible weight commute pairwise.
    """
    a2 = abs(psi.alpha) ** 2
    b2 = abs(psi.beta) ** 2
    ab = psi.alpha * np.conj(psi.beta)
    active = np.flatnonzero(decomp.weights > ACTIVE_WEIGHT_CUTOFF)
    blocks = []
    for idx in active:
        phase = np.exp(1j * decomp.phases[idx])
        blocks.append(
            decomp.weights[idx]
            * np.array([[a2, ab * phase], [np.conj(ab * phase), b2]], dtype=complex)
        )
    residual = 0.0
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            residual = max(residual, commutator_residual(blocks[i], blocks[j]))
    scale = max((float(np.linalg.norm(b)) for b in blocks), default=0.0) ** 2
    return residual_verdict(residual, tol, scale), residual


def analyze(
    psi: QubitPureState,
    env: EnvironmentState,
    model: DephasingModel,
    t: float,
    tol: float = DEFAULT_TOL,
) -> CorrelationReport:
    """Run all three detectors on the state generated at time ``t``.

    The qubit-side check needs the common eigenbasis and therefore only
    runs on separable states; entangled states are always discordant
    with respect to both subsystems, so the separability residual is
    reported for the qubit side in that case.
    """
    if abs(psi.alpha) * abs(psi.beta) <= ACTIVE_WEIGHT_CUTOFF:
        # Pointer initial state: the joint state stays a product.
        return CorrelationReport(
            t=t,
            sep_residual=0.0,
            separable=True,
            env_discord_residual=0.0,
            env_zero_discord=True,
            qubit_discord_residual=0.0,
            qubit_zero_discord=True,
            tolerance_used=tol,
        )
    separable, sep_res = separability_check(env, model, t, tol)
    env_zero, env_res = env_discord_check(build_Rij(env, model, t), tol)
    if separable:
        try:
            decomp = simultaneous_eigenbasis(env, model, t, tol)
            qubit_zero, qubit_res = qubit_discord_check(psi, decomp, tol)
        except NotSeparableError as exc:
            qubit_zero, qubit_res = False, exc.residual
    else:
        qubit_zero, qubit_res = False, sep_res
    return CorrelationReport(
        t=t,
        sep_residual=sep_res,
        separable=separable,
        env_discord_residual=env_res,
        env_zero_discord=env_zero,
        qubit_discord_residual=qubit_res,
        qubit_zero_discord=qubit_zero,
        tolerance_used=tol,
    )


# ---------------------------------------------------------------------------
# Independent cross-checks: block criterion and entropic discord oracle.


def block_discord_check(
    sigma, dims: tuple[int, int], measured: int, tol: float = DEFAULT_TOL
) -> tuple[bool, float]:
    """General zero-discord block criterion for a bipartite state.

    Partition the density matrix into blocks indexed by the unmeasured
    subsystem; the state has zero discord with respect to ``measured``
    exactly when every block is normal and all blocks commute pairwise.
    """
    a = as_complex_matrix(sigma, "sigma")
    d0, d1 = (int(d) for d in dims)
    if d0 * d1 != a.shape[0]:
        raise ValueError(f"dims {dims} do not match matrix dim {a.shape[0]}")
    if measured not in (0, 1):
        raise ValueError("measured must be 0 or 1")
    resh = a.reshape(d0, d1, d0, d1)
    if measured == 1:
        blocks = [resh[k, :, q, :] for k in range(d0) for q in range(d0)]
    else:
        blocks = [resh[:, k, :, q] for k in range(d1) for q in range(d1)]
    residual = 0.0
    for i, b in enumerate(blocks):
        residual = max(residual, commutator_residual(b, b.conj().T))
        for c in blocks[i + 1 :]:
            residual = max(residual, commutator_residual(b, c))
    scale = max(float(np.linalg.norm(b)) for b in blocks) ** 2
    return residual_verdict(residual, tol, scale), residual


def _entropy_bits(eigenvalues: np.ndarray) -> float:
    lam = np.clip(np.asarray(eigenvalues, dtype=float), 0.0, None)
    lam = lam[lam > 1e-18]
    return float(-(lam * np.log2(lam)).sum())


def discord_oracle(
    sigma,
    dims: tuple[int, int],
    measured: int = 1,
    grid: tuple[int, int] = (60, 120),
) -> float:
    """Quantum discord from the original entropic definition, by brute force.

    The measured subsystem must be a qubit.  Projective measurements
    are parameterized on the Bloch sphere, the classical correlation
    is maximized over a ``grid`` of (polar, azimuthal) angles followed
    by a golden-section refinement around the grid optimum, and the
    discord is the gap to the quantum mutual information.  Base-2
    logarithms throughout; the result is an upper bound on the true
    discord by construction.
    """
    a = as_complex_matrix(sigma, "sigma")
    d0, d1 = (int(d) for d in dims)
    if d0 * d1 != a.shape[0]:
        raise ValueError(f"dims {dims} do not match matrix dim {a.shape[0]}")
    if measured not in (0, 1):
        raise ValueError("measured must be 0 or 1")
    if (d1 if measured == 1 else d0) != 2:
        raise ValueError("measured subsystem must be a qubit")
    if d0 * d1 > 16:
        raise ValueError("oracle limited to total dimension 16")

    resh = a.reshape(d0, d1, d0, d1)
    if measured == 0:
        resh = resh.transpose(1, 0, 3, 2)
        d0, d1 = d1, d0
    # blocks[m, n] is the unmeasured-side operator multiplying |m><n|
    # of the measured qubit.
    blocks = resh.transpose(1, 3, 0, 2)
    rho_a = blocks[0, 0] + blocks[1, 1]
    rho_m = np.einsum("imin->mn", resh)

    s_m = _entropy_bits(np.linalg.eigvalsh(rho_m))
    s_tot = _entropy_bits(np.linalg.eigvalsh(a))

    def conditional_term(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
        v = np.stack(
            [np.cos(theta / 2), np.sin(theta / 2) * np.exp(1j * phi)], axis=-1
        )
        cond0 = np.einsum("mnij,gn,gm->gij", blocks, v, v.conj())
        cond1 = rho_a[None, :, :] - cond0
        term = np.zeros(v.shape[0])
        for cond in (cond0, cond1):
            cond = (cond + np.conj(np.swapaxes(cond, 1, 2))) / 2
            lam = np.clip(np.linalg.eigvalsh(cond), 0.0, None)
            p = lam.sum(axis=1)
            ratio = lam / np.where(p[:, None] > 1e-18, p[:, None], 1.0)
            contrib = np.where(ratio > 1e-18, lam * np.log2(np.where(ratio > 1e-18, ratio, 1.0)), 0.0)
            term -= contrib.sum(axis=1)
        return term

    g_theta, g_phi = grid
    thetas = np.linspace(0.0, np.pi, g_theta)
    phis = np.linspace(0.0, 2 * np.pi, g_phi, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    values = conditional_term(tt.ravel(), pp.ravel())
    k = int(np.argmin(values))
    best_theta, best_phi, best = tt.ravel()[k], pp.ravel()[k], float(values[k])

    def f_theta(x):
        return float(conditional_term(np.array([x]), np.array([best_phi]))[0])

    def f_phi(x):
        return float(conditional_term(np.array([best_theta]), np.array([x]))[0])

    d_theta = np.pi / (g_theta - 1)
    d_phi = 2 * np.pi / g_phi
    for _ in range(2):
        best_theta, v1 = _golden_min(
            f_theta, max(0.0, best_theta - d_theta), min(np.pi, best_theta + d_theta)
        )
        best_phi, v2 = _golden_min(f_phi, best_phi - d_phi, best_phi + d_phi)
        best = min(best, v1, v2)
        d_theta /= 4
        d_phi /= 4

    return s_m - s_tot + best


def _golden_min(f, lo: float, hi: float, iters: int = 40) -> tuple[float, float]:
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


# ---------------------------------------------------------------------------
# Seeded random instances for verification campaigns.


def random_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Hermitian matrix with independent complex-Gaussian entries, symmetrized."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (g + g.conj().T) / 2


def ginibre_density(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random density matrix ``G G^dag / tr(G G^dag)`` with Ginibre ``G``."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_pure_density(n: int, rng: np.random.Generator) -> np.ndarray:
    """Rank-one density matrix of a Gaussian-random normalized vector."""
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_instance(
    kind: str, n: int, rng: np.random.Generator
) -> tuple[EnvironmentState, DephasingModel]:
    """One seeded (environment, model) pair from a named instance class.

    ``random``: generic non-commuting operators (entangling at generic
    times).  ``diagonal``: everything diagonal in one basis (separable
    at every time by construction).  ``pure_env``: pure initial
    environment with generic couplings (entangling whenever dephasing
    occurs).
    """
    if kind == "random":
        env = EnvironmentState(ginibre_density(n, rng))
        model = DephasingModel(
            env_hamiltonian=random_hermitian(n, rng),
            coupling0=random_hermitian(n, rng),
            coupling1=random_hermitian(n, rng),
        )
    elif kind == "diagonal":
        weights = rng.random(n)
        weights /= weights.sum()
        env = EnvironmentState(np.diag(weights).astype(complex))
        model = DephasingModel(
            env_hamiltonian=np.diag(rng.normal(size=n)).astype(complex),
            coupling0=np.diag(rng.normal(size=n)).astype(complex),
            coupling1=np.diag(rng.normal(size=n)).astype(complex),
        )
    elif kind == "pure_env":
        env = EnvironmentState(random_pure_density(n, rng))
        model = DephasingModel(
            env_hamiltonian=random_hermitian(n, rng),
            coupling0=random_hermitian(n, rng),
            coupling1=random_hermitian(n, rng),
        )
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    return env, model
