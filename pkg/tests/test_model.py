import numpy as np
import pytest

from qecorr.correlations import ginibre_density, random_hermitian, random_instance
from qecorr.linalg import partial_trace, tensor, unitary_exp
from qecorr.model import (
    DephasingModel,
    EnvironmentState,
    QubitPureState,
    conditional_evolutions,
    evolve_joint,
    joint_evolution_operator,
    qubit_blocks,
    qubit_coherence,
)

PAULI_Z = np.diag([1.0, -1.0]).astype(complex)


def generic_model(rng, n=3):
    return DephasingModel(
        env_hamiltonian=random_hermitian(n, rng),
        coupling0=random_hermitian(n, rng),
        coupling1=random_hermitian(n, rng),
        eps0=0.4,
        eps1=-0.9,
    )


def test_model_rejects_mismatched_dims(rng):
    with pytest.raises(ValueError):
        DephasingModel(
            env_hamiltonian=random_hermitian(2, rng),
            coupling0=random_hermitian(3, rng),
            coupling1=random_hermitian(3, rng),
        )


def test_qubit_state_rejects_unnormalized():
    with pytest.raises(ValueError):
        QubitPureState(1.0, 0.5)


def test_conditional_evolutions_at_t0(rng):
    w0, w1 = conditional_evolutions(generic_model(rng), 0.0)
    assert np.allclose(w0, np.eye(3), atol=1e-14)
    assert np.allclose(w1, np.eye(3), atol=1e-14)


def test_symmetric_coupling_gives_equal_branches(rng):
    v = random_hermitian(3, rng)
    model = DephasingModel(
        env_hamiltonian=random_hermitian(3, rng), coupling0=v, coupling1=v, eps0=0.3, eps1=0.3
    )
    for t in (0.4, 1.9, 5.0):
        w0, w1 = conditional_evolutions(model, t)
        assert np.linalg.norm(w0 - w1) <= 1e-12


def test_conditional_closed_form_pauli_z():
    g = 0.8
    model = DephasingModel(
        env_hamiltonian=np.zeros((2, 2)), coupling0=np.zeros((2, 2)), coupling1=g * PAULI_Z
    )
    for t in (0.3, 2.2):
        _, w1 = conditional_evolutions(model, t)
        assert np.allclose(w1, np.diag([np.exp(-1j * g * t), np.exp(1j * g * t)]), atol=1e-12)


def test_joint_operator_matches_full_hamiltonian_exponential(rng):
    # Independent route: exponentiate the assembled 2N-dimensional
    # Hamiltonian including the qubit self-energies.
    model = generic_model(rng)
    n = model.env_dim
    h_full = (
        tensor(np.diag([model.eps0, model.eps1]), np.eye(n))
        + tensor(np.eye(2), model.env_hamiltonian)
        + tensor(np.diag([1.0, 0.0]), model.coupling0)
        + tensor(np.diag([0.0, 1.0]), model.coupling1)
    )
    for t in (0.0, 0.7, 3.1):
        assert np.linalg.norm(joint_evolution_operator(model, t) - unitary_exp(h_full, t)) <= 1e-10


def test_joint_operator_group_inverse(rng):
    model = generic_model(rng)
    u = joint_evolution_operator(model, 1.3) @ joint_evolution_operator(model, -1.3)
    assert np.linalg.norm(u - np.eye(2 * model.env_dim)) <= 1e-10


def test_joint_operator_pointer_action(rng):
    model = generic_model(rng)
    w0, _ = conditional_evolutions(model, 0.9)
    n = model.env_dim
    for k in range(n):
        vec = np.zeros(2 * n, dtype=complex)
        vec[k] = 1.0  # |0> x |k>
        out = joint_evolution_operator(model, 0.9) @ vec
        assert np.array_equal(out[:n], w0[:, k])
        assert np.all(out[n:] == 0)


def test_evolve_joint_t0_is_product(rng):
    model = generic_model(rng)
    env = EnvironmentState(ginibre_density(3, rng))
    psi = QubitPureState(np.sqrt(0.4), np.sqrt(0.6) * 1j)
    sigma = evolve_joint(psi, env, model, 0.0)
    assert np.linalg.norm(sigma.matrix - tensor(psi.density(), env.rho0)) <= 1e-12


def test_evolve_joint_pointer_initial_state_stays_product(rng):
    model = generic_model(rng)
    env = EnvironmentState(ginibre_density(3, rng))
    psi = QubitPureState(1.0, 0.0)
    for t in (0.8, 2.5):
        sigma = evolve_joint(psi, env, model, t)
        w0, _ = conditional_evolutions(model, t)
        expect = tensor(np.diag([1.0, 0.0]), w0 @ env.rho0 @ w0.conj().T)
        assert np.linalg.norm(sigma.matrix - expect) <= 1e-12
        assert qubit_coherence(sigma) <= 1e-14


def test_populations_and_spectrum_conserved(rng):
    env, model = random_instance("random", 4, rng)
    psi = QubitPureState(np.sqrt(0.3), np.sqrt(0.7))
    ref = np.linalg.eigvalsh(evolve_joint(psi, env, model, 0.0).matrix)
    for t in np.linspace(0.0, 5.0, 7):
        sigma = evolve_joint(psi, env, model, t)
        pops = np.diag(partial_trace(sigma.matrix, sigma.dims, keep=0)).real
        assert abs(pops[0] - 0.3) <= 1e-12
        assert abs(pops[1] - 0.7) <= 1e-12
        assert abs(np.trace(sigma.matrix) - 1.0) <= 1e-12
        assert np.max(np.abs(np.linalg.eigvalsh(sigma.matrix) - ref)) <= 1e-10


def test_coherence_initial_and_pointer_cases(rng):
    env, model = random_instance("random", 2, rng)
    psi = QubitPureState(1 / np.sqrt(2), 1 / np.sqrt(2))
    assert abs(qubit_coherence(evolve_joint(psi, env, model, 0.0)) - 0.5) <= 1e-12


def test_coherence_factorizes_through_mismatch(rng):
    env, model = random_instance("random", 3, rng)
    psi = QubitPureState(np.sqrt(0.8), np.sqrt(0.2) * np.exp(0.3j))
    for t in (0.6, 1.7, 4.4):
        sigma = evolve_joint(psi, env, model, t)
        w0, w1 = conditional_evolutions(model, t)
        expect = abs(psi.alpha * np.conj(psi.beta)) * abs(
            np.trace(env.rho0 @ w0.conj().T @ w1)
        )
        assert abs(qubit_coherence(sigma) - expect) <= 1e-10


def test_qubit_blocks_product_state(rng):
    env = EnvironmentState(ginibre_density(3, rng))
    psi = QubitPureState(np.sqrt(0.4), np.sqrt(0.6))
    model = DephasingModel(
        env_hamiltonian=np.zeros((3, 3)), coupling0=np.zeros((3, 3)), coupling1=np.zeros((3, 3))
    )
    blocks = qubit_blocks(evolve_joint(psi, env, model, 0.0))
    ab = psi.alpha * np.conj(psi.beta)
    assert np.linalg.norm(blocks[0, 1] - ab * env.rho0) <= 1e-12


def test_qubit_blocks_match_independent_construction(rng):
    env, model = random_instance("random", 3, rng)
    psi = QubitPureState(np.sqrt(0.55), np.sqrt(0.45) * np.exp(-0.7j))
    for t in (0.5, 2.1):
        blocks = qubit_blocks(evolve_joint(psi, env, model, t))
        w0, w1 = conditional_evolutions(model, t)
        ab = psi.alpha * np.conj(psi.beta)
        assert np.linalg.norm(blocks[0, 0] - abs(psi.alpha) ** 2 * w0 @ env.rho0 @ w0.conj().T) <= 1e-12
        assert np.linalg.norm(blocks[0, 1] - ab * w0 @ env.rho0 @ w1.conj().T) <= 1e-12
        assert np.linalg.norm(blocks[0, 1] - blocks[1, 0].conj().T) <= 1e-14
        assert abs(np.trace(blocks[0, 0]).real - 0.55) <= 1e-12
        assert abs(np.trace(blocks[0, 0] + blocks[1, 1]).real - 1.0) <= 1e-12
