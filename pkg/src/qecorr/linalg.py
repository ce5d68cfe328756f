"""Dense complex linear algebra shared by every other module.

Operators are plain ``numpy`` arrays of ``complex128``; this module
provides the structure checks (Hermitian, unitary, density matrix) and
the handful of exact primitives everything else is built from:
spectral eigendecomposition, unitary exponentials, Kronecker products,
partial traces/transposes and commutator residuals.  All norms are
Frobenius.
"""

from __future__ import annotations

import math

import numpy as np

# Single global knob for boolean criterion verdicts (relative residual).
DEFAULT_TOL = 1e-9

# Structural tolerances for operator validation.
HERM_TOL = 1e-10
UNIT_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-12


class InvariantViolationError(RuntimeError):
    """An internal cross-check that must hold by construction failed."""


def as_complex_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a square, finite complex matrix or raise ``ValueError``."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name}: expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError(f"{name}: entries must be finite")
    return a


def check_hermitian(m, tol: float = HERM_TOL, name: str = "operator") -> np.ndarray:
    """Validate self-adjointness within ``tol * ||M||_F`` and return the array."""
    a = as_complex_matrix(m, name)
    if np.linalg.norm(a - a.conj().T) > tol * max(1.0, np.linalg.norm(a)):
        raise ValueError(f"{name}: not Hermitian within tolerance {tol}")
    return a


def check_unitary(m, tol: float = UNIT_TOL, name: str = "operator") -> np.ndarray:
    a = as_complex_matrix(m, name)
    if np.linalg.norm(a @ a.conj().T - np.eye(a.shape[0])) > tol:
        raise ValueError(f"{name}: not unitary within tolerance {tol}")
    return a


def check_density(m, name: str = "density matrix") -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity of a density matrix."""
    a = check_hermitian(m, name=name)
    if abs(np.trace(a).real - 1.0) > TRACE_TOL or abs(np.trace(a).imag) > TRACE_TOL:
        raise ValueError(f"{name}: trace must be 1, got {np.trace(a)}")
    if np.linalg.eigvalsh(a).min() < -PSD_TOL:
        raise ValueError(f"{name}: not positive semidefinite")
    return a


def hermitian_eig(h, tol: float = HERM_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix with a fixed convention.

    Eigenvalues come back ascending; each eigenvector is rephased so
    that its first component of non-negligible magnitude is real and
    positive, which makes the decomposition deterministic for repeated
    calls on identical input.

    Returns
    -------
    (eigenvalues, eigenvectors) : the columns of ``eigenvectors`` match
        the order of ``eigenvalues`` and satisfy ``H = V diag(w) V^dag``.
    """
    a = check_hermitian(h, tol=tol)
    w, v = np.linalg.eigh(a)
    v = _fix_column_phases(v)
    return w, v


def _fix_column_phases(v: np.ndarray, cutoff: float = 1e-12) -> np.ndarray:
    v = v.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        nz = np.flatnonzero(np.abs(col) > cutoff)
        k = nz[0] if nz.size else 0
        phase = col[k] / abs(col[k]) if abs(col[k]) > 0 else 1.0
        v[:, j] = col * np.conj(phase)
    return v


def unitary_exp(h, t: float) -> np.ndarray:
    """``exp(-i H t)`` for Hermitian ``H`` via spectral decomposition."""
    a = check_hermitian(h)
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    w, v = np.linalg.eigh(a)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def tensor(a, b) -> np.ndarray:
    """Kronecker product, row-major block convention."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _normalize_keep(keep, n: int) -> tuple[int, ...]:
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = tuple(int(k) for k in keep)
    if not keep or len(set(keep)) != len(keep):
        raise ValueError("keep must name at least one distinct subsystem")
    for k in keep:
        if not 0 <= k < n:
            raise ValueError(f"invalid subsystem index {k} for {n} subsystems")
    return tuple(sorted(keep))


def partial_trace(rho, dims, keep) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` is the ordered tuple of subsystem dimensions whose product
    equals the matrix dimension; ``keep`` is a subsystem index or a
    collection of them.
    """
    a = as_complex_matrix(rho, "rho")
    dims = tuple(int(d) for d in dims)
    if len(dims) < 2:
        raise ValueError("partial_trace needs at least two subsystems")
    if math.prod(dims) != a.shape[0]:
        raise ValueError(f"subsystem dims {dims} do not match matrix dim {a.shape[0]}")
    keep = _normalize_keep(keep, len(dims))
    n = len(dims)
    resh = a.reshape(*dims, *dims)
    row = list(range(n))
    col = [i + n if i in keep else i for i in range(n)]
    out = [*keep, *(k + n for k in keep)]
    red = np.einsum(resh, row + col, out)
    d = math.prod(dims[k] for k in keep)
    return red.reshape(d, d)


def partial_transpose(rho, dims, subsystems) -> np.ndarray:
    """Transpose the listed subsystems of a multipartite matrix."""
    a = as_complex_matrix(rho, "rho")
    dims = tuple(int(d) for d in dims)
    if math.prod(dims) != a.shape[0]:
        raise ValueError(f"subsystem dims {dims} do not match matrix dim {a.shape[0]}")
    subsystems = _normalize_keep(subsystems, len(dims))
    n = len(dims)
    perm = list(range(2 * n))
    for s in subsystems:
        perm[s], perm[s + n] = perm[s + n], perm[s]
    return a.reshape(*dims, *dims).transpose(perm).reshape(a.shape)


def commutator_residual(a, b) -> float:
    """``||AB - BA||_F``; zero exactly when the matrices commute."""
    a = as_complex_matrix(a, "A")
    b = as_complex_matrix(b, "B")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a @ b - b @ a))


def is_normal(a, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``A`` commutes with its adjoint, relative to ``max(1, ||A||_F^2)``."""
    a = as_complex_matrix(a, "A")
    res = commutator_residual(a, a.conj().T)
    return res <= tol * max(1.0, float(np.linalg.norm(a)) ** 2)


def residual_verdict(residual: float, tol: float, scale: float = 1.0) -> bool:
    """Uniform thresholding rule for all boolean criterion verdicts."""
    return residual <= tol * max(1.0, scale)
