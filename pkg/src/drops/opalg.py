"""Dense complex operator algebra for small spin systems.

Operators are plain ``numpy`` arrays of shape ``(d, d)`` with
``d = 2**n`` for ``n`` spins.  Spin 1 is the leftmost Kronecker factor.
Everything here is double precision; matrices stay tiny (``d <= 32``),
so eigendecomposition-based routines are both fast and accurate.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

__all__ = [
    "HERM_TOL",
    "as_operator",
    "is_hermitian",
    "kron",
    "frobenius",
    "exp_hermitian",
    "log_unitary_principal",
    "partial_trace",
    "commutator",
    "n_spins",
]

# Hermiticity / unitarity gate used by the exponential and the principal log.
HERM_TOL = 1e-10


def as_operator(entries) -> np.ndarray:
    """Coerce to a square complex matrix."""
    a = np.asarray(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"operator must be square, got shape {a.shape}")
    return a


def n_spins(a: np.ndarray) -> int:
    """Spin count for a 2**n dimensional operator."""
    d = a.shape[0]
    n = d.bit_length() - 1
    if 2**n != d:
        raise ValueError(f"dimension {d} is not a power of two")
    return n


def is_hermitian(a: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; left factor is the lower spin index."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def frobenius(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(a^dagger b)."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def exp_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """Unitary propagator exp(-i h t) of a Hermitian generator.

    Uses an eigendecomposition; raises if ``h`` is not Hermitian to
    within ``HERM_TOL``.
    """
    h = as_operator(h)
    if np.max(np.abs(h - h.conj().T)) > HERM_TOL:
        raise ValueError("generator is not Hermitian")
    if t == 0:
        return np.eye(h.shape[0], dtype=complex)
    evals, vecs = np.linalg.eigh(h)
    phases = np.exp(-1j * evals * t)
    return (vecs * phases) @ vecs.conj().T


def log_unitary_principal(u: np.ndarray, T: float) -> np.ndarray:
    """Hermitian generator h with exp(-i h T) = u, eigenphases in (-pi, pi].

    An eigenvalue of ``u`` sitting on the branch cut (phase pi, i.e.
    eigenvalue -1) makes the principal log ambiguous and is reported as
    an error instead of being silently resolved.
    """
    u = as_operator(u)
    if T <= 0:
        raise ValueError("T must be positive")
    d = u.shape[0]
    if np.max(np.abs(u @ u.conj().T - np.eye(d))) > HERM_TOL:
        raise ValueError("input is not unitary")
    # Schur form of a unitary matrix is diagonal; unlike np.linalg.eig this
    # keeps degenerate eigenspaces orthonormal.
    tmat, q = scipy.linalg.schur(u, output="complex")
    lam = np.diag(tmat)
    if np.min(np.abs(lam + 1.0)) < 1e-10:
        raise ValueError("eigenphase at the branch cut (-pi): principal log undefined")
    theta = np.angle(lam)  # in (-pi, pi]
    h = (q * (-theta / T)) @ q.conj().T
    return 0.5 * (h + h.conj().T)


def partial_trace(rho: np.ndarray, n: int, keep) -> np.ndarray:
    """Trace out all spins not in ``keep`` (spin indices are 1-based)."""
    rho = as_operator(rho)
    if rho.shape[0] != 2**n:
        raise ValueError(f"operator dimension {rho.shape[0]} != 2**{n}")
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if any(k < 1 or k > n for k in keep):
        raise ValueError(f"keep indices must lie in 1..{n}")
    tensor = rho.reshape((2,) * (2 * n))
    traced = sorted((k for k in range(1, n + 1) if k not in keep), reverse=True)
    for k in traced:
        # tracing from the highest spin down leaves lower axis numbers intact
        m = tensor.ndim // 2
        tensor = np.trace(tensor, axis1=k - 1, axis2=m + k - 1)
    d = 2 ** len(keep)
    return tensor.reshape(d, d)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a
