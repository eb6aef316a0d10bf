"""Dense complex linear algebra: Hermitian operators, spectra, trace inner products."""
from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import kernels
from .config import TOL, ValidationError


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted nonincreasing with column-aligned eigenvectors."""

    values: np.ndarray
    basis: np.ndarray

    @property
    def ascending(self):
        return self.values[::-1]

    @property
    def lmax(self):
        return float(self.values[0])

    @property
    def lmin(self):
        return float(self.values[-1])

    @property
    def l1(self):
        return float(np.abs(self.values).sum())

    def reconstruct(self):
        return (self.basis * self.values) @ self.basis.conj().T


def _readonly(a):
    a = np.array(a, dtype=np.complex128, copy=True)
    a.flags.writeable = False
    return a


def herm_eig(H, tol=TOL.hermiticity):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    H : HermitianOperator or array_like
        Square Hermitian matrix.
    tol : float
        Allowed max-norm deviation ``|H - H^dagger|``.

    Returns
    -------
    Spectrum
        Values sorted nonincreasing. Each eigenvector is normalized so that
        its first largest-magnitude entry is real and positive.
    """
    if isinstance(H, HermitianOperator):
        return H.spectrum
    M = check_hermitian(H, tol)
    diag, V, _ = kernels.jacobi_eigh(M, TOL.jacobi)
    order = np.argsort(-diag, kind="stable")
    values = diag[order]
    V = V[:, order]
    # Jacobi rotations are unitary, re-orthonormalize only against drift
    V, _ = np.linalg.qr(V)
    idx = np.argmax(np.abs(V) > np.abs(V).max(axis=0) - 1e-12, axis=0)
    phases = V[idx, np.arange(V.shape[1])]
    V = V * (np.abs(phases) / phases)
    values.flags.writeable = False
    V.flags.writeable = False
    return Spectrum(values, V)


def check_hermitian(H, tol=TOL.hermiticity):
    M = np.asarray(H, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {M.shape}")
    dev = float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0
    if dev > tol:
        raise ValidationError(f"matrix is not Hermitian (max deviation {dev:.3e} > {tol:.1e})")
    return 0.5 * (M + M.conj().T)


class HermitianOperator:
    """Immutable Hermitian matrix with its spectrum computed at construction."""

    __slots__ = ("matrix", "spectrum")

    def __init__(self, matrix, tol=TOL.hermiticity):
        if isinstance(matrix, HermitianOperator):
            matrix = matrix.matrix
        M = _readonly(check_hermitian(matrix, tol))
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "spectrum", herm_eig(M, tol=np.inf))

    def __setattr__(self, name, value):
        raise AttributeError("HermitianOperator is immutable")

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def trace(self):
        return float(np.trace(self.matrix).real)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __repr__(self):
        return f"HermitianOperator(dim={self.dim}, spectrum={np.round(self.spectrum.values, 6)})"


def as_matrix(A):
    if isinstance(A, HermitianOperator):
        return A.matrix
    return np.asarray(A, dtype=np.complex128)


def hs_inner(A, B):
    """Hilbert-Schmidt inner product ``tr(A B)`` (real for Hermitian inputs)."""
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    # tr(AB) = sum_ij A_ij B_ji
    return float(np.real(np.sum(A * B.T)))


def tensor(*ops):
    """Kronecker product of one or more matrices."""
    return reduce(np.kron, (as_matrix(o) for o in ops))


def projector(psi):
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    return np.outer(psi, psi.conj())


def is_unitary(U, tol=1e-10):
    U = np.asarray(U, dtype=np.complex128)
    return U.ndim == 2 and U.shape[0] == U.shape[1] and bool(
        np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))) <= tol
    )


def hs_distance(A, B):
    """Hilbert-Schmidt (Frobenius) distance."""
    return float(np.linalg.norm(as_matrix(A) - as_matrix(B)))
