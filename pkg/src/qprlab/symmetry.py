"""Unitary transfer matrices, permutation verdicts and Heisenberg-Weyl covariance."""
from dataclasses import dataclass

import numpy as np

from .channels import TransferMatrix, transfer_entries
from .config import TOL, ValidationError
from .hw import weyl_pair
from .linalg import is_unitary


def _check_unitary(U, tol=1e-10):
    U = np.asarray(U, dtype=np.complex128)
    if not is_unitary(U, tol):
        raise ValidationError("input is not unitary within 1e-10")
    return U


def unitary_transfer(U, f):
    """``U^Q_jk = tr(Q_j U Q_k U^dagger)/d`` (orthogonal, doubly quasistochastic)."""
    U = _check_unitary(U)
    Q = f.matrices
    images = U @ Q @ U.conj().T
    return TransferMatrix(transfer_entries(Q, images), "unitary", f.name)


def unitary_transfer_batch(Us, f):
    """Transfer matrices for a stack of unitaries, shape (B, n, n). No unitarity check."""
    Us = np.asarray(Us)
    Q = f.matrices
    images = Us[:, None] @ Q[None] @ np.conj(np.swapaxes(Us, 1, 2))[:, None]
    return transfer_entries(Q, images)


@dataclass
class SymmetryVerdict:
    kind: str
    transfer: TransferMatrix
    sigma: tuple = None
    min_entry: float = 0.0
    index: tuple = None

    @property
    def is_permutation(self):
        return self.kind == "permutation"

    def to_dict(self):
        out = {"kind": self.kind, "min_entry": self.min_entry}
        if self.sigma is not None:
            out["sigma"] = list(self.sigma)
        if self.index is not None:
            out["index"] = list(self.index)
        return out


def classify(t, tol=1e-9):
    """Permutation verdict iff no entry is below ``-tol``.

    A nonnegative orthogonal matrix with unit row sums is a permutation; the
    entries are snapped to {0, 1} and the snap is checked.
    """
    E = t.entries if isinstance(t, TransferMatrix) else np.asarray(t, dtype=float)
    t = t if isinstance(t, TransferMatrix) else TransferMatrix(E, "unitary")
    m = float(E.min())
    if m < -tol:
        idx = np.argwhere(E <= m + 1e-15)[0]
        return SymmetryVerdict("has-negative-entries", t, None, m, (int(idx[0]), int(idx[1])))
    # column k is sent to row sigma(k): U Q_k U^dagger = Q_sigma(k)
    sigma = np.argmax(E, axis=0)
    snapped = np.zeros_like(E)
    snapped[sigma, np.arange(E.shape[1])] = 1.0
    if len(set(sigma.tolist())) != E.shape[0] or np.max(np.abs(E - snapped)) > max(tol, 1e-9) * 10:
        raise ValueError("nonnegative matrix is not a permutation; input is not orthogonal doubly stochastic")
    return SymmetryVerdict("permutation", t, tuple(int(s) for s in sigma), m, None)


def match_elements(images, Q, tol=TOL.match):
    """Index map sigma with ``images[k] == Q[sigma[k]]`` within HS distance ``tol``, or None."""
    n = Q.shape[0]
    gram = np.real(np.einsum("kab,jba->kj", images, Q))
    norms_i = np.real(np.einsum("kab,kba->k", images, images))
    norms_q = np.real(np.einsum("jab,jba->j", Q, Q))
    dist2 = norms_i[:, None] + norms_q[None, :] - 2 * gram
    sigma = []
    for k in range(n):
        j = int(np.argmin(dist2[k]))
        if np.linalg.norm(images[k] - Q[j]) >= tol:
            return None
        # uniqueness: no second element anywhere near
        if np.sum(dist2[k] < max(1e3 * tol, 1e-3) ** 2) != 1:
            return None
        sigma.append(j)
    if len(set(sigma)) != n:
        return None
    return tuple(sigma)


def is_symmetry(U, f, tol=TOL.match):
    """Permutation sigma with ``U Q_k U^dagger = Q_sigma(k)``, or None if U is not a symmetry."""
    U = _check_unitary(U)
    Q = f.matrices
    return match_elements(U @ Q @ U.conj().T, Q, tol)


def hw_covariant(f, pair=None):
    """True iff both the shift X and the clock Z permute the frame."""
    pair = weyl_pair(f.dim) if pair is None else pair
    return is_symmetry(pair.X, f) is not None and is_symmetry(pair.Z, f) is not None


def saturating_unitary(f, j, k):
    """Unitary sending the eigenbasis of Q_k (nonincreasing) onto that of Q_j (nondecreasing).

    Attains ``tr(Q_j U Q_k U^dagger) = lambda_j^up . lambda_k^down``.
    """
    up_j = f.elements[j].spectrum.basis[:, ::-1]
    down_k = f.elements[k].spectrum.basis
    return up_j @ down_k.conj().T
