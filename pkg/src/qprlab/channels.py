"""Quantum channels in Kraus form and their quasistochastic transfer matrices."""
from dataclasses import dataclass

import numpy as np

from .config import TOL, ValidationError
from .linalg import HermitianOperator, as_matrix
from .sampling import random_kraus


@dataclass(frozen=True, eq=False)
class Channel:
    dim: int
    kraus: tuple
    label: str = ""

    def __post_init__(self):
        ks = tuple(np.array(k, dtype=np.complex128) for k in self.kraus)
        if not ks:
            raise ValidationError("a channel needs at least one Kraus operator")
        for k in ks:
            if k.shape != (self.dim, self.dim):
                raise ValidationError(f"Kraus operator has shape {k.shape}, expected {(self.dim, self.dim)}")
            k.flags.writeable = False
        object.__setattr__(self, "kraus", ks)

    @property
    def stack(self):
        return np.array(self.kraus)

    def tp_deviation(self):
        K = self.stack
        S = np.einsum("iba,ibc->ac", K.conj(), K)
        return float(np.max(np.abs(S - np.eye(self.dim))))

    def unital_deviation(self):
        K = self.stack
        S = np.einsum("iab,icb->ac", K, K.conj())
        return float(np.max(np.abs(S - np.eye(self.dim))))


def make_channel(kraus, label="", tol=TOL.trace_preserving):
    """Build a channel and check ``sum K^dagger K = 1``."""
    ks = [np.asarray(k, dtype=np.complex128) for k in kraus]
    if not ks:
        raise ValidationError("a channel needs at least one Kraus operator")
    ch =Channel(ks[0].shape[0], tuple(ks), label)
    dev = ch.tp_deviation()
    if dev > tol:
        raise ValidationError(f"channel is not trace preserving (deviation {dev:.3e})")
    return ch


def identity_channel(d):
    return make_channel([np.eye(d)], "identity")


def unitary_channel(U, label="unitary"):
    return make_channel([np.asarray(U)], label)


def depolarizing_channel(d):
    """Completely depolarizing map ``X -> tr(X) 1/d`` via Kraus ``|a><b|/sqrt(d)``."""
    ks = []
    for a in range(d):
        for b in range(d):
            K = np.zeros((d, d), dtype=complex)
            K[a, b] = 1 / np.sqrt(d)
            ks.append(K)
    return make_channel(ks, "depolarizing")


def amplitude_damping(gamma):
    K0 = np.diag([1.0, np.sqrt(1 - gamma)])
    K1 = np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]])
    return make_channel([K0, K1], f"amplitude-damping({gamma})")


def random_channel(d, seed=0, stream=(), rank=None):
    return make_channel(random_kraus(d, seed, stream, rank), f"random(seed={seed})")


def apply(ch, X):
    """``sum_i K_i X K_i^dagger``."""
    X = as_matrix(X)
    if X.shape != (ch.dim, ch.dim):
        raise ValueError(f"dimension mismatch: channel on {ch.dim}, operator {X.shape}")
    K = ch.stack
    return HermitianOperator(np.einsum("iab,bc,idc->ad", K, X, K.conj()), tol=1e-10)


def is_unital(ch, tol=TOL.trace_preserving):
    return ch.unital_deviation() <= tol


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    entries: np.ndarray
    kind: str
    frame: str = ""

    @property
    def column_sums(self):
        return self.entries.sum(axis=0)

    @property
    def row_sums(self):
        return self.entries.sum(axis=1)

    @property
    def min_entry(self):
        return float(self.entries.min())

    def argmin(self, tol=1e-12):
        """Lexicographically first index pair within ``tol`` of the minimum."""
        E = self.entries
        hits = np.argwhere(E <= E.min() + tol)
        return int(hits[0][0]), int(hits[0][1])


def transfer_entries(Q, images):
    """``tr(Q_j images_k)/d`` for stacked frame ``Q`` (n,d,d) and ``images`` (..., n, d, d)."""
    d = Q.shape[-1]
    return np.real(np.einsum("jab,...kba->...jk", Q, images)) / d


def transfer_matrix(ch, f):
    """``Lambda^Q_jk = tr[Q_j Lambda(Q_k)]/d``."""
    if ch.dim != f.dim:
        raise ValueError(f"dimension mismatch: channel {ch.dim}, frame {f.dim}")
    K = ch.stack
    Q = f.matrices
    images = np.einsum("iab,kbc,idc->kad", K, Q, K.conj())
    return TransferMatrix(transfer_entries(Q, images), "channel", f.name)


def kraus_batch_min_entries(f, kraus_batch):
    """Minimum transfer-matrix entry for a batch of channels, Kraus array shape (B, r, d, d)."""
    K = np.asarray(kraus_batch)
    Q = f.matrices
    images = np.einsum("Biab,kbc,Bidc->Bkad", K, Q, K.conj())
    return transfer_entries(Q, images).min(axis=(1, 2))


def _support_split(Q, tol):
    spec = Q.spectrum
    pos = spec.values > tol
    return spec.basis[:, pos], spec.basis[:, ~pos]


def _extreme_vector(spec, which, tol=1e-10):
    vals = spec.values
    if which == "max":
        r = int(np.argmax(vals >= vals[0] - tol))
    else:
        r = int(np.argmax(vals <= vals[-1] + tol))
    return spec.basis[:, r]


def saturating_channel(f, j, k, tol=TOL.support):
    """Measure-and-prepare channel attaining the (j, k) term of the channel-negativity formula.

    Inputs in the support of the positive part of ``Q_k`` are replaced by the
    minimal eigenstate of ``Q_j``; the complement goes to its maximal eigenstate.
    """
    Qj, Qk = f.elements[j], f.elements[k]
    P1, P2 = _support_split(Qk, tol)
    rho_min = _extreme_vector(Qj.spectrum, "min")
    rho_max = _extreme_vector(Qj.spectrum, "max")
    ks = [np.outer(rho_min, b.conj()) for b in P1.T]
    ks += [np.outer(rho_max, b.conj()) for b in P2.T]
    return make_channel(ks, f"saturating(j={j},k={k})")


def channel_to_dict(ch):
    return {
        "dim": ch.dim,
        "kraus": [[[[float(z.real), float(z.imag)] for z in row] for row in K] for K in ch.kraus],
        "label": ch.label,
    }


def channel_from_dict(obj):
    ks = [np.array([[complex(re, im) for re, im in row] for row in K]) for K in obj["kraus"]]
    ch = make_channel(ks, obj.get("label", ""))
    if ch.dim != int(obj["dim"]):
        raise ValidationError(f"declared dim {obj['dim']} does not match Kraus shape {ch.dim}")
    return ch
