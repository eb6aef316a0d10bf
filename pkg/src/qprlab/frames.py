"""Normal quasiprobability representations: frame construction, validation, Born rule.

A frame is stored as its d^2 operators ``Q_j`` with ``tr Q_j = 1``,
``tr Q_j Q_k = d delta_jk`` and ``sum_j Q_j = d``. Quasiprobabilities of a
state are ``tr(rho Q_j)/d``; conditional quasiprobabilities of an effect are
``tr(M Q_j)``.
"""
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .config import TOL, ValidationError
from .hw import displacement, parity, prime_factors, weyl_pair
from .linalg import HermitianOperator, as_matrix, tensor
from .sampling import haar_unitaries, rng

KINDS = ("sic-minus", "sic-plus", "wootters", "custom")


@dataclass(frozen=True, eq=False)
class NqprFrame:
    dim: int
    elements: tuple
    kind: str = "custom"
    provenance: str = ""
    labels: tuple = None

    def __post_init__(self):
        elems = tuple(e if isinstance(e, HermitianOperator) else HermitianOperator(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(len(elems))))
        if any(e.dim != self.dim for e in elems):
            raise ValidationError("frame elements do not match the frame dimension")

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, j):
        return self.elements[j]

    @cached_property
    def matrices(self):
        """Stacked element matrices, shape (d^2, d, d)."""
        m = np.array([e.matrix for e in self.elements])
        m.flags.writeable = False
        return m

    @cached_property
    def spectra(self):
        """Eigenvalues of every element, nonincreasing, shape (d^2, d)."""
        s = np.array([e.spectrum.values for e in self.elements])
        s.flags.writeable = False
        return s

    @property
    def name(self):
        return f"{self.kind}:d={self.dim}:{self.provenance}"


@dataclass
class FrameReport:
    dim: int
    tol: float
    n_elements: int
    trace_dev: float
    orthogonality_dev: float
    resolution_dev: float

    @property
    def passed(self):
        return self.n_elements == self.dim**2 and max(
            self.trace_dev, self.orthogonality_dev, self.resolution_dev
        ) <= self.tol

    def to_dict(self):
        return {
            "dim": self.dim,
            "tol": self.tol,
            "n_elements": self.n_elements,
            "trace_dev": self.trace_dev,
            "orthogonality_dev": self.orthogonality_dev,
            "resolution_dev": self.resolution_dev,
            "passed": self.passed,
        }


def validate_nqpr(f, tol=TOL.frame_exact):
    """Max deviations from unit trace, ``tr Q_j Q_k = d delta_jk`` and ``sum Q_j = d``."""
    mats = f.matrices if isinstance(f, NqprFrame) else np.array([as_matrix(q) for q in f])
    n, d, _ = mats.shape
    traces = np.real(np.einsum("jaa->j", mats))
    gram = np.real(np.einsum("jab,kba->jk", mats, mats))
    return FrameReport(
        dim=d,
        tol=tol,
        n_elements=n,
        trace_dev=float(np.max(np.abs(traces - 1.0))),
        orthogonality_dev=float(np.max(np.abs(gram - d * np.eye(n)))),
        resolution_dev=float(np.max(np.abs(mats.sum(axis=0) - d * np.eye(d)))),
    )


def _checked(frame, tol):
    rep = validate_nqpr(frame, tol)
    if not rep.passed:
        raise ValidationError(
            f"frame {frame.name} fails NQPR constraints: trace {rep.trace_dev:.3e}, "
            f"orthogonality {rep.orthogonality_dev:.3e}, resolution {rep.resolution_dev:.3e}"
        )
    return frame


# -- constructions --------------------------------------------------------


def sic_frame(s, sign, tol=None):
    """``Q_j = -/+ sqrt(d+1) Pi_j + (1 +/- sqrt(d+1))/d`` for ``sign`` = plus/minus."""
    sign = sign.replace("sic-", "")
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    d = s.dim
    r = math.sqrt(d + 1)
    eps = 1.0 if sign == "plus" else -1.0
    shift = (1.0 + eps * r) / d
    eye = np.eye(d)
    elems = [-eps * r * p.matrix + shift * eye for p in s.projectors]
    if tol is None:
        exact = s.fiducial is None or s.fiducial.tolerance <= TOL.exact
        tol = TOL.frame_exact if exact else TOL.frame_ingested
    frame = NqprFrame(d, tuple(elems), f"sic-{sign}", s.label or "sic", tuple(s.indices))
    return _checked(frame, tol)


def sic_projectors(f):
    """Invert the SIC construction: recover ``Pi_j`` from a sic-minus/sic-plus style frame.

    The ``kind`` decides which inversion applies; custom frames are treated
    as sic-minus candidates.
    """
    d = f.dim
    r = math.sqrt(d + 1)
    eye = np.eye(d)
    if f.kind in ("sic-plus", "wootters"):
        return [((1 + r) / d * eye - q) / r for q in f.matrices]
    return [(q - (1 - r) / d * eye) / r for q in f.matrices]


def _wootters_qubit():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.diag([1.0 + 0j, -1.0])
    out, labels = [], []
    for j1 in (0, 1):
        for j2 in (0, 1):
            out.append(0.5 * (np.eye(2) + (-1) ** j1 * sz + (-1) ** j2 * sx + (-1) ** (j1 + j2) * sy))
            labels.append((j1, j2))
    return out, labels


def _wootters_odd_prime(p):
    pair = weyl_pair(p)
    P = parity(p).matrix
    out, labels = [], []
    for j in range(p):
        for k in range(p):
            D = displacement(j, k, pair)
            out.append(D @ P @ D.conj().T)
            labels.append((j, k))
    return out, labels


def wootters_frame(d):
    """Wootters phase-point operators; tensor products over the prime factors of ``d``.

    Factors are taken in nondecreasing order with repetition (d=4 is 2x2),
    and the flat index is mixed-radix with the first factor most significant.
    """
    d = int(d)
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    blocks = []
    for p in prime_factors(d):
        blocks.append(_wootters_qubit() if p == 2 else _wootters_odd_prime(p))
    elems, labels = blocks[0]
    for ops, labs in blocks[1:]:
        elems = [tensor(a, b) for a in elems for b in ops]
        labels = [la + lb for la in labels for lb in labs]
    frame = NqprFrame(d, tuple(elems), "wootters", "x".join(map(str, prime_factors(d))), tuple(labels))
    return _checked(frame, TOL.frame_exact)


def traceless_basis(d):
    """Orthonormal basis (``tr B_a B_b = delta``) of traceless Hermitian d x d matrices."""
    out = []
    for a in range(d):
        for b in range(a + 1, d):
            S = np.zeros((d, d), dtype=complex)
            S[a, b] = S[b, a] = 1 / math.sqrt(2)
            A = np.zeros((d, d), dtype=complex)
            A[a, b], A[b, a] = -1j / math.sqrt(2), 1j / math.sqrt(2)
            out += [S, A]
    for m in range(1, d):
        D = np.zeros((d, d), dtype=complex)
        D[np.arange(m), np.arange(m)] = 1.0
        D[m, m] = -m
        out.append(D / math.sqrt(m * (m + 1)))
    return out


def random_nqpr(d, seed=0, stream=()):
    """A generic NQPR: ``Q_j = 1/d + sqrt(d) sum_a R_ja B_a`` with R orthonormal columns orthogonal to 1."""
    gen = rng(seed, *stream)
    n = d * d
    M = gen.standard_normal((n, n))
    M[:, 0] = 1.0
    Q, _ = np.linalg.qr(M)
    R = Q[:, 1:]
    B = np.array(traceless_basis(d))
    elems = np.eye(d) / d + math.sqrt(d) * np.einsum("ja,abc->jbc", R, B)
    frame = NqprFrame(d, tuple(elems), "custom", f"random(seed={seed},stream={tuple(stream)})")
    return _checked(frame, TOL.frame_exact)


def rotated(f, U):
    """The frame ``{U Q_j U^dagger}`` (same kind and labels)."""
    U = np.asarray(U, dtype=complex)
    elems = [U @ q @ U.conj().T for q in f.matrices]
    return NqprFrame(f.dim, tuple(elems), f.kind, f"{f.provenance}+rotated", f.labels)


def haar_rotations(f, n, seed=0):
    Us = haar_unitaries(f.dim, n, rng(seed, 0))
    return [rotated(f, U) for U in Us]


# -- quasiprobabilities ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuasiProbVector:
    values: np.ndarray
    frame: str = ""

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __len__(self):
        return len(self.values)

    @property
    def total(self):
        return float(self.values.sum())


def check_state(rho, tol=TOL.psd):
    R = HermitianOperator(rho)
    tr = R.trace
    if abs(tr - 1.0) > 1e-9:
        raise ValidationError(f"state must have unit trace, got {tr:.12g}")
    if R.spectrum.lmin < -tol:
        raise ValidationError(f"state is not positive semidefinite (min eigenvalue {R.spectrum.lmin:.3e})")
    return R


def check_effect(M, tol=TOL.psd):
    E = HermitianOperator(M)
    if E.spectrum.lmin < -tol or E.spectrum.lmax > 1.0 + tol:
        raise ValidationError(
            f"effect must satisfy 0 <= M <= 1 (spectrum in [{E.spectrum.lmin:.3e}, {E.spectrum.lmax:.3e}])"
        )
    return E


def _overlaps(f, X):
    # tr(X Q_j) for all j
    return np.real(np.einsum("ab,jba->j", as_matrix(X), f.matrices))


def mu(rho, f):
    """Quasiprobabilities ``tr(rho Q_j)/d`` of a state."""
    R = check_state(rho)
    return QuasiProbVector(_overlaps(f, R) / f.dim, f.name)


def nu(effect, f):
    """Conditional quasiprobabilities ``tr(M Q_j)`` of an effect."""
    E = check_effect(effect)
    return _overlaps(f, E)


def born_check(rho, povm, f, tol=TOL.trace_preserving):
    """Worst deviation ``max_x |tr(rho M_x) - sum_j mu_j nu_j(M_x)|``."""
    mats = [as_matrix(M) for M in povm]
    total = np.sum(mats, axis=0)
    dev = float(np.max(np.abs(total - np.eye(f.dim))))
    if dev > tol:
        raise ValidationError(f"POVM effects do not sum to the identity (deviation {dev:.3e})")
    m = mu(rho, f).values
    R = as_matrix(rho)
    worst = 0.0
    for M in mats:
        direct = float(np.real(np.trace(R @ M)))
        worst = max(worst, abs(direct - float(m @ nu(M, f))))
    return worst


# -- dual frames ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MinimalFrame:
    dim: int
    elements: np.ndarray
    condition: float = field(default=float("nan"))

    @cached_property
    def gram(self):
        F = self.elements
        return np.real(np.einsum("jab,kba->jk", F, F))


def minimal_frame(elements):
    F = np.array([as_matrix(e) for e in elements])
    n, d, _ = F.shape
    if n != d * d:
        raise ValidationError(f"a minimal frame in dimension {d} has {d * d} elements, got {n}")
    for e in F:
        if np.max(np.abs(e - e.conj().T)) > TOL.hermiticity:
            raise ValidationError("minimal frame elements must be Hermitian")
    mf = MinimalFrame(d, F)
    object.__setattr__(mf, "condition", float(np.linalg.cond(mf.gram)))
    return mf


def dual_of_minimal(basis, max_condition=1e8):
    """Unique dual ``D_k = sum_l (G^{-1})_{lk} F_l`` with ``tr(F_j D_k) = delta_jk``."""
    if not isinstance(basis, MinimalFrame):
        basis = minimal_frame(basis)
    if not np.isfinite(basis.condition) or basis.condition >= max_condition:
        raise ValidationError(f"Gram matrix is singular or ill-conditioned (cond {basis.condition:.3e})")
    Ginv = np.linalg.inv(basis.gram)
    D = np.einsum("lk,lab->kab", Ginv, basis.elements)
    D = 0.5 * (D + np.conj(np.swapaxes(D, 1, 2)))
    out = MinimalFrame(basis.dim, D)
    object.__setattr__(out, "condition", float(np.linalg.cond(out.gram)))
    return out


# -- serialization --------------------------------------------------------


def frame_to_dict(f):
    return {
        "dim": f.dim,
        "kind": f.kind,
        "provenance": f.provenance,
        "elements": [
            [[[float(z.real), float(z.imag)] for z in row] for row in q] for q in f.matrices
        ],
    }


def frame_from_dict(obj):
    elems = [np.array([[complex(re, im) for re, im in row] for row in q]) for q in obj["elements"]]
    return NqprFrame(int(obj["dim"]), tuple(elems), obj.get("kind", "custom"), obj.get("provenance", ""))


def build_frame(d, kind, fiducial=None, t=0.0):
    """Construct a frame by kind name; SIC kinds use ``fiducial`` or a built-in one."""
    from .sic import builtin_fiducial, sic_from_fiducial

    if kind == "wootters":
        return wootters_frame(d)
    if kind in ("sic-minus", "sic-plus"):
        rec = fiducial if fiducial is not None else builtin_fiducial(d, t)
        if rec.dim != d:
            raise ValidationError(f"fiducial dimension {rec.dim} does not match --dim {d}")
        return sic_frame(sic_from_fiducial(rec), kind)
    if kind == "custom":
        return random_nqpr(d, 0)
    raise ValueError(f"unknown frame kind {kind!r}; expected one of {KINDS}")

