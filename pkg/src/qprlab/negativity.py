"""State, unitary and channel negativity of NQPR frames, with closed forms and bounds."""
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .channels import transfer_matrix
from .config import TOL, ValidationError
from .frames import check_state
from .linalg import HermitianOperator, as_matrix
from .symmetry import unitary_transfer


class Extremum(NamedTuple):
    value: float
    witness: object


def _first_within(A, target, tol=1e-12):
    """Lexicographically first index of ``A`` within ``tol`` of ``target``."""
    hit = np.argwhere(np.abs(A - target) <= tol)[0]
    return tuple(int(i) for i in hit) if A.ndim > 1 else int(hit[0])


# -- closed forms ---------------------------------------------------------


def two_adic_valuation(d):
    n = 0
    while d % 2 == 0:
        d //= 2
        n += 1
    return n


def lower_spectrum(d):
    """Spectrum (nonincreasing) of every element of a perfect frame."""
    r = math.sqrt(d + 1)
    return np.array([((d - 1) * r + 1) / d] + [(1 - r) / d] * (d - 1))


def upper_spectrum(d):
    """Spectrum (nonincreasing) of an element with the largest possible negativity."""
    r = math.sqrt(d + 1)
    return np.array([(r + 1) / d] * (d - 1) + [-((d - 1) * r - 1) / d])


def closed_forms(d):
    """Reference values: SIC-frame measures, Wootters measures, and universal bounds."""
    d = int(d)
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    r = math.sqrt(d + 1)
    s3 = math.sqrt(3.0)
    n = two_adic_valuation(d)
    if d == 2**n:
        w_N = 2 ** (1 - n) * (s3 + 1) ** (n - 2)
        w_NC = 2.0**-n * (s3 + 1) ** (n - 1) * (3 ** ((n + 1) / 2) - 1)
    else:
        w_N = 2.0**-n * (s3 + 1) ** n
        w_NC = 4.0**-n * (s3 + 3) ** n * d
    return {
        "dim": d,
        "N_minus": (r - 1) / d,
        "N_plus": ((d - 1) * r - 1) / d,
        "NU_sic": 1.0,
        "NC_minus": (d * d - 2 - (d - 2) * r) / d,
        "NC_plus": (d * d - 2 + (d - 2) * r) / d,
        "NU_lower": 1.0,
        "NU_upper": d - 2.0 / d,
        "NC_lower": d - r + 2.0 / d * r - 2.0 / d,
        "NC_upper": (d - 1) / (math.sqrt(2) * d) * math.sqrt((d + 1) * (d * d + d + 2)) - 1.0 / d,
        "wootters_n": n,
        "wootters_N": w_N,
        "wootters_NU": d - 2.0 ** abs(n - 1),
        "wootters_NC": w_NC,
    }


# -- states ---------------------------------------------------------------


def state_negativity(rho, f):
    """``max{0, -min_j tr(rho Q_j)}``."""
    R = check_state(rho)
    vals = np.real(np.einsum("ab,jba->j", R.matrix, f.matrices))
    return max(0.0, -float(vals.min()))


def frame_negativity(f):
    """``|min_j lambda_min(Q_j)|`` and the first j attaining it."""
    mins = f.spectra[:, -1]
    m = float(mins.min())
    return Extremum(abs(m), _first_within(mins, m))


def min_eigenstate(Q, tol=1e-10):
    """Projector on the first eigenvector of the minimal eigenvalue."""
    spec = Q.spectrum
    r = int(np.argmax(spec.values <= spec.values[-1] + tol))
    v = spec.basis[:, r]
    return np.outer(v, v.conj())


# -- unitaries ------------------------------------------------------------


def unitary_negativity(U, f):
    """``-d min_jk U^Q_jk`` (nonnegative up to roundoff for every unitary)."""
    t = unitary_transfer(U, f)
    return -f.dim * t.min_entry


def unitary_pair_values(f):
    """Matrix of ``lambda_j^up . lambda_k^down`` over all pairs."""
    S = f.spectra
    return S[:, ::-1] @ S.T


def frame_unitary_negativity(f):
    M = unitary_pair_values(f)
    m = float(M.min())
    return Extremum(abs(m), _first_within(M, m))


# -- channels -------------------------------------------------------------


def channel_negativity(ch, f):
    """``max{0, -d min_jk Lambda^Q_jk}``."""
    dev = ch.tp_deviation()
    if dev > TOL.trace_preserving:
        raise ValidationError(f"channel is not trace preserving (deviation {dev:.3e})")
    t = transfer_matrix(ch, f)
    return max(0.0, -f.dim * t.min_entry)


def channel_pair_values(f):
    """``[lmax_j (|l_k|_1 - 1) - lmin_j (|l_k|_1 + 1)] / 2`` over all pairs (j, k)."""
    S = f.spectra
    lmax = S[:, 0][:, None]
    lmin = S[:, -1][:, None]
    l1 = np.abs(S).sum(axis=1)[None, :]
    return 0.5 * (lmax * (l1 - 1) - lmin * (l1 + 1))


def frame_channel_negativity(f):
    M = channel_pair_values(f)
    m = float(M.max())
    return Extremum(m, _first_within(M, m))


# -- extremal spectra -----------------------------------------------------


def spectrum_class(Q, tol=1e-9):
    """'lower-extremal', 'upper-extremal' or 'other' for an element with tr Q = 1, tr Q^2 = d.

    In d=2 both templates coincide and 'lower-extremal' is reported.
    """
    Q = Q if isinstance(Q, HermitianOperator) else HermitianOperator(Q)
    d = Q.dim
    vals = Q.spectrum.values
    if abs(vals.sum() - 1) > tol or abs((vals**2).sum() - d) > max(tol, 1e-9) * d:
        raise ValidationError("element violates tr Q = 1, tr Q^2 = d")
    if np.max(np.abs(vals - lower_spectrum(d))) <= tol:
        return "lower-extremal"
    if np.max(np.abs(vals - upper_spectrum(d))) <= tol:
        return "upper-extremal"
    return "other"


@dataclass
class MaxNegativityStates:
    count: int
    indices: list
    states: list


def count_max_negativity_states(f, tol=1e-9):
    """States with negativity ``N+``: the nondegenerate minimal eigenstates of elements
    whose minimal eigenvalue is ``-N+``."""
    d = f.dim
    target = -closed_forms(d)["N_plus"]
    idx, states = [], []
    for j, Q in enumerate(f.elements):
        vals = Q.spectrum.values
        if abs(vals[-1] - target) <= tol and (d == 1 or vals[-2] - vals[-1] > tol):
            idx.append(j)
            states.append(min_eigenstate(Q))
    return MaxNegativityStates(len(idx), idx, states)


# -- reports --------------------------------------------------------------


@dataclass
class NegativityReport:
    dim: int
    kind: str
    provenance: str
    N: float
    N_U: float
    N_C: float
    bounds: dict
    witnesses: dict
    symmetry: dict = field(default=None)

    @property
    def within_bounds(self):
        b, tol = self.bounds, TOL.closed_form
        return (
            b["N_minus"] - tol <= self.N <= b["N_plus"] + tol
            and b["NU_lower"] - tol <= self.N_U <= b["NU_upper"] + tol
            and self.N_C >= b["NC_lower"] - tol
        )

    def to_dict(self):
        out = {
            "schema": 1,
            "dim": self.dim,
            "kind": self.kind,
            "provenance": self.provenance,
            "N": self.N,
            "N_U": self.N_U,
            "N_C": self.N_C,
            "bounds": dict(self.bounds),
            "witnesses": dict(self.witnesses),
            "within_bounds": self.within_bounds,
        }
        if self.symmetry is not None:
            out["symmetry"] = self.symmetry
        return out

    CSV_FIELDS = ("dim", "kind", "N", "N_U", "N_C", "N_minus", "N_plus", "NU_upper", "NC_lower", "NC_upper")

    def csv_row(self):
        b = self.bounds
        return [self.dim, self.kind, self.N, self.N_U, self.N_C, b["N_minus"], b["N_plus"],
                b["NU_upper"], b["NC_lower"], b["NC_upper"]]


def analyze(f, with_symmetry=True):
    """Full negativity report with closed-form bounds and witnesses."""
    from .symmetry import hw_covariant

    cf = closed_forms(f.dim)
    N = frame_negativity(f)
    NU = frame_unitary_negativity(f)
    NC = frame_channel_negativity(f)
    bounds = {k: cf[k] for k in ("N_minus", "N_plus", "NU_lower", "NU_upper", "NC_lower", "NC_upper")}
    witnesses = {"N": N.witness, "N_U": list(NU.witness), "N_C": list(NC.witness)}
    sym = None
    if with_symmetry:
        sym = {"hw_covariant": hw_covariant(f)}
    return NegativityReport(f.dim, f.kind, f.provenance, N.value, NU.value, NC.value, bounds, witnesses, sym)


def overlaps(X, f):
    return np.real(np.einsum("ab,jba->j", as_matrix(X), f.matrices))
