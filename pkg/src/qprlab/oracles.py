"""Brute-force checks on the feasible set {v in R^d : sum v = 1, sum v^2 = d}.

Every eigenvalue vector of a frame element lives on this (d-2)-sphere, so the
extremal-spectrum arguments reduce to optimization problems over it. The
checks here sample it, refine with hill climbing, and compare with the
analytic optimum and its stated maximizer.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .negativity import closed_forms, lower_spectrum, upper_spectrum
from .channels import random_channel
from .sampling import random_pure_state, random_state, random_unitary, rng

__all__ = [
    "ConstraintVector",
    "LemmaReport",
    "sample_constraint_vector",
    "sample_constraint_vectors",
    "project",
    "lemma_l1_check",
    "lemma_channel_lower_check",
    "lemma_negc2_check",
    "theorem1_spectrum_check",
    "f_two_level",
    "l1_bound",
    "l1_extremal",
    "channel_lower_bound",
    "channel_lower_extremal",
    "negc2_bound",
    "negc2_extremal",
    "random_state",
    "random_pure_state",
    "random_unitary",
    "random_channel",
    "random_unitary_min_entries",
    "random_channel_min_entries",
]

# objective codes shared with the kernels
L1, CHANNEL_LOWER, NEGC2, NEG_MIN = 0, 1, 2, 3

RESTARTS = 200
STEPS = 500
STEP0 = 0.3
DECAY = 0.97


@dataclass(frozen=True, eq=False)
class ConstraintVector:
    dim: int
    v: np.ndarray

    def residuals(self):
        return abs(self.v.sum() - 1.0), abs((self.v**2).sum() - self.dim)


def project(v):
    """Restore ``sum v = 1`` by a mean shift, then ``sum v^2 = d`` by rescaling the centered part."""
    v = np.asarray(v, dtype=float)
    d = v.shape[-1]
    w = v - v.mean(axis=-1, keepdims=True)
    nrm = np.sqrt((w**2).sum(axis=-1, keepdims=True))
    return w * (math.sqrt(d - 1.0 / d) / nrm) + 1.0 / d


def sample_constraint_vectors(d, n, seed, stream=()):
    gen = rng(seed, *stream)
    return project(gen.standard_normal((n, d)))


def sample_constraint_vector(d, seed=0):
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return ConstraintVector(d, sample_constraint_vectors(d, 1, seed)[0])


# -- objectives, vectorized over the last axis ----------------------------


def _l1(V):
    return np.abs(V).sum(axis=-1)


def _channel_lower(V):
    l1 = _l1(V)
    return 0.5 * (V.max(axis=-1) * (l1 - 1) + np.abs(V.min(axis=-1)) * (l1 + 1))


def _negc2(V):
    d = V.shape[-1]
    return 0.5 * ((d - 1) * V.max(axis=-1) - (d + 1) * V.min(axis=-1))


def _neg_min(V):
    return -V.min(axis=-1)


OBJECTIVES = {L1: _l1, CHANNEL_LOWER: _channel_lower, NEGC2: _negc2, NEG_MIN: _neg_min}


# -- analytic optima and maximizers ---------------------------------------


def l1_bound(d):
    return float(d) if d % 2 else math.sqrt(d * d - 1)


def l1_extremal(d):
    if d % 2:
        return np.array([1.0] * ((d + 1) // 2) + [-1.0] * ((d - 1) // 2))
    s = math.sqrt(d * d - 1)
    return np.array([(1 + s) / d] * (d // 2) + [(1 - s) / d] * (d // 2))


def channel_lower_bound(d):
    r = math.sqrt(d + 1)
    return d - r + 2.0 / d * r - 2.0 / d


def channel_lower_extremal(d):
    return lower_spectrum(d)


def f_two_level(m, n, d):
    """Channel-lower objective for m components equal to a > 0 and n equal to -b < 0."""
    return (m - n) / (m + n) * math.sqrt((d * m + d * n - 1) / (m * n)) - 2.0 / (m + n) + d


def negc2_bound(d):
    return (d - 1) / (math.sqrt(2) * d) * math.sqrt((d + 1) * (d * d + d + 2)) - 1.0 / d


def negc2_extremal(d):
    g = math.sqrt((d + 1) / (2 * (d * d + d + 2)))
    top = 1.0 / d + (d * d - d + 2) / d * g
    mid = 1.0 / d + 2.0 / d * g
    bot = 1.0 / d - (d * d + d - 2) / d * g
    return np.array([top] + [mid] * (d - 2) + [bot])


# -- checks ---------------------------------------------------------------


@dataclass
class LemmaReport:
    lemma: str
    d: int
    bound: float
    best_found: float
    gap: float
    extremal_attained: bool
    samples: int
    seed: int
    sense: str
    sample_best: float
    violations: int
    extremal_value: float
    extremal_residual: float

    @property
    def passed(self):
        return self.violations == 0 and self.extremal_attained

    def to_dict(self):
        return {
            "lemma": self.lemma,
            "d": self.d,
            "bound": self.bound,
            "best_found": self.best_found,
            "gap": self.gap,
            "extremal_attained": self.extremal_attained,
            "samples": self.samples,
            "seed": self.seed,
        }


def hill_climb(d, objective, maximize, seed, stream, restarts=RESTARTS, steps=STEPS,
               step0=STEP0, decay=DECAY):
    gen = rng(seed, *stream)
    starts = project(gen.standard_normal((restarts, d)))
    noise = gen.standard_normal((restarts, steps, d))
    vals, vecs = kernels.hill_climb(starts, noise, step0, decay, objective, maximize)
    best = int(np.argmax(vals) if maximize else np.argmin(vals))
    return float(vals[best]), vecs[best]


def _run(lemma, code, d, bound, extremal, maximize, samples, seed, restarts, steps, stream_base,
         slack=1e-8):
    fn = OBJECTIVES[code]
    V = sample_constraint_vectors(d, samples, seed, (stream_base, 0))
    vals = fn(V)
    hc_val, _ = hill_climb(d, code, maximize, seed, (stream_base, 1), restarts, steps)
    if maximize:
        sample_best = float(vals.max())
        violations = int(np.sum(vals > bound + slack)) + int(hc_val > bound + slack)
        best = max(sample_best, hc_val)
        gap = bound - best
    else:
        sample_best = float(vals.min())
        violations = int(np.sum(vals < bound - slack)) + int(hc_val < bound - slack)
        best = min(sample_best, hc_val)
        gap = best - bound
    ext = np.asarray(extremal, dtype=float)
    residual = max(abs(ext.sum() - 1), abs((ext**2).sum() - d))
    ext_val = float(fn(ext))
    attained = residual <= 1e-12 * max(1, d) and abs(ext_val - bound) <= 1e-10
    return LemmaReport(lemma, d, bound, best, gap, bool(attained), samples, seed,
                       "max" if maximize else "min", sample_best, violations, ext_val, residual)


def lemma_l1_check(d, samples=10_000, seed=0, restarts=RESTARTS, steps=STEPS):
    """``|v|_1 <= d`` (odd d) or ``sqrt(d^2 - 1)`` (even d)."""
    return _run("l1", L1, d, l1_bound(d), l1_extremal(d), True, samples, seed, restarts, steps, 1)


def lemma_channel_lower_check(d, samples=10_000, seed=0, restarts=RESTARTS, steps=STEPS):
    """``[v_max(|v|_1 - 1) + |v_min|(|v|_1 + 1)]/2 >= d - sqrt(d+1) + 2 sqrt(d+1)/d - 2/d``."""
    return _run("channel_lower", CHANNEL_LOWER, d, channel_lower_bound(d), channel_lower_extremal(d),
                False, samples, seed, restarts, steps, 2)


def lemma_negc2_check(d, samples=10_000, seed=0, restarts=RESTARTS, steps=STEPS):
    """``[(d-1) v_max - (d+1) v_min]/2 <= (d-1)/(sqrt2 d) sqrt((d+1)(d^2+d+2)) - 1/d``."""
    return _run("negc2", NEGC2, d, negc2_bound(d), negc2_extremal(d), True, samples, seed,
                restarts, steps, 3)


def theorem1_spectrum_check(d, samples=10_000, seed=0, restarts=RESTARTS, steps=STEPS):
    """``N- <= -v_min <= N+`` on the feasible set; returns the (upper, lower) reports."""
    cf = closed_forms(d)
    upper = _run("theorem1_upper", NEG_MIN, d, cf["N_plus"], upper_spectrum(d), True, samples, seed,
                 restarts, steps, 4)
    lower = _run("theorem1_lower", NEG_MIN, d, cf["N_minus"], lower_spectrum(d), False, samples, seed,
                 restarts, steps, 5)
    return upper, lower


# -- Monte Carlo over unitaries and channels ------------------------------


def _chunks(n, size):
    out, start = [], 0
    while start < n:
        out.append((len(out), min(size, n - start)))
        start += size
    return out


def _map_chunks(fn, n, chunk, threads):
    jobs = _chunks(n, chunk)
    if threads and threads > 1 and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda job: fn(*job), jobs))
    else:
        parts = [fn(*job) for job in jobs]
    return np.concatenate(parts) if parts else np.empty(0)


def random_unitary_min_entries(f, n, seed=0, threads=1, chunk=500):
    """Minimum entry of ``U^Q`` for ``n`` Haar-random unitaries (chunk i uses stream (6, i))."""
    from .sampling import haar_unitaries
    from .symmetry import unitary_transfer_batch

    def run(i, size):
        Us = haar_unitaries(f.dim, size, rng(seed, 6, i))
        return unitary_transfer_batch(Us, f).min(axis=(1, 2))

    return _map_chunks(run, n, chunk, threads)


def random_channel_min_entries(f, n, seed=0, threads=1, chunk=250, rank=None):
    """Minimum entry of ``Lambda^Q`` for ``n`` random channels from Haar isometries."""
    from .channels import kraus_batch_min_entries
    from .sampling import haar_unitaries

    d = f.dim
    r = d if rank is None else int(rank)

    def run(i, size):
        W = haar_unitaries(d * r, size, rng(seed, 7, i))[:, :, :d]
        K = W.reshape(size, r, d, d)
        return kraus_batch_min_entries(f, K)

    return _map_chunks(run, n, chunk, threads)
