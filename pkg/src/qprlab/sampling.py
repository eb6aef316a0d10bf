"""Seeded random states, unitaries, channels and POVMs.

Every sampler takes ``seed`` plus an optional tuple of stream indices; the
pair is fed to :class:`numpy.random.SeedSequence` as entropy and spawn key,
so chunk ``i`` of a parallel run draws the same numbers whatever the
thread count.
"""
import numpy as np


def rng(seed, *stream):
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(int(s) for s in stream)))


def _gen(seed, stream):
    if isinstance(seed, np.random.Generator):
        return seed
    return rng(seed, *stream)


def haar_unitaries(d, n, gen):
    """``n`` Haar-random d x d unitaries (QR of Ginibre with phase fix), shape (n, d, d)."""
    G = (gen.standard_normal((n, d, d)) + 1j * gen.standard_normal((n, d, d))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(G)
    diag = np.diagonal(R, axis1=1, axis2=2)
    return Q * (diag / np.abs(diag))[:, None, :]


def random_unitary(d, seed=0, stream=()):
    return haar_unitaries(d, 1, _gen(seed, stream))[0]


def random_state(d, seed=0, stream=(), rank=None):
    """Random density matrix: pure (``rank=1``) or Hilbert-Schmidt/induced measure."""
    gen = _gen(seed, stream)
    r = d if rank is None else int(rank)
    G = gen.standard_normal((d, r)) + 1j * gen.standard_normal((d, r))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def random_pure_state(d, seed=0, stream=()):
    gen = _gen(seed, stream)
    psi = gen.standard_normal(d) + 1j * gen.standard_normal(d)
    return psi / np.linalg.norm(psi)


def random_isometry(d_in, d_out, gen):
    return haar_unitaries(d_out, 1, gen)[0][:, :d_in]


def random_kraus(d, seed=0, stream=(), rank=None):
    """Kraus operators read off a Haar isometry from C^d into C^{d r}."""
    gen = _gen(seed, stream)
    r = d if rank is None else int(rank)
    V = random_isometry(d, d * r, gen)
    return [V[i * d:(i + 1) * d, :] for i in range(r)]


def random_povm(d, n_outcomes=2, seed=0, stream=()):
    """Random POVM ``M_x = V^dagger P_x V`` from a Haar isometry into C^{d n}."""
    gen = _gen(seed, stream)
    V = random_isometry(d, d * n_outcomes, gen)
    out = []
    for x in range(n_outcomes):
        B = V[x * d:(x + 1) * d, :]
        out.append(B.conj().T @ B)
    return out
