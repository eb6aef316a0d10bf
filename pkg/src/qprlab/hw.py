"""Heisenberg-Weyl shift/clock operators and the odd-prime parity operator."""
from dataclasses import dataclass

import numpy as np

from .linalg import HermitianOperator


@dataclass(frozen=True, eq=False)
class WeylPair:
    dim: int
    X: np.ndarray
    Z: np.ndarray

    @property
    def omega(self):
        return np.exp(2j * np.pi / self.dim)


def weyl_pair(d):
    """Cyclic shift ``X|q> = |q+1>`` and clock ``Z = diag(omega^q)``."""
    d = int(d)
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    X = np.roll(np.eye(d, dtype=np.complex128), 1, axis=0)
    Z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    X.flags.writeable = False
    Z.flags.writeable = False
    return WeylPair(d, X, Z)


def displacement(j, k, pair):
    """Bare displacement ``X^j Z^k`` (no phase convention; used only by conjugation)."""
    d = pair.dim
    j %= d
    k %= d
    # X^j Z^k |q> = omega^{kq} |q+j>
    D = np.zeros((d, d), dtype=np.complex128)
    q = np.arange(d)
    D[(q + j) % d, q] = np.exp(2j * np.pi * k * q / d)
    return D


def is_prime(n):
    n = int(n)
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_factors(n):
    """Prime factors in nondecreasing order, with multiplicity."""
    n = int(n)
    out = []
    f = 2
    while f * f <= n:
        while n % f == 0:
            out.append(f)
            n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def parity(d):
    """Parity operator ``|q> -> |-q mod d>`` for odd prime ``d``."""
    d = int(d)
    if d % 2 == 0 or not is_prime(d):
        raise ValueError(f"parity operator needs an odd prime dimension, got {d}")
    P = np.zeros((d, d), dtype=np.complex128)
    q = np.arange(d)
    P[(-q) % d, q] = 1.0
    return HermitianOperator(P)
