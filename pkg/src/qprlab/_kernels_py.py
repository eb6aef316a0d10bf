"""Pure numpy fallback for the compiled kernels in ``_kernels.pyx``.

Same algorithms, same iteration order. Slower by one to two orders of
magnitude, but dimensions in this package are small.
"""
import math

import numpy as np


def jacobi_eigh(A_in, tol=1e-13, max_sweeps=100):
    """Cyclic Jacobi eigendecomposition of a complex Hermitian matrix.

    Returns ``(diag, V, sweeps)`` with eigenvalues unsorted.
    """
    A = np.array(A_in, dtype=np.complex128, copy=True)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    fro = float(np.linalg.norm(A))
    thresh = tol * max(fro, 1.0)
    iu = np.triu_indices(n, 1)

    sweep = 0
    while sweep < max_sweeps:
        off = math.sqrt(2.0 * float(np.sum(np.abs(A[iu]) ** 2)))
        if off <= thresh:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = A[p, q]
                babs = abs(b)
                if babs < 1e-300:
                    continue
                ph = b / babs
                tau = (A[q, q].real - A[p, p].real) / (2.0 * babs)
                if tau >= 0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                phc = ph.conjugate()

                colp = A[:, p].copy()
                colq = A[:, q]
                A[:, p] = c * colp - s * phc * colq
                A[:, q] = s * colp + c * phc * colq
                vp = V[:, p].copy()
                vq = V[:, q]
                V[:, p] = c * vp - s * phc * vq
                V[:, q] = s * vp + c * phc * vq

                rowp = A[p, :].copy()
                rowq = A[q, :]
                A[p, :] = c * rowp - s * ph * rowq
                A[q, :] = s * rowp + c * ph * rowq
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real

    return np.real(np.diag(A)).copy(), V, sweep


def _project(v):
    d = v.shape[-1]
    w = v - v.mean()
    nrm = float(w @ w)
    if nrm < 1e-300:
        w = np.zeros(d)
        w[0], w[1] = 1.0, -1.0
        nrm = 2.0
    return w * math.sqrt((d - 1.0 / d) / nrm) + 1.0 / d


def _objective(v, code):
    l1 = float(np.abs(v).sum())
    vmax = float(v.max())
    vmin = float(v.min())
    d = v.shape[0]
    if code == 0:
        return l1
    if code == 1:
        return 0.5 * (vmax * (l1 - 1.0) + abs(vmin) * (l1 + 1.0))
    if code == 2:
        return 0.5 * ((d - 1.0) * vmax - (d + 1.0) * vmin)
    return -vmin


def hill_climb(starts, noise, step0, decay, objective, maximize):
    """Random-perturbation hill climb on {sum v = 1, sum v^2 = d}.

    ``starts`` has shape (R, d), ``noise`` shape (R, S, d). Returns the best
    objective value and vector per restart.
    """
    starts = np.asarray(starts, dtype=np.float64)
    noise = np.asarray(noise, dtype=np.float64)
    R, d = starts.shape
    sign = 1.0 if maximize else -1.0
    best_vals = np.empty(R)
    best_vecs = np.empty((R, d))
    for r in range(R):
        cur = _project(starts[r])
        fcur = _objective(cur, objective)
        step = step0
        for s in range(noise.shape[1]):
            trial = _project(cur + step * noise[r, s])
            ftrial = _objective(trial, objective)
            if sign * (ftrial - fcur) > 0:
                cur, fcur = trial, ftrial
            step *= decay
        best_vals[r] = fcur
        best_vecs[r] = cur
    return best_vals, best_vecs
