# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: cyclic complex Jacobi and constraint-sphere hill climbing.

Both functions mirror ``qprlab._kernels_py`` exactly (same rotation order,
same acceptance rule) so the two backends agree to roundoff.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot

cnp.import_array()

ctypedef double complex cplx


def jacobi_eigh(A_in, double tol=1e-13, int max_sweeps=100):
    """Cyclic Jacobi eigendecomposition of a complex Hermitian matrix.

    Returns ``(diag, V, sweeps)`` with eigenvalues unsorted.
    """
    cdef cnp.ndarray[cplx, ndim=2] A_arr = np.array(A_in, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = A_arr.shape[0]
    cdef cnp.ndarray[cplx, ndim=2] V_arr = np.eye(n, dtype=np.complex128)
    cdef cplx[:, ::1] A = A_arr
    cdef cplx[:, ::1] V = V_arr
    cdef Py_ssize_t p, q, k
    cdef int sweep = 0
    cdef double off, fro, thresh, app, aqq, babs, tau, t, c, s
    cdef cplx ph, apk, aqk, vkp, vkq

    fro = 0.0
    for p in range(n):
        for q in range(n):
            fro += A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag
    fro = sqrt(fro)
    thresh = tol * (fro if fro > 1.0 else 1.0)

    while sweep < max_sweeps:
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += 2.0 * (A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag)
        off = sqrt(off)
        if off <= thresh:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                babs = hypot(A[p, q].real, A[p, q].imag)
                if babs < 1e-300:
                    continue
                ph = A[p, q] / babs
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * babs)
                if tau >= 0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # columns: A <- A G with G = [[c, s], [-s conj(ph), c conj(ph)]]
                for k in range(n):
                    apk = A[k, p]
                    aqk = A[k, q]
                    A[k, p] = c * apk - s * ph.conjugate() * aqk
                    A[k, q] = s * apk + c * ph.conjugate() * aqk
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp - s * ph.conjugate() * vkq
                    V[k, q] = s * vkp + c * ph.conjugate() * vkq
                # rows: A <- G^H A
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = c * apk - s * ph * aqk
                    A[q, k] = s * apk + c * ph * aqk
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real

    diag = np.empty(n, dtype=np.float64)
    for p in range(n):
        diag[p] = A[p, p].real
    return diag, V_arr, sweep


cdef inline void _project(double* v, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t i
    cdef double mean = 0.0, nrm = 0.0, scale
    for i in range(d):
        mean += v[i]
    mean /= d
    for i in range(d):
        v[i] = v[i] - mean
        nrm += v[i] * v[i]
    if nrm < 1e-300:
        v[0] = 1.0
        v[1] = -1.0
        nrm = 2.0
    scale = sqrt((d - 1.0 / d) / nrm)
    for i in range(d):
        v[i] = v[i] * scale + 1.0 / d


cdef inline double _objective(double* v, Py_ssize_t d, int code) noexcept nogil:
    cdef Py_ssize_t i
    cdef double l1 = 0.0, vmax = v[0], vmin = v[0]
    for i in range(d):
        l1 += fabs(v[i])
        if v[i] > vmax:
            vmax = v[i]
        if v[i] < vmin:
            vmin = v[i]
    if code == 0:
        return l1
    if code == 1:
        return 0.5 * (vmax * (l1 - 1.0) + fabs(vmin) * (l1 + 1.0))
    if code == 2:
        return 0.5 * ((d - 1.0) * vmax - (d + 1.0) * vmin)
    return -vmin


def hill_climb(starts, noise, double step0, double decay, int objective, bint maximize):
    """Random-perturbation hill climb on {sum v = 1, sum v^2 = d}.

    ``starts`` has shape (R, d), ``noise`` shape (R, S, d). Returns the best
    objective value and vector per restart.
    """
    cdef double[:, ::1] st = np.ascontiguousarray(starts, dtype=np.float64)
    cdef double[:, :, ::1] nz = np.ascontiguousarray(noise, dtype=np.float64)
    cdef Py_ssize_t R = st.shape[0], d = st.shape[1], S = nz.shape[1]
    best_vals_arr = np.empty(R, dtype=np.float64)
    best_vecs_arr = np.empty((R, d), dtype=np.float64)
    cdef double[::1] best_vals = best_vals_arr
    cdef double[:, ::1] best_vecs = best_vecs_arr
    cdef double[::1] cur = np.empty(d, dtype=np.float64)
    cdef double[::1] trial = np.empty(d, dtype=np.float64)
    cdef Py_ssize_t r, s, i
    cdef double step, fcur, ftrial, sign = 1.0 if maximize else -1.0

    with nogil:
        for r in range(R):
            for i in range(d):
                cur[i] = st[r, i]
            _project(&cur[0], d)
            fcur = _objective(&cur[0], d, objective)
            step = step0
            for s in range(S):
                for i in range(d):
                    trial[i] = cur[i] + step * nz[r, s, i]
                _project(&trial[0], d)
                ftrial = _objective(&trial[0], d, objective)
                if sign * (ftrial - fcur) > 0:
                    fcur = ftrial
                    for i in range(d):
                        cur[i] = trial[i]
                step *= decay
            best_vals[r] = fcur
            for i in range(d):
                best_vecs[r, i] = cur[i]
    return best_vals_arr, best_vecs_arr
