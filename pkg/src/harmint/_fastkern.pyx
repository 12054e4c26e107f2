# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled point-source kernel core.

Same contract as harmint._purekern: sums of monopole / dipole kernels
and their gradients over many field points.  Kind codes: 0 monopole,
1 vertical dipole, 2 horizontal dipole along ``axis0``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport pow

cnp.import_array()


def ps_values(pts, src, strength, kindcode, axis0, int n):
    """Sum of kernel values at each point, shape (npts,)."""
    cdef double[:, ::1] p = np.ascontiguousarray(pts, dtype=np.float64)
    cdef double[:, ::1] s = np.ascontiguousarray(src, dtype=np.float64)
    cdef double[::1] q = np.ascontiguousarray(strength, dtype=np.float64)
    cdef long[::1] kc = np.ascontiguousarray(kindcode, dtype=np.int64)
    cdef long[::1] ax = np.ascontiguousarray(axis0, dtype=np.int64)
    cdef Py_ssize_t npts = p.shape[0], nsrc = s.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.zeros(npts)
    cdef double[::1] o = out
    cdef Py_ssize_t i, k, d
    cdef double m2 = 2.0 - n
    cdef double r2, acc, u, ua, expo

    for i in range(npts):
        acc = 0.0
        for k in range(nsrc):
            r2 = 0.0
            for d in range(n):
                u = p[i, d] - s[k, d]
                r2 += u * u
            if kc[k] == 0:
                acc += q[k] * pow(r2, 0.5 * m2)
            elif kc[k] == 1:
                ua = p[i, n - 1] - s[k, n - 1]
                acc += q[k] * m2 * ua * pow(r2, 0.5 * m2 - 1.0)
            else:
                ua = p[i, ax[k]] - s[k, ax[k]]
                acc -= q[k] * m2 * ua * pow(r2, 0.5 * m2 - 1.0)
        o[i] = acc
    return out


def ps_gradients(pts, src, strength, kindcode, axis0, int n):
    """Gradient of the kernel sum at each point, shape (npts, n)."""
    cdef double[:, ::1] p = np.ascontiguousarray(pts, dtype=np.float64)
    cdef double[:, ::1] s = np.ascontiguousarray(src, dtype=np.float64)
    cdef double[::1] q = np.ascontiguousarray(strength, dtype=np.float64)
    cdef long[::1] kc = np.ascontiguousarray(kindcode, dtype=np.int64)
    cdef long[::1] ax = np.ascontiguousarray(axis0, dtype=np.int64)
    cdef Py_ssize_t npts = p.shape[0], nsrc = s.shape[0]
    cdef cnp.ndarray[double, ndim=2] out = np.zeros((npts, n))
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, k, d
    cdef long a
    cdef double m2 = 2.0 - n
    cdef double r2, u, ua, r2p, sgn, coef
    cdef double uvec[64]

    if n > 64:
        raise ValueError("dimension too large for compiled kernel (max 64)")

    for i in range(npts):
        for k in range(nsrc):
            r2 = 0.0
            for d in range(n):
                u = p[i, d] - s[k, d]
                uvec[d] = u
                r2 += u * u
            r2p = pow(r2, 0.5 * m2 - 1.0)
            if kc[k] == 0:
                coef = q[k] * m2 * r2p
                for d in range(n):
                    o[i, d] += coef * uvec[d]
            else:
                if kc[k] == 1:
                    sgn = m2
                    a = n - 1
                else:
                    sgn = -m2
                    a = ax[k]
                ua = uvec[a]
                coef = -q[k] * sgn * n * ua * r2p / r2
                for d in range(n):
                    o[i, d] += coef * uvec[d]
                o[i, a] += q[k] * sgn * r2p
    return out
