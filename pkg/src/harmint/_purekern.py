"""Pure-NumPy implementation of the hot point-source kernels.

Evaluates sums of monopole / first-order dipole kernels (and their
gradients) at many field points at once.  Kind codes: 0 monopole,
1 vertical dipole, 2 horizontal dipole along the 0-based ambient axis
given in ``axis0``.  Convention scale factors are baked into
``strength`` by the callers.

This module mirrors the compiled ``_fastkern`` extension exactly; see
``harmint.backend`` for the import-time selection.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 15


def _accumulate(pts, src, strength, kindcode, axis0, n, want_grad):
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    src = np.ascontiguousarray(src, dtype=np.float64)
    strength = np.asarray(strength, dtype=np.float64)
    kindcode = np.asarray(kindcode, dtype=np.int64)
    axis0 = np.asarray(axis0, dtype=np.int64)
    m2 = 2.0 - n
    # effective dipole axis: vertical dipoles act along the last coordinate
    eff_axis = np.where(kindcode == 1, n - 1, axis0)

    npts = pts.shape[0]
    values = np.zeros(npts)
    grads = np.zeros((npts, n)) if want_grad else None

    for lo in range(0, npts, _CHUNK):
        hi = min(lo + _CHUNK, npts)
        u = pts[lo:hi, None, :] - src[None, :, :]  # (chunk, nsrc, n)
        r2 = np.einsum("ijk,ijk->ij", u, u)
        p = 0.5 * m2 - 1.0
        r2p = r2**p  # r^(2-n-2) shared by every kind

        term_val = np.empty_like(r2)
        mono = kindcode == 0
        if mono.any():
            term_val[:, mono] = r2[:, mono] * r2p[:, mono]
        dip = ~mono
        if dip.any():
            sgn = np.where(kindcode[dip] == 1, m2, -m2)
            ua = np.take_along_axis(u[:, dip, :], eff_axis[dip][None, :, None], axis=2)[
                :, :, 0
            ]
            term_val[:, dip] = sgn * ua * r2p[:, dip]
        values[lo:hi] += term_val @ strength

        if want_grad:
            g = np.empty_like(u)
            if mono.any():
                g[:, mono, :] = m2 * u[:, mono, :] * r2p[:, mono, None]
            if dip.any():
                sgn = np.where(kindcode[dip] == 1, m2, -m2)
                ud = u[:, dip, :]
                r2d = r2[:, dip]
                r2pd = r2p[:, dip]
                ua = np.take_along_axis(ud, eff_axis[dip][None, :, None], axis=2)[:, :, 0]
                coef = -n * sgn * ua * r2pd / r2d  # (chunk, ndip)
                gd = coef[:, :, None] * ud
                didx = np.arange(np.count_nonzero(dip))
                gd[:, didx, eff_axis[dip]] += sgn * r2pd
                g[:, dip, :] = gd
            grads[lo:hi] += np.einsum("ijk,j->ik", g, strength)

    return values, grads


def ps_values(pts, src, strength, kindcode, axis0, n):
    """Sum of kernel values at each point, shape (npts,)."""
    values, _ = _accumulate(pts, src, strength, kindcode, axis0, int(n), False)
    return values


def ps_gradients(pts, src, strength, kindcode, axis0, n):
    """Gradient of the kernel sum at each point, shape (npts, n)."""
    _, grads = _accumulate(pts, src, strength, kindcode, axis0, int(n), True)
    return grads
