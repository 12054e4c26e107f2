"""Boundary-plane (surface-integral norm) fitting on the half-space.

Under the surface norm, the inner product of a vertical-dipole kernel
with a harmonic field f is -1/2 f(P) at the kernel's mirror node, and
the inner product of a monopole kernel with f is +1/2 times the
vertical ray integral of f above the mirror node.  The dipole Gram is
closed-form in any n >= 3; the monopole Gram converges only for
n >= 4 (the n = 3 boundary integrand decays like 1/r^2 against the
r dr measure, a logarithmic divergence, and is rejected).
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .dirichlet import FitResult, NormalEquations, SourceBasisSpec
from .dirichlet import evaluate as evaluate  # noqa: F401  (same contract, re-exported)
from .dirichlet import solve as _solve_generic
from .fields import FourierField, PointSourceSum
from .geometry import (
    MONOPOLE,
    SCALED,
    VERTICAL_DIPOLE,
    KernelKind,
    SourcePoint,
    constants,
    mirror,
)
from .oracle import DivergentIntegralError


class SurfaceNormalEquations(NormalEquations):
    pass


def _sigma_replication(kind: KernelKind, n: int) -> float:
    """Constant c with (F, f)_sigma = c * f(P) for vertical dipoles."""
    scale = 1.0 if kind.convention == SCALED else 1.0 / constants(n).d_n
    return -0.5 * scale


def assemble_surface_dipole(basis: SourceBasisSpec, f) -> SurfaceNormalEquations:
    """Surface-norm normal equations on a vertical-dipole basis."""
    n = basis.n
    if any(k.kind != VERTICAL_DIPOLE for _, k in basis.entries):
        raise ValueError("surface dipole assembly requires a pure vertical-dipole basis")
    rep = np.array([_sigma_replication(k, n) for _, k in basis.entries])
    P = basis.mirror_nodes()
    T = np.column_stack([rep * bk.value_many(P) for bk in basis.kernels()])
    A = rep * f.value_many(P)
    f_norm = None
    if isinstance(f, PointSourceSum):
        try:
            f_norm = field_norm_sq_surface(f)
        except (DivergentIntegralError, ValueError):
            f_norm = None
    return SurfaceNormalEquations(
        T=T,
        A=A,
        setting="surface-rn",
        replication_constants=rep,
        condition_estimate=None,
        f_norm_sq=f_norm,
    )


def monopole_line_inner(S: SourcePoint, f, n: int) -> float:
    """Surface inner product of the scaled monopole at S with f.

    Equals +1/2 times the integral of f(t_S, h') for h' from p_h (the
    mirror height |w|) upward.  Closed forms: trigonometric fields use
    the per-mode decay integral; pure-monopole point fields in n = 4
    use the arctan antiderivative; anything else integrable falls back
    to adaptive quadrature.
    """
    if not isinstance(S, SourcePoint):
        coords = np.asarray(S, dtype=float)
        S = SourcePoint(coords[:-1], coords[-1])
    p_h = -S.w
    if isinstance(f, FourierField):
        return 0.5 * f.vertical_ray_integral(S.t[0], S.t[1], p_h)
    if isinstance(f, PointSourceSum):
        if n == 3 and any(k.kind == MONOPOLE for _, _, k in f.entries):
            raise DivergentIntegralError(
                "the vertical ray integral of an n = 3 monopole field diverges"
            )
        if n == 4 and all(k.kind == MONOPOLE for _, _, k in f.entries):
            d4 = constants(4).d_n
            total = 0.0
            for q, src, kind in f.entries:
                scale = kind.scale(4) / d4  # 1 for scaled, 1/d4 for raw
                rho = float(np.linalg.norm(S.t - src.t))
                depth = p_h + abs(src.w)
                if rho < 1e-12:
                    total += q * scale * 0.5 * d4 / depth
                else:
                    total += q * scale * 0.5 * d4 / rho * (0.5 * math.pi - math.atan(depth / rho))
            return total
        val, _ = integrate.quad(
            lambda h: f.value(np.append(S.t, h)), p_h, np.inf, limit=200
        )
        return 0.5 * val
    raise TypeError(f"unsupported field type {type(f).__name__}")


def assemble_surface_monopole(basis: SourceBasisSpec, f, n: int) -> SurfaceNormalEquations:
    """Surface-norm normal equations on a monopole basis (n >= 4 only)."""
    if n < 4:
        raise DivergentIntegralError(
            "the n = 3 monopole surface Gram diverges logarithmically; "
            "use the vertical-dipole basis instead"
        )
    if basis.n != n:
        raise ValueError("basis dimension disagrees with n")
    if any(k.kind != MONOPOLE for _, k in basis.entries):
        raise ValueError("monopole surface assembly requires a pure monopole basis")
    kernels = basis.kernels()
    N = len(basis)
    T = np.empty((N, N))
    A = np.empty(N)
    for j, (Sj, kind_j) in enumerate(basis.entries):
        conv = 1.0 if kind_j.convention == SCALED else 1.0 / constants(n).d_n
        for k, bk in enumerate(kernels):
            T[j, k] = conv * monopole_line_inner(Sj, bk, n)
        A[j] = conv * monopole_line_inner(Sj, f, n)
    rep = np.full(N, 0.5)
    f_norm = None
    if isinstance(f, PointSourceSum):
        try:
            f_norm = field_norm_sq_surface(f)
        except (DivergentIntegralError, ValueError):
            f_norm = None
    return SurfaceNormalEquations(
        T=T,
        A=A,
        setting="surface-rn",
        replication_constants=rep,
        condition_estimate=None,
        f_norm_sq=f_norm,
    )


def field_norm_sq_surface(f: PointSourceSum) -> float:
    """Closed-form surface norm of a point-source field."""
    n = f.n
    kinds = {k.kind for _, _, k in f.entries}
    total = 0.0
    if kinds == {VERTICAL_DIPOLE}:
        P = np.array([mirror(s).coords for _, s, _ in f.entries])
        vals = f.value_many(P)
        for (q, _, k), v in zip(f.entries, vals, strict=True):
            total += q * _sigma_replication(k, n) * v
        return float(total)
    if kinds == {MONOPOLE}:
        if n == 3:
            raise DivergentIntegralError("n = 3 monopole surface norm diverges")
        for q, s, k in f.entries:
            conv = 1.0 if k.convention == SCALED else 1.0 / constants(n).d_n
            total += q * conv * monopole_line_inner(s, f, n)
        return float(total)
    raise ValueError("surface norm available for pure-dipole or pure-monopole fields only")


def solve_surface(ne: SurfaceNormalEquations) -> FitResult:
    return _solve_generic(ne)
