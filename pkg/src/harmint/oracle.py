"""Brute-force quadrature oracles for the closed-form inner products.

Every closed-form Gram / right-hand-side entry in the fitting modules
has an independent counterpart here: volume Dirichlet integrals,
boundary-plane surface integrals and the two complex half-plane inner
products.  The volume and surface domains are unbounded; they are
integrated in (hyper)spherical coordinates with a tan-mapped radial
axis truncated at ``radius`` plus an analytic bound on the neglected
tail.  Polar-style coordinates avoid the corner artifacts a tensor
grid develops at infinity, so the rules converge fast enough for the
desk-scale tolerances used in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from .fields import PointSourceSum
from .geometry import MONOPOLE, constants


def _round_off(value, node_count: int) -> float:
    """Floating-point summation allowance included in reported bounds."""
    return 64.0 * np.finfo(float).eps * abs(value) * math.sqrt(node_count)


class DivergentIntegralError(ValueError):
    """The requested inner product provably diverges."""


class ToleranceError(RuntimeError):
    """The configured budget cannot certify the target tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Budget for one oracle evaluation.

    ``radius`` is the radial truncation; the radial axis is compressed
    through r = scale * tan(u) so large radii are cheap and the
    remaining tail is bounded analytically from the kernel decay
    exponents.
    """

    radius: float = 1.0e8
    radial_scale: float = 2.0
    radial_nodes: int = 96
    polar_nodes: int = 48
    azimuthal_nodes: int = 96
    target_tol: float = 1.0e-3

    def refined(self, factor: float = 1.5) -> "QuadratureSpec":
        return replace(
            self,
            radial_nodes=int(self.radial_nodes * factor),
            polar_nodes=int(self.polar_nodes * factor),
            azimuthal_nodes=int(self.azimuthal_nodes * factor),
        )


@dataclass(frozen=True)
class OracleResult:
    value: float | complex
    error_bound: float
    tail_bound: float
    node_count: int

    def agrees_with(self, reference, rtol: float) -> bool:
        scale = max(abs(reference), 1e-300)
        return abs(self.value - reference) / scale <= rtol


def _radial_axis(radius: float, scale: float, nodes: int):
    """Nodes/weights for integrals over r in (0, radius), tan-compressed."""
    u_max = math.atan(radius / scale)
    x, w = leggauss(nodes)
    u = 0.5 * u_max * (x + 1.0)
    wu = 0.5 * u_max * w
    r = scale * np.tan(u)
    wr = wu * scale / np.cos(u) ** 2
    return r, wr


def _hemisphere_directions(n: int, spec: QuadratureSpec):
    """Unit directions on the upper hemisphere of S^(n-1) with weights."""
    if n == 3:
        # omega = (sin t cos p, sin t sin p, cos t), t in (0, pi/2)
        x, w = leggauss(spec.polar_nodes)
        theta = 0.25 * math.pi * (x + 1.0)
        wt = 0.25 * math.pi * w * np.sin(theta)
        phi = np.arange(spec.azimuthal_nodes) * 2.0 * math.pi / spec.azimuthal_nodes
        wp = np.full(spec.azimuthal_nodes, 2.0 * math.pi / spec.azimuthal_nodes)
        st, ct = np.sin(theta), np.cos(theta)
        dirs = np.stack(
            [
                np.outer(st, np.cos(phi)).ravel(),
                np.outer(st, np.sin(phi)).ravel(),
                np.outer(ct, np.ones_like(phi)).ravel(),
            ],
            axis=-1,
        )
        wdir = np.outer(wt, wp).ravel()
        return dirs, wdir
    if n == 4:
        # omega = (sin a * omega', cos a), a in (0, pi/2), omega' on S^2
        x, w = leggauss(spec.polar_nodes)
        alpha = 0.25 * math.pi * (x + 1.0)
        wa = 0.25 * math.pi * w * np.sin(alpha) ** 2
        sub, wsub = _sphere_directions_3d(spec)
        sa, ca = np.sin(alpha), np.cos(alpha)
        dirs = np.concatenate(
            [
                sa[:, None, None] * sub[None, :, :],
                np.broadcast_to(ca[:, None, None], (alpha.size, sub.shape[0], 1)),
            ],
            axis=-1,
        ).reshape(-1, 4)
        wdir = np.outer(wa, wsub).ravel()
        return dirs, wdir
    raise ValueError(f"volume oracle supports n in (3, 4), got {n}")


def _sphere_directions_3d(spec: QuadratureSpec):
    """Full S^2 direction set (used inside the n=4 hemisphere rule)."""
    x, w = leggauss(spec.polar_nodes)
    theta = 0.5 * math.pi * (x + 1.0)
    wt = 0.5 * math.pi * w * np.sin(theta)
    phi = np.arange(spec.azimuthal_nodes) * 2.0 * math.pi / spec.azimuthal_nodes
    wp = np.full(spec.azimuthal_nodes, 2.0 * math.pi / spec.azimuthal_nodes)
    st, ct = np.sin(theta), np.cos(theta)
    dirs = np.stack(
        [
            np.outer(st, np.cos(phi)).ravel(),
            np.outer(st, np.sin(phi)).ravel(),
            np.outer(ct, np.ones_like(phi)).ravel(),
        ],
        axis=-1,
    )
    return dirs, np.outer(wt, wp).ravel()


def _field_envelope(f: PointSourceSum) -> tuple[float, float]:
    """(sum of |scaled strengths|, max source distance from origin)."""
    q = float(np.sum(np.abs(f._strength)))
    reach = float(np.max(np.linalg.norm(f._src, axis=1)))
    return q, reach


def _gradient_tail_bound(f: PointSourceSum, g: PointSourceSum, n: int, radius: float) -> float:
    """Bound on the neglected integral of |grad f . grad g| beyond r = radius.

    For r beyond twice every source offset, each gradient is bounded by
    q (n-2) (r/2)^(1-n) (dipole terms decay one power faster and are
    dominated by the same envelope at desk scales).
    """
    qf, af = _field_envelope(f)
    qg, ag = _field_envelope(g)
    a = max(af, ag, 1.0)
    if radius < 2.0 * a:
        return math.inf
    # |grad kernel| <= (n-2)(n+1) (r - a)^(1-n) for r - a >= 1 (monopole
    # is exact without the n+1 factor; it covers the dipole r^-n decay)
    amp = qf * qg * ((n - 2) * (n + 1)) ** 2
    half_area = math.pi ** (0.5 * n) / math.gamma(0.5 * n)  # area of S^(n-1) / 2
    # r^(n-1) (r-a)^(2(1-n)) <= (R/(R-a))^(n-1) (r-a)^(1-n) on (R, inf)
    margin = (radius / (radius - a)) ** (n - 1)
    return half_area * amp * margin * (radius - a) ** (2 - n) / (n - 2)


def _pair_gradient_dot(f, g, pts):
    return np.einsum("ij,ij->i", f.gradient_many(pts), g.gradient_many(pts))


def _volume_integral(f, g, n: int, spec: QuadratureSpec) -> tuple[float, int]:
    r, wr = _radial_axis(spec.radius, spec.radial_scale, spec.radial_nodes)
    dirs, wdir = _hemisphere_directions(n, spec)
    pts = (r[:, None, None] * dirs[None, :, :]).reshape(-1, n)
    integrand = _pair_gradient_dot(f, g, pts).reshape(r.size, dirs.shape[0])
    radial_factor = wr * r ** (n - 1)
    return float(radial_factor @ integrand @ wdir), pts.shape[0]


def quad_dirichlet_rn(
    f: PointSourceSum, g: PointSourceSum, n: int, spec: QuadratureSpec | None = None
) -> OracleResult:
    """Dirichlet integral of grad f . grad g over the upper half-space."""
    spec = spec or QuadratureSpec()
    if n not in (3, 4):
        raise ValueError(f"volume oracle supports n in (3, 4), got {n}")
    coarse, _ = _volume_integral(f, g, n, replace(spec, radial_nodes=(2 * spec.radial_nodes) // 3,
                                                  polar_nodes=(2 * spec.polar_nodes) // 3))
    fine, count = _volume_integral(f, g, n, spec)
    tail = _gradient_tail_bound(f, g, n, spec.radius)
    err = abs(fine - coarse) + tail + _round_off(fine, count)
    if err > spec.target_tol * max(abs(fine), 1e-300):
        raise ToleranceError(
            f"volume quadrature bound {err:.3e} exceeds target "
            f"{spec.target_tol:.1e} relative at value {fine:.6e}"
        )
    return OracleResult(value=fine, error_bound=err, tail_bound=tail, node_count=count)


def _boundary_decay_exponent(field) -> float:
    """Decay exponent of |field| along the boundary plane at infinity."""
    if isinstance(field, PointSourceSum):
        n = field.n
        if any(k.kind == MONOPOLE for _, _, k in field.entries):
            return float(n - 2)
        return float(n)  # first-order dipoles
    return math.inf  # exponentially decaying trigonometric fields


def _plane_directions(n: int, spec: QuadratureSpec):
    """Directions on the unit sphere of the boundary plane R^(n-1)."""
    if n == 3:
        phi = np.arange(spec.azimuthal_nodes) * 2.0 * math.pi / spec.azimuthal_nodes
        wp = np.full(spec.azimuthal_nodes, 2.0 * math.pi / spec.azimuthal_nodes)
        return np.stack([np.cos(phi), np.sin(phi)], axis=-1), wp
    if n == 4:
        return _sphere_directions_3d(spec)
    raise ValueError(f"surface oracle supports n in (3, 4), got {n}")


def _boundary_values(field, pts_plane: np.ndarray, n: int) -> np.ndarray:
    pts = np.concatenate([pts_plane, np.zeros((pts_plane.shape[0], 1))], axis=1)
    return field.value_many(pts)


def _surface_tail_bound(f, g, n: int, radius: float) -> float:
    decay = _boundary_decay_exponent(f) + _boundary_decay_exponent(g)
    if not math.isfinite(decay):
        return 0.0
    # integrand ~ r^(-decay), measure r^(n-2) dr; diverges unless decay > n-1
    if decay <= n - 1:
        raise DivergentIntegralError(
            f"boundary integrand decays like r^-{decay:g} against measure "
            f"r^{n - 2:g} dr; the surface inner product diverges for n = {n}"
        )
    qf = float(np.sum(np.abs(f._strength))) if isinstance(f, PointSourceSum) else 1.0
    qg = float(np.sum(np.abs(g._strength))) if isinstance(g, PointSourceSum) else 1.0
    amp = qf * qg * (n + 1) ** 2 * 2**decay
    area = 2.0 * math.pi ** (0.5 * (n - 1)) / math.gamma(0.5 * (n - 1))
    return area * amp * radius ** (n - 1 - decay) / (decay - (n - 1))


def _surface_integral(f, g, n: int, spec: QuadratureSpec) -> tuple[float, int]:
    r, wr = _radial_axis(spec.radius, spec.radial_scale, spec.radial_nodes)
    dirs, wdir = _plane_directions(n, spec)
    pts_plane = (r[:, None, None] * dirs[None, :, :]).reshape(-1, n - 1)
    vals = (_boundary_values(f, pts_plane, n) * _boundary_values(g, pts_plane, n)).reshape(
        r.size, dirs.shape[0]
    )
    radial_factor = wr * r ** (n - 2)
    return float(radial_factor @ vals @ wdir), pts_plane.shape[0]


def quad_surface_rn(f, g, n: int, spec: QuadratureSpec | None = None) -> OracleResult:
    """Boundary-plane integral of f * g over R^(n-1)."""
    spec = spec or QuadratureSpec()
    tail = _surface_tail_bound(f, g, n, spec.radius)  # raises when divergent
    coarse, _ = _surface_integral(f, g, n, replace(spec, radial_nodes=(2 * spec.radial_nodes) // 3))
    fine, count = _surface_integral(f, g, n, spec)
    err = abs(fine - coarse) + tail + _round_off(fine, count)
    if err > spec.target_tol * max(abs(fine), 1e-300):
        raise ToleranceError(
            f"surface quadrature bound {err:.3e} exceeds target "
            f"{spec.target_tol:.1e} relative at value {fine:.6e}"
        )
    return OracleResult(value=fine, error_bound=err, tail_bound=tail, node_count=count)


def quad_complex(setting: str, g, f, spec: QuadratureSpec | None = None) -> OracleResult:
    """Complex half-plane inner product (g, f), conjugating the g slot.

    ``setting`` is "sigma" (boundary-line integral / 2 pi) or
    "dirichlet" (upper-half-plane integral of g'* f' / 2 pi).
    """
    spec = spec or QuadratureSpec(target_tol=1e-6, radial_nodes=220, polar_nodes=120)
    r, wr = _radial_axis(spec.radius, spec.radial_scale, spec.radial_nodes)
    if setting == "sigma":
        x = np.concatenate([-r[::-1], r])
        wx = np.concatenate([wr[::-1], wr])
        vals = np.conj(g.value_many(x + 0j)) * f.value_many(x + 0j)
        value = complex(np.sum(vals * wx) / (2.0 * math.pi))
        coarse_spec = replace(spec, radial_nodes=(2 * spec.radial_nodes) // 3)
        rc, wrc = _radial_axis(spec.radius, spec.radial_scale, coarse_spec.radial_nodes)
        xc = np.concatenate([-rc[::-1], rc])
        wxc = np.concatenate([wrc[::-1], wrc])
        coarse = complex(np.sum(np.conj(g.value_many(xc + 0j)) * f.value_many(xc + 0j) * wxc)
                         / (2.0 * math.pi))
        # |g f| ~ r^-2 at worst for simple-pole fields
        tail = (g.envelope() * f.envelope()) / (math.pi * spec.radius)
        count = x.size
    elif setting == "dirichlet":
        xt, wxt = leggauss(spec.polar_nodes)
        theta = 0.5 * math.pi * (xt + 1.0)
        wt = 0.5 * math.pi * wxt
        z = np.multiply.outer(r, np.exp(1j * theta)).ravel()

        def _inner(rr, wrr):
            zz = np.multiply.outer(rr, np.exp(1j * theta))
            vals = np.conj(g.derivative_many(zz.ravel())) * f.derivative_many(zz.ravel())
            vals = vals.reshape(rr.size, theta.size)
            return complex((wrr * rr) @ vals @ wt / (2.0 * math.pi))

        value = _inner(r, wr)
        rc, wrc = _radial_axis(spec.radius, spec.radial_scale, (2 * spec.radial_nodes) // 3)
        coarse = _inner(rc, wrc)
        # |g' f'| ~ r^-4, measure r dr: tail ~ C / (2 radius^2)
        tail = (g.envelope() * f.envelope()) / (4.0 * spec.radius**2)
        count = z.size
    else:
        raise ValueError(f"unknown complex setting {setting!r}")
    err = abs(value - coarse) + tail + _round_off(value, count)
    if err > spec.target_tol * max(abs(value), 1e-300):
        raise ToleranceError(
            f"complex quadrature bound {err:.3e} exceeds target "
            f"{spec.target_tol:.1e} relative at value {value:.6e}"
        )
    return OracleResult(value=value, error_bound=err, tail_bound=tail, node_count=count)


def line_integral_inner(field, x_h: np.ndarray, height: float) -> float:
    """Adaptive 1-D quadrature of the vertical ray integral of ``field``.

    Numeric reference for the closed-form monopole line integrals: the
    integral of field(t, h') for h' from ``height`` to infinity above
    the horizontal location ``x_h``.
    """
    x_h = np.asarray(x_h, dtype=float)

    def integrand(h):
        return field.value(np.append(x_h, h))

    val, _ = integrate.quad(integrand, height, np.inf, limit=200)
    return val


def finite_difference(fn, point, axis: int, order: int = 1, step: float = 1e-4):
    """Richardson-extrapolated centered difference along one axis.

    ``fn`` maps a coordinate array (or complex scalar when ``axis`` is
    None-like semantics are not needed) to a float/complex value.
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    point = np.asarray(point, dtype=float)
    if step <= 0 or point[axis] != point[axis]:
        raise ValueError("bad step or point")
    e = np.zeros_like(point)
    e[axis] = 1.0

    def diff(hh):
        if hh < 1e-300:
            raise FloatingPointError("finite-difference step underflow")
        if order == 1:
            return (fn(point + hh * e) - fn(point - hh * e)) / (2.0 * hh)
        return (fn(point + hh * e) - 2.0 * fn(point) + fn(point - hh * e)) / hh**2

    d1 = diff(step)
    d2 = diff(step / 2.0)
    return d2 + (d2 - d1) / 3.0  # Richardson for O(h^2) centered stencils
