"""Half-space geometry, dimension constants and point-source kernels.

Coordinates in R^n are split as Z = [t | h] with t the n-1 horizontal
components and h the signed vertical coordinate (h >= 0 in the field
region, w < 0 for sources).  Kernels come in two normalization
conventions: "scaled" carries the dimension constant d_n so that the
half-space energy inner product of a monopole kernel with a harmonic
field f equals f(P)/2 at the mirror node P; "raw" is the bare power
|Z - S|^(2-n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MIN_DIMENSION = 3

MONOPOLE = "monopole"
VERTICAL_DIPOLE = "vertical-dipole"
HORIZONTAL_DIPOLE = "horizontal-dipole"

SCALED = "scaled"
RAW = "raw"


class DimensionError(ValueError):
    """Ambient dimension outside the supported range (n >= 3)."""


def _check_dimension(n: int) -> int:
    n = int(n)
    if n < MIN_DIMENSION:
        raise DimensionError(
            f"ambient dimension must be >= {MIN_DIMENSION}, got {n} "
            "(the complex module covers the planar analog)"
        )
    return n


@dataclass(frozen=True)
class Constants:
    """Unit-ball volume and the two Poisson-kernel related constants."""

    n: int
    unit_ball_volume: float
    c_n: float
    d_n: float


def constants(n: int) -> Constants:
    """Return V(B), c_n = 2/(n V(B)) and d_n = c_n / (2(n-2)).

    Computed through log-Gamma so arbitrary n >= 3 is safe from
    overflow.
    """
    n = _check_dimension(n)
    vb = math.exp(0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n + 1.0))
    c_n = 2.0 / (n * vb)
    d_n = c_n / (2.0 * (n - 2))
    return Constants(n=n, unit_ball_volume=vb, c_n=c_n, d_n=d_n)


def _as_horizontal(t) -> np.ndarray:
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if t.ndim != 1:
        raise ValueError("horizontal coordinates must be a 1-D vector")
    if not np.all(np.isfinite(t)):
        raise ValueError("horizontal coordinates must be finite")
    return t


@dataclass(frozen=True)
class HalfSpacePoint:
    """Field point [t | h] with h >= 0."""

    t: np.ndarray
    h: float

    def __post_init__(self):
        object.__setattr__(self, "t", _as_horizontal(self.t))
        object.__setattr__(self, "h", float(self.h))
        if not math.isfinite(self.h) or self.h < 0.0:
            raise ValueError(f"field point height must be finite and >= 0, got {self.h}")

    @property
    def n(self) -> int:
        return self.t.size + 1

    @property
    def coords(self) -> np.ndarray:
        return np.append(self.t, self.h)


@dataclass(frozen=True)
class SourcePoint:
    """Source location [t | w] strictly below the boundary plane (w < 0)."""

    t: np.ndarray
    w: float

    def __post_init__(self):
        object.__setattr__(self, "t", _as_horizontal(self.t))
        object.__setattr__(self, "w", float(self.w))
        if not math.isfinite(self.w) or self.w >= 0.0:
            raise ValueError(f"source depth must be finite and < 0, got {self.w}")

    @property
    def n(self) -> int:
        return self.t.size + 1

    @property
    def coords(self) -> np.ndarray:
        return np.append(self.t, self.w)


@dataclass(frozen=True)
class MirrorNode:
    """Reflection P = [t | -w] of a source through the boundary plane."""

    t: np.ndarray
    p_h: float

    def __post_init__(self):
        object.__setattr__(self, "t", _as_horizontal(self.t))
        object.__setattr__(self, "p_h", float(self.p_h))
        if not math.isfinite(self.p_h) or self.p_h <= 0.0:
            raise ValueError(f"mirror node height must be > 0, got {self.p_h}")

    @property
    def coords(self) -> np.ndarray:
        return np.append(self.t, self.p_h)

    def as_field_point(self) -> HalfSpacePoint:
        return HalfSpacePoint(t=self.t, h=self.p_h)


def mirror(source: SourcePoint) -> MirrorNode:
    """Reflect a source through the boundary plane."""
    return MirrorNode(t=source.t, p_h=-source.w)


def reflect(node: MirrorNode) -> SourcePoint:
    """Inverse of :func:`mirror`."""
    return SourcePoint(t=node.t, w=-node.p_h)


@dataclass(frozen=True)
class KernelKind:
    """Kernel selector: monopole or first-order dipole, scaled or raw.

    ``axis`` is the 1-based horizontal axis index for horizontal
    dipoles (1 <= axis <= n-1) and ignored otherwise.
    """

    kind: str = MONOPOLE
    axis: int | None = None
    convention: str = SCALED

    def __post_init__(self):
        if self.kind not in (MONOPOLE, VERTICAL_DIPOLE, HORIZONTAL_DIPOLE):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.convention not in (SCALED, RAW):
            raise ValueError(f"unknown kernel convention {self.convention!r}")
        if self.kind == HORIZONTAL_DIPOLE:
            if self.axis is None or int(self.axis) < 1:
                raise ValueError("horizontal dipole requires a 1-based axis index")
            object.__setattr__(self, "axis", int(self.axis))
        elif self.axis is not None:
            raise ValueError("axis is only meaningful for horizontal dipoles")

    def validate_for_dimension(self, n: int) -> None:
        if self.kind == HORIZONTAL_DIPOLE and self.axis > n - 1:
            raise ValueError(f"horizontal dipole axis {self.axis} exceeds n-1={n - 1}")

    def scale(self, n: int) -> float:
        """Convention prefactor multiplying the bare geometric kernel."""
        return constants(n).d_n if self.convention == SCALED else 1.0

    def base_derivative(self, n: int) -> tuple[tuple[int, ...], float]:
        """Kernel as sign * d^(idx)/du^(idx) of |u|^(2-n), u = Z - S.

        Returns (multi-index of 0-based ambient axes, sign).
        """
        if self.kind == MONOPOLE:
            return (), 1.0
        if self.kind == VERTICAL_DIPOLE:
            return (n - 1,), 1.0
        return (self.axis - 1,), -1.0


def _power_derivative(u: np.ndarray, n: int, idx: tuple[int, ...]) -> float:
    """d^|idx| / du_idx of |u|^(2-n), for |idx| <= 3."""
    r2 = float(u @ u)
    m = 2 - n
    order = len(idx)
    if order == 0:
        return r2 ** (0.5 * m)
    if order == 1:
        (i,) = idx
        return m * u[i] * r2 ** (0.5 * m - 1)
    if order == 2:
        i, j = idx
        out = -m * n * u[i] * u[j] * r2 ** (0.5 * m - 2)
        if i == j:
            out += m * r2 ** (0.5 * m - 1)
        return out
    if order == 3:
        i, j, k = idx
        out = m * n * (n + 2) * u[i] * u[j] * u[k] * r2 ** (0.5 * m - 3)
        s = 0.0
        if i == j:
            s += u[k]
        if i == k:
            s += u[j]
        if j == k:
            s += u[i]
        out -= m * n * s * r2 ** (0.5 * m - 2)
        return out
    raise ValueError(f"derivative order {order} not supported (max total order 3)")


def _separation(Z: HalfSpacePoint, S: SourcePoint) -> np.ndarray:
    if Z.n != S.n:
        raise ValueError(f"dimension mismatch: field point n={Z.n}, source n={S.n}")
    return Z.coords - S.coords


def eval_kernel(kind: KernelKind, Z: HalfSpacePoint, S: SourcePoint, n: int | None = None) -> float:
    """Evaluate a point-source kernel at a field point.

    Scaled monopole: d_n |Z-S|^(2-n).  Vertical dipole is the field
    derivative of the monopole along h; horizontal dipoles are source
    partials along t_j (equivalently minus the field partial).
    """
    u = _separation(Z, S)
    dim = _check_dimension(Z.n if n is None else n)
    if dim != Z.n:
        raise ValueError(f"declared dimension {dim} does not match points (n={Z.n})")
    kind.validate_for_dimension(dim)
    idx, sign = kind.base_derivative(dim)
    return kind.scale(dim) * sign * _power_derivative(u, dim, idx)


def eval_kernel_derivative(
    kind: KernelKind,
    Z: HalfSpacePoint,
    S: SourcePoint,
    direction: int,
    order: int = 1,
    n: int | None = None,
    with_respect_to: str = "source",
) -> float:
    """Analytic partial derivative of a kernel along one coordinate axis.

    ``direction`` is 1-based: 1..n-1 select horizontal axes, n the
    vertical one.  Source partials and field partials along the same
    axis differ only by the sign (-1)^order.
    """
    if order not in (1, 2):
        raise ValueError(f"derivative order must be 1 or 2, got {order}")
    if with_respect_to not in ("source", "field"):
        raise ValueError("with_respect_to must be 'source' or 'field'")
    u = _separation(Z, S)
    dim = _check_dimension(Z.n if n is None else n)
    if dim != Z.n:
        raise ValueError(f"declared dimension {dim} does not match points (n={Z.n})")
    kind.validate_for_dimension(dim)
    direction = int(direction)
    if not 1 <= direction <= dim:
        raise ValueError(f"direction must be in 1..{dim}, got {direction}")
    idx, sign = kind.base_derivative(dim)
    full = idx + (direction - 1,) * order
    if with_respect_to == "source":
        sign *= (-1.0) ** order
    return kind.scale(dim) * sign * _power_derivative(u, dim, full)


def eval_kernel_field_gradient(
    kind: KernelKind, Z: HalfSpacePoint, S: SourcePoint
) -> np.ndarray:
    """Gradient of the kernel with respect to the field point."""
    u = _separation(Z, S)
    dim = _check_dimension(Z.n)
    kind.validate_for_dimension(dim)
    idx, sign = kind.base_derivative(dim)
    scale = kind.scale(dim)
    return np.array(
        [scale * sign * _power_derivative(u, dim, idx + (i,)) for i in range(dim)]
    )


def replication_constant(kind: KernelKind, n: int) -> float:
    """Constant c with D[kernel, f] = c * L f(P), L the node functional.

    For the scaled convention c = 1/2; the raw convention rescales by
    1/d_n (2*pi for raw R^3 monopoles).
    """
    if kind.convention == SCALED:
        return 0.5
    return 0.5 / constants(n).d_n
