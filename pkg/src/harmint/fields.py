"""Harmonic target fields over R^n half-space.

Two concrete kinds are admissible: finite point-source sums (monopoles
and first-order dipoles strictly below the boundary plane) and
band-limited trigonometric fields with exponential height decay.  Both
expose ``value`` / ``gradient`` at single points and vectorized
``value_many`` / ``gradient_many`` over (M, n) coordinate arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .geometry import (
    HORIZONTAL_DIPOLE,
    MONOPOLE,
    VERTICAL_DIPOLE,
    KernelKind,
    SourcePoint,
    _check_dimension,
)

_KIND_CODE = {MONOPOLE: 0, VERTICAL_DIPOLE: 1, HORIZONTAL_DIPOLE: 2}


class PointSourceSum:
    """Finite linear combination of point-source kernels below the plane."""

    def __init__(self, n: int, entries):
        self.n = _check_dimension(n)
        self.entries = []
        for strength, source, kind in entries:
            if not isinstance(source, SourcePoint):
                source = SourcePoint(np.asarray(source[:-1], dtype=float), source[-1])
            if source.n != self.n:
                raise ValueError(
                    f"source dimension {source.n} does not match field dimension {self.n}"
                )
            kind.validate_for_dimension(self.n)
            self.entries.append((float(strength), source, kind))
        if not self.entries:
            raise ValueError("point-source field needs at least one source")

        self._src = np.array([s.coords for _, s, _ in self.entries])
        self._strength = np.array(
            [q * k.scale(self.n) for q, _, k in self.entries]
        )
        self._kindcode = np.array(
            [_KIND_CODE[k.kind] for _, _, k in self.entries], dtype=np.int64
        )
        self._axis0 = np.array(
            [(k.axis - 1) if k.kind == HORIZONTAL_DIPOLE else 0 for _, _, k in self.entries],
            dtype=np.int64,
        )

    def value_many(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return backend.ps_values(
            pts, self._src, self._strength, self._kindcode, self._axis0, self.n
        )

    def gradient_many(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return backend.ps_gradients(
            pts, self._src, self._strength, self._kindcode, self._axis0, self.n
        )

    def value(self, coords) -> float:
        return float(self.value_many(np.asarray(coords, dtype=float)[None, :])[0])

    def gradient(self, coords) -> np.ndarray:
        return self.gradient_many(np.asarray(coords, dtype=float)[None, :])[0]

    def max_source_height(self) -> float:
        return max(s.w for _, s, _ in self.entries)


@dataclass(frozen=True)
class FourierMode:
    """One quadrant-trig mode cos/sin(k1 x) x cos/sin(k2 y) e^(-kappa h)."""

    k1: float
    k2: float
    a_cc: float = 0.0
    a_cs: float = 0.0
    a_sc: float = 0.0
    a_ss: float = 0.0

    @property
    def kappa(self) -> float:
        return float(np.hypot(self.k1, self.k2))


class FourierField:
    """Harmonic trigonometric field over R^3 half-space (no DC mode)."""

    n = 3

    def __init__(self, half_extent: float, modes):
        if half_extent <= 0:
            raise ValueError("half-extent must be positive")
        self.half_extent = float(half_extent)
        self.modes = [m if isinstance(m, FourierMode) else FourierMode(*m) for m in modes]
        for m in self.modes:
            if m.kappa <= 0:
                raise ValueError("DC mode (kappa = 0) is not admissible")
        self._k = np.array([[m.k1, m.k2] for m in self.modes]).reshape(-1, 2)
        self._a = np.array(
            [[m.a_cc, m.a_cs, m.a_sc, m.a_ss] for m in self.modes]
        ).reshape(-1, 4)
        self._kappa = np.hypot(self._k[:, 0], self._k[:, 1])

    def _trig(self, x, y):
        """Quadrant trig table, shape (npts, nmodes, 4)."""
        p1 = np.multiply.outer(x, self._k[:, 0])
        p2 = np.multiply.outer(y, self._k[:, 1])
        c1, s1 = np.cos(p1), np.sin(p1)
        c2, s2 = np.cos(p2), np.sin(p2)
        return np.stack([c1 * c2, c1 * s2, s1 * c2, s1 * s2], axis=-1)

    def spatial_many(self, x, y) -> np.ndarray:
        """Per-mode horizontal factor (no height decay), shape (npts, nmodes)."""
        return np.einsum("pmq,mq->pm", self._trig(x, y), self._a)

    def value_many(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        decay = np.exp(-np.multiply.outer(pts[:, 2], self._kappa))
        return np.einsum("pm,pm->p", self.spatial_many(pts[:, 0], pts[:, 1]), decay)

    def gradient_many(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        x, y, h = pts[:, 0], pts[:, 1], pts[:, 2]
        t = self._trig(x, y)  # [cc, cs, sc, ss]
        a = self._a
        decay = np.exp(-np.multiply.outer(h, self._kappa))
        # d/dx swaps cos(k1 x) <-> sin(k1 x) with signs, likewise d/dy.
        dx = self._k[:, 0] * (
            -a[:, 0] * t[..., 2] - a[:, 1] * t[..., 3] + a[:, 2] * t[..., 0] + a[:, 3] * t[..., 1]
        )
        dy = self._k[:, 1] * (
            -a[:, 0] * t[..., 1] + a[:, 1] * t[..., 0] - a[:, 2] * t[..., 3] + a[:, 3] * t[..., 2]
        )
        dh = -self._kappa * np.einsum("pmq,mq->pm", t, a)
        return np.stack(
            [
                np.einsum("pm,pm->p", dx, decay),
                np.einsum("pm,pm->p", dy, decay),
                np.einsum("pm,pm->p", dh, decay),
            ],
            axis=-1,
        )

    def value(self, coords) -> float:
        return float(self.value_many(np.asarray(coords, dtype=float)[None, :])[0])

    def gradient(self, coords) -> np.ndarray:
        return self.gradient_many(np.asarray(coords, dtype=float)[None, :])[0]

    def vertical_ray_integral(self, x: float, y: float, height: float) -> float:
        """Closed form of the vertical line integral from ``height`` to infinity."""
        spatial = self.spatial_many(np.array([x]), np.array([y]))[0]
        return float(np.sum(spatial * np.exp(-self._kappa * height) / self._kappa))
