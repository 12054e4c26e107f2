"""Minimum-Dirichlet-energy fitting in the R^n half-space.

The Gram matrix of the half-space kernels under the Dirichlet-energy
inner product is assembled in closed form: the inner product of a
kernel anchored at source S with any finite-energy harmonic field f
equals a fixed constant times a point functional of f (value or first
derivative, per kernel kind) at the mirror node P, the reflection of S
through the boundary plane.  No quadrature is involved; the oracle
module provides the independent numeric cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._solve import SolveDiagnostics, solve_spd
from .fields import PointSourceSum
from .geometry import (
    HORIZONTAL_DIPOLE,
    MONOPOLE,
    VERTICAL_DIPOLE,
    HalfSpacePoint,
    KernelKind,
    MirrorNode,
    SourcePoint,
    _check_dimension,
    mirror,
    reflect,
    replication_constant,
)


@dataclass(frozen=True)
class SourceBasisSpec:
    """Locations and kinds of the lower-half-space fitting kernels."""

    n: int
    entries: tuple  # of (SourcePoint, KernelKind)

    def __post_init__(self):
        _check_dimension(self.n)
        entries = []
        for source, kind in self.entries:
            if not isinstance(source, SourcePoint):
                coords = np.asarray(source, dtype=float)
                source = SourcePoint(coords[:-1], coords[-1])
            if source.n != self.n:
                raise ValueError(
                    f"source dimension {source.n} does not match basis dimension {self.n}"
                )
            kind.validate_for_dimension(self.n)
            entries.append((source, kind))
        if not entries:
            raise ValueError("basis needs at least one entry")
        conventions = {k.convention for _, k in entries}
        if len(conventions) > 1:
            raise ValueError("basis entries must share one convention")
        seen = set()
        for source, kind in entries:
            key = (tuple(source.coords), kind.kind, kind.axis)
            if key in seen:
                raise ValueError(f"coincident basis entry at {key}")
            seen.add(key)
        object.__setattr__(self, "entries", tuple(entries))

    @classmethod
    def from_nodes(cls, n: int, nodes, kinds) -> "SourceBasisSpec":
        """Data-first construction: sources are reflections of the given
        upper-half-space interpolation nodes."""
        entries = []
        for node, kind in zip(nodes, kinds, strict=True):
            if not isinstance(node, HalfSpacePoint):
                coords = np.asarray(node, dtype=float)
                node = HalfSpacePoint(coords[:-1], coords[-1])
            if node.h <= 0:
                raise ValueError("interpolation nodes must lie strictly above the plane")
            entries.append((reflect(MirrorNode(node.t, node.h)), kind))
        return cls(n, tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def mirror_nodes(self) -> np.ndarray:
        """Stacked mirror-node coordinates, shape (N, n)."""
        return np.array([mirror(s).coords for s, _ in self.entries])

    def kernels(self) -> list[PointSourceSum]:
        return [PointSourceSum(self.n, [(1.0, s, k)]) for s, k in self.entries]

    def field(self, mu: np.ndarray) -> PointSourceSum:
        return PointSourceSum(
            self.n, [(float(m), s, k) for m, (s, k) in zip(mu, self.entries, strict=True)]
        )


@dataclass(frozen=True)
class NormalEquations:
    T: np.ndarray
    A: np.ndarray
    setting: str
    replication_constants: np.ndarray
    condition_estimate: float | None = None
    f_norm_sq: float | None = None


@dataclass(frozen=True)
class FitResult:
    mu: np.ndarray
    node_residuals: np.ndarray
    fit_energy: float
    error_energy: float | None
    diagnostics: SolveDiagnostics


def node_functionals(basis: SourceBasisSpec, f) -> np.ndarray:
    """Per-entry point functional of ``f`` at the mirror nodes.

    Monopole entries take the value of f, vertical-dipole entries the
    vertical derivative, horizontal-dipole entries the derivative along
    their axis, all at the entry's own mirror node.
    """
    P = basis.mirror_nodes()
    vals = f.value_many(P)
    grads = f.gradient_many(P)
    out = np.empty(len(basis))
    for j, (_, kind) in enumerate(basis.entries):
        if kind.kind == MONOPOLE:
            out[j] = vals[j]
        elif kind.kind == VERTICAL_DIPOLE:
            out[j] = grads[j, basis.n - 1]
        else:
            out[j] = grads[j, kind.axis - 1]
    return out


def assemble_dirichlet(basis: SourceBasisSpec, f) -> NormalEquations:
    """Normal equations of the Dirichlet-energy fit of ``f``."""
    rep = np.array([replication_constant(k, basis.n) for _, k in basis.entries])
    T = np.column_stack([node_functionals(basis, bk) for bk in basis.kernels()])
    T *= rep[:, None]
    A = rep * node_functionals(basis, f)
    f_norm = field_norm_sq(f) if isinstance(f, PointSourceSum) else None
    return NormalEquations(
        T=T,
        A=A,
        setting="dirichlet-rn",
        replication_constants=rep,
        condition_estimate=None,
        f_norm_sq=f_norm,
    )


def field_norm_sq(f: PointSourceSum) -> float:
    """Closed-form Dirichlet energy of a point-source field.

    Applies the replication identity with the field paired against
    itself: each kernel contributes its strength times the matching
    point functional of f at its own mirror node.
    """
    basis = SourceBasisSpec(f.n, tuple((s, k) for _, s, k in f.entries))
    rep = np.array([replication_constant(k, f.n) for _, s, k in f.entries])
    strengths = np.array([q for q, _, _ in f.entries])
    return float(np.sum(strengths * rep * node_functionals(basis, f)))


def solve(ne: NormalEquations) -> FitResult:
    mu, diag = solve_spd(ne.T, ne.A)
    resid = (ne.T @ mu - ne.A) / ne.replication_constants
    fit_energy = float(mu @ ne.T @ mu)
    error = None
    if ne.f_norm_sq is not None:
        error = float(ne.f_norm_sq - 2.0 * mu @ ne.A + fit_energy)
    return FitResult(
        mu=mu,
        node_residuals=resid,
        fit_energy=fit_energy,
        error_energy=error,
        diagnostics=diag,
    )


def evaluate(basis: SourceBasisSpec, mu: np.ndarray, Z) -> float | np.ndarray:
    """Fitted field phi = sum mu_k kernel_k at one point or many."""
    phi = basis.field(mu)
    Z = np.asarray(Z, dtype=float)
    if Z.ndim == 1:
        return phi.value(Z)
    return phi.value_many(Z)


def energies(basis: SourceBasisSpec, mu: np.ndarray, ne: NormalEquations, f=None):
    """(fit energy ||phi||^2, error energy Phi or None)."""
    fit_energy = float(mu @ ne.T @ mu)
    f_norm = ne.f_norm_sq
    if f_norm is None and isinstance(f, PointSourceSum):
        f_norm = field_norm_sq(f)
    error = None
    if f_norm is not None:
        error = float(f_norm - 2.0 * mu @ ne.A + fit_energy)
    return fit_energy, error
