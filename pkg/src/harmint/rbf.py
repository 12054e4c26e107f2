"""Inverse-multiquadric RBF interpolation as a half-space kernel fit.

The IMQ collocation matrix B[j,k] = (|Q_j - Q_k|^2 + a^2)^(-beta) is,
entry for entry, proportional to a half-space Gram matrix: lift the
data sites to sources at depth -a/2, and the mirror-to-source
distances satisfy |P_j - S_k|^2 = |Q_j - Q_k|^2 + a^2.  Two routes are
implemented: the dimension-monopole route (embed in R^m, m = 2 beta + 2,
Dirichlet norm) and the vertical-dipole route (n = d + 1, surface
norm, requires beta = (d+1)/2).  Either way the IMQ interpolant
inherits the half-space fit's minimum-energy property and its energy
diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._solve import SolveDiagnostics, solve_spd
from .dirichlet import NormalEquations, SourceBasisSpec, solve
from .geometry import (
    MONOPOLE,
    SCALED,
    VERTICAL_DIPOLE,
    KernelKind,
    SourcePoint,
    constants,
)


@dataclass(frozen=True)
class ImqSpec:
    """Inverse-multiquadric interpolation problem on sites in R^d."""

    sites: np.ndarray  # (N, d)
    shape: float  # the shape parameter a
    beta: float
    values: np.ndarray  # (N,)

    def __post_init__(self):
        sites = np.atleast_2d(np.asarray(self.sites, dtype=float))
        values = np.asarray(self.values, dtype=float)
        if sites.shape[1] < 2:
            raise ValueError("sites must live in R^d with d >= 2")
        if self.shape <= 0:
            raise ValueError("shape parameter must be positive")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        two_beta_plus_2 = 2.0 * self.beta + 2.0
        if abs(two_beta_plus_2 - round(two_beta_plus_2)) > 1e-12:
            raise ValueError("2*beta + 2 must be an integer")
        if round(two_beta_plus_2) < sites.shape[1] + 1:
            raise ValueError("2*beta + 2 must be at least d + 1")
        if values.shape != (sites.shape[0],):
            raise ValueError("one data value per site required")
        if len({tuple(q) for q in sites}) != sites.shape[0]:
            raise ValueError("duplicate sites")
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "values", values)

    @property
    def d(self) -> int:
        return self.sites.shape[1]


@dataclass(frozen=True)
class RbfSolution:
    mu: np.ndarray
    residual: float
    diagnostics: SolveDiagnostics


@dataclass(frozen=True)
class HalfspaceEquivalence:
    route: str  # "dimension-monopole" or "vertical-dipole"
    n: int  # embedded half-space dimension
    basis: SourceBasisSpec
    gamma_T: float
    gamma_A: float

    @property
    def gamma_mu(self) -> float:
        return self.gamma_A / self.gamma_T


def collocation_matrix(spec: ImqSpec) -> np.ndarray:
    diff = spec.sites[:, None, :] - spec.sites[None, :, :]
    return (np.einsum("jkd,jkd->jk", diff, diff) + spec.shape**2) ** (-spec.beta)


def imq_solve(spec: ImqSpec) -> RbfSolution:
    B = collocation_matrix(spec)
    mu, diag = solve_spd(B, spec.values)
    return RbfSolution(mu=mu, residual=diag.residual, diagnostics=diag)


def imq_evaluate(spec: ImqSpec, mu: np.ndarray, X: np.ndarray) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    diff = X[:, None, :] - spec.sites[None, :, :]
    return (np.einsum("pkd,pkd->pk", diff, diff) + spec.shape**2) ** (-spec.beta) @ mu


def _lifted_sources(spec: ImqSpec, n: int) -> list[SourcePoint]:
    pad = n - 1 - spec.d
    return [
        SourcePoint(np.concatenate([q, np.zeros(pad)]), -0.5 * spec.shape)
        for q in spec.sites
    ]


def to_halfspace(spec: ImqSpec, route: str = "dimension-monopole") -> HalfspaceEquivalence:
    """Build the equivalent half-space basis and the exact scale factors."""
    a = spec.shape
    if route == "dimension-monopole":
        m = int(round(2.0 * spec.beta + 2.0))
        kind = KernelKind(MONOPOLE, convention=SCALED)
        basis = SourceBasisSpec(m, tuple((s, kind) for s in _lifted_sources(spec, m)))
        d_m = constants(m).d_n
        return HalfspaceEquivalence(
            route=route, n=m, basis=basis, gamma_T=0.5 * d_m, gamma_A=0.5
        )
    if route == "vertical-dipole":
        n = spec.d + 1
        if abs(2.0 * spec.beta - (spec.d + 1)) > 1e-12:
            raise ValueError(
                f"dipole route requires beta = (d+1)/2 = {(spec.d + 1) / 2}, got {spec.beta}"
            )
        kind = KernelKind(VERTICAL_DIPOLE, convention=SCALED)
        basis = SourceBasisSpec(n, tuple((s, kind) for s in _lifted_sources(spec, n)))
        c_n = constants(n).c_n
        return HalfspaceEquivalence(
            route=route, n=n, basis=basis, gamma_T=0.25 * c_n * a, gamma_A=-0.5
        )
    raise ValueError(f"unknown route {route!r}")


def halfspace_normal_equations(spec: ImqSpec, eq: HalfspaceEquivalence) -> NormalEquations:
    """Normal equations of the equivalent half-space fit of the site data.

    The mirror nodes sit on the plane h = a/2 directly above the sites,
    so the replication right-hand side is gamma_A times the data.
    """
    B = collocation_matrix(spec)
    rep = np.full(len(spec.values), eq.gamma_A)
    return NormalEquations(
        T=eq.gamma_T * B,
        A=eq.gamma_A * spec.values,
        setting="dirichlet-rn" if eq.route == "dimension-monopole" else "surface-rn",
        replication_constants=rep,
    )


@dataclass(frozen=True)
class EquivalenceReport:
    matrix_rel_error: float
    mu_rel_error: float
    probe_max_deviation: float
    probe_scale: float
    fit_energy: float
    mu_rbf: np.ndarray
    mu_halfspace: np.ndarray
    passed: bool


def verify_equivalence(
    spec: ImqSpec, eq: HalfspaceEquivalence, probes: np.ndarray | None = None
) -> EquivalenceReport:
    B = collocation_matrix(spec)
    rbf = imq_solve(spec)

    ne = halfspace_normal_equations(spec, eq)
    fit = solve(ne)

    # (i) entrywise proportionality of the closed-form Gram
    T_direct = _direct_gram(eq)
    mat_err = float(np.max(np.abs(T_direct - eq.gamma_T * B)) / np.max(np.abs(T_direct)))

    # (ii) coefficient rescaling
    mu_err = float(
        np.max(np.abs(fit.mu - eq.gamma_mu * rbf.mu)) / max(np.max(np.abs(fit.mu)), 1e-300)
    )

    # (iii) interpolant identity on the data plane h = a/2
    if probes is None:
        lo = spec.sites.min(axis=0) - spec.shape
        hi = spec.sites.max(axis=0) + spec.shape
        grids = np.meshgrid(*[np.linspace(lo[i], hi[i], 7) for i in range(spec.d)])
        probes = np.stack([g.ravel() for g in grids], axis=-1)
    rbf_vals = imq_evaluate(spec, rbf.mu, probes)
    pad = eq.n - 1 - spec.d
    lifted = np.concatenate(
        [probes, np.zeros((probes.shape[0], pad)),
         np.full((probes.shape[0], 1), 0.5 * spec.shape)],
        axis=1,
    )
    half_vals = eq.basis.field(fit.mu).value_many(lifted)
    scale = float(np.max(np.abs(rbf_vals)))
    probe_dev = float(np.max(np.abs(rbf_vals - half_vals)))

    passed = mat_err <= 1e-12 and mu_err <= 1e-10 and probe_dev <= 1e-12 * max(scale, 1.0)
    return EquivalenceReport(
        matrix_rel_error=mat_err,
        mu_rel_error=mu_err,
        probe_max_deviation=probe_dev,
        probe_scale=scale,
        fit_energy=fit.fit_energy,
        mu_rbf=rbf.mu,
        mu_halfspace=fit.mu,
        passed=passed,
    )


def _direct_gram(eq: HalfspaceEquivalence) -> np.ndarray:
    """Closed-form half-space Gram, assembled from kernel evaluations
    rather than from the IMQ radicand identity."""
    from .dirichlet import assemble_dirichlet
    from .fields import PointSourceSum
    from .surface import assemble_surface_dipole

    # pair the basis against a throwaway admissible field; only T is used
    probe = PointSourceSum(
        eq.n,
        [(1.0, SourcePoint(np.zeros(eq.n - 1), -1.0), eq.basis.entries[0][1])],
    )
    if eq.route == "dimension-monopole":
        return assemble_dirichlet(eq.basis, probe).T
    return assemble_surface_dipole(eq.basis, probe).T
