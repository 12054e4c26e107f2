"""Shared dense solve path for the (Hermitian) positive-definite systems.

All fitting settings produce a small Gram system T mu = A with T
symmetric / Hermitian positive definite for distinct sources.  Solved
by Cholesky; a ridge-regularized retry (lambda = 1e-12 * max diagonal)
is used and flagged when the factorization fails numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg


@dataclass(frozen=True)
class SolveDiagnostics:
    residual: float  # ||T mu - A|| / ||A||
    condition_estimate: float  # squared Cholesky diagonal ratio
    ridge_used: bool
    ridge_lambda: float


def solve_spd(T: np.ndarray, A: np.ndarray) -> tuple[np.ndarray, SolveDiagnostics]:
    T = np.asarray(T)
    A = np.asarray(A)
    if not (np.isfinite(T).all() and np.isfinite(A).all()):
        raise ValueError("non-finite entries in the normal equations")
    if T.ndim != 2 or T.shape[0] != T.shape[1] or A.shape[0] != T.shape[0]:
        raise ValueError(f"dimension mismatch: T {T.shape}, A {A.shape}")

    ridge_used = False
    lam = 0.0
    try:
        factor = linalg.cho_factor(T, lower=True)
    except linalg.LinAlgError:
        ridge_used = True
        lam = 1e-12 * float(np.max(np.abs(np.diag(T))))
        factor = linalg.cho_factor(T + lam * np.eye(T.shape[0]), lower=True)
    mu = linalg.cho_solve(factor, A)

    d = np.abs(np.diag(factor[0]))
    cond = float((d.max() / d.min()) ** 2) if d.min() > 0 else np.inf
    denom = float(np.linalg.norm(A))
    resid = float(np.linalg.norm(T @ mu - A)) / (denom if denom > 0 else 1.0)
    return mu, SolveDiagnostics(resid, cond, ridge_used, lam)
