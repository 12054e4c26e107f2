"""Upper-half-plane fitting with complex kernels.

Two norms are supported: the boundary-line norm ("sigma", kernels
i/(z - z_k)) and the Dirichlet norm ("dirichlet", kernels 1/(z - z_k)),
plus paired logarithmic sources.  In every case the inner product of a
kernel with an admissible field f reduces to a point functional of f
at the conjugate mirror point q_k = conj(z_k): a value, a derivative,
or a two-point difference.  Inner products conjugate the first slot
(left conjugate form), so Gram matrices are Hermitian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._solve import solve_spd
from .dirichlet import FitResult


def _require_below_axis(z: complex, what: str) -> complex:
    z = complex(z)
    if not z.imag < 0:
        raise ValueError(f"{what} must lie strictly below the real axis, got {z}")
    return z


@dataclass(frozen=True)
class ComplexPole:
    """Basis pole below the real axis; order m >= 1 (simple pole m = 1)."""

    z: complex
    order: int = 1

    def __post_init__(self):
        _require_below_axis(self.z, "pole")
        if self.order < 1:
            raise ValueError(f"pole order must be >= 1, got {self.order}")

    @property
    def q(self) -> complex:
        return complex(np.conj(self.z))


@dataclass(frozen=True)
class PairedLogSource:
    """Pair (z, z_prime) below the axis anchoring a log-difference kernel."""

    z: complex
    z_prime: complex

    def __post_init__(self):
        _require_below_axis(self.z, "log source")
        _require_below_axis(self.z_prime, "log source")
        if complex(self.z) == complex(self.z_prime):
            raise ValueError("log pair members must be distinct")

    @property
    def q(self) -> complex:
        return complex(np.conj(self.z))

    @property
    def q_prime(self) -> complex:
        return complex(np.conj(self.z_prime))


class RationalField:
    """Finite sum of simple poles below the axis: sum a_j / (z - b_j)."""

    def __init__(self, terms):
        self.terms = tuple((complex(a), _require_below_axis(b, "pole")) for a, b in terms)
        if not self.terms:
            raise ValueError("rational field needs at least one term")
        self._a = np.array([a for a, _ in self.terms])
        self._b = np.array([b for _, b in self.terms])

    def derivative_order(self, z, m: int):
        """m-th derivative, vectorized over z (m = 0 is the value)."""
        z = np.asarray(z, dtype=complex)
        coef = self._a * (-1.0) ** m * math.factorial(m)
        return np.tensordot(
            (z[..., None] - self._b) ** (-(m + 1)), coef, axes=([-1], [0])
        )

    def value_many(self, z):
        return self.derivative_order(z, 0)

    def derivative_many(self, z):
        return self.derivative_order(z, 1)

    def value(self, z: complex) -> complex:
        return complex(self.derivative_order(np.asarray([z]), 0)[0])

    def derivative(self, z: complex, m: int = 1) -> complex:
        return complex(self.derivative_order(np.asarray([z]), m)[0])

    def envelope(self) -> float:
        """C with |f| <= C/dist and |f'| <= C/dist^2 at large |z|."""
        return float(np.sum(np.abs(self._a)))


def _log_xi(z, pair: PairedLogSource):
    """Principal-branch ln((z - z')/(z - z)); continuous on the closed
    upper half-plane since both factors keep their argument in (0, pi)."""
    z = np.asarray(z, dtype=complex)
    return np.log(z - pair.z_prime) - np.log(z - pair.z)


class LogPairField:
    """Finite sum of log-difference kernels: sum a_k xi_k(z)."""

    def __init__(self, terms):
        self.terms = tuple(
            (complex(a), p if isinstance(p, PairedLogSource) else PairedLogSource(*p))
            for a, p in terms
        )
        if not self.terms:
            raise ValueError("log-pair field needs at least one term")

    def value_many(self, z):
        z = np.asarray(z, dtype=complex)
        return sum(a * _log_xi(z, p) for a, p in self.terms)

    def derivative_order(self, z, m: int):
        z = np.asarray(z, dtype=complex)
        if m == 0:
            return self.value_many(z)
        c = (-1.0) ** (m - 1) * math.factorial(m - 1)
        return sum(
            a * c * ((z - p.z_prime) ** -m - (z - p.z) ** -m) for a, p in self.terms
        )

    def derivative_many(self, z):
        return self.derivative_order(z, 1)

    def value(self, z: complex) -> complex:
        return complex(self.value_many(np.asarray([z]))[0])

    def derivative(self, z: complex, m: int = 1) -> complex:
        return complex(self.derivative_order(np.asarray([z]), m)[0])

    def envelope(self) -> float:
        return float(
            2.0 * sum(abs(a) * abs(p.z - p.z_prime) for a, p in self.terms)
        )


class _PoleKernel:
    """Basis kernel for one pole: i^s * (p-1)! / (z - z_k)^p for order p-1...

    Concretely: order-m pole kernel is i * m! / (z - z_k)^(m+1) in the
    sigma norm (with m := order - 1) and m! / (z - z_k)^(m+1) in the
    Dirichlet norm.
    """

    def __init__(self, pole: ComplexPole, setting: str):
        self.pole = pole
        self.m = pole.order - 1
        self.front = 1j if setting == "sigma" else 1.0

    def derivative_order(self, z, k: int):
        z = np.asarray(z, dtype=complex)
        m = self.m
        c = self.front * (-1.0) ** k * math.factorial(m + k)
        return c * (z - self.pole.z) ** (-(m + k + 1))

    def value_many(self, z):
        return self.derivative_order(z, 0)

    def derivative_many(self, z):
        return self.derivative_order(z, 1)

    def derivative(self, z: complex, m: int = 1) -> complex:
        return complex(self.derivative_order(np.asarray([z]), m)[0])

    def value(self, z: complex) -> complex:
        return complex(self.derivative_order(np.asarray([z]), 0)[0])

    def envelope(self) -> float:
        return float(math.factorial(self.m))


class _LogKernel:
    def __init__(self, pair: PairedLogSource):
        self.pair = pair

    def derivative_order(self, z, k: int):
        z = np.asarray(z, dtype=complex)
        if k == 0:
            return _log_xi(z, self.pair)
        c = (-1.0) ** (k - 1) * math.factorial(k - 1)
        return c * ((z - self.pair.z_prime) ** -k - (z - self.pair.z) ** -k)

    def value_many(self, z):
        return self.derivative_order(z, 0)

    def derivative_many(self, z):
        return self.derivative_order(z, 1)

    def derivative(self, z: complex, m: int = 1) -> complex:
        return complex(self.derivative_order(np.asarray([z]), m)[0])

    def value(self, z: complex) -> complex:
        return complex(self.derivative_order(np.asarray([z]), 0)[0])

    def envelope(self) -> float:
        return float(2.0 * abs(self.pair.z - self.pair.z_prime))


@dataclass(frozen=True)
class HermitianNormalEquations:
    T: np.ndarray
    A: np.ndarray
    setting: str  # "sigma" or "dirichlet"
    q: np.ndarray  # stored conjugate mirror points, one per row
    basis: tuple
    f_norm_sq: float | None = None


def _functional(entry, setting: str, f) -> complex:
    """Replication functional of row ``entry`` applied to field f."""
    if isinstance(entry, PairedLogSource):
        return 0.5 * (f.value(entry.q) - f.value(entry.q_prime))
    m = entry.order - 1
    if setting == "sigma":
        return f.derivative(entry.q, m) if m else f.value(entry.q)
    return 0.5 * f.derivative(entry.q, m + 1)


def _kernel_for(entry, setting: str):
    if isinstance(entry, PairedLogSource):
        return _LogKernel(entry)
    return _PoleKernel(entry, setting)


def _check_distinct(basis):
    seen = set()
    for e in basis:
        key = (e.z, e.order) if isinstance(e, ComplexPole) else (e.z, e.z_prime)
        if key in seen:
            raise ValueError(f"coincident basis entry {key}")
        seen.add(key)


def _assemble(basis, f, setting: str) -> HermitianNormalEquations:
    basis = tuple(
        e if isinstance(e, (ComplexPole, PairedLogSource)) else ComplexPole(e)
        for e in basis
    )
    _check_distinct(basis)
    kernels = [_kernel_for(e, setting) for e in basis]
    N = len(basis)
    T = np.empty((N, N), dtype=complex)
    A = np.empty(N, dtype=complex)
    for j, ej in enumerate(basis):
        for k, Kk in enumerate(kernels):
            T[j, k] = _functional(ej, setting, Kk)
        A[j] = _functional(ej, setting, f)
    f_norm = None
    try:
        f_norm = field_norm_sq_cx(f, setting)
    except (TypeError, ValueError):
        f_norm = None
    q = np.array([e.q for e in basis])
    return HermitianNormalEquations(T=T, A=A, setting=setting, q=q, basis=basis,
                                    f_norm_sq=f_norm)


def assemble_sigma(poles, f) -> HermitianNormalEquations:
    """Boundary-line-norm system: T[j,k] = i/(q_j - z_k), A[k] = f(q_k)."""
    return _assemble(poles, f, "sigma")


def assemble_dirichlet_cx(poles, f) -> HermitianNormalEquations:
    """Dirichlet-norm system: T[j,k] = -1/2 (q_j - z_k)^-2, A[k] = f'(q_k)/2."""
    return _assemble(poles, f, "dirichlet")


def assemble_log(pairs, f, setting: str = "dirichlet") -> HermitianNormalEquations:
    """Log-pair system: A[k] = (f(q_k) - f(q'_k))/2, T via xi differences."""
    pairs = tuple(p if isinstance(p, PairedLogSource) else PairedLogSource(*p) for p in pairs)
    ne = _assemble(pairs, f, setting)
    return ne


def higher_pole_inner(setting: str, pole: ComplexPole, f) -> complex:
    """Inner product of an order-m pole kernel with f (m = pole.order).

    With m := pole.order - 1 (order 1 is a simple pole): sigma norm,
    kernel i m!/(z - z_k)^(m+1), returns f^(m)(q_k); Dirichlet norm,
    kernel m!/(z - z_k)^(m+1), returns f^(m+1)(q_k)/2.  Both follow
    from differentiating the simple-pole identity in conj(z_k).
    """
    if setting not in ("sigma", "dirichlet"):
        raise ValueError(f"unknown setting {setting!r}")
    m = pole.order - 1
    if setting == "sigma":
        return f.derivative(pole.q, m) if m else f.value(pole.q)
    return 0.5 * f.derivative(pole.q, m + 1)


def field_norm_sq_cx(f, setting: str) -> float:
    """Closed-form squared norm of an admissible field via replication."""
    if isinstance(f, RationalField):
        total = 0j
        for a, b in f.terms:
            q = complex(np.conj(b))
            if setting == "sigma":
                # f = sum (-i a_j) * [i/(z - b_j)]
                total += np.conj(-1j * a) * f.value(q)
            else:
                total += np.conj(a) * 0.5 * f.derivative(q)
        return float(total.real)
    if isinstance(f, LogPairField):
        total = 0j
        for a, p in f.terms:
            total += np.conj(a) * 0.5 * (f.value(p.q) - f.value(p.q_prime))
        return float(total.real)
    raise TypeError(f"no closed-form norm for {type(f).__name__}")


def solve_hermitian(ne: HermitianNormalEquations) -> FitResult:
    mu, diag = solve_spd(ne.T, ne.A)
    resid = ne.T @ mu - ne.A  # per-row functional residual of phi - f
    fit_energy = float((np.conj(mu) @ ne.T @ mu).real)
    error = None
    if ne.f_norm_sq is not None:
        error = float(ne.f_norm_sq - 2.0 * (np.conj(mu) @ ne.A).real + fit_energy)
    return FitResult(
        mu=mu,
        node_residuals=resid,
        fit_energy=fit_energy,
        error_energy=error,
        diagnostics=diag,
    )


def evaluate_cx(basis, mu, z, setting: str):
    """phi(z) = sum mu_k kernel_k(z) on the closed upper half-plane."""
    basis = tuple(
        e if isinstance(e, (ComplexPole, PairedLogSource)) else ComplexPole(e)
        for e in basis
    )
    z = np.asarray(z, dtype=complex)
    kernels = [_kernel_for(e, setting) for e in basis]
    out = sum(m * K.value_many(z) for m, K in zip(mu, kernels, strict=True))
    return complex(out) if z.ndim == 0 else out


class FittedComplexField:
    """Evaluable fit wrapper exposing the field protocol used by the oracle."""

    def __init__(self, basis, mu, setting: str):
        self.basis = tuple(
            e if isinstance(e, (ComplexPole, PairedLogSource)) else ComplexPole(e)
            for e in basis
        )
        self.mu = np.asarray(mu, dtype=complex)
        self.setting = setting
        self._kernels = [_kernel_for(e, setting) for e in self.basis]

    def derivative_order(self, z, k: int):
        z = np.asarray(z, dtype=complex)
        return sum(m * K.derivative_order(z, k) for m, K in zip(self.mu, self._kernels))

    def value_many(self, z):
        return self.derivative_order(z, 0)

    def derivative_many(self, z):
        return self.derivative_order(z, 1)

    def value(self, z: complex) -> complex:
        return complex(self.derivative_order(np.asarray([z]), 0)[0])

    def derivative(self, z: complex, m: int = 1) -> complex:
        return complex(self.derivative_order(np.asarray([z]), m)[0])

    def envelope(self) -> float:
        return float(sum(abs(m) * K.envelope() for m, K in zip(self.mu, self._kernels)))
