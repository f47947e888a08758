"""
Log-affine geodesics between faithful density matrices.

A path is fixed by its starting state ``rho0`` and a Hermitian generator ``h``:

    P_s = exp(log rho0 + s h),   zeta(s) = log Tr P_s,   rho_s = P_s / Tr P_s.

The positive operator attached to ``rho_s`` is ``T_s X = rho_s X rho0**-1`` so
``log T_s`` is left multiplication by ``log rho_s`` plus right multiplication
by ``-log rho0``; with the gauge ``Phi(s) = zeta(s) + phi0``,
``log T_s + Phi(s)`` is affine in ``s`` with slope ``h`` (left multiplication).

Derivative quantities use the unnormalized square root
``T_s**(1/2) X = P_s**(1/2) X rho0**(-1/2)``, so that
``Omega_s = exp(-zeta/2) T_s**(1/2) Omega0`` and the normalization enters
only through ``zeta'(s) = Tr(rho_s h)``. Exact derivatives of ``P_s`` come
from divided differences (:func:`modgeo.matfun.frechet_fn`).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import matfun
from .cocycle import Cocycle, cocycle_from_positive
from .errors import DimensionMismatch, QuadratureDivergence
from .gns import (
    DensityMatrix,
    GnsSpace,
    PositiveSandwich,
    Sandwich,
    as_density,
    hs_inner,
    left_mul,
    make_gns,
    op_J,
    op_S,
    op_S_adjoint,
    right_mul,
)
from .matfun import HermitianEigen
from .report import VerificationReport, rel_diff


class ArcExtrapolationWarning(UserWarning):
    """Path evaluated outside ``[0, 1]`` (analytic continuation of the arc)."""


# --- exponential families --------------------------------------------------------

@dataclass(frozen=True)
class ExpFamily:
    generators: tuple

    def __init__(self, generators: Sequence):
        gens = tuple(matfun.check_hermitian(H) for H in generators)
        if not gens:
            raise ValueError("an exponential family needs at least one generator")
        if len({H.shape for H in gens}) != 1:
            raise DimensionMismatch("generators have different shapes")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0]

    def energy(self, theta) -> np.ndarray:
        """``sum_j theta_j H_j``."""
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (len(self.generators),):
            raise DimensionMismatch(f"expected {len(self.generators)} parameters, got {theta.shape}")
        return sum(t * H for t, H in zip(theta, self.generators))


def _gibbs(K: HermitianEigen) -> tuple[DensityMatrix, float]:
    """Normalized ``exp(K)`` and ``log Tr exp(K)``, shifted by ``max(K)`` against overflow."""
    shift = K.values[-1]
    w = np.exp(K.values - shift)
    total = w.sum()
    p = w / total
    rho = DensityMatrix(K.reconstruct(p.astype(complex)), eig=HermitianEigen(p, K.vectors))
    return rho, float(shift + np.log(total))


def expfam_state(fam: ExpFamily, theta) -> tuple[DensityMatrix, float]:
    """Boltzmann-Gibbs state ``exp(-theta.H) / Z`` and ``log Z``."""
    return _gibbs(matfun.herm_eig(-fam.energy(theta)))


# --- paths -------------------------------------------------------------------------

@dataclass(frozen=True)
class GeodesicPath:
    space: GnsSpace
    h: np.ndarray = field(repr=False)
    phi0: float = 0.0

    def __post_init__(self):
        h = matfun.check_hermitian(self.h)
        if h.shape[0] != self.space.dim:
            raise DimensionMismatch(f"generator dim {h.shape[0]} != {self.space.dim}")
        object.__setattr__(self, "h", h)

    @property
    def rho0(self) -> DensityMatrix:
        return self.space.rho0

    @property
    def rho1(self) -> DensityMatrix:
        return self.state(1.0)[0]

    def log_generator(self, s: float) -> HermitianEigen:
        """Spectral data of ``log P_s = log rho0 + s h``."""
        return matfun.herm_eig(self.space.log_rho0 + s * self.h)

    def state(self, s: float) -> tuple[DensityMatrix, float]:
        return _gibbs(self.log_generator(s))

    def density(self, s: float) -> np.ndarray:
        return self.state(s)[0].entries

    def zeta(self, s: float) -> float:
        return self.state(s)[1]

    def phi(self, s: float) -> float:
        return self.zeta(s) + self.phi0


@dataclass(frozen=True)
class MixturePath:
    """``(1 - s) rho0 + s rho1``; not log-affine, used as a negative control."""

    space: GnsSpace
    rho1: DensityMatrix

    @property
    def h(self) -> np.ndarray:
        return matfun.logm_pd(self.rho1.eig) - self.space.log_rho0

    def density(self, s: float) -> np.ndarray:
        return (1.0 - s) * self.space.rho0.entries + s * self.rho1.entries

    def phi(self, s: float) -> float:
        return 0.0


def connect(rho0, rho1) -> GeodesicPath:
    """The log-affine geodesic from ``rho0`` (s = 0) to ``rho1`` (s = 1)."""
    rho0, rho1 = as_density(rho0), as_density(rho1)
    if rho0.dim != rho1.dim:
        raise DimensionMismatch(f"dimensions {rho0.dim} and {rho1.dim} differ")
    space = make_gns(rho0)
    h = matfun.logm_pd(rho1.eig) - space.log_rho0
    return GeodesicPath(space, 0.5 * (h + h.conj().T))


def mixture(rho0, rho1) -> MixturePath:
    rho0, rho1 = as_density(rho0), as_density(rho1)
    return MixturePath(make_gns(rho0), rho1)


def geodesic_from_expfam(fam: ExpFamily, theta, eta) -> GeodesicPath:
    """Path through ``rho_{(1-s) theta + s eta}`` with generator ``-(eta - theta).H``."""
    rho0, _ = expfam_state(fam, theta)
    h = -fam.energy(np.asarray(eta, float) - np.asarray(theta, float))
    return GeodesicPath(make_gns(rho0), h)


def path_state(path: GeodesicPath, s: float) -> tuple[DensityMatrix, float]:
    """``(rho_s, zeta(s))``; warns with ArcExtrapolationWarning outside ``[0, 1]``."""
    if not 0.0 <= s <= 1.0:
        warnings.warn(f"s = {s} lies outside [0, 1]", ArcExtrapolationWarning, stacklevel=2)
    return path.state(s)


def path_cocycle(path: GeodesicPath, s: float) -> Cocycle:
    """Cocycle ``rho_s**(-it) rho0**(it)`` labelling ``rho_s`` with zero normalization."""
    return cocycle_from_positive(path.space, path.density(s))


def T_op(path: GeodesicPath, s: float) -> PositiveSandwich:
    """``T_s X = rho_s X rho0**-1``; equals Delta at ``s = 0``."""
    rho_s = path.state(s)[0]
    return PositiveSandwich(rho_s.eig, path.space.delta.right_eig)


def check_log_affine(path, pairs: Iterable[tuple[float, float]], tol: float = 1e-10) -> VerificationReport:
    """Residuals of ``[log T_s + Phi(s)] - [log T_r + Phi(r)] = (s - r) H``.

    ``path`` needs ``density(s)``, ``phi(s)`` and ``h``. The logarithm is taken
    of the sampled density matrices, so the check sees the states themselves
    and not the construction that produced them. The right factor
    ``-log rho0`` of ``log T_s`` is common to all ``s`` and cancels.
    """
    report = VerificationReport()
    cache = {}

    def log_rho(s):
        if s not in cache:
            cache[s] = matfun.logm_pd(path.density(s))
        return cache[s]

    n = path.h.shape[0]
    for s, r in pairs:
        lhs = log_rho(s) - log_rho(r) + (path.phi(s) - path.phi(r)) * np.eye(n)
        report.add(f"log_affine[s={s:.6g},r={r:.6g}]",
                   float(np.linalg.norm(lhs - (s - r) * path.h)), tol)
    return report


def synth_cocycle(path: GeodesicPath, s: float, t: float) -> np.ndarray:
    """Cocycle from the generator: ``exp(it(Phi(s)-Phi(0))) exp(-it[log Delta + s H]) Delta**(it)``.

    ``log Delta + s H`` acts as left multiplication by ``log rho0 + s h`` and
    right multiplication by ``-log rho0``. The composed map is a left
    multiplication; the returned matrix is its image of the identity.
    """
    space = path.space
    K_left = matfun.herm_eig(space.log_rho0 + s * path.h)
    K_right = matfun.herm_eig(space.log_rho0)
    evolve = Sandwich(matfun.apply_fn(K_left, lambda x: np.exp(-1j * t * x)),
                      matfun.apply_fn(K_right, lambda x: np.exp(1j * t * x)))
    modular = space.delta.power(1j * t)
    phase = np.exp(1j * t * (path.phi(s) - path.phi(0.0)))
    return phase * modular.then(evolve)(np.eye(space.dim))


def rescale_check(path: GeodesicPath, lam: float, s_values: Iterable[float],
                  tol: float = 1e-10) -> VerificationReport:
    """``s -> rho_{lam s}`` is the geodesic with generator ``lam h``."""
    rescaled = GeodesicPath(path.space, lam * path.h, path.phi0)
    s_values = list(s_values)
    report = VerificationReport()
    for s in s_values:
        report.add(f"rescale_state[lam={lam:g},s={s:.6g}]",
                   rel_diff(rescaled.density(s), path.density(lam * s)), tol)
        report.add(f"rescale_zeta[lam={lam:g},s={s:.6g}]",
                   abs(rescaled.zeta(s) - path.zeta(lam * s)), tol)
    pairs = [(s, r) for s in s_values for r in s_values if s > r]
    report.extend(check_log_affine(rescaled, pairs, tol), prefix="rescaled_")
    return report


def x_operator(path: GeodesicPath, s: float) -> Sandwich:
    """Right multiplication by ``rho0**(-1/2) rho_s rho0**(-1/2)``."""
    m = path.space.inv_sqrt_rho0
    return right_mul(m @ path.density(s) @ m)


def verify_x_operator(path: GeodesicPath, s: float, samples: Sequence[np.ndarray],
                      tol: float = 1e-10) -> VerificationReport:
    space = path.space
    X = x_operator(path, s)
    T = T_op(path, s)
    rho_s = path.state(s)[0]
    M = X.right
    X_half = right_mul(matfun.sqrtm_pd(0.5 * (M + M.conj().T)))
    w = X_half(space.omega0)
    report = VerificationReport()
    for k, A in enumerate(samples):
        v = A @ space.omega0
        report.add(f"x_equals_SstarTS[{k}]", rel_diff(X(v), op_S_adjoint(space, T(op_S(space, v)))), tol)
        report.add(f"x_state[{k}]", abs(hs_inner(A @ w, w) - rho_s.expect(A)), tol)
    return report


# --- logarithmic derivatives ---------------------------------------------------------

SIMPSON_NODES = 129
QUAD_STABLE = 1e-8
QUAD_MAX_NODES = 2 ** 14 + 1


def _exp_half(x):
    return np.exp(0.5 * x)


def _dexp_half(x):
    return 0.5 * np.exp(0.5 * x)


@dataclass(frozen=True)
class _Jet:
    """``P_s``-related quantities at a single ``s``."""

    K: HermitianEigen
    P: np.ndarray
    P_dot: np.ndarray
    P_half: np.ndarray
    P_half_inv: np.ndarray
    P_half_dot: np.ndarray
    zeta: float
    zeta_prime: float


def _jet(path: GeodesicPath, s: float) -> _Jet:
    K = path.log_generator(s)
    P = matfun.apply_fn(K, np.exp)
    P_dot = matfun.frechet_fn(K, path.h, np.exp, np.exp)
    trace = float(np.sum(np.exp(K.values)))
    return _Jet(
        K=K,
        P=P,
        P_dot=P_dot,
        P_half=matfun.apply_fn(K, _exp_half),
        P_half_inv=matfun.apply_fn(K, lambda x: np.exp(-0.5 * x)),
        P_half_dot=matfun.frechet_fn(K, path.h, _exp_half, _dexp_half),
        zeta=float(np.log(trace)),
        zeta_prime=float(np.trace(P_dot).real / trace),
    )


def simpson_weights(nodes: int) -> np.ndarray:
    if nodes < 3 or nodes % 2 == 0:
        raise ValueError("composite Simpson needs an odd number of nodes >= 3")
    w = np.ones(nodes)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w / (3.0 * (nodes - 1))


def _conjugation_integral(K: HermitianEigen, G: np.ndarray, nodes: int) -> np.ndarray:
    """Simpson estimate of ``int_0^1 P**(u/2) G P**(-u/2) du`` in the eigenbasis of ``log P``."""
    u = np.linspace(0.0, 1.0, nodes)
    w = simpson_weights(nodes)
    gap = 0.5 * (K.values[:, None] - K.values[None, :])
    kernel = np.einsum("k,kij->ij", w, np.exp(u[:, None, None] * gap[None]))
    U = K.vectors
    return U @ (kernel * (U.conj().T @ G @ U)) @ U.conj().T


def duhamel_quadrature(K: HermitianEigen, G: np.ndarray, nodes: int = SIMPSON_NODES) -> np.ndarray:
    """Quadrature with refinement; raises QuadratureDivergence if it does not settle to 1e-8."""
    coarse = _conjugation_integral(K, G, (nodes + 1) // 2)
    while nodes <= QUAD_MAX_NODES:
        fine = _conjugation_integral(K, G, nodes)
        if np.linalg.norm(fine - coarse) <= QUAD_STABLE * max(1.0, np.linalg.norm(fine)):
            return fine
        coarse, nodes = fine, 2 * nodes - 1
    raise QuadratureDivergence("Simpson refinement did not stabilize")


@dataclass(frozen=True)
class LogDerivatives:
    """Logarithmic derivatives of the path at ``s``; all are left multiplications.

    ``HL`` solves ``d/ds T**(1/2) = HL T**(1/2) / 2``; ``Lsym``, ``LL``, ``LR``
    solve ``dT/ds = (L T + T L)/2``, ``= LL T`` and ``= T LR``.
    """

    s: float
    HL: np.ndarray
    Lsym: np.ndarray
    LL: np.ndarray
    LR: np.ndarray
    zeta: float
    zeta_prime: float
    residual_defining: float
    residual_selfadjoint: float
    quadrature_disagreement: float


def left_log_derivative(path: GeodesicPath, s: float) -> LogDerivatives:
    j = _jet(path, s)
    HL = 2.0 * j.P_half_dot @ j.P_half_inv
    Lsym = matfun.sym_solve(matfun.HermitianEigen(np.exp(j.K.values), j.K.vectors), j.P_dot)
    P_inv = matfun.apply_fn(j.K, lambda x: np.exp(-x))
    LL = j.P_dot @ P_inv
    LR = P_inv @ j.P_dot

    residual = max(
        rel_diff(0.5 * HL @ j.P_half, j.P_half_dot),
        rel_diff(0.5 * (Lsym @ j.P + j.P @ Lsym), j.P_dot),
        rel_diff(LL @ j.P, j.P_dot),
        rel_diff(j.P @ LR, j.P_dot),
    )
    norm = np.linalg.norm(HL)
    selfadj = float(np.linalg.norm(HL - HL.conj().T) / norm) if norm > 1e-300 else 0.0

    n = path.space.dim
    shift = j.zeta_prime * np.eye(n)
    quad = duhamel_quadrature(j.K, path.h - shift)
    disagreement = float(np.linalg.norm(quad - (HL - shift)))
    return LogDerivatives(s, HL, Lsym, LL, LR, j.zeta, j.zeta_prime,
                          residual, selfadj, disagreement)


def sym_log_derivative(path: GeodesicPath, s: float) -> tuple[Sandwich, float]:
    """Symmetric logarithmic derivative of ``T_s`` and its defining residual.

    ``T_s`` and ``dT_s/ds`` share the right factor ``rho0**-1``; in the product
    eigenbasis with eigenvalues ``p_i / q_j`` the entrywise solve
    ``2 D / (t_ij + t_kl)`` is nonzero only for ``j = l`` and loses its
    dependence on ``q_j``, which reduces it to ``sym_solve(P_s, dP_s/ds)``.
    """
    d = left_log_derivative(path, s)
    return left_mul(d.Lsym), d.residual_defining


def right_log_derivative(path: GeodesicPath, s: float) -> tuple[Sandwich, float]:
    d = left_log_derivative(path, s)
    return left_mul(d.LR), d.residual_defining


def omega_s(path: GeodesicPath, s: float) -> np.ndarray:
    """``exp(-zeta/2) T_s**(1/2) Omega0``."""
    j = _jet(path, s)
    T_half = Sandwich(j.P_half, path.space.inv_sqrt_rho0)
    return np.exp(-0.5 * j.zeta) * T_half(path.space.omega0)


def omega_velocity(path: GeodesicPath, s: float, hl_factor: float = 0.5) -> np.ndarray:
    """``[hl_factor HL - zeta'/2] Omega_s``; ``hl_factor = 1/2`` is the consistent choice."""
    d = left_log_derivative(path, s)
    w = omega_s(path, s)
    return hl_factor * d.HL @ w - 0.5 * d.zeta_prime * w


# --- tangent functionals -----------------------------------------------------------------

def density_derivative(path: GeodesicPath, s: float) -> np.ndarray:
    """``d rho_s / ds = P'/Tr P - zeta' rho_s``."""
    j = _jet(path, s)
    return j.P_dot / np.exp(j.zeta) - j.zeta_prime * j.P / np.exp(j.zeta)


def tangent_functional(path: GeodesicPath, s: float, A) -> float:
    """``f_s(A) = d/ds Tr rho_s A`` evaluated exactly."""
    return float(np.trace(density_derivative(path, s) @ np.asarray(A)).real)


@dataclass(frozen=True)
class TangentEvaluation:
    primary: float
    modular: dict
    matched: str


def modular_tangent(path: GeodesicPath, s: float, A, hl_factor: float = 1.0) -> complex:
    """``(1/2 [JGJ A + A JGJ] Omega_s, Omega_s) - omega_s(A) zeta'`` with ``G = hl_factor HL``."""
    space = path.space
    d = left_log_derivative(path, s)
    G = left_mul(hl_factor * d.HL)
    A = np.asarray(A, dtype=complex)
    w = omega_s(path, s)

    def JGJ(X):
        return op_J(space, G(op_J(space, X)))

    sym = 0.5 * (JGJ(A @ w) + A @ JGJ(w))
    omega_A = hs_inner(A @ w, w)
    return hs_inner(sym, w) - omega_A * d.zeta_prime


def tangent_conventions(path: GeodesicPath, s: float, A) -> TangentEvaluation:
    """Compare the exact tangent with the modular formula for ``G = HL`` and ``G = HL / 2``.

    The modular values are complex in general; their real parts are compared.
    """
    primary = tangent_functional(path, s, A)
    modular = {"HL": modular_tangent(path, s, A, 1.0),
               "half_HL": modular_tangent(path, s, A, 0.5)}
    matched = min(modular, key=lambda k: abs(modular[k].real - primary))
    return TangentEvaluation(primary, modular, matched)
