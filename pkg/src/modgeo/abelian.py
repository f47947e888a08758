"""
The commutative case on finite measure spaces.

States are amplitudes ``psi`` on ``m`` atoms with weights ``w``; the
probability of atom ``i`` is ``w_i |psi_i|**2``. The modular group is
trivial, cocycles are ``exp(i s t h)`` and the geodesic generated by ``h``
tilts the reference distribution:

    zeta(s) = log sum_i w_i exp(-s h_i) |psi_i|**2,
    Omega_s = exp(-zeta(s)/2) exp(-s h/2) psi,   p_s ~ p_0 exp(-s h).

A uniform-grid mode approximates the exponential tangent condition for
densities on the real line through a sequence of doubling truncations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DimensionMismatch,
    NotNormalized,
    TangentConditionFailed,
    VanishingAmplitude,
    ZeroScale,
)
from .geodesic import GeodesicPath
from .gns import DensityMatrix, make_gns

NORM_TOL = 1e-12
AMPLITUDE_FLOOR = 1e-12


@dataclass(frozen=True)
class FiniteMeasureSpace:
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise DimensionMismatch("weights must be a non-empty vector")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ValueError("weights must be finite and strictly positive")
        object.__setattr__(self, "weights", w)

    @classmethod
    def counting(cls, m: int) -> "FiniteMeasureSpace":
        return cls(np.ones(m))

    @property
    def m(self) -> int:
        return self.weights.size


@dataclass(frozen=True)
class ClassicalAmplitude:
    space: FiniteMeasureSpace
    psi: np.ndarray

    def __post_init__(self):
        psi = np.asarray(self.psi, dtype=complex)
        if psi.shape != (self.space.m,):
            raise DimensionMismatch(f"amplitude shape {psi.shape} != ({self.space.m},)")
        if np.any(np.abs(psi) < AMPLITUDE_FLOOR):
            raise VanishingAmplitude("amplitude vanishes on some atom")
        norm2 = float(np.sum(self.space.weights * np.abs(psi) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalized(f"squared L2 norm {norm2:.15g} differs from 1")
        object.__setattr__(self, "psi", psi)

    @classmethod
    def from_probabilities(cls, p, weights=None) -> "ClassicalAmplitude":
        p = np.asarray(p, dtype=float)
        space = FiniteMeasureSpace(np.ones(p.size) if weights is None else weights)
        return cls(space, np.sqrt(p / space.weights))


def classical_state(amp: ClassicalAmplitude) -> np.ndarray:
    return amp.space.weights * np.abs(amp.psi) ** 2


@dataclass(frozen=True)
class TangentCheck:
    value: float
    value_plus: float
    value_minus: float
    finite: bool
    divergence_flag: bool


def exp_tangent_check(amp: ClassicalAmplitude, k, t: float) -> TangentCheck:
    """Evaluate ``sum w (exp|t k| - 1) |psi|**2`` and ``sum w exp(+-t k) |psi|**2``.

    On a finite space these are always finite unless the exponentials
    overflow, which sets ``divergence_flag``.
    """
    if t == 0:
        raise ZeroScale("the scale t must be nonzero")
    k = np.asarray(k, dtype=float)
    if k.shape != (amp.space.m,):
        raise DimensionMismatch(f"k has shape {k.shape}, expected ({amp.space.m},)")
    p = classical_state(amp)
    with np.errstate(over="ignore", invalid="ignore"):
        value = float(np.sum(p * np.expm1(np.abs(t * k))))
        plus = float(np.sum(p * np.exp(t * k)))
        minus = float(np.sum(p * np.exp(-t * k)))
    finite = bool(np.isfinite([value, plus, minus]).all())
    return TangentCheck(value, plus, minus, finite, not finite)


def exp_tangent_check_grid(density, k, t: float, *, x=None, r0: float = 1.0,
                           rtol: float = 1e-9) -> TangentCheck:
    """Grid version of the tangent condition for a density on the real line.

    ``density`` and ``k`` are either callables or arrays sampled on the
    uniform grid ``x``. Integrals (trapezoid rule) are taken over ``[-R, R]``
    for ``R = r0, 2 r0, 4 r0, ...`` up to the grid extent; the condition
    counts as finite only if the last two truncations agree to ``rtol``
    relative and no overflow occurs.
    """
    if t == 0:
        raise ZeroScale("the scale t must be nonzero")
    if x is None:
        x = np.linspace(-64.0, 64.0, 2 ** 16 + 1)
    x = np.asarray(x, dtype=float)
    dens = density(x) if callable(density) else np.asarray(density, float)
    kv = k(x) if callable(k) else np.asarray(k, float)
    if dens.shape != x.shape or kv.shape != x.shape:
        raise DimensionMismatch("grid arrays must share the shape of x")
    extent = min(-x[0], x[-1])
    radii = []
    R = r0
    while R <= extent * (1 + 1e-12):
        radii.append(R)
        R *= 2.0
    if len(radii) < 2:
        raise ValueError("grid too short for two truncations")

    def integral(f, R):
        mask = np.abs(x) <= R * (1 + 1e-12)
        return float(np.trapezoid(f[mask], x[mask]))

    with np.errstate(over="ignore", invalid="ignore"):
        f_val = np.expm1(np.abs(t * kv)) * dens
        f_plus = np.exp(t * kv) * dens
        f_minus = np.exp(-t * kv) * dens
        seq = [integral(f_val, R) for R in radii]
        plus = integral(f_plus, radii[-1])
        minus = integral(f_minus, radii[-1])
    finite = bool(np.isfinite(seq + [plus, minus]).all())
    if finite:
        a, b = seq[-2], seq[-1]
        finite = abs(b - a) <= rtol * max(abs(b), 1e-300)
    return TangentCheck(seq[-1], plus, minus, finite, not finite)


def classical_zeta(amp: ClassicalAmplitude, h, s: float) -> float:
    p = classical_state(amp)
    a = -s * np.asarray(h, dtype=float)
    shift = a.max()
    return float(shift + np.log(np.sum(p * np.exp(a - shift))))


def classical_geodesic(amp: ClassicalAmplitude, h, s: float) -> tuple[ClassicalAmplitude, float]:
    """Point ``Omega_s`` of the geodesic generated by ``h`` and its normalization ``zeta(s)``."""
    h = np.asarray(h, dtype=float)
    check = exp_tangent_check(amp, h, 1.0)
    if not check.finite:
        raise TangentConditionFailed("exp(+-h) is not integrable against the reference state")
    zeta = classical_zeta(amp, h, s)
    omega = np.exp(-0.5 * (zeta + s * h)) * amp.psi
    # renormalize away the last ulp so the amplitude invariant holds exactly
    omega = omega / np.sqrt(np.sum(amp.space.weights * np.abs(omega) ** 2))
    return ClassicalAmplitude(amp.space, omega), zeta


def classical_path_probabilities(amp: ClassicalAmplitude, h, s: float) -> np.ndarray:
    return classical_state(classical_geodesic(amp, h, s)[0])


def embed_diagonal(amp: ClassicalAmplitude, h) -> tuple[DensityMatrix, DensityMatrix]:
    """Diagonal density matrices of the endpoints; weights are folded into the probabilities."""
    p0 = classical_state(amp)
    p1 = classical_path_probabilities(amp, h, 1.0)
    return DensityMatrix(np.diag(p0 / p0.sum())), DensityMatrix(np.diag(p1 / p1.sum()))


def diagonal_path(amp: ClassicalAmplitude, h) -> GeodesicPath:
    """Matrix geodesic with generator ``-diag(h)`` from ``diag(p0)``.

    Its states and normalization coincide with the classical path, with no
    gauge offset.
    """
    rho0, _ = embed_diagonal(amp, h)
    return GeodesicPath(make_gns(rho0), -np.diag(np.asarray(h, dtype=float)).astype(complex))


def compare_with_matrix_path(amp: ClassicalAmplitude, h, s_values) -> tuple[float, float]:
    """Largest elementwise gaps (probabilities, zeta) between the classical and diagonal-matrix paths."""
    path = diagonal_path(amp, h)
    dp = dz = 0.0
    for s in s_values:
        rho_s, zeta_m = path.state(s)
        p_c = classical_path_probabilities(amp, h, s)
        dp = max(dp, float(np.max(np.abs(rho_s.entries - np.diag(p_c)))))
        dz = max(dz, abs(zeta_m - classical_zeta(amp, h, s)))
    return dp, dz
