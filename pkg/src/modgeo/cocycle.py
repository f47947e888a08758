"""
Cocycles of the modular group and the states they label.

A cocycle is stored through its positive generator ``P``. The positive
operator on the GNS space is the factored map ``T X = P X rho0**-1`` and

    U_t = T**(-it) Delta**(it) = P**(-it) rho0**(it)      (left multiplication)
    Xi_z = T**(-iz) Omega0 = P**(-iz) rho0**(1/2) rho0**(iz),  0 <= Im z <= 1/2
    zeta = log |Xi_{i/2}|**2 = log Tr P,   omega_U = P / Tr P.

The ``verify_*`` functions evaluate both sides of each identity through the
generic GNS maps (Delta, S, J, powers of T) rather than through the closed
forms above, so their residuals are meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import matfun
from .errors import DimensionMismatch, NotPositiveDefinite, StripViolation
from .gns import (
    EPS_FAITHFUL,
    DensityMatrix,
    GnsSpace,
    PositiveSandwich,
    Sandwich,
    delta_power,
    hs_inner,
    left_mul,
    op_J,
    op_S,
    op_S_adjoint,
    right_mul,
    tau,
)
from .matfun import HermitianEigen
from .report import VerificationReport, rel_diff

STRIP_SLACK = 1e-14


@dataclass(frozen=True)
class Cocycle:
    space: GnsSpace
    P: np.ndarray = field(repr=False)
    eigP: HermitianEigen = field(repr=False)

    @property
    def zeta(self) -> float:
        return float(np.log(np.sum(self.eigP.values)))

    @property
    def T(self) -> PositiveSandwich:
        return PositiveSandwich(self.eigP, self.space.delta.right_eig)


def cocycle_from_positive(space: GnsSpace, P) -> Cocycle:
    """Cocycle ``U_t = P**(-it) rho0**(it)`` generated by a positive matrix."""
    eig = matfun.herm_eig(P)
    if eig.dim != space.dim:
        raise DimensionMismatch(f"generator dim {eig.dim} != space dim {space.dim}")
    scale = np.sum(eig.values)
    if not (scale > 0 and eig.values[0] >= EPS_FAITHFUL * scale):
        raise NotPositiveDefinite(f"generator spectrum {eig.values} is not positive definite")
    return Cocycle(space, eig.reconstruct(), eig)


def eval_U(c: Cocycle, t: complex) -> np.ndarray:
    """``P**(-it) rho0**(it)``; unitary for real ``t``, analytic in ``t``."""
    return matfun.complex_power(c.eigP, -1j * t) @ c.space.power(1j * t)


def check_cocycle_identity(c: Cocycle, r: float, t: float) -> float:
    """``|U_{r+t} - U_r tau_r(U_t)|_F``."""
    lhs = eval_U(c, r + t)
    rhs = eval_U(c, r) @ tau(c.space, r, eval_U(c, t))
    return float(np.linalg.norm(lhs - rhs))


def xi(c: Cocycle, z: complex) -> np.ndarray:
    """Analytic continuation ``T**(-iz) Omega0`` of ``t -> U_t Omega0`` to the strip."""
    z = complex(z)
    if not (-STRIP_SLACK <= z.imag <= 0.5 + STRIP_SLACK):
        raise StripViolation(f"Im z = {z.imag} outside [0, 1/2]")
    return c.T.power(-1j * z)(c.space.omega0)


def verify_strip_bound(c: Cocycle, imag_parts: Iterable[float] = (0.0, 0.1, 0.25, 0.4, 0.5),
                       real_part: float = 0.0) -> VerificationReport:
    """Concavity bound ``|T**(-iz) Omega0|**2 <= (1 - 2y) + 2y |T**(1/2) Omega0|**2``, ``y = Im z``.

    Each residual is the violation ``max(0, lhs - rhs)`` with slack 1e-12.
    """
    report = VerificationReport()
    top = np.linalg.norm(xi(c, 0.5j)) ** 2
    for y in imag_parts:
        lhs = np.linalg.norm(xi(c, real_part + 1j * y)) ** 2
        rhs = (1.0 - 2.0 * y) + 2.0 * y * top
        report.add(f"strip_bound[y={y:g}]", max(0.0, lhs - rhs), 1e-12)
    return report


def state_from_cocycle(c: Cocycle) -> tuple[DensityMatrix, float]:
    zeta = c.zeta
    P = c.eigP
    rho = DensityMatrix(P.reconstruct(P.values / np.exp(zeta)),
                        eig=HermitianEigen(P.values / np.exp(zeta), P.vectors))
    return rho, zeta


def omega_U(c: Cocycle) -> np.ndarray:
    """Unit vector ``exp(-zeta/2) Xi_{i/2}`` implementing the cocycle state."""
    return np.exp(-0.5 * c.zeta) * xi(c, 0.5j)


def u_half(c: Cocycle) -> Sandwich:
    """Analytic continuation ``U_{i/2} = T**(1/2) Delta**(-1/2)``: left multiplication by ``P**(1/2) rho0**(-1/2)``."""
    return left_mul(matfun.complex_power(c.eigP, 0.5) @ c.space.inv_sqrt_rho0)


def y_op(c: Cocycle) -> Sandwich:
    """``Y = J U_{i/2} J``: right multiplication by ``rho0**(-1/2) P**(1/2)``."""
    return right_mul(c.space.inv_sqrt_rho0 @ matfun.complex_power(c.eigP, 0.5))


def x_op(c: Cocycle) -> Sandwich:
    """``X = Y* Y``: right multiplication by ``rho0**(-1/2) P rho0**(-1/2)``."""
    s = c.space.inv_sqrt_rho0
    return right_mul(s @ c.P @ s)


def x_sqrt(c: Cocycle) -> Sandwich:
    M = x_op(c).right
    return right_mul(matfun.sqrtm_pd(0.5 * (M + M.conj().T)))


def _pairing(A, X) -> complex:
    return hs_inner(A @ X, X)


def verify_half_continuation(c: Cocycle, commutant_samples: Sequence[np.ndarray], tol: float = 1e-10) -> VerificationReport:
    """``U_{i/2}`` agrees with the continuation of ``U_t`` and commutes with right multiplications."""
    report = VerificationReport()
    omega0 = c.space.omega0
    U = u_half(c)
    report.add("continuation_on_omega0", rel_diff(U(omega0), xi(c, 0.5j)), tol)
    U_cont = left_mul(eval_U(c, 0.5j))
    for k, B in enumerate(commutant_samples):
        Y = right_mul(B)
        report.add(f"continuation_vs_xi[{k}]", rel_diff(U(Y(omega0)), Y(xi(c, 0.5j))), tol)
        report.add(f"continuation_analytic[{k}]", rel_diff(U(Y(omega0)), U_cont(Y(omega0))), tol)
        X = omega0 @ B + B  # generic vector
        report.add(f"continuation_commutes[{k}]", rel_diff(U(Y(X)), Y(U(X))), tol)
    return report


def verify_half_operators(c: Cocycle, samples: Sequence[np.ndarray], tol: float = 1e-10) -> VerificationReport:
    """Residuals of the identities satisfied by the operators built at ``t = i/2``.

    (a) ``J Xi = Xi``; (b) ``Y(A Omega0) = J T**(1/2) S (A Omega0)``;
    (c) ``omega_U(A) = exp(-zeta) (A X**(1/2) Omega0, X**(1/2) Omega0)``;
    (d) ``U_{i/2}* Omega0 = S Xi``; plus ``X = Y* Y = S* T S``.
    Closability and domain statements hold trivially here and are only noted.
    """
    space = c.space
    omega0 = space.omega0
    Xi = xi(c, 0.5j)
    T_half = c.T.power(0.5)
    Y = y_op(c)
    Xs = x_sqrt(c)
    rho_U, zeta = state_from_cocycle(c)

    report = VerificationReport(notes=["closability and domain conditions are automatic in finite dimension"])
    report.add("J_fixes_xi", rel_diff(op_J(space, Xi), Xi), tol)
    report.add("Y_omega0_is_xi", rel_diff(Y(omega0), Xi), tol)
    report.add("Ustar_omega0_is_S_xi", rel_diff(u_half(c).adjoint()(omega0), op_S(space, Xi)), tol)

    rng_vecs = [omega0] + [A @ omega0 for A in samples]
    xop = x_op(c)
    for k, v in enumerate(rng_vecs):
        yy = Y.adjoint()(Y(v))
        sts = op_S_adjoint(space, c.T(op_S(space, v)))
        report.add(f"X_factorizations[{k}]",
                   max(rel_diff(xop(v), yy), rel_diff(xop(v), sts)), tol)

    for k, A in enumerate(samples):
        v = A @ omega0
        report.add(f"Y_is_J_T_half_S[{k}]",
                   rel_diff(Y(v), op_J(space, T_half(op_S(space, v)))), tol)
        w = Xs(omega0)
        lhs = np.exp(-zeta) * _pairing(A, w)
        rhs = rho_U.expect(A)
        report.add(f"state_via_X_half[{k}]", abs(lhs - rhs) / max(1.0, abs(rhs)), tol)
        lhs_y = np.exp(-zeta) * _pairing(A, Y(omega0))
        report.add(f"state_via_Y[{k}]", abs(lhs_y - rhs) / max(1.0, abs(rhs)), tol)
    return report


def verify_three_forms(c: Cocycle, A, tol: float = 1e-10) -> VerificationReport:
    """``T**(1/2) A Omega0 = U_{i/2} Delta**(1/2) A Omega0 = (J A* J) Xi_{i/2}``."""
    space = c.space
    A = np.asarray(A, dtype=complex)
    v = A @ space.omega0
    a = c.T.power(0.5)(v)
    b = u_half(c)(delta_power(space, 0.5, v))
    Xi = xi(c, 0.5j)
    d = op_J(space, A.conj().T @ op_J(space, Xi))
    report = VerificationReport()
    report.add("T_half_vs_U_half_Delta_half", rel_diff(a, b), tol)
    report.add("U_half_Delta_half_vs_JAJ_xi", rel_diff(b, d), tol)
    report.add("T_half_vs_JAJ_xi", rel_diff(a, d), tol)
    return report


def verify_state_correspondence(c: Cocycle, basis: Sequence[np.ndarray], tol: float = 1e-11) -> VerificationReport:
    """``(A Omega_U, Omega_U) = Tr A P / Tr P`` over a set of observables."""
    rho, _ = state_from_cocycle(c)
    w = omega_U(c)
    report = VerificationReport()
    report.add("state_normalization", abs(hs_inner(w, w) - 1.0), 1e-12)
    worst = 0.0
    for A in basis:
        worst = max(worst, abs(_pairing(A, w) - rho.expect(A)))
    report.add("state_pairing", worst, tol)
    return report
