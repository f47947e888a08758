"""
Brute-force n**2 x n**2 superoperators, for cross-checking small cases.

Vectors are flattened row-major, so ``vec(A X B) = kron(A, B.T) vec(X)``.
Antilinear maps are stored as a matrix ``M`` acting as ``v -> M conj(v)``.
Functions of superoperators use scipy's ``expm``/``logm`` on the full
matrix and never look at the factored structure, which keeps this an
independent route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg


def vec(X) -> np.ndarray:
    return np.asarray(X, dtype=complex).reshape(-1)


def unvec(v, n: int) -> np.ndarray:
    return np.asarray(v).reshape(n, n)


def left(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    return np.kron(A, np.eye(A.shape[0]))


def right(B) -> np.ndarray:
    B = np.asarray(B, dtype=complex)
    return np.kron(np.eye(B.shape[0]), B.T)


def swap(n: int) -> np.ndarray:
    """Permutation with ``vec(X.T) = swap(n) vec(X)``."""
    K = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            K[j * n + i, i * n + j] = 1.0
    return K


def power(M, z: complex) -> np.ndarray:
    """``M**z = expm(z logm(M))`` for a positive definite superoperator."""
    return linalg.expm(z * linalg.logm(M))


@dataclass(frozen=True)
class Antilinear:
    M: np.ndarray

    def __call__(self, v):
        return self.M @ np.conj(v)

    def after(self, L: np.ndarray) -> "Antilinear":
        """``self o L`` for a linear ``L``."""
        return Antilinear(self.M @ np.conj(L))

    def before(self, L: np.ndarray) -> "Antilinear":
        """``L o self``."""
        return Antilinear(L @ self.M)

    def compose(self, other: "Antilinear") -> np.ndarray:
        """``self o other``: linear."""
        return self.M @ np.conj(other.M)


@dataclass(frozen=True)
class DenseModel:
    """Modular objects of ``rho0`` and the positive operator of ``P`` as explicit matrices."""

    rho0: np.ndarray
    P: np.ndarray

    @property
    def n(self) -> int:
        return self.rho0.shape[0]

    @property
    def omega0(self) -> np.ndarray:
        return vec(linalg.sqrtm(self.rho0))

    @property
    def delta(self) -> np.ndarray:
        return left(self.rho0) @ right(np.linalg.inv(self.rho0))

    @property
    def T(self) -> np.ndarray:
        return left(self.P) @ right(np.linalg.inv(self.rho0))

    @property
    def J(self) -> Antilinear:
        return Antilinear(swap(self.n))

    @property
    def S(self) -> Antilinear:
        return self.J.after(power(self.delta, 0.5))

    def delta_power(self, z) -> np.ndarray:
        return power(self.delta, z)

    def T_power(self, z) -> np.ndarray:
        return power(self.T, z)

    def U(self, t) -> np.ndarray:
        return self.T_power(-1j * t) @ self.delta_power(1j * t)

    def xi(self, z) -> np.ndarray:
        return self.T_power(-1j * z) @ self.omega0

    @property
    def u_half(self) -> np.ndarray:
        return self.T_power(0.5) @ self.delta_power(-0.5)

    @property
    def Y(self) -> np.ndarray:
        J = self.J
        return J.after(self.u_half).compose(J)

    @property
    def X(self) -> np.ndarray:
        Y = self.Y
        return Y.conj().T @ Y

    @property
    def J_T_half_S(self) -> np.ndarray:
        return self.J.after(self.T_power(0.5)).compose(self.S)

    def sym_log_derivative(self, T: np.ndarray, T_dot: np.ndarray) -> np.ndarray:
        """Solve ``(L T + T L)/2 = T_dot`` as a dense Sylvester equation."""
        return linalg.solve_sylvester(T, T, 2.0 * T_dot)
