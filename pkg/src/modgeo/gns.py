"""
GNS representation of the n x n matrices for a faithful density matrix.

Vectors of the GNS Hilbert space are n x n matrices with the Hilbert-Schmidt
inner product ``(X, Y) = Tr Y* X``. The algebra acts by left multiplication,
its commutant by right multiplication, and the cyclic separating vector is
``Omega0 = rho0**(1/2)``. In this picture

    Delta X = rho0 X rho0**-1,   J X = X*,   S X = rho0**(-1/2) X* rho0**(1/2),

and the modular automorphisms are ``tau_t(A) = rho0**(-it) A rho0**(it)``.
S and J are antilinear and are only ever exposed as functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matfun
from .errors import DimensionMismatch, NotDensity, NotFaithful, NotHermitian
from .matfun import HermitianEigen

EPS_FAITHFUL = 1e-10
TRACE_TOL = 1e-12


class DensityMatrix:
    """A faithful density matrix: Hermitian, unit trace, spectrum >= 1e-10.

    The eigendecomposition is computed once at construction and kept on
    ``eig``.
    """

    __slots__ = ("entries", "eig")

    def __init__(self, entries, *, eig: HermitianEigen | None = None):
        try:
            A = matfun.check_hermitian(entries)
        except NotHermitian as exc:
            raise NotDensity(str(exc)) from exc
        tr = np.trace(A)
        if abs(tr - 1.0) > TRACE_TOL:
            raise NotDensity(f"trace {tr.real:.15g} differs from 1")
        if eig is None:
            eig = matfun.herm_eig(A)
        if eig.values[0] < EPS_FAITHFUL:
            raise NotFaithful(
                f"smallest eigenvalue {eig.values[0]:.3e} below {EPS_FAITHFUL:.0e}")
        self.entries = A
        self.eig = eig

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def expect(self, A) -> complex:
        """``Tr rho A``."""
        return complex(np.trace(self.entries @ np.asarray(A)))

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, spectrum={np.round(self.eig.values, 6)})"


def as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


# --- Hilbert-Schmidt vectors -------------------------------------------------

def hs_inner(X, Y) -> complex:
    """``(X, Y) = Tr Y* X``; linear in the first slot."""
    return complex(np.vdot(Y, X))


def hs_norm(X) -> float:
    return float(np.linalg.norm(X))


@dataclass(frozen=True)
class Sandwich:
    """The linear map ``X -> left @ X @ right`` on HS vectors.

    ``None`` stands for the identity factor. Left factors belong to the
    algebra, right factors to its commutant.
    """

    left: np.ndarray | None = None
    right: np.ndarray | None = None

    def __call__(self, X):
        out = np.asarray(X, dtype=complex)
        if self.left is not None:
            out = self.left @ out
        if self.right is not None:
            out = out @ self.right
        return out

    def adjoint(self) -> "Sandwich":
        return Sandwich(
            None if self.left is None else self.left.conj().T,
            None if self.right is None else self.right.conj().T,
        )

    def then(self, other: "Sandwich") -> "Sandwich":
        """``other o self``."""
        def mul(a, b):
            if a is None:
                return b
            if b is None:
                return a
            return a @ b
        return Sandwich(mul(other.left, self.left), mul(self.right, other.right))

    def dense(self, n: int) -> np.ndarray:
        """Matrix of the map on row-major ``vec`` (test helper)."""
        L = np.eye(n) if self.left is None else self.left
        R = np.eye(n) if self.right is None else self.right
        return np.kron(L, R.T)


def left_mul(M) -> Sandwich:
    return Sandwich(left=np.asarray(M, dtype=complex))


def right_mul(M) -> Sandwich:
    return Sandwich(right=np.asarray(M, dtype=complex))


@dataclass(frozen=True)
class PositiveSandwich:
    """Positive map ``X -> L X R`` with ``L``, ``R`` positive definite.

    Left and right multiplications commute, so functions of the map factor:
    ``(L.R)**z = L**z . R**z`` and ``log = log L (left) + log R (right)``.
    Its spectrum is ``{l_i r_j}``.
    """

    left_eig: HermitianEigen
    right_eig: HermitianEigen

    @classmethod
    def from_factors(cls, left, right) -> "PositiveSandwich":
        le, re = matfun.herm_eig(left), matfun.herm_eig(right)
        if le.dim != re.dim:
            raise DimensionMismatch("factor dimensions differ")
        return cls(le, re)

    @property
    def left(self) -> np.ndarray:
        return self.left_eig.reconstruct()

    @property
    def right(self) -> np.ndarray:
        return self.right_eig.reconstruct()

    def __call__(self, X):
        return self.left @ np.asarray(X, dtype=complex) @ self.right

    def power(self, z: complex) -> Sandwich:
        return Sandwich(matfun.complex_power(self.left_eig, z),
                        matfun.complex_power(self.right_eig, z))

    def log_factors(self) -> tuple[np.ndarray, np.ndarray]:
        return matfun.logm_pd(self.left_eig), matfun.logm_pd(self.right_eig)

    def eigenvalues(self) -> np.ndarray:
        """``out[i, j] = l_i * r_j``."""
        return np.outer(self.left_eig.values, self.right_eig.values)


# --- the GNS space -------------------------------------------------------------

@dataclass(frozen=True)
class GnsSpace:
    rho0: DensityMatrix
    sqrt_rho0: np.ndarray = field(repr=False)
    inv_sqrt_rho0: np.ndarray = field(repr=False)
    inv_rho0: np.ndarray = field(repr=False)
    log_rho0: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.rho0.dim

    @property
    def eig0(self) -> HermitianEigen:
        return self.rho0.eig

    @property
    def omega0(self) -> np.ndarray:
        return self.sqrt_rho0

    def power(self, z: complex) -> np.ndarray:
        """``rho0**z``."""
        return matfun.complex_power(self.eig0, z)

    def state(self, A) -> complex:
        return self.rho0.expect(A)

    @property
    def delta(self) -> PositiveSandwich:
        """The modular operator as a factored positive map."""
        lam = self.eig0.values
        return PositiveSandwich(self.eig0, HermitianEigen(1.0 / lam[::-1], self.eig0.vectors[:, ::-1]))


def make_gns(rho0) -> GnsSpace:
    """Build the GNS space of a faithful density matrix.

    Raises NotDensity for non-Hermitian or non-normalized input and
    NotFaithful when the spectrum touches zero.
    """
    rho0 = as_density(rho0)
    eig = rho0.eig
    lam = eig.values
    return GnsSpace(
        rho0=rho0,
        sqrt_rho0=eig.reconstruct(np.sqrt(lam).astype(complex)),
        inv_sqrt_rho0=eig.reconstruct((1.0 / np.sqrt(lam)).astype(complex)),
        inv_rho0=eig.reconstruct((1.0 / lam).astype(complex)),
        log_rho0=eig.reconstruct(np.log(lam).astype(complex)),
    )


def _check_dims(*mats) -> None:
    shapes = {np.shape(m) for m in mats}
    if len(shapes) != 1:
        raise DimensionMismatch(f"incompatible shapes {sorted(shapes)}")


def act_left(A, X) -> np.ndarray:
    _check_dims(A, X)
    return np.asarray(A) @ np.asarray(X)


def act_right(B, X) -> np.ndarray:
    _check_dims(B, X)
    return np.asarray(X) @ np.asarray(B)


def delta_power(space: GnsSpace, z: complex, X) -> np.ndarray:
    """``Delta**z X = rho0**z X rho0**-z``."""
    _check_dims(space.sqrt_rho0, X)
    return space.power(z) @ np.asarray(X) @ space.power(-z)


def op_J(space: GnsSpace, X) -> np.ndarray:
    _check_dims(space.sqrt_rho0, X)
    return np.asarray(X).conj().T


def op_S(space: GnsSpace, X) -> np.ndarray:
    """Tomita involution ``A Omega0 -> A* Omega0`` (antilinear)."""
    _check_dims(space.sqrt_rho0, X)
    return space.inv_sqrt_rho0 @ np.asarray(X).conj().T @ space.sqrt_rho0


def op_S_adjoint(space: GnsSpace, X) -> np.ndarray:
    """Antilinear adjoint ``S* = Delta**(1/2) J``."""
    _check_dims(space.sqrt_rho0, X)
    return space.sqrt_rho0 @ np.asarray(X).conj().T @ space.inv_sqrt_rho0


def tau(space: GnsSpace, t: float, A) -> np.ndarray:
    """Modular automorphism ``rho0**(-it) A rho0**(it)``."""
    _check_dims(space.sqrt_rho0, A)
    u = space.power(1j * t)
    return u.conj().T @ np.asarray(A) @ u
