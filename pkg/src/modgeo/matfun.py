"""
Functions of Hermitian matrices.

Everything here goes through one spectral decomposition ``A = U diag(lam) U*``.
Functions of ``A`` are applied to the eigenvalues, first-order derivatives
use first divided differences of the scalar function in the eigenbasis
(Daleckii-Krein), and the symmetric Sylvester equation
``(L T + T L) / 2 = R`` is solved entrywise in the eigenbasis of ``T``.

Routines accept either a square array or a precomputed
:class:`HermitianEigen`, so callers that reuse a decomposition pay for it once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    NotHermitian,
    NotPositiveDefinite,
    SpectrumOutOfDomain,
)

TOL_HERM = 1e-12
DEGENERACY_RTOL = 1e-10


@dataclass(frozen=True)
class HermitianEigen:
    """Spectral data of a Hermitian matrix.

    ``values`` are ascending; ``vectors`` holds orthonormal eigenvectors as
    columns, each with its first non-negligible component real and positive.
    """

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def reconstruct(self, values=None) -> np.ndarray:
        lam = self.values if values is None else values
        return (self.vectors * lam) @ self.vectors.conj().T


MatrixLike = Union[np.ndarray, HermitianEigen]


def as_square(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def hermiticity_defect(A: np.ndarray) -> float:
    """Relative Frobenius distance of ``A`` from its conjugate transpose."""
    norm = np.linalg.norm(A)
    if norm == 0.0:
        return 0.0
    return float(np.linalg.norm(A - A.conj().T) / norm)


def check_hermitian(A, tol: float = TOL_HERM) -> np.ndarray:
    """Validate Hermiticity and return the symmetrized matrix."""
    A = as_square(A)
    defect = hermiticity_defect(A)
    if not defect <= tol:
        raise NotHermitian(f"relative hermiticity defect {defect:.3e} exceeds {tol:.1e}")
    return 0.5 * (A + A.conj().T)


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    mags = np.abs(vectors)
    # first component that is not negligible relative to the column maximum
    lead = np.argmax(mags > 1e-8 * mags.max(axis=0, keepdims=True), axis=0)
    pivots = vectors[lead, np.arange(vectors.shape[1])]
    return vectors * (pivots.conj() / np.abs(pivots))


def herm_eig(A, tol: float = TOL_HERM) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix with deterministic phases.

    Raises
    ------
    NotHermitian
        If the relative Frobenius defect ``|A - A*| / |A|`` exceeds ``tol``.
    """
    if isinstance(A, HermitianEigen):
        return A
    A = check_hermitian(A, tol)
    values, vectors = np.linalg.eigh(A)
    return HermitianEigen(values=values, vectors=_fix_phases(vectors))


def _eig(A: MatrixLike) -> HermitianEigen:
    return A if isinstance(A, HermitianEigen) else herm_eig(A)


def apply_fn(A: MatrixLike, f: Callable[[np.ndarray], np.ndarray], *,
             min_eig: float | None = None) -> np.ndarray:
    """Return ``U f(diag lam) U*``.

    ``f`` acts elementwise on the eigenvalue array and may return complex
    values. ``min_eig`` enforces a lower bound on the spectrum (use it for
    logarithms and negative powers).
    """
    eig = _eig(A)
    if min_eig is not None and eig.values[0] < min_eig:
        raise SpectrumOutOfDomain(
            f"smallest eigenvalue {eig.values[0]:.3e} below {min_eig:.1e}")
    with np.errstate(all="ignore"):
        fl = np.asarray(f(eig.values))
    if not np.all(np.isfinite(fl)):
        raise SpectrumOutOfDomain("function is not finite on the spectrum")
    return eig.reconstruct(fl.astype(complex))


def _require_pd(eig: HermitianEigen) -> None:
    if not eig.values[0] > 0.0:
        raise NotPositiveDefinite(f"smallest eigenvalue {eig.values[0]:.3e} is not positive")


def complex_power(A: MatrixLike, z: complex) -> np.ndarray:
    """``A**z = exp(z log A)`` for positive definite ``A`` and complex ``z``."""
    eig = _eig(A)
    _require_pd(eig)
    return eig.reconstruct(np.exp(z * np.log(eig.values)))


def imaginary_power(A: MatrixLike, t: float) -> np.ndarray:
    """The unitary ``A**(it)`` of a positive definite matrix."""
    return complex_power(A, 1j * t)


def logm_pd(A: MatrixLike) -> np.ndarray:
    eig = _eig(A)
    _require_pd(eig)
    return eig.reconstruct(np.log(eig.values).astype(complex))


def sqrtm_pd(A: MatrixLike) -> np.ndarray:
    eig = _eig(A)
    _require_pd(eig)
    return eig.reconstruct(np.sqrt(eig.values).astype(complex))


def expm_h(A: MatrixLike) -> np.ndarray:
    return apply_fn(A, np.exp)


def divided_differences(values: np.ndarray, f: Callable, df: Callable) -> np.ndarray:
    """Matrix of first divided differences ``(f(l_i)-f(l_j))/(l_i-l_j)``.

    Near-coincident pairs (gap below ``1e-10 (1 + |l_i|)``) use ``df(l_i)``.
    """
    lam = np.asarray(values, dtype=float)
    fl = np.asarray(f(lam))
    gap = lam[:, None] - lam[None, :]
    close = np.abs(gap) <= DEGENERACY_RTOL * (1.0 + np.abs(lam[:, None]))
    safe_gap = np.where(close, 1.0, gap)
    dd = (fl[:, None] - fl[None, :]) / safe_gap
    deriv = np.broadcast_to(np.asarray(df(lam))[:, None], dd.shape)
    return np.where(close, deriv, dd)


def frechet_fn(A: MatrixLike, E, f: Callable, df: Callable) -> np.ndarray:
    """Directional derivative ``d/dh f(A + h E)`` at ``h = 0``.

    Parameters
    ----------
    A : Hermitian matrix or HermitianEigen
        Base point.
    E : (n, n) array
        Direction; need not be Hermitian (the map is complex linear in E).
    f, df : callables
        Scalar function and its derivative, both vectorized over arrays.
    """
    eig = _eig(A)
    E = as_square(E)
    if E.shape[0] != eig.dim:
        raise DimensionMismatch(f"direction has shape {E.shape}, base point dim {eig.dim}")
    U = eig.vectors
    with np.errstate(all="ignore"):
        dd = divided_differences(eig.values, f, df)
    if not np.all(np.isfinite(dd)):
        raise SpectrumOutOfDomain("divided differences not finite on the spectrum")
    return U @ (dd * (U.conj().T @ E @ U)) @ U.conj().T


def sym_solve(T: MatrixLike, R) -> np.ndarray:
    """Solve ``(L T + T L) / 2 = R`` for ``L`` with ``T`` positive definite."""
    eig = _eig(T)
    _require_pd(eig)
    R = as_square(R)
    if R.shape[0] != eig.dim:
        raise DimensionMismatch(f"right-hand side has shape {R.shape}, T has dim {eig.dim}")
    U = eig.vectors
    t = eig.values
    Rt = U.conj().T @ R @ U
    return U @ (2.0 * Rt / (t[:, None] + t[None, :])) @ U.conj().T
