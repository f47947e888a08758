"""Seeded random instances for the verification suites."""

from __future__ import annotations

import numpy as np

FLOOR = 1e-3


def ginibre(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_density(rng: np.random.Generator, n: int, eps: float = FLOOR) -> np.ndarray:
    """``G G*/Tr(G G*) + eps I/n``, renormalized to unit trace."""
    G = ginibre(rng, n)
    rho = G @ G.conj().T
    rho = rho / np.trace(rho).real + eps * np.eye(n) / n
    rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def random_positive(rng: np.random.Generator, n: int) -> np.ndarray:
    """A random faithful state times a log-uniform scale in ``[e**-1, e]``."""
    return np.exp(rng.uniform(-1.0, 1.0)) * random_density(rng, n)


def random_hermitian(rng: np.random.Generator, n: int, norm: float | None = None) -> np.ndarray:
    G = ginibre(rng, n)
    A = 0.5 * (G + G.conj().T)
    if norm is not None:
        A *= norm / np.linalg.norm(A, 2)
    return A


def hermitian_basis(n: int) -> list[np.ndarray]:
    """Orthonormal basis (Hilbert-Schmidt) of the Hermitian n x n matrices."""
    basis = []
    for i in range(n):
        E = np.zeros((n, n), dtype=complex)
        E[i, i] = 1.0
        basis.append(E)
    for i in range(n):
        for j in range(i + 1, n):
            X = np.zeros((n, n), dtype=complex)
            X[i, j] = X[j, i] = 1 / np.sqrt(2)
            Y = np.zeros((n, n), dtype=complex)
            Y[i, j], Y[j, i] = -1j / np.sqrt(2), 1j / np.sqrt(2)
            basis += [X, Y]
    return basis


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for one (dim, trial, ...) cell, independent of evaluation order."""
    return np.random.default_rng(np.random.SeedSequence([seed, *key]))
