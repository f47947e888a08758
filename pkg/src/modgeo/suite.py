"""
Randomized verification suite behind ``modgeo verify``.

Each (dim, trial) cell draws its own generator from ``(seed, dim, trial)``,
so results do not depend on the order or concurrency of evaluation.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from . import abelian, cocycle, geodesic, sampling
from .gns import make_gns
from .report import VerificationReport

GRID = (-2.0, -0.5, 0.0, 0.3, 1.7)
FD_TOL = 1e-6
FD_STEP = 1e-4
MIXTURE_MARGIN = 1e-3


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("MODGEO_THREADS", "1")))
    except ValueError:
        return 1


def central_difference(fn, s: float, delta: float):
    return (fn(s + delta) - fn(s - delta)) / (2.0 * delta)


def tangent_fd_residual(path: geodesic.GeodesicPath, s: float, observables, delta: float = FD_STEP) -> float:
    worst = 0.0
    for A in observables:
        exact = geodesic.tangent_functional(path, s, A)
        fd = central_difference(lambda u: np.trace(path.density(u) @ A).real, s, delta)
        worst = max(worst, abs(exact - fd))
    return worst


def run_trial(n: int, trial: int, seed: int, tol: float) -> VerificationReport:
    rng = sampling.trial_rng(seed, n, trial)
    rho0 = sampling.random_density(rng, n)
    rho1 = sampling.random_density(rng, n)
    P = sampling.random_positive(rng, n)
    samples = [sampling.ginibre(rng, n) for _ in range(3)]
    report = VerificationReport()

    space = make_gns(rho0)
    c = cocycle.cocycle_from_positive(space, P)
    report.add("cocycle_identity",
               max(cocycle.check_cocycle_identity(c, r, t) for r in GRID for t in GRID), tol)
    report.extend(cocycle.verify_state_correspondence(c, sampling.hermitian_basis(n), tol))
    scale = float(np.exp(rng.uniform(-2, 2)))
    c_scaled = cocycle.cocycle_from_positive(space, scale * P)
    report.add("scale_covariance",
               max(abs(c_scaled.zeta - c.zeta - np.log(scale)),
                   float(np.linalg.norm(cocycle.state_from_cocycle(c_scaled)[0].entries
                                        - cocycle.state_from_cocycle(c)[0].entries))), tol)
    strip = cocycle.verify_strip_bound(c)
    report.add("strip_bound", strip.max_residual(), strip.checks[0].tolerance)
    report.add("half_continuation", cocycle.verify_half_continuation(c, samples, tol).max_residual(), tol)
    report.add("half_operators", cocycle.verify_half_operators(c, samples, tol).max_residual(), tol)
    report.add("three_forms", max(cocycle.verify_three_forms(c, A, tol).max_residual() for A in samples), tol)

    path = geodesic.connect(rho0, rho1)
    report.add("geodesic_endpoint", float(np.linalg.norm(path.density(1.0) - rho1)), tol)
    pairs = [tuple(rng.uniform(0, 1, 2)) for _ in range(10)]
    report.add("log_affine", geodesic.check_log_affine(path, pairs, tol).max_residual(), tol)
    mix = geodesic.check_log_affine(geodesic.mixture(rho0, rho1), pairs).max_residual()
    report.add("mixture_control_margin", max(0.0, MIXTURE_MARGIN - mix), 0.0)
    report.add("rescale", geodesic.rescale_check(path, 0.4, np.linspace(0, 1, 5), tol).max_residual(), tol)
    synth = 0.0
    for s in np.linspace(0, 1, 5):
        pc = geodesic.path_cocycle(path, s)
        for t in np.linspace(-2, 2, 5):
            synth = max(synth, float(np.linalg.norm(geodesic.synth_cocycle(path, s, t) - cocycle.eval_U(pc, t))))
    report.add("cocycle_synthesis", synth, tol)
    s = float(rng.uniform(0.1, 0.9))
    report.add("log_derivative_defining", geodesic.left_log_derivative(path, s).residual_defining, tol)
    obs = [sampling.random_hermitian(rng, n, norm=1.0) for _ in range(3)]
    report.add("tangent_fd", tangent_fd_residual(path, s, obs), FD_TOL)

    amp = abelian.ClassicalAmplitude.from_probabilities(np.diag(rho0.real) / np.trace(rho0).real)
    h = rng.normal(size=n)
    dp, dz = abelian.compare_with_matrix_path(amp, h, np.linspace(0, 1, 5))
    report.add("classical_diagonal_bridge", max(dp, dz), tol)
    return report


def run_suite(dims: Sequence[int], trials: int, seed: int, tol: float) -> list[dict]:
    """Records ``{check, trial, residual, tolerance, pass}`` ordered by (dim, trial, check)."""
    cells = [(n, k) for n in dims for k in range(trials)]
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        reports = list(pool.map(lambda cell: run_trial(cell[0], cell[1], seed, tol), cells))
    records = []
    for (n, k), rep in zip(cells, reports):
        for rec in rep.to_records(trial=k):
            rec["check"] = f"{rec['check']}/n={n}"
            records.append(rec)
    return records
