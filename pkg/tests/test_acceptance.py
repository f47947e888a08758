"""Acceptance criteria, one test each; every test records a PASS/FAIL summary line."""

import time

import numpy as np

from modgeo import abelian, cli, cocycle, geodesic, gns, io, matfun
from modgeo.sampling import (ginibre, hermitian_basis, random_density, random_hermitian,
                             random_positive, trial_rng)
from modgeo.suite import GRID, tangent_fd_residual

from oracle import compare

SEED = 2024


def make_cocycle(rng, n, P=None):
    space = gns.make_gns(random_density(rng, n))
    return cocycle.cocycle_from_positive(space, random_positive(rng, n) if P is None else P)


def test_c01_cocycle_identity(criterion):
    start = time.perf_counter()
    worst = 0.0
    for n in (2, 3, 4, 6):
        for k in range(100):
            c = make_cocycle(trial_rng(SEED, 1, n, k), n)
            worst = max(worst, max(cocycle.check_cocycle_identity(c, r, t) for r in GRID for t in GRID))
    elapsed = time.perf_counter() - start
    criterion(1, "cocycle identity on 5x5 grid, 100 trials x n in {2,3,4,6}",
              worst <= 1e-10 and elapsed <= 10.0, f"max residual {worst:.2e}, {elapsed:.2f} s")


def test_c02_state_correspondence(criterion):
    pairing = scale = 0.0
    for n in (2, 3, 4, 6):
        for k in range(25):
            rng = trial_rng(SEED, 2, n, k)
            c = make_cocycle(rng, n)
            rho, zeta = cocycle.state_from_cocycle(c)
            pairing = max(pairing, abs(np.trace(rho.entries) - 1),
                          np.linalg.norm(rho.entries - c.P / np.trace(c.P).real),
                          abs(zeta - np.log(np.trace(c.P).real)))
            pairing = max(pairing, cocycle.verify_state_correspondence(c, hermitian_basis(n)).max_residual())
            factor = float(np.exp(rng.uniform(-3, 3)))
            cs = cocycle.cocycle_from_positive(c.space, factor * c.P)
            scale = max(scale, abs(cs.zeta - c.zeta - np.log(factor)))
    criterion(2, "state from cocycle reproduces pairing on Hermitian basis; zeta scale shift",
              pairing <= 1e-11 and scale <= 1e-12, f"pairing {pairing:.2e}, scale {scale:.2e}")


def test_c03_operator_identities(criterion):
    worst = 0.0
    for k in range(100):
        n = 2 + k % 5
        rng = trial_rng(SEED, 3, k)
        c = make_cocycle(rng, n)
        samples = [ginibre(rng, n) for _ in range(3)]
        worst = max(worst, cocycle.verify_half_operators(c, samples).max_residual())
        worst = max(worst, max(cocycle.verify_three_forms(c, A).max_residual() for A in samples))
        # A = I: both sides of the state formula equal one
        w = cocycle.omega_U(c)
        worst = max(worst, abs(gns.hs_inner(w, w) - 1))
    criterion(3, "J Xi = Xi, Y = J T^1/2 S, state via X^1/2, U* Omega0 = S Xi, three-way identity",
              worst <= 1e-10, f"max residual {worst:.2e} over 100 trials, n in 2..6")


def test_c04_interpolation_bound(criterion):
    ys = (0.0, 0.1, 0.25, 0.4, 0.5)
    literal_slack = concave_viol = 0.0
    literal_scaled_viol = 0.0
    for k in range(100):
        n = 2 + k % 5
        rng = trial_rng(SEED, 4, k)
        # generator drawn as a random faithful state, as for every random state in the suite
        c = make_cocycle(rng, n, P=random_density(rng, n))
        top = np.linalg.norm(cocycle.xi(c, 0.5j)) ** 2
        for y in ys:
            lhs = np.linalg.norm(cocycle.xi(c, 1j * y)) ** 2
            literal_slack = min(literal_slack, 2 * y + (1 - 2 * y) * top - lhs)
        # generator at an arbitrary scale: the chord form is the bound that holds
        scaled = cocycle.cocycle_from_positive(c.space, np.exp(rng.uniform(-3, 3)) * c.P)
        concave_viol = max(concave_viol, cocycle.verify_strip_bound(scaled, ys).max_residual())
        top = np.linalg.norm(cocycle.xi(scaled, 0.5j)) ** 2
        for y in ys:
            lhs = np.linalg.norm(cocycle.xi(scaled, 1j * y)) ** 2
            literal_scaled_viol = max(literal_scaled_viol, lhs - (2 * y + (1 - 2 * y) * top))
    ok = literal_slack >= -1e-12 and concave_viol <= 1e-12
    criterion(4, "norm bound on the strip at Im z in {0,.1,.25,.4,.5}, 100 trials",
              ok, f"stated form slack {literal_slack:.2e} (Tr P = 1); chord form violation "
                  f"{concave_viol:.2e} (any scale); stated form at other scales exceeds by "
                  f"up to {literal_scaled_viol:.2e}")


def test_c05_endpoints_and_affinity(criterion):
    endpoint = affine = 0.0
    mixture_min = np.inf
    for k in range(100):
        n = (2, 3, 4, 6)[k % 4]
        rng = trial_rng(SEED, 5, k)
        r0, r1 = random_density(rng, n), random_density(rng, n)
        path = geodesic.connect(r0, r1)
        endpoint = max(endpoint, float(np.linalg.norm(path.density(1.0) - r1)))
        pairs = [tuple(rng.uniform(0, 1, 2)) for _ in range(10)]
        affine = max(affine, geodesic.check_log_affine(path, pairs).max_residual())
        mix = geodesic.check_log_affine(geodesic.mixture(r0, r1), pairs).max_residual()
        mixture_min = min(mixture_min, mix)
    ok = endpoint <= 1e-10 and affine <= 1e-10 and mixture_min > 1e-3
    criterion(5, "geodesic endpoint and log-affinity, mixture control rejected", ok,
              f"endpoint {endpoint:.2e}, affinity {affine:.2e}, smallest mixture residual {mixture_min:.2e}")


def test_c06_cocycle_synthesis(criterion):
    worst = 0.0
    for k in range(20):
        n = 2 + k % 5
        rng = trial_rng(SEED, 6, k)
        path = geodesic.connect(random_density(rng, n), random_density(rng, n))
        for s in np.linspace(0, 1, 5):
            c = geodesic.path_cocycle(path, s)
            for t in np.linspace(-2, 2, 5):
                worst = max(worst, float(np.linalg.norm(geodesic.synth_cocycle(path, s, t) - cocycle.eval_U(c, t))))
    criterion(6, "synthesized cocycle matches path cocycle on 5x5 (s,t) grid, 20 trials",
              worst <= 1e-9, f"max residual {worst:.2e}")


def _half_power(path, s):
    return matfun.apply_fn(path.log_generator(s), lambda x: np.exp(0.5 * x))


def test_c07_derivatives(criterion):
    defining = 0.0
    slopes = []
    for k in range(20):
        n = 2 + k % 4
        rng = trial_rng(SEED, 7, k)
        path = geodesic.connect(random_density(rng, n), random_density(rng, n))
        s = float(rng.uniform(0.1, 0.9))
        d = geodesic.left_log_derivative(path, s)
        defining = max(defining, d.residual_defining,
                       geodesic.sym_log_derivative(path, s)[1], geodesic.right_log_derivative(path, s)[1])
        # T^{1/2} has the constant right factor rho0^{-1/2}; its s-derivative lives in P_s^{1/2}
        exact = 0.5 * d.HL @ _half_power(path, s)
        errs = [np.linalg.norm((_half_power(path, s + h) - _half_power(path, s - h)) / (2 * h) - exact)
                for h in (1e-3, 1e-4)]
        slopes.append(np.log10(errs[0] / errs[1]))
    quad = 0.0
    for k in range(20):
        n = 2 + k % 5
        rng = trial_rng(SEED, 7, 100 + k)
        U = np.linalg.qr(ginibre(rng, n))[0]
        rho0 = U @ np.diag(rng.dirichlet(np.ones(n)) + 0.01) @ U.conj().T
        rho0 /= np.trace(rho0)
        h = U @ np.diag(rng.normal(size=n)) @ U.conj().T
        path = geodesic.GeodesicPath(gns.make_gns(rho0), h)
        quad = max(quad, geodesic.left_log_derivative(path, float(rng.uniform(0, 1))).quadrature_disagreement)
    ok = defining <= 1e-9 and min(slopes) >= 1.8 and quad <= 1e-8
    criterion(7, "defining equations; d/ds T^1/2 vs central differences O(delta^2); quadrature (commuting)",
              ok, f"defining {defining:.2e}, min decay order {min(slopes):.2f}, quadrature {quad:.2e}")


def test_c08_tangent_functional(criterion):
    fd = identity = 0.0
    for k in range(10):
        n = 2 + k % 4
        rng = trial_rng(SEED, 8, k)
        path = geodesic.connect(random_density(rng, n), random_density(rng, n))
        s = float(rng.uniform(0.05, 0.95))
        obs = [random_hermitian(rng, n, norm=1.0) for _ in range(20)]
        fd = max(fd, tangent_fd_residual(path, s, obs, delta=1e-4))
        identity = max(identity, abs(geodesic.tangent_functional(path, s, np.eye(n))))
    criterion(8, "tangent functional vs central difference at delta=1e-4; f_s(I) = 0",
              fd <= 1e-6 and identity <= 1e-12, f"fd gap {fd:.2e}, f_s(I) {identity:.2e}")


def test_c09_rescaling(criterion):
    worst = 0.0
    for k in range(20):
        n = 2 + k % 5
        rng = trial_rng(SEED, 9, k)
        path = geodesic.connect(random_density(rng, n), random_density(rng, n))
        for lam in (0.0, 0.4, 1.0):
            worst = max(worst, geodesic.rescale_check(path, lam, np.linspace(0, 1, 6)).max_residual())
    criterion(9, "rescaled path equals reparametrized path for lambda in {0, 0.4, 1}",
              worst <= 1e-10, f"max residual {worst:.2e}")


def test_c10_classical_bridge(criterion):
    worst = 0.0
    for k in range(50):
        rng = trial_rng(SEED, 10, k)
        m = int(rng.integers(1, 9))
        w = rng.uniform(0.2, 3.0, m)
        amp = abelian.ClassicalAmplitude.from_probabilities(rng.dirichlet(np.ones(m)) * 0.98 + 0.02 / m, w)
        dp, dz = abelian.compare_with_matrix_path(amp, rng.normal(size=m), np.linspace(0, 1, 11))
        worst = max(worst, dp, dz)
    amp = abelian.ClassicalAmplitude.from_probabilities([0.75, 0.25])
    h = -np.log(np.array([0.5, 0.5]) / [0.75, 0.25])
    mid_c = abelian.classical_path_probabilities(amp, h, 0.5)
    mid_m = np.diag(geodesic.connect(np.diag([0.75, 0.25]), np.eye(2) / 2).density(0.5)).real
    target = np.array([0.6339746, 0.3660254])
    mid_gap = max(np.max(np.abs(mid_c - target)), np.max(np.abs(mid_m - target)))
    criterion(10, "classical and diagonal-matrix geodesics agree (50 instances, m <= 8); qubit midpoint",
              worst <= 1e-12 and mid_gap <= 1e-6, f"max gap {worst:.2e}, midpoint gap {mid_gap:.2e}")


def test_c11_dense_oracle(criterion):
    gaps = {}
    for n in (2, 3):
        for k in range(10):
            for key, v in compare(trial_rng(SEED, 11, n, k), n).items():
                gaps[key] = max(gaps.get(key, 0.0), v)
    worst = max(gaps, key=gaps.get)
    criterion(11, "factored operators agree with dense n^2 x n^2 oracle, n in {2,3}",
              gaps[worst] <= 1e-9, f"{len(gaps)} operator families, worst {worst} {gaps[worst]:.2e}")


def test_c12_cli_determinism(criterion, tmp_path):
    args = ["verify", "--dims", "2,3", "--trials", "3", "--seed", "11"]
    codes = [cli.main(args + ["--out", str(tmp_path / d)]) for d in ("a", "b")]
    same = (tmp_path / "a" / "report.json").read_bytes() == (tmp_path / "b" / "report.json").read_bytes()
    rng = np.random.default_rng(5)
    io.write_matrix(tmp_path / "r0.json", random_density(rng, 3))
    io.write_matrix(tmp_path / "r1.json", random_density(rng, 3))
    io.write_matrix(tmp_path / "bad.json", np.array([[0.5, 1.0], [0.0, 0.5]], dtype=complex))
    io.write_matrix(tmp_path / "pure.json", np.diag([1.0, 0.0]).astype(complex))
    io.write_matrix(tmp_path / "half.json", np.eye(2, dtype=complex) / 2)
    path_args = ["geodesic-matrix", str(tmp_path / "r0.json"), str(tmp_path / "r1.json")]
    path_codes = [cli.main(path_args + ["--out", str(tmp_path / d)]) for d in ("p", "q")]
    same_path = all((tmp_path / "p" / f).read_bytes() == (tmp_path / "q" / f).read_bytes()
                    for f in ("path.json", "path.csv", "report.json"))
    out = str(tmp_path / "x")
    contract = {
        "normal": (cli.main(path_args + ["--out", out]), 0),
        "non-Hermitian": (cli.main(["geodesic-matrix", str(tmp_path / "bad.json"),
                                    str(tmp_path / "half.json"), "--out", out]), 2),
        "non-faithful": (cli.main(["geodesic-matrix", str(tmp_path / "pure.json"),
                                   str(tmp_path / "half.json"), "--out", out]), 3),
        "tol=1e-30": (cli.main(["verify", "--dims", "2", "--trials", "1", "--tol", "1e-30", "--out", out]), 1),
    }
    bad = [k for k, (got, want) in contract.items() if got != want]
    ok = same and same_path and codes == [0, 0] and path_codes == [0, 0] and not bad
    criterion(12, "byte-identical reports for identical runs; exit-code contract",
              ok, f"verify identical {same}, path identical {same_path}, wrong codes {bad or 'none'}")
