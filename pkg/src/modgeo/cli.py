"""
Command-line interface.

Exit codes: 0 all checks pass, 1 some check failed, 2 malformed input,
3 input state not faithful.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import abelian, geodesic, io, sampling, suite
from .errors import DimensionMismatch, ModgeoError, NotDensity, NotFaithful, NotHermitian
from .report import VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_UNFAITHFUL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --- path sampling ---------------------------------------------------------------

def sample_path(path: geodesic.GeodesicPath, steps: int, tol: float) -> tuple[list[dict], VerificationReport]:
    """PathRecords on a uniform s-grid plus the checks they feed."""
    n = path.space.dim
    basis = sampling.hermitian_basis(n)
    report = VerificationReport()
    records = []
    for s in np.linspace(0.0, 1.0, steps):
        s = float(s)
        rho, zeta = path.state(s)
        aff = geodesic.check_log_affine(path, [(s, 0.0)], tol).max_residual()
        tan = suite.tangent_fd_residual(path, s, basis)
        records.append({
            "s": s,
            "eigenvalues": [float(v) for v in rho.eig.values],
            "zeta": zeta,
            "log_affinity_residual": aff,
            "tangent_residual": tan,
        })
        report.add(f"log_affine[s={s:.6g}]", aff, tol)
        report.add(f"tangent_fd[s={s:.6g}]", tan, suite.FD_TOL)
        report.add(f"trace[s={s:.6g}]", abs(sum(records[-1]["eigenvalues"]) - 1.0), tol)
    return records, report


def _write_path_outputs(out: Path, records, report: VerificationReport, fmt: str) -> None:
    out.mkdir(parents=True, exist_ok=True)
    if fmt in ("json", "both"):
        io.dump_json(out / "path.json", records)
    if fmt in ("csv", "both"):
        io.write_path_csv(out / "path.csv", records)
    io.dump_json(out / "report.json", report.to_records())


def _summarize(report: VerificationReport, label: str) -> int:
    failed = report.failures()
    print(f"{label}: {len(report.checks) - len(failed)}/{len(report.checks)} checks passed")
    for c in failed:
        print(f"  FAIL {c.name}: residual {c.residual:.3e} > tolerance {c.tolerance:.1e}")
    return EXIT_OK if not failed else EXIT_FAIL


def _finish_path(path, args, label: str, extra: VerificationReport | None = None) -> int:
    records, report = sample_path(path, args.steps, args.tol)
    if extra is not None:
        report.extend(extra)
    _write_path_outputs(Path(args.out), records, report, args.format)
    mid = records[len(records) // 2]
    print(f"{label}: n={path.space.dim}, steps={args.steps}, "
          f"s={mid['s']:.4g} eigenvalues={np.round(mid['eigenvalues'], 7).tolist()}")
    return _summarize(report, label)


# --- commands ------------------------------------------------------------------------

def cmd_geodesic_matrix(args) -> int:
    rho0 = io.read_matrix(args.rho0)
    rho1 = io.read_matrix(args.rho1)
    path = geodesic.connect(rho0, rho1)
    extra = VerificationReport()
    extra.add("endpoint", float(np.linalg.norm(path.density(1.0) - rho1)), args.tol)
    return _finish_path(path, args, "geodesic-matrix", extra)


def cmd_geodesic_expfam(args) -> int:
    spec = io.read_json(args.spec)
    try:
        gens = [io.matrix_from_json(g) for g in spec["generators"]]
        theta, eta = spec["theta"], spec["eta"]
    except (KeyError, TypeError) as exc:
        raise io.ParseError(f"malformed family spec: {exc}") from exc
    fam = geodesic.ExpFamily(gens)
    path = geodesic.geodesic_from_expfam(fam, theta, eta)
    extra = VerificationReport()
    for s in np.linspace(0.0, 1.0, args.steps):
        direct, _ = geodesic.expfam_state(fam, (1 - s) * np.asarray(theta, float) + s * np.asarray(eta, float))
        extra.add(f"expfam_consistency[s={s:.6g}]",
                  float(np.linalg.norm(path.density(s) - direct.entries)), args.tol)
    return _finish_path(path, args, "geodesic-expfam", extra)


def _parse_amplitude(spec) -> tuple[abelian.ClassicalAmplitude, np.ndarray]:
    try:
        weights = spec.get("weights")
        if "p" in spec:
            amp = abelian.ClassicalAmplitude.from_probabilities(spec["p"], weights)
        else:
            psi = np.array([complex(*z) if isinstance(z, list) else complex(z) for z in spec["psi"]])
            w = np.ones(psi.size) if weights is None else weights
            amp = abelian.ClassicalAmplitude(abelian.FiniteMeasureSpace(w), psi)
        h = np.asarray(spec["h"], dtype=float)
    except (KeyError, TypeError, AttributeError) as exc:
        raise io.ParseError(f"malformed classical spec: {exc}") from exc
    return amp, h


def cmd_geodesic_classical(args) -> int:
    spec = io.read_json(args.spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    report = VerificationReport()
    if args.grid_mode:
        try:
            x, dens, k, t = (np.asarray(spec["x"], float), np.asarray(spec["density"], float),
                             np.asarray(spec["k"], float), float(spec["t"]))
        except (KeyError, TypeError) as exc:
            raise io.ParseError(f"malformed grid spec: {exc}") from exc
        chk = abelian.exp_tangent_check_grid(dens, k, t, x=x)
        io.dump_json(out / "tangent_check.json", chk.__dict__)
        print(f"geodesic-classical (grid): value={chk.value:.6g} finite={chk.finite} "
              f"divergence_flag={chk.divergence_flag}")
        return EXIT_OK if chk.finite else EXIT_FAIL

    amp, h = _parse_amplitude(spec)
    records = []
    for s in np.linspace(0.0, 1.0, args.steps):
        omega, zeta = abelian.classical_geodesic(amp, h, float(s))
        records.append({"s": float(s), "probabilities": abelian.classical_state(omega).tolist(),
                        "zeta": zeta})
    dp, dz = abelian.compare_with_matrix_path(amp, h, np.linspace(0.0, 1.0, args.steps))
    report.add("classical_diagonal_bridge", max(dp, dz), args.tol)
    io.dump_json(out / "path.json", records)
    io.dump_json(out / "report.json", report.to_records())
    return _summarize(report, "geodesic-classical")


def cmd_verify(args) -> int:
    dims = args.dims
    if not dims or any(not 2 <= n <= 8 for n in dims) or args.trials < 1:
        raise UsageError("dims must lie in 2..8 and trials >= 1")
    records = suite.run_suite(dims, args.trials, args.seed, args.tol)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.dump_json(out / "report.json", records)
    failed = [r for r in records if not r["pass"]]
    print(f"verify: dims={dims} trials={args.trials} seed={args.seed}: "
          f"{len(records) - len(failed)}/{len(records)} entries passed")
    for r in failed[:50]:
        print(f"  FAIL {r['check']} trial {r['trial']}: residual {r['residual']:.3e} > {r['tolerance']:.1e}")
    if len(failed) > 50:
        print(f"  ... {len(failed) - 50} more")
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_derivatives(args) -> int:
    rho0 = io.read_matrix(args.rho0)
    rho1 = io.read_matrix(args.rho1)
    path = geodesic.connect(rho0, rho1)
    s = args.s
    d = geodesic.left_log_derivative(path, s)

    # arbitration of the velocity convention by central differences
    fd_err = {}
    for delta in (1e-3, 1e-4):
        fd = suite.central_difference(lambda u: geodesic.omega_s(path, u), s, delta)
        fd_err[delta] = {str(f): float(np.linalg.norm(fd - geodesic.omega_velocity(path, s, f)))
                         for f in (0.5, 1.0)}
    velocity = min(("0.5", "1.0"), key=lambda f: fd_err[1e-4][f])
    basis = sampling.hermitian_basis(path.space.dim)
    tangents = [geodesic.tangent_conventions(path, s, A) for A in basis]
    votes = [t.matched for t in tangents]
    tangent_conv = max(set(votes), key=votes.count)

    report = VerificationReport()
    report.add("defining_equations", d.residual_defining, args.tol)
    report.add("tangent_identity", abs(geodesic.tangent_functional(path, s, np.eye(path.space.dim))), 1e-12)
    report.add("tangent_fd", suite.tangent_fd_residual(path, s, basis), suite.FD_TOL)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.dump_json(out / "derivatives.json", {
        "s": s,
        "HL": io.matrix_to_json(d.HL),
        "SLD": io.matrix_to_json(d.Lsym),
        "LL": io.matrix_to_json(d.LL),
        "LR": io.matrix_to_json(d.LR),
        "zeta": d.zeta,
        "zeta_prime": d.zeta_prime,
        "residual_defining": d.residual_defining,
        "residual_selfadjoint": d.residual_selfadjoint,
        "quadrature_disagreement": d.quadrature_disagreement,
        "velocity_convention_hl_factor": float(velocity),
        "velocity_fd_errors": {f"{k:g}": v for k, v in fd_err.items()},
        "tangent_convention": tangent_conv,
        "zeta_along_cocycle_labels": 0.0,
    })
    io.dump_json(out / "report.json", report.to_records())
    print(f"derivatives: s={s:g} selfadjoint_residual={d.residual_selfadjoint:.3e} "
          f"velocity uses {velocity} HL, tangent formula matches G={tangent_conv}")
    return _summarize(report, "derivatives")


# --- parser --------------------------------------------------------------------------

def _dims(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad --dims {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="tolerance for exact identities")
    common.add_argument("--out", default="modgeo-out", help="output directory")

    path_opts = argparse.ArgumentParser(add_help=False)
    path_opts.add_argument("--steps", type=int, default=11)
    path_opts.add_argument("--format", choices=("json", "csv", "both"), default="both")

    parser = argparse.ArgumentParser(prog="modgeo", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("geodesic-matrix", parents=[common, path_opts], help="geodesic between two density matrices")
    p.add_argument("rho0")
    p.add_argument("rho1")
    p.set_defaults(func=cmd_geodesic_matrix)

    p = sub.add_parser("geodesic-expfam", parents=[common, path_opts], help="geodesic inside an exponential family")
    p.add_argument("spec")
    p.set_defaults(func=cmd_geodesic_expfam)

    p = sub.add_parser("geodesic-classical", parents=[common, path_opts], help="abelian geodesic")
    p.add_argument("spec")
    p.add_argument("--grid-mode", action="store_true", help="tangent-condition check on a real-line grid")
    p.set_defaults(func=cmd_geodesic_classical)

    p = sub.add_parser("verify", parents=[common], help="randomized verification suite")
    p.add_argument("--dims", type=_dims, default=[2, 3, 4])
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derivatives", parents=[common], help="logarithmic derivatives and tangent data")
    p.add_argument("rho0")
    p.add_argument("rho1")
    p.add_argument("--s", type=float, default=0.5)
    p.set_defaults(func=cmd_derivatives)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "steps", 2) < 2 or args.tol <= 0:
        print("error: --steps must be >= 2 and --tol > 0", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except NotFaithful as exc:
        print(f"error: state not faithful: {exc}", file=sys.stderr)
        return EXIT_UNFAITHFUL
    except (io.ParseError, NotHermitian, NotDensity, DimensionMismatch, UsageError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ModgeoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
