"""Command-line front end and file serialization.

Subcommands: ``subspace``, ``construct``, ``verify``, ``witness``,
``stress``.  Exit codes: 0 success/pass, 1 verification or property
failure, 2 usage or parse error, 3 solver non-convergence.

Matrices travel as JSON documents with explicit [re, im] entry pairs and
embedded local dimensions; floats are printed with 17 significant digits
so that parse(serialize(M)) reproduces M bit-exactly.  The product basis
|j>|k> is ordered with the first factor major (index j*n + k), stated in
every file's metadata.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import __version__
from .bipartite import (
    GENERATOR_NAME,
    BipartiteDims,
    DensityMatrix,
    count_negative_eigenvalues,
    partial_transpose,
    random_density_matrix,
)
from .errors import NoConvergence, NotInSubspace
from .linalg import eigh, hermiticity_defect, is_hermitian, project_psd
from .sdp import construct_via_dual_cone, solve_construction_sdp
from .subspace import (
    build_subspace,
    locate_witness,
    range_in_subspace,
    sample_mixture_in_subspace,
    subspace_projector,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NOCONV = 3


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

class MatrixFileError(ValueError):
    """File cannot be parsed as a matrix/vectors document."""


def _fmt_float(x: float) -> str:
    if not np.isfinite(x):
        raise MatrixFileError(f"non-finite value {x!r} cannot be serialized")
    s = format(float(x), ".17g")
    if "." not in s and "e" not in s:
        s += ".0"  # keep json from reading it back as an int (kills -0.0)
    return s


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return _fmt_float(float(x))
    if isinstance(x, str):
        return json.dumps(x)
    if x is None:
        return "null"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    if isinstance(x, dict):
        items = sorted(x.items())
        return "{" + ", ".join(f"{json.dumps(k)}: {_fmt(v)}" for k, v in items) + "}"
    raise MatrixFileError(f"cannot serialize {type(x)!r}")


def _entries(mat: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(mat, dtype=complex)]


def matrix_checksum(mat: np.ndarray) -> str:
    """SHA-256 over the canonical 17-digit entry encoding."""
    text = "\n".join(
        " ".join(f"{_fmt_float(z.real)} {_fmt_float(z.imag)}" for z in row)
        for row in np.asarray(mat, dtype=complex)
    )
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def _document(kind: str, dims: BipartiteDims, payload_key: str, payload, metadata: dict) -> str:
    meta = {"tool_version": __version__, "format": "nptsub-v1",
            "basis_ordering": "product basis |j,k> at index j*n+k (first factor major)"}
    meta.update(metadata or {})
    body = (
        "{\n"
        f'  "kind": {json.dumps(kind)},\n'
        f'  "m": {dims.m},\n'
        f'  "n": {dims.n},\n'
        f'  "{payload_key}": {_fmt(payload)},\n'
        f'  "metadata": {_fmt(meta)}\n'
        "}\n"
    )
    return body


def serialize_matrix(mat: np.ndarray, dims: BipartiteDims, metadata: dict | None = None) -> str:
    meta = dict(metadata or {})
    meta.setdefault("checksum_sha256", matrix_checksum(mat))
    return _document("matrix", dims, "matrix", _entries(mat), meta)


def serialize_vectors(vectors: np.ndarray, dims: BipartiteDims, metadata: dict | None = None) -> str:
    cols = [[[float(z.real), float(z.imag)] for z in vectors[:, i]] for i in range(vectors.shape[1])]
    return _document("vectors", dims, "vectors", cols, metadata or {})


def save_matrix(path, mat, dims, metadata=None):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize_matrix(mat, dims, metadata))


def load_matrix(path) -> tuple[np.ndarray, BipartiteDims, dict]:
    """Parse a matrix document; verifies the checksum when present."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MatrixFileError(f"cannot read matrix file {path}: {exc}") from exc
    try:
        dims = BipartiteDims(int(doc["m"]), int(doc["n"]))
        rows = doc["matrix"]
        mat = np.array(
            [[complex(float(e[0]), float(e[1])) for e in row] for row in rows],
            dtype=complex,
        )
        metadata = doc.get("metadata", {})
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise MatrixFileError(f"malformed matrix document {path}: {exc}") from exc
    d = dims.total
    if mat.shape != (d, d):
        raise MatrixFileError(
            f"matrix shape {mat.shape} does not match dims ({dims.m}, {dims.n})"
        )
    if not np.all(np.isfinite(mat.view(float))):
        raise MatrixFileError("matrix entries must be finite")
    expected = metadata.get("checksum_sha256")
    if expected is not None and matrix_checksum(mat) != expected:
        raise MatrixFileError(f"checksum mismatch in {path}")
    return mat, dims, metadata


def paper_fixture_path() -> str:
    """Path of the bundled 3x4 example state."""
    return str(resources.files("nptsub").joinpath("fixtures/paper_3x4.json"))


# --------------------------------------------------------------------------
# verification report
# --------------------------------------------------------------------------

@dataclass
class VerificationReport:
    is_hermitian: bool
    is_psd: bool
    trace: float
    negative_count: int
    negative_eigenvalues: list[float]
    range_in_subspace: bool | None
    thresholds: dict[str, float]

    @property
    def passed(self) -> bool:
        return (
            self.is_hermitian
            and self.is_psd
            and abs(self.trace - 1.0) <= self.thresholds["trace"]
        )

    def to_dict(self) -> dict:
        return {
            "is_hermitian": self.is_hermitian,
            "is_psd": self.is_psd,
            "trace": self.trace,
            "negative_count": self.negative_count,
            "negative_eigenvalues": list(self.negative_eigenvalues),
            "range_in_subspace": self.range_in_subspace,
            "thresholds": dict(self.thresholds),
        }


def verify_matrix(
    mat: np.ndarray,
    dims: BipartiteDims,
    check_subspace: bool = False,
    tol_herm: float = 1e-12,
    tol_psd: float = 1e-10,
    tol_trace: float = 1e-10,
) -> VerificationReport:
    """Aggregate state checks: Hermiticity, positivity, trace, PT negatives."""
    thresholds = {"hermiticity": tol_herm, "psd": tol_psd, "trace": tol_trace}
    hermitian = is_hermitian(mat, rtol=tol_herm)
    trace = float(np.trace(mat).real)
    if hermitian:
        lo = float(eigh(mat).eigenvalues[0])
        psd = lo >= -tol_psd
        count, negs = count_negative_eigenvalues(partial_transpose(mat, dims))
        negatives = [float(x) for x in negs]
    else:
        psd = False
        count, negatives = 0, []
    in_subspace = None
    if check_subspace and hermitian:
        basis = build_subspace(dims)
        try:
            in_subspace = range_in_subspace(basis, DensityMatrix(dims, mat))
        except ValueError:
            in_subspace = False
    return VerificationReport(
        is_hermitian=hermitian, is_psd=psd, trace=trace,
        negative_count=count, negative_eigenvalues=negatives,
        range_in_subspace=in_subspace, thresholds=thresholds,
    )


# --------------------------------------------------------------------------
# stress suites
# --------------------------------------------------------------------------

@dataclass
class SuiteResult:
    suite: str
    dims: BipartiteDims
    trials: int
    failures: list[tuple[int, str]]

    @property
    def passed(self) -> bool:
        return not self.failures


def run_npt_suite(dims: BipartiteDims, trials: int, seed: int) -> SuiteResult:
    """Sample mixtures supported on the NPT subspace; all must be NPT and
    carry a valid witness certificate.

    Trial i uses generator seed ``seed + i``, so results do not depend on
    execution order.
    """
    basis = build_subspace(dims)
    failures = []
    for i in range(trials):
        rng = np.random.Generator(np.random.PCG64(seed + i))
        ens = sample_mixture_in_subspace(basis, rank=min(3, basis.dim), rng=rng)
        rho = ens.to_density_matrix()
        w = eigh(partial_transpose(rho.mat, dims)).eigenvalues
        if not w[0] < -1e-12 * float(w[-1]):
            failures.append((seed + i, f"not NPT: min PT eigenvalue {w[0]:.3e}"))
            continue
        try:
            cert = locate_witness(ens, basis)
        except Exception as exc:  # noqa: BLE001 - report, don't crash the suite
            failures.append((seed + i, f"witness failed: {exc}"))
            continue
        if not cert.determinant < 0:
            failures.append((seed + i, f"witness determinant {cert.determinant:.3e} >= 0"))
            continue
        mismatch = abs(cert.determinant + abs(cert.mixture_sum) ** 2)
        if mismatch > 1e-10:
            failures.append((seed + i, f"determinant identity off by {mismatch:.3e}"))
    return SuiteResult("npt", dims, trials, failures)


def run_bound_suite(dims: BipartiteDims, trials: int, seed: int) -> SuiteResult:
    """Unrestricted random states never exceed (m-1)(n-1) PT negatives."""
    cap = dims.npt_dim
    failures = []
    for i in range(trials):
        rho = random_density_matrix(dims, rank=dims.total, seed=seed + i)
        count, _ = count_negative_eigenvalues(partial_transpose(rho.mat, dims))
        if count > cap:
            failures.append((seed + i, f"{count} negatives exceeds cap {cap}"))
    return SuiteResult("bound", dims, trials, failures)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def _cmd_subspace(args) -> int:
    dims = BipartiteDims(args.m, args.n)
    basis = build_subspace(dims)
    out = args.out
    try:
        out.mkdir(parents=True, exist_ok=True)
        meta = {"generators": "|j>|k+1> - |j+1>|k> in lexicographic (j,k) order"}
        (out / "generators.json").write_text(
            serialize_vectors(basis.generators, dims, meta), encoding="ascii"
        )
        (out / "basis.json").write_text(
            serialize_vectors(basis.orthonormal, dims,
                              {"orthonormalization": "modified gram-schmidt"}),
            encoding="ascii",
        )
        if args.projector:
            P = subspace_projector(basis)
            save_matrix(out / "projector.json", P.P, dims,
                        {"trace": float(np.trace(P.P).real)})
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"subspace dimension: {basis.dim} (m-1)(n-1) = {dims.npt_dim}")
    if basis.dim == 0:
        print("warning: subspace is zero-dimensional (m = 1 or n = 1)", file=sys.stderr)
    print(f"wrote {out}/generators.json, {out}/basis.json"
          + (f", {out}/projector.json" if args.projector else ""))
    return EXIT_OK


def _cmd_construct(args) -> int:
    if args.m < 2 or args.n < 2:
        print("error: construction requires m, n >= 2", file=sys.stderr)
        return EXIT_USAGE
    dims = BipartiteDims(args.m, args.n)
    P = subspace_projector(build_subspace(dims))
    meta = {
        "method": args.method,
        "solver_budgets": {"max_iter": args.max_iter, "tolerance": args.tol},
    }
    exit_code = EXIT_OK
    if args.method == "direct":
        try:
            sol = solve_construction_sdp(
                dims, P, tol_gap=args.tol, max_iter=args.max_iter
            )
        except NoConvergence as exc:
            sol = exc.partial
            exit_code = EXIT_NOCONV
        rho = sol.rho
        gap = sol.upper_bound - sol.lower_bound
        meta.update({
            "d": sol.d, "objective_gap": gap if np.isfinite(gap) else None,
            "converged": sol.converged, "residuals": sol.residuals,
        })
        summary = f"d = {sol.d:.6g}"
        residuals = sol.residuals
    else:
        try:
            dec = construct_via_dual_cone(
                dims, P, tol_c=min(args.tol, 1e-5), max_iter=args.max_iter
            )
        except NoConvergence as exc:
            rho = _partial_state(exc.partial, dims)
            if rho is None:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_NOCONV
            meta.update({"converged": False, "failure": str(exc)})
            exit_code = EXIT_NOCONV
            residuals = {}
            summary = "dual-cone route did not converge"
        else:
            rho = dec.rho
            residuals = {"decomposition_residual": dec.residual}
            meta.update({"c": dec.c, "converged": True, "residuals": residuals})
            summary = f"c = {dec.c:.6g}"
    count, negs = count_negative_eigenvalues(partial_transpose(rho.mat, dims))
    meta["negative_count"] = count
    try:
        save_matrix(args.out, rho.mat, dims, meta)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"{summary}, negatives = {count} (target {dims.npt_dim})")
    print("negative eigenvalues:", " ".join(f"{x:.6g}" for x in negs))
    for name, value in residuals.items():
        print(f"{name} = {value:.6g}")
    if exit_code == EXIT_NOCONV:
        print("warning: solver did not converge; partial output written", file=sys.stderr)
    print(f"wrote {args.out}")
    return exit_code


def _partial_state(partial, dims) -> DensityMatrix | None:
    """Best-effort state from a non-convergence payload, if one exists."""
    if isinstance(partial, DensityMatrix):
        return partial
    if isinstance(partial, tuple) and len(partial) == 3:  # (Y1, Y2, residual)
        Y2 = np.asarray(partial[1])
        trace = float(np.trace(Y2).real)
        if trace > 1e-8:
            mat = project_psd(Y2 / trace)
            return DensityMatrix(dims, mat / np.trace(mat).real)
    return None


def _cmd_verify(args) -> int:
    try:
        mat, dims, _ = load_matrix(args.infile)
    except MatrixFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = verify_matrix(
        mat, dims, check_subspace=args.subspace,
        tol_herm=args.tol_herm, tol_psd=args.tol_psd, tol_trace=args.tol_trace,
    )
    print(f"dims: {dims.m} x {dims.n} (total {dims.total})")
    print(f"hermitian: {report.is_hermitian} (defect {hermiticity_defect(mat):.3g})")
    print(f"psd: {report.is_psd}")
    print(f"trace: {report.trace:.6g}")
    print(f"partial transpose negatives: {report.negative_count} "
          f"(cap (m-1)(n-1) = {dims.npt_dim})")
    if report.negative_eigenvalues:
        print("negative eigenvalues:",
              " ".join(f"{x:.6g}" for x in report.negative_eigenvalues))
    if report.range_in_subspace is not None:
        print(f"range in NPT subspace: {report.range_in_subspace}")
    print("thresholds:", " ".join(f"{k}={v:g}" for k, v in report.thresholds.items()))
    if args.json_out:
        text = _fmt(report.to_dict()) + "\n"
        if args.json_out == "-":
            sys.stdout.write(text)
        else:
            with open(args.json_out, "w", encoding="ascii") as fh:
                fh.write(text)
    print("verdict:", "PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_witness(args) -> int:
    try:
        mat, dims, _ = load_matrix(args.infile)
    except MatrixFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.m is not None or args.n is not None:
        if (args.m, args.n) != (dims.m, dims.n):
            print(f"error: flags (--m {args.m} --n {args.n}) disagree with "
                  f"file dims ({dims.m}, {dims.n})", file=sys.stderr)
            return EXIT_USAGE
    basis = build_subspace(dims)
    try:
        rho = DensityMatrix(dims, mat)
        cert = locate_witness(rho, basis)
    except NotInSubspace as exc:
        print(f"not in subspace: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"not a valid state: {exc}", file=sys.stderr)
        return EXIT_FAIL
    ai, bi = cert.flat_indices(dims)
    print(f"alpha: |{cert.alpha[0]},{cert.alpha[1]}> (index {ai})")
    print(f"beta:  |{cert.beta[0]},{cert.beta[1]}> (index {bi})")
    print(f"anti-diagonal index: {cert.antidiag_index}")
    print("submatrix of the partial transpose:")
    for row in cert.submatrix:
        print("  " + "  ".join(f"{z.real:+.6g}{z.imag:+.6g}j" for z in row))
    print(f"determinant: {cert.determinant:.6g}")
    print(f"mixture sum: {cert.mixture_sum.real:+.6g}{cert.mixture_sum.imag:+.6g}j")
    return EXIT_OK


def _cmd_stress(args) -> int:
    if args.trials < 1:
        print("error: --trials must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    dims = BipartiteDims(args.m, args.n)
    if args.suite == "npt":
        if dims.npt_dim == 0:
            print("error: npt suite needs m, n >= 2", file=sys.stderr)
            return EXIT_USAGE
        result = run_npt_suite(dims, args.trials, args.seed)
    else:
        result = run_bound_suite(dims, args.trials, args.seed)
    ok = result.trials - len(result.failures)
    print(f"suite {result.suite} at ({dims.m},{dims.n}): "
          f"{ok}/{result.trials} passed (base seed {args.seed}, "
          f"generator {GENERATOR_NAME})")
    for trial_seed, msg in result.failures[:20]:
        print(f"  FAIL seed={trial_seed}: {msg}")
    return EXIT_OK if result.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    from pathlib import Path

    parser = argparse.ArgumentParser(
        prog="nptsub",
        description="NPT subspaces and extremal partial-transpose spectra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subspace", help="construct the NPT subspace basis")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.add_argument("--projector", action="store_true", help="also write the projector")
    p.set_defaults(func=_cmd_subspace)

    p = sub.add_parser("construct", help="construct an extremal state")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["direct", "dual-cone"], default="direct")
    p.add_argument("--tol", type=float, default=1e-4, help="objective tolerance")
    p.add_argument("--max-iter", type=int, default=200_000)
    p.add_argument("--out", type=Path, required=True, help="output matrix file")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="verify a state from a matrix file")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--subspace", action="store_true",
                   help="also check range containment in the NPT subspace")
    p.add_argument("--tol-herm", type=float, default=1e-12)
    p.add_argument("--tol-psd", type=float, default=1e-10)
    p.add_argument("--tol-trace", type=float, default=1e-10)
    p.add_argument("--json-out", default=None,
                   help="write the machine-readable report here ('-' for stdout)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("witness", help="locate a 2x2 witness for a state in S")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("stress", help="randomized property suites")
    p.add_argument("--suite", choices=["npt", "bound"], required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_stress)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
