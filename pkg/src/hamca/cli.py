"""Command-line front end.

Subcommands:
    run        evolve a model and write a trajectory file
    check      verify conservation and the update rule on a trajectory file
    cycle      search for exact orbit periods
    continuum  float-layer reports (closedform / sinh / q1 / born)

Exit codes (also listed in the README):
    0  success
    1  a mode-specific tolerance was not met
    2  command-line usage error (argparse)
    3  validation or parse failure (models, vectors, files)
    4  conservation or recursion violation found by `check`
    5  cycle budget exhausted before recurrence
    6  spectral singularity (strict band mode)
    7  ontological regime: link total is zero, no continuum comparison
    8  floating-point instability (overflow to non-finite values)
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import continuum as ct
from .conservation import iter_pair_stats, link_counts, q1, q_G, verify_trajectory
from .dynamics import Trajectory, evolve, step_forward
from .errors import (
    DegenerateStateError,
    DimensionMismatch,
    InstabilityError,
    ModelValidationError,
    NonCommutingError,
    OntologicalRegimeError,
    SignalRangeError,
    SingularSpectrumError,
    SpectralFailure,
)
from .gaussian import GaussInt, GaussMatrix, GaussVector, is_hermitian
from .models import HamiltonianSpec, basis_state, build_hamiltonian, resolve_builtin
from .ontology import default_scan_budget, find_period, scan_ontological_pairs
from .serialization import (
    TrajectoryWriter,
    format_float,
    load_gauss_vector,
    load_model,
    parse_gauss_vector,
    read_trajectory_stream,
    write_conservation_csv,
    write_cycle_csv,
    write_float_csv,
)

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_VIOLATION = 4
EXIT_BUDGET = 5
EXIT_SINGULAR = 6
EXIT_ONTOLOGICAL = 7
EXIT_INSTABILITY = 8


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message
        super().__init__(message)


def _fail(message: str, code: int = EXIT_VALIDATION) -> "_CliError":
    return _CliError(code, message)


def _load_model_arg(label_or_path: str) -> HamiltonianSpec:
    builtin = resolve_builtin(label_or_path)
    if builtin is not None:
        return builtin
    path = Path(label_or_path)
    if not path.exists():
        raise _fail(f"model: no built-in named {label_or_path!r} and no such file")
    try:
        return load_model(path)
    except (ModelValidationError, ValueError) as exc:
        raise _fail(f"model: {exc}")


def _load_vector_arg(name: str, text: str, dim: int) -> GaussVector:
    try:
        if text.startswith("@"):
            vec = load_gauss_vector(text[1:])
        else:
            vec = parse_gauss_vector(text)
    except (ValueError, OSError) as exc:
        raise _fail(f"{name}: {exc}")
    if len(vec) != dim:
        raise _fail(f"{name}: has {len(vec)} components, model needs {dim}")
    return vec


def _g_matrix_arg(spec: HamiltonianSpec, text: str) -> GaussMatrix:
    if text == "identity":
        return GaussMatrix.identity(spec.dim)
    if text == "hamiltonian":
        return build_hamiltonian(spec)
    path = Path(text)
    if not path.exists():
        raise _fail(f"G: expected 'identity', 'hamiltonian' or a model file, got {text!r}")
    try:
        gspec = load_model(path)
    except (ModelValidationError, ValueError) as exc:
        raise _fail(f"G: {exc}")
    if gspec.dim != spec.dim:
        raise _fail(f"G: dimension {gspec.dim} does not match model dimension {spec.dim}")
    return build_hamiltonian(gspec)


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------


def _cmd_run(args: argparse.Namespace) -> int:
    spec = _load_model_arg(args.model)
    psi0 = _load_vector_arg("psi0", args.psi0, spec.dim)
    psi1 = _load_vector_arg("psi1", args.psi1, spec.dim)
    if args.steps < 0:
        raise _fail(f"steps must be >= 0, got {args.steps}")
    if args.l <= 0:
        raise _fail(f"l must be positive, got {args.l}")
    H = build_hamiltonian(spec)

    writer = None
    out_fh = None
    if args.out:
        out_fh = open(args.out, "w", newline="")
        writer = TrajectoryWriter(out_fh, spec, args.l)

    probe_q = None
    probe_links = None
    first_bad = None
    try:
        prev: GaussVector | None = None
        curr = psi0
        n = 0
        while True:
            if writer is not None:
                writer.write_state(curr)
            if prev is not None and args.probe:
                qv = q1(prev, curr)
                lr = link_counts(prev, curr)
                if probe_q is None:
                    probe_q, probe_links = qv, lr.total
                elif (qv, lr.total) != (probe_q, probe_links) and first_bad is None:
                    first_bad = n - 1
            if n == args.steps + 1:
                break
            prev, curr = curr, (psi1 if n == 0 else step_forward(prev, curr, H))
            n += 1
    finally:
        if out_fh is not None:
            out_fh.close()
    if args.probe:
        print(f"probe: q1 = {probe_q}, L = {probe_links}, pairs checked = {args.steps + 1}")
        if first_bad is not None:
            print(f"probe: conservation drift first seen at pair {first_bad}")
            return EXIT_VIOLATION
    if writer is not None:
        print(f"wrote {writer.states_written} states to {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def _cmd_check(args: argparse.Namespace) -> int:
    try:
        model, l, stream = read_trajectory_stream(args.trajectory)
    except (ValueError, OSError, ModelValidationError) as exc:
        raise _fail(f"trajectory: {exc}")
    G = _g_matrix_arg(model, args.g)
    H = build_hamiltonian(model)
    from .conservation import PairStats, commutator

    comm = commutator(G, H)
    if not comm.is_zero():
        raise _fail(f"G does not commute with the model Hamiltonian; commutator = {comm}")

    report_rows = []
    q_value: GaussInt | None = None
    window: list[GaussVector] = []
    count = 0
    first_violation = None
    reason = ""
    for n, psi in stream:
        if n != count:
            raise _fail(f"trajectory: record {n} out of order")
        window.append(psi)
        if len(window) >= 2:
            a, b = window[-2], window[-1]
            qv = q_G(a, b, G)
            lr = link_counts(a, b)
            report_rows.append(PairStats(n=n - 1, q=qv, links=lr))
            if q_value is None:
                q_value = qv
            elif qv != q_value and first_violation is None:
                first_violation = n - 1
                reason = f"q_G changed from {q_value} to {qv}"
            if 2 * lr.total != q1(a, b) and first_violation is None:
                first_violation = n - 1
                reason = "2L != q1"
        if len(window) == 3:
            if step_forward(window[0], window[1], H) != window[2] and first_violation is None:
                first_violation = n
                reason = "update rule violated"
            window.pop(0)
        count += 1
    if count < 2:
        raise _fail("trajectory: fewer than two states")
    if args.report:
        with open(args.report, "w", newline="") as fh:
            write_conservation_csv(fh, model.dim, report_rows)
    if first_violation is not None:
        print(f"FAIL at step {first_violation}: {reason}")
        return EXIT_VIOLATION
    print(f"OK: q_G = {q_value} constant over {count - 1} pairs (l = {format_float(l)})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# cycle
# ---------------------------------------------------------------------------


def _cmd_cycle(args: argparse.Namespace) -> int:
    spec = _load_model_arg(args.model)
    budget = args.budget if args.budget is not None else default_scan_budget(spec.dim)
    if args.pair == "all":
        reports = scan_ontological_pairs(spec, budget)
    elif args.pair.startswith("k="):
        try:
            k = int(args.pair[2:])
        except ValueError:
            raise _fail(f"pair: cannot parse {args.pair!r}")
        if not 1 <= k <= spec.dim - 1:
            raise _fail(f"pair: k must be in 1..{spec.dim - 1}")
        reports = [
            find_period(
                basis_state(spec.dim, k),
                basis_state(spec.dim, k + 1),
                spec,
                budget,
                pair_index=k,
                expected_period=4 * spec.dim,
            )
        ]
    else:
        if not args.psi1:
            raise _fail("pair: use 'all', 'k=<index>', or pass --psi1 with an explicit pair")
        psi0 = _load_vector_arg("pair/psi0", args.pair, spec.dim)
        psi1 = _load_vector_arg("psi1", args.psi1, spec.dim)
        reports = [find_period(psi0, psi1, spec, budget)]
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_cycle_csv(fh, reports)
    status = EXIT_OK
    for rep in reports:
        tag = f"pair {rep.pair_index}" if rep.pair_index is not None else "pair"
        if rep.found:
            note = ""
            if rep.matches_expected is False:
                note = f" (differs from expected {rep.expected_period})"
            print(
                f"{tag}: period {rep.period}{note}, ontological={rep.ontological}, "
                f"L={rep.link_number}"
            )
        else:
            print(f"{tag}: no recurrence within {rep.max_steps} steps")
            status = EXIT_BUDGET
    return status


# ---------------------------------------------------------------------------
# continuum
# ---------------------------------------------------------------------------


def _cmd_continuum(args: argparse.Namespace) -> int:
    spec = _load_model_arg(args.model)
    H = build_hamiltonian(spec)
    mode = args.mode
    if mode == "closedform":
        return _continuum_closedform(args, spec, H)
    if mode == "sinh":
        return _continuum_sinh(args, spec, H)
    if mode == "q1":
        return _continuum_q1(args, spec, H)
    if mode == "born":
        return _continuum_born(args, spec, H)
    raise _fail(f"unknown continuum mode {mode!r}", EXIT_USAGE)


def _continuum_closedform(args, spec, H) -> int:
    rng = np.random.default_rng(args.seed)
    solver = ct.ClosedFormSolver(H, degenerate="error" if args.strict_band else "confluent")
    rows = []
    worst = 0.0
    for pair in range(args.pairs):
        psi0 = rng.normal(size=spec.dim) + 1j * rng.normal(size=spec.dim)
        psi1 = rng.normal(size=spec.dim) + 1j * rng.normal(size=spec.dim)
        states = ct.evolve_float(psi0, psi1, H, args.nmax)
        scale = max(float(np.abs(states).max()), 1.0)
        dev = 0.0
        for n in range(args.nmax + 2):
            d = float(np.max(np.abs(solver.state_at(psi0, psi1, n) - states[n]))) / scale
            dev = max(dev, d)
        rows.append((pair, dev))
        worst = max(worst, dev)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_float_csv(fh, ["pair", "max_rel_dev"], rows)
    print(f"closedform: worst relative deviation {format_float(worst)} over {args.pairs} pairs")
    return EXIT_OK if worst <= args.tol else EXIT_TOLERANCE


def _continuum_sinh(args, spec, H) -> int:
    windows = [int(w) for w in args.windows.split(",")]
    rng = np.random.default_rng(args.seed)
    psi0 = rng.normal(size=spec.dim) + 1j * rng.normal(size=spec.dim)
    try:
        psi1 = ct.smooth_partner(H, psi0)
    except SingularSpectrumError:
        psi1 = psi0  # band-edge model: fall back to the repeated-state start
    states = ct.evolve_float(psi0, psi1, H, args.steps)
    rows = []
    means = []
    for W in windows:
        sig = ct.BandlimitedSignal(states, l=args.l, window=W)
        lo = (W + 2) * args.l
        hi = (len(states) - 3 - W) * args.l
        if hi <= lo:
            raise _fail(f"steps={args.steps} too short for window {W}")
        ts = np.linspace(lo, hi, args.points) + 0.37 * args.l
        res = [ct.sinh_residual(sig, H, float(t)) for t in ts]
        mean = float(np.mean(res))
        rows.append((W, mean, float(np.max(res))))
        means.append(mean)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_float_csv(fh, ["window", "mean_residual", "max_residual"], rows)
    decreasing = all(a > b for a, b in zip(means, means[1:]))
    for W, mean, mx in rows:
        print(f"sinh: W={W} mean residual {format_float(mean)} max {format_float(mx)}")
    return EXIT_OK if decreasing else EXIT_TOLERANCE


def _continuum_q1(args, spec, H) -> int:
    rng = np.random.default_rng(args.seed)
    psi0 = rng.normal(size=spec.dim) + 1j * rng.normal(size=spec.dim)
    try:
        psi1 = ct.smooth_partner(H, psi0)
    except SingularSpectrumError:
        psi1 = psi0
    states = ct.evolve_float(psi0, psi1, H, args.steps)
    sig = ct.BandlimitedSignal(states, l=args.l, window=args.window)
    lo = (args.window + 2) * args.l
    hi = (len(states) - 3 - args.window) * args.l
    ts = [float(t) for t in np.linspace(lo, hi, args.points)]
    results, spread = ct.q1_constancy(sig, ts, args.convention)
    rows = [(t, r.value, r.expansion, r.remainder) for t, r in zip(ts, results)]
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_float_csv(fh, ["t", "value", "expansion", "remainder"], rows)
    scale = max(abs(r.value) for r in results) + 1e-30
    print(f"q1: value {format_float(results[0].value)} spread {format_float(spread)}")
    return EXIT_OK if spread <= args.tol * scale else EXIT_TOLERANCE


def _continuum_born(args, spec, H) -> int:
    ls = [float(v) for v in args.l_values.split(",")]
    if args.psi:
        psi0 = np.array([complex(p) for p in args.psi.split(",")])
    else:
        rng = np.random.default_rng(args.seed)
        psi0 = rng.normal(size=spec.dim) + 1j * rng.normal(size=spec.dim)
    psi1 = None
    if args.psi1:
        psi1 = np.array([complex(p) for p in args.psi1.split(",")])
    report = ct.born_convergence(H, psi0, ls, horizon=args.horizon, psi1=psi1)
    rows = [(e.l, e.steps, e.link_total, e.max_error) for e in report.entries]
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_float_csv(fh, ["l", "steps", "link_total", "max_error"], rows)
    for e in report.entries:
        print(f"born: l={format_float(e.l)} max|w-p|={format_float(e.max_error)}")
    errs = report.errors
    decreasing = all(a > b for a, b in zip(errs, errs[1:]))
    return EXIT_OK if decreasing else EXIT_TOLERANCE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hamca", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evolve a model and write a trajectory file")
    run.add_argument("--model", required=True, help="built-in label (H2, H3, H4, Hm:<m>) or model file")
    run.add_argument("--psi0", required=True, help="initial state: literal '1, -i, 0' or @file.json")
    run.add_argument("--psi1", required=True, help="second initial state, same syntax")
    run.add_argument("--steps", type=int, required=True, help="number of update steps")
    run.add_argument("--l", type=float, default=1.0, help="discreteness scale (metadata)")
    run.add_argument("--out", help="trajectory output path (JSON Lines)")
    run.add_argument("--probe", action="store_true", help="online q1/L conservation probe (streaming)")
    run.add_argument("--seed", type=int, default=0, help="seed for randomized helpers")
    run.set_defaults(func=_cmd_run)

    chk = sub.add_parser("check", help="verify conservation and the update rule on a trajectory file")
    chk.add_argument("trajectory", help="trajectory file written by 'run'")
    chk.add_argument("--g", default="identity", help="'identity', 'hamiltonian', or a model file for G")
    chk.add_argument("--report", help="per-step CSV output path")
    chk.set_defaults(func=_cmd_check)

    cyc = sub.add_parser("cycle", help="search for exact orbit periods")
    cyc.add_argument("--model", required=True)
    cyc.add_argument("--pair", default="all", help="'all', 'k=<index>', or a psi0 literal (with --psi1)")
    cyc.add_argument("--psi1", help="second state literal when --pair is a psi0 literal")
    cyc.add_argument("--budget", type=int, help="max steps to search (default 8*dim + 8)")
    cyc.add_argument("--out", help="CSV output path")
    cyc.set_defaults(func=_cmd_cycle)

    con = sub.add_parser("continuum", help="float-layer reports")
    con.add_argument("mode", choices=["closedform", "sinh", "q1", "born"])
    con.add_argument("--model", required=True)
    con.add_argument("--out", help="CSV output path")
    con.add_argument("--seed", type=int, default=0)
    con.add_argument("--pairs", type=int, default=100, help="closedform: number of random pairs")
    con.add_argument("--nmax", type=int, default=100, help="closedform: steps per pair")
    con.add_argument("--tol", type=float, default=1e-8, help="closedform/q1 tolerance")
    con.add_argument("--strict-band", action="store_true", help="reject eigenvalues near the +/-2 band edge")
    con.add_argument("--steps", type=int, default=400, help="sinh/q1: trajectory length")
    con.add_argument("--l", type=float, default=1.0, help="sinh/q1: sample spacing")
    con.add_argument("--windows", default="16,32,64", help="sinh: comma-separated window sizes")
    con.add_argument("--window", type=int, default=32, help="q1: window size")
    con.add_argument("--points", type=int, default=20, help="sinh/q1: evaluation points")
    con.add_argument("--convention", choices=["pairwise", "cosh"], default="pairwise")
    con.add_argument("--l-values", default="0.2,0.1,0.05", help="born: descending list of scales")
    con.add_argument("--horizon", type=float, default=3.0, help="born: physical time horizon")
    con.add_argument("--psi", help="born: complex components '0.8,0.6' (default: random)")
    con.add_argument("--psi1", dest="psi1", help="born: explicit second state (overrides smooth branch)")
    con.set_defaults(func=_cmd_continuum)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.code
    except SingularSpectrumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except OntologicalRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ONTOLOGICAL
    except InstabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INSTABILITY
    except (
        ModelValidationError,
        DimensionMismatch,
        DegenerateStateError,
        NonCommutingError,
        SignalRangeError,
        SpectralFailure,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
