"""Command-line front end: reproducible experiments with JSON/CSV reports.

Every command validates its parameters before computing, embeds the fully
resolved configuration and the library version in its report, and writes
deterministic output: rerunning the same configuration produces identical
bytes. Exit status is 0 when every checked contract holds, 1 when some
check fails, and 2 for configuration errors.

The environment variable RECLAB_THREADS caps the number of worker threads
used for the embarrassingly parallel sweeps (default 1); results are
assembled in input order, so the thread count never changes the report.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__, counterexample, eigen, recurrence, zeta_orbit
from .errors import AccuracyError, ConfigurationError, DomainError, TruncationError

SCHEMA_VERSION = 1


def _thread_cap() -> int:
    raw = os.environ.get("RECLAB_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"RECLAB_THREADS must be an integer, got {raw!r}") from exc
    return max(1, cap)


def _map_ordered(fn: Callable, items: Sequence) -> list:
    cap = _thread_cap()
    if cap == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))


def _parse_k_range(text: str) -> list[int]:
    """Either a single k, a comma list, or an inclusive range like 2..7."""
    text = text.strip()
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        if hi < lo:
            raise ConfigurationError(f"empty k range {text!r}")
        return list(range(lo, hi + 1))
    return [int(part) for part in text.split(",") if part.strip()]


def _parse_angles(text: str) -> list[recurrence.Angle]:
    angles: list[recurrence.Angle] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "/" in part:
            angles.append(Fraction(part))
        else:
            angles.append(float(part))
    if not angles:
        raise ConfigurationError("no angles given")
    return angles


def _report(command: str, config: dict, results: dict, passed: bool) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "reclab", "version": __version__},
        "command": command,
        "config": config,
        "passed": passed,
        "results": results,
    }


def _emit(report: dict, csv_rows: tuple[list[str], list[list]] | None,
          fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        if csv_rows is None:
            raise ConfigurationError("this command has no CSV form")
        header, rows = csv_rows
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    if output:
        try:
            with open(output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise ConfigurationError(f"cannot write {output!r}: {exc}") from exc
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def _cmd_counterexample(args: argparse.Namespace) -> int:
    k_max, l_max = args.k_max, args.l_max
    if not 2 <= k_max <= 8:
        raise ConfigurationError(f"--k-max must lie in 2..8, got {k_max}")
    if not 1 <= l_max <= k_max - 1:
        raise ConfigurationError(
            f"--l-max must lie in 1..k_max-1 = {k_max - 1}, got {l_max}"
        )
    instance = counterexample.make_instance(k_max)

    def one_ell(ell: int) -> dict:
        dist_sq = counterexample.non_recurrence_distance(instance, ell)
        return {"l": ell, "distance_sq": dist_sq, "certified": bool(dist_sq >= 0.25)}

    per_l = _map_ordered(one_ell, list(range(1, l_max + 1)))

    def one_scan(k: int) -> dict:
        scan = eigen.partial_sum_bound_check(k)
        return {"k": k, "max_norm": scan.max_norm, "bound": scan.bound,
                "pass": scan.passed}

    scans = _map_ordered(one_scan, list(range(2, k_max + 1)))

    series = []
    for k in range(2, min(k_max, 6) + 1):
        term = counterexample.eigen_series_term(k)
        err = counterexample.seqspace.array_norm(term - instance.y.block(k))
        tail = counterexample.series_tail_sup(k)
        series.append({
            "k": k,
            "block_error": err,
            "tail_sup": tail,
            "tail_bound": 6.0 / 2.0 ** k,
            "pass": bool(err <= 1e-10 and tail <= 6.0 / 2.0 ** k),
        })

    passed = (all(row["certified"] for row in per_l)
              and all(row["pass"] for row in scans)
              and all(row["pass"] for row in series))
    results = {"k_max": k_max, "per_l": per_l, "lemma3": scans,
               "series_terms": series}
    config = {"k_max": k_max, "l_max": l_max}
    header = ["l", "distance_sq", "certified"]
    rows = [[row["l"], repr(row["distance_sq"]), row["certified"]] for row in per_l]
    _emit(_report("counterexample", config, results, passed),
          (header, rows), args.format, args.output)
    return 0 if passed else 1


def _cmd_eigen_verify(args: argparse.Namespace) -> int:
    if not 2 <= args.k_max <= 6:
        raise ConfigurationError(f"--k-max must lie in 2..6, got {args.k_max}")
    if args.samples < 1:
        raise ConfigurationError(f"--samples must be >= 1, got {args.samples}")
    n_list = [int(p) for p in args.n_list.split(",") if p.strip()]
    for n in n_list:
        if not 2 <= n <= 720:
            raise ConfigurationError(f"--n-list entries must lie in 2..720, got {n}")

    rng = random.Random(args.seed)

    def residuals_for(k: int) -> dict:
        n = math.factorial(k)
        count = min(args.samples, n)
        indices = sorted(rng.sample(range(n), count))
        worst = max(eigen.eigen_residual(k, eigen.RootOfUnity(n, m))
                    for m in indices)
        return {"k": k, "sampled": count, "max_residual": worst,
                "pass": bool(worst <= 1e-12)}

    # sampling consumes the shared generator sequentially: keep it ordered
    lemma1 = [residuals_for(k) for k in range(2, args.k_max + 1)]

    def reconstruction_for(n: int) -> dict:
        worst = 0.0
        for j in range(1, n + 1):
            out = eigen.basis_from_eigen(n, j)
            out[j - 1] -= 1.0
            worst = max(worst, counterexample.seqspace.array_norm(out))
        return {"n": n, "max_error": worst, "pass": bool(worst <= 1e-10)}

    lemma2 = _map_ordered(reconstruction_for, n_list)

    bijection = []
    for k in range(2, args.k_max + 1):
        n = math.factorial(k)
        seen = {eigen.ordered_root(k, a).m for a in range(n)}
        bijection.append({"k": k, "pass": bool(seen == set(range(n)))})

    ortho = []
    for n in (2, 6, 24):
        worst = max(eigen.dft_orthogonality_residual(n, p) for p in range(n + 1))
        ortho.append({"n": n, "max_residual": worst, "pass": bool(worst <= 1e-10)})

    passed = (all(r["pass"] for r in lemma1) and all(r["pass"] for r in lemma2)
              and all(r["pass"] for r in bijection) and all(r["pass"] for r in ortho))
    results = {"eigen_relation": lemma1, "basis_reconstruction": lemma2,
               "ordering_bijection": bijection, "root_sum_orthogonality": ortho}
    config = {"k_max": args.k_max, "samples": args.samples, "seed": args.seed,
              "n_list": n_list}
    header = ["section", "index", "value", "pass"]
    rows = ([["eigen_relation", r["k"], repr(r["max_residual"]), r["pass"]]
             for r in lemma1]
            + [["basis_reconstruction", r["n"], repr(r["max_error"]), r["pass"]]
               for r in lemma2])
    _emit(_report("eigen-verify", config, results, passed),
          (header, rows), args.format, args.output)
    return 0 if passed else 1


def _cmd_lemma3(args: argparse.Namespace) -> int:
    ks = _parse_k_range(args.k)
    for k in ks:
        if not 2 <= k <= 8:
            raise ConfigurationError(f"k must lie in 2..8, got {k}")

    def one(k: int) -> dict:
        scan = eigen.partial_sum_bound_check(k)
        return {"k": k, "max_norm": scan.max_norm, "argmax": scan.argmax,
                "bound": scan.bound, "pass": scan.passed}

    rows = _map_ordered(one, ks)
    passed = all(r["pass"] for r in rows)
    config = {"k": ks}
    header = ["k", "max_norm", "bound", "pass"]
    csv_rows = [[r["k"], repr(r["max_norm"]), repr(r["bound"]), r["pass"]]
                for r in rows]
    _emit(_report("lemma3", config, {"scans": rows}, passed),
          (header, csv_rows), args.format, args.output)
    return 0 if passed else 1


def _cmd_theorem_f(args: argparse.Namespace) -> int:
    angles = _parse_angles(args.angles)
    if args.weights:
        weights = [float(p) for p in args.weights.split(",") if p.strip()]
    else:
        weights = [1.0] * len(angles)
    if args.epsilon <= 0:
        raise ConfigurationError(f"--epsilon must be positive, got {args.epsilon}")
    if args.horizon < 1:
        raise ConfigurationError(f"--horizon must be >= 1, got {args.horizon}")
    if args.drift_check_n < 0:
        raise ConfigurationError("--drift-check-n must be >= 0")
    esum = recurrence.FiniteEigenSum(angles=tuple(angles), weights=tuple(weights))

    report, distances = recurrence.scan_orbit(
        lambda n: recurrence.eigensum_distance(esum, n),
        args.epsilon, args.horizon)
    gap = recurrence.uniform_gap_scan(esum, args.epsilon, args.horizon)
    gap_doubled = recurrence.uniform_gap_scan(esum, args.epsilon, 2 * args.horizon)
    drift = recurrence.torus_conjugacy_residual(esum, args.drift_check_n)
    cls = recurrence.classify(report)

    passed = bool(gap < args.horizon and gap == gap_doubled and drift <= 1e-9)
    results = {
        "uniform_gap": gap,
        "uniform_gap_doubled_horizon": gap_doubled,
        "gap_stable": bool(gap == gap_doubled),
        "conjugacy_residual": {"n": args.drift_check_n, "value": drift,
                               "pass": bool(drift <= 1e-9)},
        "classification": {"label": cls.label,
                           "strong_density": cls.strong_density,
                           "uniform_gap": cls.uniform_gap},
        "report": report.to_dict(),
    }
    config = {"angles": [str(a) for a in angles], "weights": weights,
              "epsilon": args.epsilon, "horizon": args.horizon,
              "drift_check_n": args.drift_check_n}
    header = ["n", "distance"]
    rows = [[n, repr(distances[n - 1])] for n in report.return_times]
    _emit(_report("theorem-f", config, results, passed),
          (header, rows), args.format, args.output)
    return 0 if passed else 1


def _cmd_zeta_orbit(args: argparse.Namespace) -> int:
    if args.grid < 1:
        raise ConfigurationError(f"--grid must be >= 1, got {args.grid}")
    if not 1 <= args.horizon <= 500:
        raise ConfigurationError(
            f"--horizon must lie in 1..500 (evaluation cost grows with the "
            f"shift), got {args.horizon}"
        )
    if args.tol < 1e-12:
        raise ConfigurationError(f"--tol must be >= 1e-12, got {args.tol}")
    grid = zeta_orbit.make_grid(args.re_min, args.re_max, args.im_min,
                                args.im_max, args.grid, args.grid)
    primed = zeta_orbit.evaluate_on_grid(grid, args.tol)

    identity_worst = max(zeta_orbit.identity_residual(p, min(args.tol, 1e-10))
                         for p in grid.points)
    factor_rows = [{"n": n, "residual": zeta_orbit.factor_invariance_residual(
        grid.points[0], n)} for n in (1, 10 ** 3, 10 ** 6)]
    factor_worst = max(row["residual"] for row in factor_rows)

    epsilon = args.epsilon
    if epsilon is None:
        epsilon = 2.0 * zeta_orbit.orbit_sup_distance(primed, 1, args.tol)
    if epsilon <= 0:
        raise ConfigurationError(f"--epsilon must be positive, got {epsilon}")

    scan = zeta_orbit.recurrence_scan(primed, epsilon, args.horizon, args.tol)
    cls = recurrence.classify(scan.report)

    passed = bool(identity_worst <= 1e-8 and factor_worst <= 1e-12)
    results = {
        "identity_check": {"max_residual": identity_worst,
                           "bound": 1e-8, "pass": bool(identity_worst <= 1e-8)},
        "factor_invariance": {"rows": factor_rows, "bound": 1e-12,
                              "pass": bool(factor_worst <= 1e-12)},
        "scan": {
            "exploratory": True,
            "epsilon": epsilon,
            "report": scan.report.to_dict(),
            "classification": {"label": cls.label,
                               "strong_density": cls.strong_density,
                               "uniform_gap": cls.uniform_gap},
        },
    }
    config = {"re_min": args.re_min, "re_max": args.re_max,
              "im_min": args.im_min, "im_max": args.im_max,
              "grid": args.grid, "epsilon": epsilon,
              "horizon": args.horizon, "tol": args.tol}
    header = ["n", "sup_distance", "in_ball"]
    rows = [[n, repr(d), d < epsilon]
            for n, d in enumerate(scan.distances, start=1)]
    _emit(_report("zeta-orbit", config, results, passed),
          (header, rows), args.format, args.output)
    return 0 if passed else 1


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reclab",
        description="Recurrence laboratory: block-shift counterexample, "
                    "eigenstructure checks, uniform-recurrence demos, and "
                    "alternating-zeta orbit scans.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", default=None,
                       help="write the report to this path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json",
                       help="report format (default: json)")

    p = sub.add_parser("counterexample",
                       help="certify that the eigenvector-series vector "
                            "never returns within distance 1/2")
    p.add_argument("--k-max", type=int, default=7,
                   help="blocks to retain, 2..8 (default: 7)")
    p.add_argument("--l-max", type=int, default=6,
                   help="largest certified power, 1..k_max-1 (default: 6)")
    common(p)
    p.set_defaults(func=_cmd_counterexample)

    p = sub.add_parser("eigen-verify",
                       help="check the eigen relation, the basis "
                            "reconstruction, and the root ordering")
    p.add_argument("--k-max", type=int, default=6,
                   help="largest block index for the eigen relation (default: 6)")
    p.add_argument("--samples", type=int, default=20,
                   help="roots sampled per block (default: 20)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the root sample, recorded in the report")
    p.add_argument("--n-list", default="2,6,24,120",
                   help="orders for the reconstruction check (default: 2,6,24,120)")
    common(p)
    p.set_defaults(func=_cmd_eigen_verify)

    p = sub.add_parser("lemma3",
                       help="exhaustive partial-sum bound scan: "
                            "max_A ||Shat_A|| against 12*k!/2^k")
    p.add_argument("--k", default="2..7",
                   help="block indices, e.g. 5 or 2..7 or 2,3,4 (default: 2..7)")
    common(p)
    p.set_defaults(func=_cmd_lemma3)

    p = sub.add_parser("theorem-f",
                       help="uniform recurrence of a finite sum of "
                            "unimodular-eigenvalue eigenvectors")
    p.add_argument("--angles", default="1/5",
                   help="comma list; fractions are exact, decimals are "
                        "binary doubles (default: 1/5)")
    p.add_argument("--weights", default=None,
                   help="comma list of component norms (default: all 1)")
    p.add_argument("--epsilon", type=float, default=0.5,
                   help="return ball radius (default: 0.5)")
    p.add_argument("--horizon", type=int, default=1000,
                   help="scan horizon N (default: 1000)")
    p.add_argument("--drift-check-n", type=int, default=10000,
                   help="power for the torus-conjugacy drift check "
                        "(default: 10000)")
    common(p)
    p.set_defaults(func=_cmd_theorem_f)

    p = sub.add_parser("zeta-orbit",
                       help="alternating-zeta orbit under the vertical "
                            "translation: identity checks plus an "
                            "exploratory return-time scan")
    p.add_argument("--re-min", type=float, default=0.6)
    p.add_argument("--re-max", type=float, default=0.9)
    p.add_argument("--im-min", type=float, default=-1.0)
    p.add_argument("--im-max", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=11,
                   help="points per axis (default: 11)")
    p.add_argument("--epsilon", type=float, default=None,
                   help="ball radius in sup-distance; default is twice "
                        "the n=1 distance")
    p.add_argument("--horizon", type=int, default=50,
                   help="number of shifts to scan, at most 500 (default: 50)")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="per-evaluation accuracy target (default: 1e-9)")
    common(p)
    p.set_defaults(func=_cmd_zeta_orbit)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, DomainError, TruncationError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except AccuracyError as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
