"""Deletion benchmark: build, delete in random order, count predicates.

Run as ``deltri-bench`` or ``python -m deltri.bench``.  Exit status is 0 on
success, 1 on a usage error and 2 when ``--verify`` finds a deletion whose
result is not Delaunay.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .deletion import METHODS, delete
from .predicates import Counters, DegenerateError, Point, orient_sign
from .triangulation import INFINITE, Triangulation
from .verify import (InstanceKind, InstanceSpec, OracleError, _as_array, _incircle_signs,
                     delaunay_oracle, generate)

DEFAULT_N = 100_000
VERIFY_LIMIT = 5000


class VerificationError(AssertionError):
    def __init__(self, message: str, seed: int, step: int, point: Point):
        super().__init__(f"{message} (seed={seed}, deletion #{step}, point={tuple(point)})")
        self.seed = seed
        self.step = step
        self.point = point


@dataclass
class RunReport:
    method: str
    n: int
    seed: int
    build_time: float | None
    delete_time: float | None
    totals: dict[str, int]
    degree_histogram: dict[int, int]
    mean_degree: float
    # degree -> (mean power computations, mean incircle tests) per deletion;
    # power computations count full evaluations and updates alike.
    per_degree_counts: dict[int, tuple[float, float]]
    instance: str = "square"
    d_limit: int | None = None
    power_updates: bool = True
    repetitions: int = 1
    deletions: int = 0
    verified: bool = False
    mean_degree_exact: Fraction = field(default=Fraction(0), repr=False)

    def to_json(self) -> dict:
        d = asdict(self)
        del d["mean_degree_exact"]
        d["degree_histogram"] = {str(k): v for k, v in self.degree_histogram.items()}
        d["per_degree_counts"] = {str(k): list(v) for k, v in self.per_degree_counts.items()}
        return d


def spatial_order(points: Sequence[Point]) -> list[Point]:
    """Points sorted along a Hilbert curve, so each walk starts close by."""
    arr = _as_array(points)
    x, y = arr[:, 0].copy(), arr[:, 1].copy()
    d = np.zeros(len(arr), dtype=np.int64)
    full = (1 << 24) - 1
    s = 1 << 23
    while s:
        rx = (x & s) > 0
        ry = (y & s) > 0
        d += s * s * ((3 * rx.astype(np.int64)) ^ ry.astype(np.int64))
        flip = ~ry & rx
        x = np.where(flip, full - x, x)
        y = np.where(flip, full - y, y)
        swap = ~ry
        x, y = np.where(swap, y, x), np.where(swap, x, y)
        s >>= 1
    return [points[i] for i in np.argsort(d, kind="stable")]


def build(points: Sequence[Point]) -> Triangulation:
    return Triangulation(spatial_order(points))


def _finite_degree(t: Triangulation, v: int) -> int:
    return sum(1 for q in t.neighbors(v) if q != INFINITE)


def _certify_star(t: Triangulation, ring: list[int], arr: np.ndarray) -> bool:
    """Empty-circle and hull checks on every triangle touching ``ring``."""
    pts = t.points
    seen = set()
    for q in ring:
        if q == INFINITE:
            continue
        for tri, _ in t.incident_triangles(q):
            if tri in seen:
                continue
            seen.add(tri)
            verts = t.tv[tri]
            if INFINITE in verts:
                i = verts.index(INFINITE)
                u, w = pts[verts[(i + 1) % 3]], pts[verts[(i + 2) % 3]]
                cross = (w[0] - u[0]) * (arr[:, 1] - u[1]) - (w[1] - u[1]) * (arr[:, 0] - u[0])
                if (cross > 0).any():
                    return False
                continue
            a, b, c = (pts[x] for x in verts)
            if orient_sign(a, b, c) <= 0 or (_incircle_signs(a, b, c, arr) > 0).any():
                return False
    return True


def _one_run(points: list[Point], method: str, d_limit: int, seed: int,
             power_updates: bool, verify: bool, floor: int):
    t0 = time.perf_counter()
    t = build(points)
    build_time = time.perf_counter() - t0

    order = list(points)
    random.Random(seed).shuffle(order)
    alive = np.ones(len(order), dtype=bool)
    arr = _as_array(order)
    pos = {p: i for i, p in enumerate(order)}

    cnt = t.counters
    cnt.reset()
    hist: dict[int, int] = defaultdict(int)
    power_sum: dict[int, int] = defaultdict(int)
    incircle_sum: dict[int, int] = defaultdict(int)
    delete_time = 0.0
    steps = 0
    skipped: list[Point] = []
    for p in order:
        if t.n_vertices <= floor:
            break
        v = t.index[p]
        k = _finite_degree(t, v)
        ring = t.neighbors(v) if verify else None
        before_power = cnt.power_full + cnt.power_updates
        before_incircle = cnt.incircle_tests
        start = time.perf_counter()
        try:
            delete(t, v, method, d_limit=d_limit, power_updates=power_updates)
        except DegenerateError:
            # the rest would be collinear; try the next vertex instead
            skipped.append(p)
            continue
        delete_time += time.perf_counter() - start
        hist[k] += 1
        power_sum[k] += cnt.power_full + cnt.power_updates - before_power
        incircle_sum[k] += cnt.incircle_tests - before_incircle
        alive[pos[p]] = False
        if verify and not _certify_star(t, ring, arr[alive]):
            raise VerificationError("deletion result is not Delaunay", seed, steps, p)
        steps += 1
    if verify:
        remaining = [order[i] for i in np.flatnonzero(alive)]
        if not (t.check_links() and t.euler_ok()):
            raise VerificationError("triangulation structure broken", seed, steps, order[-1])
        if t.dimension == 2:
            oracle = delaunay_oracle(remaining)
            if not oracle.cocircular and oracle.triangles != t.triangle_set():
                raise VerificationError("final triangulation differs from oracle",
                                        seed, steps, order[-1])
    return build_time, delete_time, cnt.snapshot(), hist, power_sum, incircle_sum


def run(spec: InstanceSpec, method: str = "ear3", d_limit: int = 9, repetitions: int = 1,
        power_updates: bool = True, verify: bool = False, timing: bool = True,
        floor: int = 3) -> RunReport:
    """Delete every vertex of the instance in random order down to ``floor``.

    Repetition ``i`` uses seed ``spec.seed + i`` for both the instance (when
    random) and the deletion order; the report sums over repetitions.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if d_limit < 4:
        raise ValueError("d_limit must be at least 4")
    if repetitions < 1:
        raise ValueError("need at least one repetition")
    if floor < 3:
        raise ValueError("floor must be at least 3")
    totals = Counters()
    hist: dict[int, int] = defaultdict(int)
    power_sum: dict[int, int] = defaultdict(int)
    incircle_sum: dict[int, int] = defaultdict(int)
    build_time = delete_time = 0.0
    n = 0
    for rep in range(repetitions):
        seed = spec.seed + rep
        points = generate(InstanceSpec(spec.kind, spec.n, seed, spec.alpha, spec.path))
        n = len(points)
        if verify and n > VERIFY_LIMIT:
            raise ValueError(f"--verify supports at most {VERIFY_LIMIT} points")
        bt, dt, snap, h, ps, ic = _one_run(points, method, d_limit, seed,
                                          power_updates, verify, floor)
        build_time += bt
        delete_time += dt
        totals.merge(Counters(**snap))
        for k in h:
            hist[k] += h[k]
            power_sum[k] += ps[k]
            incircle_sum[k] += ic[k]
    deletions = sum(hist.values())
    mean = Fraction(sum(k * c for k, c in hist.items()), deletions) if deletions else Fraction(0)
    return RunReport(
        method=method, n=n, seed=spec.seed,
        build_time=build_time if timing else None,
        delete_time=delete_time if timing else None,
        totals=totals.snapshot(),
        degree_histogram=dict(sorted(hist.items())),
        mean_degree=round(float(mean), 6),
        per_degree_counts={k: (round(power_sum[k] / hist[k], 6),
                               round(incircle_sum[k] / hist[k], 6)) for k in sorted(hist)},
        instance=spec.kind.value, d_limit=d_limit if method == "mixed" else None,
        power_updates=power_updates, repetitions=repetitions, deletions=deletions,
        verified=verify, mean_degree_exact=mean)


def sweep_dlimit(spec: InstanceSpec, d_limits: Sequence[int], **kwargs) -> list[RunReport]:
    """One ``mixed`` run per threshold, all on the same seed and order."""
    return [run(spec, "mixed", d, **kwargs) for d in d_limits]


def flip_worst(k: int) -> int:
    return (k - 2) * (k - 3) // 2


def ear_worst(k: int) -> int:
    return 3 * k - 8


def worst_case_table(kmin: int = 4, kmax: int = 12) -> list[dict]:
    """Worst-case predicate counts of flipping versus the ear queue."""
    return [{"k": k, "flip": flip_worst(k), "ear3": ear_worst(k),
             "cheaper": "flip" if flip_worst(k) < ear_worst(k) else
                        "ear3" if ear_worst(k) < flip_worst(k) else "tie"}
            for k in range(kmin, kmax + 1)]


# -- output ------------------------------------------------------------------


def _fmt_time(x):
    return "-" if x is None else f"{x:.3f}"


def format_table(reports: list[RunReport], worst: list[dict]) -> str:
    out = io.StringIO()
    out.write(f"{'method':<7} {'d_lim':>5} {'n':>7} {'dels':>7} {'mean k':>8} "
              f"{'build s':>8} {'delete s':>9} {'power':>9} {'updates':>9} "
              f"{'incircle':>9} {'orient':>9} {'fallback':>8}\n")
    for r in reports:
        c = r.totals
        out.write(f"{r.method:<7} {r.d_limit or '-':>5} {r.n:>7} {r.deletions:>7} "
                  f"{r.mean_degree:>8.4f} {_fmt_time(r.build_time):>8} "
                  f"{_fmt_time(r.delete_time):>9} {c['power_full']:>9} "
                  f"{c['power_updates']:>9} {c['incircle_tests']:>9} "
                  f"{c['orientation_tests']:>9} {c['exact_fallbacks']:>8}\n")
    out.write("\nmean predicates per deletion by degree (power computations / incircle tests)\n")
    degrees = sorted({k for r in reports for k in r.per_degree_counts})
    out.write(f"{'k':>3} {'count':>7}" + "".join(
        f" {r.method + (str(r.d_limit) if r.d_limit else ''):>15}" for r in reports) + "\n")
    for k in degrees:
        cells = []
        for r in reports:
            pc = r.per_degree_counts.get(k)
            cells.append(f" {pc[0]:>7.2f}/{pc[1]:<7.2f}" if pc else f" {'':>15}")
        out.write(f"{k:>3} {reports[0].degree_histogram.get(k, 0):>7}" + "".join(cells) + "\n")
    out.write("\nworst case: flip (k-2)(k-3)/2 incircle tests vs ear3 3k-8 power computations\n")
    for row in worst:
        out.write(f"k={row['k']:>2}  flip={row['flip']:>3}  ear3={row['ear3']:>3}  "
                  f"cheaper: {row['cheaper']}\n")
    return out.getvalue()


CSV_FIELDS = ["method", "d_limit", "instance", "n", "seed", "repetitions", "power_updates",
              "deletions", "mean_degree", "build_time", "delete_time",
              "orientation_tests", "incircle_tests", "power_full", "power_updates_count",
              "power_comparisons", "exact_fallbacks"]


def format_csv(reports: list[RunReport]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        c = r.totals
        w.writerow([r.method, r.d_limit if r.d_limit is not None else "", r.instance, r.n,
                    r.seed, r.repetitions, int(r.power_updates), r.deletions, r.mean_degree,
                    "" if r.build_time is None else f"{r.build_time:.6f}",
                    "" if r.delete_time is None else f"{r.delete_time:.6f}",
                    c["orientation_tests"], c["incircle_tests"], c["power_full"],
                    c["power_updates"], c["power_comparisons"], c["exact_fallbacks"]])
    return out.getvalue()


def format_json(reports: list[RunReport], worst: list[dict]) -> str:
    return json.dumps({"reports": [r.to_json() for r in reports], "worst_case": worst},
                      indent=2, sort_keys=True) + "\n"


# -- command line ------------------------------------------------------------


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def parser() -> argparse.ArgumentParser:
    p = _Parser(prog="deltri-bench", description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=DEFAULT_N, help="number of points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", default="ear3",
                   help=f"one of {', '.join(METHODS)}, a comma list, or 'all'")
    p.add_argument("--d-limit", default="9",
                   help="mixed threshold; a list such as 5-11 sweeps the mixed method")
    p.add_argument("--instance", choices=[k.value for k in InstanceKind], default="square")
    p.add_argument("--alpha", type=float, default=None,
                   help="radial spread of lower-bound instances (default: largest valid)")
    p.add_argument("--input", help="point file for --instance file")
    p.add_argument("--verify", action="store_true",
                   help=f"certify every deletion (at most {VERIFY_LIMIT} points)")
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.add_argument("--no-timing", action="store_true",
                   help="omit timings so output is reproducible byte for byte")
    p.add_argument("--power-updates", choices=["on", "off"], default="on")
    p.add_argument("--reps", type=int, default=1, help="repetitions with consecutive seeds")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = parser().parse_args(argv)
    try:
        methods = list(METHODS) if args.method == "all" else args.method.split(",")
        for m in methods:
            if m not in METHODS:
                raise UsageError(f"unknown method {m!r}")
        try:
            d_limits = _int_list(args.d_limit)
        except ValueError:
            raise UsageError(f"bad --d-limit {args.d_limit!r}") from None
        if any(d < 4 for d in d_limits):
            raise UsageError("--d-limit values must be at least 4")
        if args.reps < 1:
            raise UsageError("--reps must be positive")
        if args.instance == "file" and not args.input:
            raise UsageError("--instance file needs --input")
        try:
            spec = InstanceSpec(InstanceKind(args.instance), args.n, args.seed,
                                args.alpha, args.input)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        mode = dict(repetitions=args.reps, power_updates=args.power_updates == "on",
                    verify=args.verify, timing=not args.no_timing)
        if args.verify and args.instance in ("square", "lowerbound") and args.n > VERIFY_LIMIT:
            raise UsageError(f"--verify supports at most {VERIFY_LIMIT} points")
        reports = []
        for m in methods:
            if m == "mixed" and len(d_limits) > 1:
                reports.extend(sweep_dlimit(spec, d_limits, **mode))
            else:
                reports.append(run(spec, m, d_limits[0], **mode))
    except UsageError as exc:
        print(f"deltri-bench: error: {exc}", file=sys.stderr)
        return 1
    except (OSError, OracleError, ValueError) as exc:
        print(f"deltri-bench: error: {exc}", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"deltri-bench: verification failed: {exc}", file=sys.stderr)
        print(f"reproduce: --seed {exc.seed}, failing deletion #{exc.step} "
              f"of point {exc.point[0]} {exc.point[1]}", file=sys.stderr)
        return 2
    worst = worst_case_table()
    if args.format == "json":
        sys.stdout.write(format_json(reports, worst))
    elif args.format == "csv":
        sys.stdout.write(format_csv(reports))
    else:
        sys.stdout.write(format_table(reports, worst))
    return 0


if __name__ == "__main__":
    sys.exit(main())
