"""Command-line front end.

Exit codes: 0 every check passed, 1 a mathematical counterexample, 2 usage
error, 3 instance over the exact-capacity caps.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import auxiliary, counting, verifier
from .component import clique_prob, kn_lower_bound, oeis_connected_check
from .graph import (
    CapacityError,
    EdgeProbabilityVector,
    build_bunkbed,
    complete_graph,
    load_graph,
    parse_fraction,
)
from .montecarlo import estimate_connection, estimate_difference

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
DP_N_CAP = 9
ENUM_EDGE_CAP = 25  # the K_5 bunkbed


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    command: list[str]
    checks: list[dict] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    counterexample: object = None
    started: float = field(default_factory=time.perf_counter)

    def check(self, name: str, passed: bool, **detail):
        self.checks.append(dict(name=name, passed=bool(passed), **detail))
        if not passed and self.counterexample is None:
            self.counterexample = dict(name=name, **detail)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self) -> dict:
        return dict(
            command=self.command,
            passed=self.passed,
            checks=self.checks,
            counterexample=self.counterexample,
            notes=self.notes,
            rows=self.rows,
            seconds=round(time.perf_counter() - self.started, 3),
        )


def _frac(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _prob(text: str) -> Fraction:
    p = _frac(text)
    if not 0 <= p <= 1:
        raise argparse.ArgumentTypeError(f"probability {text} outside [0, 1]")
    return p


def _grid(text: str) -> list[Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid is a:b:step")
    a, b, step = (_prob(parts[0]), _prob(parts[1]), _frac(parts[2]))
    if step <= 0 or b < a:
        raise argparse.ArgumentTypeError("grid needs a <= b and step > 0")
    out = []
    while a <= b:
        out.append(a)
        a += step
    return out


def _triplet(text: str) -> counting.Triplet:
    try:
        x, y, z = (int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("triplet is x,y,z") from None
    return counting.Triplet(x, y, z)


def _float_prob(text: str) -> float:
    try:
        value = float(parse_fraction(text)) if "/" in text else float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a probability: {text!r}") from None
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"probability {text} outside [0, 1]")
    return value


def _cap(n: int, cap: int, args, what: str):
    if n > cap and not args.force:
        raise CapacityError(f"n={n} exceeds the {what} cap n<={cap}; rerun with --force or use `mc`")


def _write(report: RunReport, args, fields=None):
    fmt = args.format
    if fmt == "json":
        text = json.dumps(report.to_json(), indent=2, default=str) + "\n"
    else:
        buf = io.StringIO()
        if report.rows:
            writer = csv.DictWriter(buf, fieldnames=fields or list(report.rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(report.rows)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for c in report.checks:
        status = "PASS" if c["passed"] else "FAIL"
        print(f"[{status}] {c['name']}", file=sys.stderr)
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)


def _ratio(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# -- subcommands ------------------------------------------------------------------


def cmd_verify_theorem(args, report: RunReport):
    _cap(args.n, DP_N_CAP, args, "subset-DP")
    ps = args.p_grid if args.p_grid else [args.p]
    check = verifier.theorem_check(args.n, ps, workers=args.workers)
    for pt in check.points:
        report.check(
            f"n={args.n} p={_ratio(pt.p)} difference={_ratio(pt.difference)}",
            pt.passed,
            p=_ratio(pt.p),
            difference=_ratio(pt.difference),
            decomposition_ok=pt.decomposition_ok,
            partition_ok=pt.partition_ok,
        )
    report.rows = check.rows
    return verifier.CSV_FIELDS


def cmd_identities(args, report: RunReport):
    if args.k_max < 1:
        raise UsageError("--k-max must be at least 1")
    z_max = args.z_max or args.k_max
    bad = []
    cells = 0
    for k in range(1, args.k_max + 1):
        for z in range(1, min(k, z_max) + 1):
            cells += 1
            even = counting.check_identity_even(k, z)
            odd = counting.check_identity_odd(k, z)
            report.rows.append(dict(k=k, z=z, i0_even=counting.find_i0(k, 0, z), i0_odd=counting.find_i0(k, 1, z), even=even, odd=odd))
            if not (even and odd):
                bad.append((k, z))
    report.check(f"zero-sum identities on {cells} cells", not bad, failing=bad[:10])


def cmd_counts(args, report: RunReport):
    n = args.n
    if n < 2:
        raise UsageError("--n must be at least 2")
    if args.all:
        triplets = list(counting.valid_triplets(n))
    elif args.triplet:
        if not args.triplet.is_valid(n):
            raise UsageError(f"invalid triplet {tuple(args.triplet)} for n={n}")
        triplets = [args.triplet]
    else:
        raise UsageError("give --triplet x,y,z or --all")
    if args.check and n > 7 and not args.force:
        raise CapacityError("brute-force cross-check is capped at n<=7")
    brute = counting.brute_force_counts(n) if args.check else None
    mismatches = []
    for t in triplets:
        c1, c2 = counting.count_c1(n, t), counting.count_c2(n, t)
        x, y, z = t
        cd = counting.count_cdiff_from_counts(n, x, y, z) if x >= y else ""
        row = dict(n=n, x=x, y=y, z=z, B=counting.boundary_count(n, t), C1=c1, C2=c2, C_diff=cd, total=counting.count_total(n, t))
        report.rows.append(row)
        if brute is not None:
            tot, b1, b2 = brute.get(t, (0, 0, 0))
            b_direct = counting.brute_force_boundary(n, t)
            if (tot, b1, b2, b_direct) != (row["total"], c1, c2, row["B"]):
                mismatches.append(tuple(t))
    if brute is not None:
        report.check(f"closed forms vs enumeration, n={n}", not mismatches, mismatches=mismatches)


def _random_constrained(g, rng: random.Random, den: int = 12):
    h = [Fraction(rng.randint(0, den), den) for _ in g.original.edges]
    v = [Fraction(rng.randint(0, den), den) for _ in range(g.n_columns)]
    return EdgeProbabilityVector.symmetric(g, h, v)


def _random_distribution(n: int, rng: random.Random):
    w = [rng.randint(0, 5) for _ in range(n)]
    if not sum(w):
        w[0] = 1
    s = sum(w)
    return auxiliary.BottomDistribution(tuple(Fraction(x, s) for x in w))


def cmd_aux(args, report: RunReport):
    rng = random.Random(args.seed)
    if args.prop == "segment":
        if args.n is None:
            raise UsageError("--n is required for the segment check")
        _cap(args.n, 8, args, "ladder verification")
        rep = auxiliary.segment_report(args.n, args.p)
        report.rows.append(
            dict(
                n=args.n,
                closed_form=_ratio(rep.closed_form),
                engine=_ratio(rep.engine_difference),
                printed_form=_ratio(rep.printed_form),
            )
        )
        report.check(f"ladder closed form = {_ratio(rep.closed_form)}", rep.closed_form_matches)
        if not rep.printed_form_matches:
            report.notes.append(rep.note)
        return

    g = build_bunkbed(load_graph(args.graph) if args.graph else complete_graph(args.n or 2))
    if args.prop == "2.3":
        if g.n_edges > ENUM_EDGE_CAP and not args.force:
            raise CapacityError(f"{g.n_edges} edges is beyond the enumeration cap of {ENUM_EDGE_CAP}")
        vectors = [EdgeProbabilityVector.constant(g, args.p)]
        vectors += [_random_constrained(g, rng) for _ in range(args.trials)]
        dists = [auxiliary.BottomDistribution.uniform(g.n_columns)]
        dists += [_random_distribution(g.n_columns, rng) for _ in range(args.trials)]
        for di, d in enumerate(dists):
            table = auxiliary.identity_table(g, d)
            report.check(f"cluster identity on all {len(table)} configurations, distribution {di}", min(table) >= 0)
            for vi, vec in enumerate(vectors):
                res = auxiliary.mean_inequality_values(g, vec, d, table)
                report.rows.append(dict(distribution=di, vector=vi, by_engine=_ratio(res.by_engine), by_clusters=_ratio(res.by_clusters)))
                report.check(f"averaged inequality d={di} p={vi}", res.passed, value=_ratio(res.by_engine))
    elif args.prop == "2.4":
        _cap(g.n_columns, DP_N_CAP, args, "subset-DP")
        rep = auxiliary.upper_bound_report(g, args.p, 0, 1 if g.n_columns > 1 else 0)
        report.rows.append(
            dict(
                difference=_ratio(rep.difference),
                both_disconnected=_ratio(rep.both_disconnected),
                u_disconnected=_ratio(rep.u_disconnected),
                kn_bound="" if rep.kn_bound is None else _ratio(rep.kn_bound),
            )
        )
        report.check("two-pair upper bound", rep.passed)
    elif args.prop == "kn":
        n = args.n or 10
        lb = kn_lower_bound(n, args.p)
        row = dict(n=n, lower_bound=_ratio(lb), lower_bound_float=float(lb))
        if n <= DP_N_CAP or args.force:
            exact = clique_prob(n, args.p)
            row["exact"] = _ratio(exact)
            report.check(f"K_{n} bound below exact connectivity", lb <= exact)
        if n <= 10 and args.p == Fraction(1, 2):
            report.check(f"K_{n} connectivity matches labeled-graph count", oeis_connected_check(n))
        report.rows.append(row)


def cmd_mc(args, report: RunReport):
    g = build_bunkbed(load_graph(args.graph) if args.graph else complete_graph(args.n))
    v = 1 if g.n_columns > 1 else 0
    if args.target == "difference":
        est = estimate_difference(g, args.p, 0, v, args.samples, args.seed, args.workers)
        report.check("difference not significantly negative", est.estimate >= -5 * est.stderr)
    else:
        est = estimate_connection(g, args.p, 0, v, args.samples, args.seed, args.workers)
    report.rows.append(dict(target=args.target, estimate=repr(est.estimate), stderr=repr(est.stderr), samples=est.samples, seed=est.seed))


def cmd_threshold(args, report: RunReport):
    _cap(args.n, 7, args, "threshold sweep")
    res = verifier.threshold_search(args.n, args.step)
    for p, lemma_ok, diff in res.table:
        report.rows.append(dict(n=args.n, p=_ratio(p), lemma_holds=lemma_ok, difference_num=diff.numerator, difference_den=diff.denominator))
    report.notes.append(
        f"lemma threshold: {res.lemma_threshold}; non-negative difference from: {res.difference_threshold}"
    )


# -- parser -----------------------------------------------------------------------


def _common(sp):
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", help="output file (the values 'csv' and 'json' select the format)")
    sp.add_argument("--workers", type=int, default=int(os.environ.get("BUNKBED_WORKERS", "1")))
    sp.add_argument("--force", action="store_true", help="lift the default size caps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bunkbed", description="Exact checks on bunkbed graphs of K_n")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify-theorem", help="exact decomposition and sign of P(u<->v) - P(u<->v')")
    sp.add_argument("--n", type=int, required=True)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--p", type=_prob)
    grp.add_argument("--p-grid", type=_grid)
    _common(sp)
    sp.set_defaults(func=cmd_verify_theorem)

    sp = sub.add_parser("identities", help="zero-sum identities of the signed counts")
    sp.add_argument("--k-max", type=int, required=True)
    sp.add_argument("--z-max", type=int)
    _common(sp)
    sp.set_defaults(func=cmd_identities)

    sp = sub.add_parser("counts", help="class counts B, C1, C2, C_diff")
    sp.add_argument("--n", type=int, required=True)
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--triplet", type=_triplet)
    grp.add_argument("--all", action="store_true")
    sp.add_argument("--check", action="store_true", help="cross-check against subset enumeration")
    _common(sp)
    sp.set_defaults(func=cmd_counts)

    sp = sub.add_parser("aux", help="averaged inequality, two-pair bound, ladder, K_n bound")
    sp.add_argument("--prop", choices=("2.3", "2.4", "segment", "kn"), required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--graph", help="complete:n, path:n or an edge-list file")
    sp.add_argument("--p", type=_prob, default=Fraction(1, 2))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=3)
    _common(sp)
    sp.set_defaults(func=cmd_aux)

    sp = sub.add_parser("mc", help="Monte Carlo estimate for large graphs")
    sp.add_argument("--n", type=int)
    sp.add_argument("--graph")
    sp.add_argument("--p", type=_float_prob, required=True)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--target", choices=("difference", "connection"), default="difference")
    _common(sp)
    sp.set_defaults(func=cmd_mc)

    sp = sub.add_parser("threshold", help="smallest grid p where the argument goes through")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--step", type=_frac, default=Fraction(1, 50))
    _common(sp)
    sp.set_defaults(func=cmd_threshold)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.out in ("csv", "json"):
        args.format, args.out = args.out, None
    if args.command == "mc" and args.n is None and args.graph is None:
        print("mc needs --n or --graph", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "mc" and args.samples < 1:
        print("--samples must be positive", file=sys.stderr)
        return EXIT_USAGE
    report = RunReport(["bunkbed"] + argv)
    try:
        fields = args.func(args, report)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except auxiliary.IdentityViolation as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except (UsageError, ValueError) as exc:
        print(f"usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write(report, args, fields)
    return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE


if __name__ == "__main__":
    sys.exit(main())
