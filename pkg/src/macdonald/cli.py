"""Command-line surface: chain, compute, count, verify, table, bench.

Output on stdout is canonical and byte-identical across runs and worker
counts; anything diagnostic goes to stderr.  Exit codes: 0 ok, 1 a requested
verification failed, 2 invalid input (including non-regular partitions),
3 the folding-pair cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .chain import NonRegularError, Partition, build_chain, render_chain
from .compression import verify_all_classes
from .fillings import compressed_sum
from .oracle import check_specializations
from .parallel import default_jobs, parallel_count
from .qt import RationalQT, SymFun, symfun_json_obj, symfun_str
from .ramyip import TermCapExceeded, check_term_cap, ram_yip_sum

TABLE_SHAPES: list[tuple[tuple[int, ...], int]] = [
    ((3, 2, 1, 0), 4),
    ((5, 3, 1, 0), 4),
    ((4, 3, 2, 1, 0), 5),
    ((5, 4, 2, 1, 0), 5),
]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_CAP = 3


def _parse_partition(raw: str, n: int | None) -> Partition:
    try:
        parts = [int(x) for x in raw.split(",") if x != ""]
    except ValueError as exc:
        raise NonRegularError(f"cannot parse partition {raw!r}: {exc}") from exc
    return Partition(parts, n)


def _parse_fraction(raw: str) -> Fraction:
    return Fraction(raw)


def _format_1dp_half_up(value: Fraction) -> str:
    scaled = value * 10
    units = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    return f"{units // 10}.{units % 10}"


def _compute(lam: Partition, n: int, formula: str, jobs: int) -> SymFun:
    if formula == "ram-yip":
        return ram_yip_sum(lam, n, jobs=jobs)
    if formula == "compressed":
        return compressed_sum(lam, n, jobs=jobs)
    raise NonRegularError(f"unknown formula {formula!r}")


def _emit_symfun(P: SymFun, lam: Partition, n: int, out: str) -> None:
    if out == "json":
        print(json.dumps(symfun_json_obj(lam.parts, n, P), separators=(",", ":")))
    else:
        print(symfun_str(P))


def cmd_chain(args) -> int:
    lam = _parse_partition(args.lam, args.n)
    chain = build_chain(lam)
    print(render_chain(chain))
    print(f"m = {chain.m}")
    return EXIT_OK


def cmd_compute(args) -> int:
    lam = _parse_partition(args.lam, args.n)
    if args.verbose:
        if args.formula == "ram-yip":
            m = build_chain(lam).m
            size = f"{(1 << m) * _factorial(lam.n)} folding pairs"
        else:
            size = f"{parallel_count(lam, lam.n, 'paper', args.jobs)} fillings"
        print(f"evaluating {size} for {lam.parts} with {args.jobs} worker(s)",
              file=sys.stderr)
    P = _compute(lam, lam.n, args.formula, args.jobs)
    _emit_symfun(P, lam, lam.n, args.out)
    return EXIT_OK


def cmd_count(args) -> int:
    lam = _parse_partition(args.lam, args.n)
    print(parallel_count(lam, lam.n, args.convention, args.jobs))
    return EXIT_OK


def _load_symfun_json(stream) -> tuple[Partition, int, SymFun]:
    obj = json.load(stream)
    lam = Partition(obj["lambda"])
    n = obj["n"]
    P: SymFun = {}
    for mono in obj["monomials"]:
        num = {(a, b): c for a, b, c in mono["num"]}
        den = [tuple(f) for f in mono["den"]]
        P[tuple(mono["exp"])] = RationalQT(num, den)
    return lam, n, P


def cmd_verify(args) -> int:
    P: SymFun | None = None
    if args.infile:
        if args.infile == "-":
            lam, n, P = _load_symfun_json(sys.stdin)
        else:
            with open(args.infile) as fh:
                lam, n, P = _load_symfun_json(fh)
    else:
        lam = _parse_partition(args.lam, args.n)
        n = lam.n
    report: dict = {"lambda": list(lam.parts), "n": n, "checks": [], "ok": True}

    def add(name: str, ok: bool, detail: str = "") -> None:
        entry = {"name": name, "ok": ok}
        if detail:
            entry["detail"] = detail
        report["checks"].append(entry)
        if not ok:
            report["ok"] = False

    requested = args.per_class or args.oracle or args.map_properties
    if args.per_class:
        class_report = verify_all_classes(lam, n)
        passed = sum(1 for c in class_report.classes.values() if c.ok)
        detail = f"{passed}/{len(class_report.classes)} classes"
        if class_report.first_failure:
            detail += "; first failure:\n" + class_report.first_failure
        add("per-class", class_report.ok, detail)
        add(
            "fibers-partition",
            class_report.total_pairs
            == (1 << build_chain(lam).m) * _factorial(n)
            and not class_report.missing_fillings,
            f"{class_report.total_pairs} pairs over "
            f"{len(class_report.classes)} fibers",
        )
        report["classes"] = [
            {"filling": list(values), "pairs": len(result.pairs),
             "ok": result.ok}
            for values, result in class_report.classes.items()
        ]
    if args.oracle:
        P_here = P if P is not None else _compute(lam, n, args.formula, args.jobs)
        points = None
        if args.q is not None or args.t is not None:
            if args.q is None or args.t is None:
                raise NonRegularError("--q and --t must be given together")
            points = [(_parse_fraction(args.q), _parse_fraction(args.t))]
        result = check_specializations(P_here, lam, n, seed=args.seed,
                                       points=points)
        for entry in result.checks:
            add(entry.name, entry.ok, entry.detail)
    if args.map_properties:
        for name, ok, detail in _map_property_checks(lam, n):
            add(name, ok, detail)
    if not requested:
        ry = ram_yip_sum(lam, n, jobs=args.jobs)
        cp = compressed_sum(lam, n, jobs=args.jobs)
        add("formulas-agree", ry == cp,
            f"{len(ry)} monomials" if ry == cp else "expansions differ")

    print(json.dumps(report, separators=(",", ":")))
    return EXIT_OK if report["ok"] else EXIT_VERIFY_FAILED


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _map_property_checks(lam: Partition, n: int):
    """Fold parity, content identity, multiplicity-arm identity, witness."""
    from .compression import fiber_witness, filling_map
    from .fillings import enumerate_nonattacking
    from .ramyip import _walk_term_raw, folded_weight
    from .weyl import all_perms, permute_weight

    chain = build_chain(lam)
    yield (
        "multiplicity-arm",
        all(e.mult == lam.parts[e.root[0] - 1] - (e.column - 1) for e in chain),
        f"{chain.m} positions",
    )
    total = (1 << chain.m) * _factorial(n)
    parity_ok = True
    content_ok = True
    checked = 0
    if total <= 50000:
        for w in all_perms(n):
            for mask in range(1 << chain.m):
                folds = [p for p in range(1, chain.m + 1) if mask >> (p - 1) & 1]
                try:
                    _, _, content = _walk_term_raw(w, folds, chain)
                except AssertionError:
                    parity_ok = False
                    break
                sigma = filling_map(w, folds, lam)
                if content != sigma.content() or content != permute_weight(
                    w, folded_weight(folds, chain)
                ):
                    content_ok = False
                checked += 1
    else:
        import random

        rng = random.Random(0)
        perms = all_perms(n)
        for _ in range(500):
            w = rng.choice(perms)
            folds = sorted(
                rng.sample(range(1, chain.m + 1), rng.randint(0, chain.m))
            )
            _, _, content = _walk_term_raw(w, folds, chain)
            sigma = filling_map(w, folds, lam)
            if content != sigma.content():
                content_ok = False
            checked += 1
    yield ("fold-parity", parity_ok, f"{checked} pairs")
    yield ("content-identity", content_ok, f"{checked} pairs")
    witness_ok = True
    count = 0
    for sigma in enumerate_nonattacking(lam, n):
        pair = fiber_witness(sigma, lam)
        image = filling_map(pair.w, sorted(pair.folds), lam)
        if image.values != sigma.values:
            witness_ok = False
            break
        count += 1
        if count >= 5000:
            break
    yield ("surjectivity-witness", witness_ok, f"{count} fillings")


def cmd_table(args) -> int:
    rows = TABLE_SHAPES
    if args.rows:
        wanted = {int(x) for x in args.rows.split(",")}
        rows = [r for i, r in enumerate(rows, start=1) if i in wanted]
    widths = (16, 3, 11, 11, 11)
    header = ("lambda", "n", "t(lambda)", "c(lambda)", "r(lambda)")
    print("".join(h.ljust(w) if i == 0 else h.rjust(w)
                  for i, (h, w) in enumerate(zip(header, widths))))
    for parts, n in rows:
        lam = Partition(parts)
        if args.verbose:
            print(f"counting fillings for {parts} ...", file=sys.stderr)
        chain = build_chain(lam)
        t_count = parallel_count(lam, n, "paper", args.jobs)
        hhl_count = parallel_count(lam, n, "hhl", args.jobs)
        ry_terms = (1 << chain.m) * _factorial(n)
        c_factor = _format_1dp_half_up(Fraction(ry_terms, t_count))
        r_factor = _format_1dp_half_up(Fraction(hhl_count, t_count))
        cells = (
            "(" + ", ".join(map(str, parts)) + ")",
            str(n),
            f"{t_count:,}",
            c_factor,
            r_factor,
        )
        print("".join(c.ljust(w) if i == 0 else c.rjust(w)
                      for i, (c, w) in enumerate(zip(cells, widths))))
    return EXIT_OK


def cmd_bench(args) -> int:
    lam = _parse_partition(args.lam, args.n)
    n = lam.n

    def timed(label, fn):
        start = time.perf_counter()
        result = fn()
        print(f"{label}: {time.perf_counter() - start:.3f}s")
        return result

    chain = timed("build-chain", lambda: build_chain(lam))
    print(f"  m = {chain.m}, folding pairs = {(1 << chain.m) * _factorial(n)}")
    t_count = timed("count-paper", lambda: parallel_count(lam, n, "paper", args.jobs))
    print(f"  t(lambda) = {t_count}")
    timed("count-hhl", lambda: parallel_count(lam, n, "hhl", args.jobs))
    try:
        check_term_cap(chain)
    except TermCapExceeded:
        print("ram-yip: skipped (term cap)")
        return EXIT_OK
    if (1 << chain.m) * _factorial(n) <= 1 << 16:
        timed("ram-yip", lambda: ram_yip_sum(lam, n, jobs=args.jobs))
    timed("compressed", lambda: compressed_sum(lam, n, jobs=args.jobs))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macdonald",
        description="Exact Macdonald P-polynomials by alcove walks and "
        "nonattacking fillings, with cross-verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_lambda=True):
        if with_lambda:
            p.add_argument("--lambda", dest="lam", required=True,
                           help="comma-separated partition, e.g. 4,3,1,0")
            p.add_argument("-n", type=int, default=None,
                           help="number of variables (pads with zeros)")
        p.add_argument("--jobs", type=int, default=None,
                       help="worker processes (default MACDONALD_JOBS or 1)")

    p_chain = sub.add_parser("chain", help="print the factored root chain")
    add_common(p_chain)
    p_chain.set_defaults(func=cmd_chain)

    p_compute = sub.add_parser("compute", help="expand P_lambda(X;q,t)")
    add_common(p_compute)
    p_compute.add_argument("--formula", choices=("ram-yip", "compressed"),
                           required=True)
    p_compute.add_argument("--out", choices=("text", "json"), default="text")
    p_compute.add_argument("--verbose", action="store_true",
                           help="progress notes on stderr")
    p_compute.set_defaults(func=cmd_compute)

    p_count = sub.add_parser("count", help="count nonattacking fillings")
    add_common(p_count)
    p_count.add_argument("--convention", choices=("paper", "hhl"),
                         default="paper")
    p_count.set_defaults(func=cmd_count)

    p_verify = sub.add_parser("verify", help="run verification checks")
    p_verify.add_argument("--lambda", dest="lam", default=None,
                          help="comma-separated partition")
    p_verify.add_argument("-n", type=int, default=None)
    p_verify.add_argument("--jobs", type=int, default=None)
    p_verify.add_argument("--per-class", action="store_true")
    p_verify.add_argument("--oracle", action="store_true")
    p_verify.add_argument("--map-properties", action="store_true")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--q", default=None, help="explicit q0 as a/b")
    p_verify.add_argument("--t", default=None, help="explicit t0 as c/d")
    p_verify.add_argument("--formula", choices=("ram-yip", "compressed"),
                          default="compressed")
    p_verify.add_argument("--in", dest="infile", default=None,
                          help="read a computed JSON expansion ('-' = stdin)")
    p_verify.set_defaults(func=cmd_verify)

    p_table = sub.add_parser("table", help="recompute the compression table")
    p_table.add_argument("--rows", default=None,
                         help="restrict to row numbers, e.g. 1,2")
    p_table.add_argument("--jobs", type=int, default=None)
    p_table.add_argument("--verbose", action="store_true")
    p_table.set_defaults(func=cmd_table)

    p_bench = sub.add_parser("bench", help="time the main computations")
    add_common(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", None) is None:
        args.jobs = default_jobs()
    if getattr(args, "lam", "") is None and getattr(args, "infile", None) is None:
        print("error: --lambda is required without --in", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except TermCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (NonRegularError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
