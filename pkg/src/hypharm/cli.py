"""Command-line front end.

Subcommands: search, verify, eta, decompose, reduce.  Exit codes: 0 when
everything checked holds, 1 when a falsifying instance was found (for
`search`, an exact collision would refute the headline claim), 2 on
usage errors.  Worker count comes from HYPHARM_THREADS (default: all
cores); all randomness is seeded, so reruns with equal parameters emit
byte-identical result payloads.
"""

from __future__ import annotations

import argparse
import datetime
import sys
import time
from fractions import Fraction

from . import __version__
from . import lemmas
from .report import RunManifest, render
from .search import CollisionReport, SearchConfig, search, worker_count
from .sums import Interval, IntervalPair, eta_band_report, g_exact, reduce_overlap

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv", "text"), default="text")
    parser.add_argument("--output", metavar="PATH", default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--precision-bits", type=int, default=64)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypharm",
        description="exact-arithmetic distinctness checks for reciprocal power sums "
        "over consecutive-integer windows",
    )
    parser.add_argument("--version", action="version", version=f"hypharm {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("search", help="screened exhaustive collision search up to a bound")
    p.add_argument("--max-n", type=int, required=True, help="largest window endpoint")
    p.add_argument("--exponent", type=int, default=2, help="reciprocal power (2 default, 1 harmonic)")
    p.add_argument("--moduli", type=int, default=3, help="number of screening primes")
    _add_common(p)

    p = sub.add_parser("verify", help="run one lemma checker over a parameter range")
    p.add_argument(
        "--lemma",
        required=True,
        choices=(
            "bertrand",
            "prime-window",
            "lcm-bound",
            "large-prime-window",
            "power-sums",
            "eta-band",
            "bracket-identity",
            "e11-search",
            "decompose",
            "positivity-chain",
        ),
    )
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--n-span", type=int, default=None)
    p.add_argument("--a-max", type=int, default=None)
    p.add_argument("--b-max", type=int, default=None)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--w-max", type=int, default=None)
    p.add_argument("--pairs", type=int, default=None)
    p.add_argument("--max-total", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("eta", help="certified product-form offset for one window")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--r", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("decompose", help="seven-term split of a disjoint pair's sum gap")
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a2", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("reduce", help="rewrite an overlapping pair as a disjoint one")
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a2", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    _add_common(p)

    return parser


def _emit(args, subcommand: str, parameters: dict, results, outcome: str, started, t0) -> None:
    manifest = RunManifest(
        subcommand=subcommand,
        parameters=parameters,
        version=__version__,
        seed=getattr(args, "seed", None),
        started=started,
        finished=datetime.datetime.now(datetime.timezone.utc).isoformat(),
        wall_time_s=round(time.perf_counter() - t0, 6),
        outcome=outcome,
    )
    text = render(manifest, results, args.format)
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _search_results(report: CollisionReport) -> list:
    return [
        {
            "config": report.config,
            "moduli": list(report.moduli),
            "interval_count": report.interval_count,
            "screen_collision_pairs": report.screen_collision_pairs,
            "exact_collision_pairs": report.exact_collision_pairs,
        }
    ]


def cmd_search(args, started, t0) -> int:
    try:
        config = SearchConfig(
            max_n=args.max_n,
            exponent=args.exponent,
            modulus_count=args.moduli,
            seed=args.seed,
        )
    except ValueError as exc:
        print(f"hypharm search: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = search(config, threads=worker_count())
    collided = bool(report.exact_collision_pairs)
    outcome = "exact collision found" if collided else "no exact collisions"
    parameters = {
        "max_n": args.max_n,
        "exponent": args.exponent,
        "moduli": args.moduli,
        "seed": args.seed,
    }
    _emit(args, "search", parameters, _search_results(report), outcome, started, t0)
    return EXIT_FALSIFIED if collided else EXIT_OK


_VERIFY_DEFAULTS = {
    "bertrand": {"n_max": 10_000},
    "prime-window": {"k_max": 20, "n_span": 500},
    "lcm-bound": {"a_max": 10, "b_max": 10, "n_max": 8},
    "large-prime-window": {"k_max": 10, "n_span": 300},
    "power-sums": {"r_max": 200},
    "eta-band": {"a_max": 20, "r_max": 10},
    "bracket-identity": {"pairs": 100, "max_total": 200},
    "e11-search": {"a_max": 100, "w_max": 12},
    "decompose": {"pairs": 100, "max_total": 500},
    "positivity-chain": {"a_max": 100, "w_max": 12},
}


def _run_verify(args) -> tuple[list[lemmas.SweepResult], dict]:
    def get(name: str):
        value = getattr(args, name)
        return value if value is not None else _VERIFY_DEFAULTS[args.lemma].get(name)
    lemma = args.lemma
    if lemma == "bertrand":
        n_max = get("n_max")
        params = {"n_max": n_max}
        return [lemmas.sweep_bertrand(n_max), lemmas.sweep_bertrand(n_max, remark=True)], params
    if lemma == "prime-window":
        k_max, n_span = get("k_max"), get("n_span")
        return [lemmas.sweep_prime_window(k_max, n_span)], {"k_max": k_max, "n_span": n_span}
    if lemma == "lcm-bound":
        a_max, b_max, n_max = get("a_max"), get("b_max"), get("n_max")
        return (
            [lemmas.sweep_lcm_bound(a_max, b_max, n_max)],
            {"a_max": a_max, "b_max": b_max, "n_max": n_max},
        )
    if lemma == "large-prime-window":
        k_max, n_span = get("k_max"), get("n_span")
        return [lemmas.sweep_large_prime_window(k_max, n_span)], {"k_max": k_max, "n_span": n_span}
    if lemma == "power-sums":
        r_max = get("r_max")
        return [lemmas.sweep_power_sums(r_max)], {"r_max": r_max}
    if lemma == "eta-band":
        a_max, r_max = get("a_max"), get("r_max")
        return (
            [
                lemmas.sweep_eta_enclosures(a_max, r_max, args.precision_bits),
                lemmas.sweep_eta_band(a_max, r_max, args.precision_bits),
            ],
            {"a_max": a_max, "r_max": r_max, "precision_bits": args.precision_bits},
        )
    if lemma == "bracket-identity":
        pairs, max_total = get("pairs"), get("max_total")
        return (
            [lemmas.sweep_bracket_identity(pairs, args.seed, max_total, args.precision_bits)],
            {"pairs": pairs, "max_total": max_total, "seed": args.seed},
        )
    if lemma == "e11-search":
        a_max, w_max = get("a_max"), get("w_max")
        return [lemmas.sweep_e11_box(a_max, w_max)], {"a_max": a_max, "w_max": w_max}
    if lemma == "decompose":
        pairs, max_total = get("pairs"), get("max_total")
        return (
            [lemmas.sweep_decompose(pairs, args.seed, max_total)],
            {"pairs": pairs, "max_total": max_total, "seed": args.seed},
        )
    if lemma == "positivity-chain":
        a_max, w_max = get("a_max"), get("w_max")
        return [lemmas.sweep_e11_box(a_max, w_max)], {"a_max": a_max, "w_max": w_max}
    raise AssertionError(f"unhandled lemma {lemma}")


def cmd_verify(args, started, t0) -> int:
    try:
        sweeps, params = _run_verify(args)
    except ValueError as exc:
        print(f"hypharm verify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    all_hold = all(sweep.holds for sweep in sweeps)
    results = [
        {
            "claim": sweep.claim,
            "params": sweep.params,
            "checked": sweep.checked,
            "holds": sweep.holds,
            "failure_count": len(sweep.failures),
            "failures": sweep.failures[:200],
            "notes": sweep.notes,
        }
        for sweep in sweeps
    ]
    outcome = "all instances hold" if all_hold else "falsified instances found"
    _emit(args, "verify", {"lemma": args.lemma, **params}, results, outcome, started, t0)
    return EXIT_OK if all_hold else EXIT_FALSIFIED


def cmd_eta(args, started, t0) -> int:
    if args.a < 1 or args.r < 0 or args.precision_bits < 1:
        print("hypharm eta: needs a >= 1, r >= 0, positive precision", file=sys.stderr)
        return EXIT_USAGE
    interval = Interval(args.a, args.r)
    try:
        band = eta_band_report(interval, args.precision_bits)
    except ArithmeticError as exc:
        print(f"hypharm eta: bracketing failed: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    solution = band.eta
    results = [
        {
            "interval": interval,
            "eta": solution.eta,
            "eta_width_bits_ok": solution.eta.width <= Fraction(1, 2**args.precision_bits),
            "epsilon_low": solution.epsilon_low,
            "epsilon_high": solution.epsilon_high,
            "strict_inside": solution.strict_inside,
            "band": {
                "q_lower": band.q_lower,
                "q_upper": band.q_upper,
                "q_lower_holds": band.q_lower_holds,
                "q_upper_holds": band.q_upper_holds,
                "expr_bound": band.expr_bound,
                "expr_exact": band.expr_exact,
                "expr_lower_holds": band.expr_lower_holds,
                "expr_upper_holds": band.expr_upper_holds,
            },
        }
    ]
    _emit(args, "eta", {"a": args.a, "r": args.r, "precision_bits": args.precision_bits},
          results, "certified", started, t0)
    return EXIT_OK


def cmd_decompose(args, started, t0) -> int:
    try:
        pair = IntervalPair(Interval(args.a1, args.r), Interval(args.a2, args.s))
    except ValueError as exc:
        print(f"hypharm decompose: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not pair.disjoint:
        print(
            "hypharm decompose: windows overlap or touch; run "
            f"`hypharm reduce --a1 {args.a1} --r {args.r} --a2 {args.a2} --s {args.s}` "
            "to rewrite them as a disjoint pair first",
            file=sys.stderr,
        )
        return EXIT_USAGE
    report = lemmas.taylor_decompose(pair)
    chain = lemmas.check_positivity_chain(pair)
    results = [
        {
            "pair": pair,
            "L": report.L,
            "terms": list(report.terms),
            "difference": report.difference,
            "sum_matches_difference": sum(report.terms) == report.difference,
            "e11": report.e11,
            "expansion_sums_verified": report.expansion_sums_verified,
            "rewrites_verified": report.rewrites_verified,
            "chain_hypothesis_failures": list(chain.hypothesis_failures),
            "chain_bounds": chain.bounds,
        }
    ]
    _emit(
        args,
        "decompose",
        {"a1": args.a1, "r": args.r, "a2": args.a2, "s": args.s},
        results,
        "decomposed",
        started,
        t0,
    )
    return EXIT_OK


def cmd_reduce(args, started, t0) -> int:
    try:
        pair = IntervalPair(Interval(args.a1, args.r), Interval(args.a2, args.s))
        reduced = reduce_overlap(pair)
    except ValueError as exc:
        print(f"hypharm reduce: {exc}", file=sys.stderr)
        return EXIT_USAGE
    preserved = (
        g_exact(pair.first) - g_exact(pair.second)
        == g_exact(reduced.first) - g_exact(reduced.second)
    )
    results = [
        {
            "input": pair,
            "reduced": reduced,
            "reduced_disjoint": reduced.disjoint,
            "difference_preserved": preserved,
        }
    ]
    _emit(
        args,
        "reduce",
        {"a1": args.a1, "r": args.r, "a2": args.a2, "s": args.s},
        results,
        "reduced" if preserved else "difference not preserved",
        started,
        t0,
    )
    return EXIT_OK if preserved else EXIT_FALSIFIED


_HANDLERS = {
    "search": cmd_search,
    "verify": cmd_verify,
    "eta": cmd_eta,
    "decompose": cmd_decompose,
    "reduce": cmd_reduce,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = datetime.datetime.now(datetime.timezone.utc).isoformat()
    t0 = time.perf_counter()
    try:
        return _HANDLERS[args.subcommand](args, started, t0)
    except OSError as exc:
        print(f"hypharm: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
