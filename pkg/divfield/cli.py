"""
Command-line entry point: ``python -m divfield <subcommand> ...``.

Exit codes: 0 success, 1 usage or invalid parameter, 2 hypothesis
violation, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import config
from .cache import FrobeniusCache
from .conjugacy import classify, classify_N, format_product
from .dct import DCType, mult_dct, ord_dct, std_dct, std_dct2, unramified_dct, unramified_dct_N
from .elliptic import CurveQ, frobenius_trace
from .errors import BudgetExceeded, DivfieldError, HypothesisViolation, InvalidParameterError
from .mat2 import Mat2, prime_power, prime_power_factors
from .oracle import SWEEPS
from .tate import tate_period
from .torsion import delta_q, integral_frobenius_entries, frobenius_matrix, frobenius_matrix_oracle
from .zeta import (
    chebotarev_sample,
    density_percent,
    distribution,
    distribution_table,
    min_degree_report,
    per_prime_report,
    zeta_coefficients,
)

logger = logging.getLogger(__name__)

EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_BUDGET = 1, 2, 3
DEFAULT_SWEEP_MODULI = (3, 5, 7, 9, 25, 27)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _matrix(text: str, modulus: int | None = None) -> Mat2:
    return Mat2.parse(text, modulus)


def _db_url(cache: str | None) -> str | None:
    """A bare path means an sqlite file."""
    if cache is None or "://" in cache:
        return cache
    return f"sqlite:///{Path(cache).resolve()}"


def _emit(args, payload, text: str) -> None:
    print(json.dumps(payload) if args.json else text)


def _dct_payload(d: DCType) -> dict:
    return {"type": d.format(), "terms": d.to_json(), "mass": d.mass()}


# subcommand handlers

def cmd_std_dct(args) -> None:
    ks = [int(k) for k in args.orders.split(",")]
    if len(ks) == 1:
        d = std_dct(args.p, args.n, ks[0], args.a, args.b)
    elif len(ks) == 2:
        d = std_dct2(args.p, args.n, ks[0], ks[1], args.a, args.b)
    else:
        raise InvalidParameterError(f"expected one or two orders, got {args.orders!r}")
    _emit(args, _dct_payload(d), d.format())


def cmd_dct(args) -> None:
    g = _matrix(args.matrix, args.p ** args.n)
    label = classify(g)
    d = unramified_dct(label)
    _emit(args, {"class": label.format(), **_dct_payload(d)}, d.format())


def cmd_dct_n(args) -> None:
    g = _matrix(args.matrix, args.N)
    d = unramified_dct_N(g)
    _emit(args, {"class": format_product(classify_N(g)), **_dct_payload(d)}, d.format())


def cmd_mult_dct(args) -> None:
    d = mult_dct(args.p, args.n, args.alpha, args.eps, args.b1, args.b2)
    _emit(args, _dct_payload(d), d.format())


def cmd_ord_dct(args) -> None:
    d = ord_dct(args.p, args.n, args.alpha)
    _emit(args, _dct_payload(d), d.format())


def cmd_classify(args) -> None:
    g = _matrix(args.matrix, args.modulus)
    labels = classify_N(g)
    _emit(args, [label.to_json() for label in labels], format_product(labels))


def cmd_frob(args) -> None:
    E = CurveQ.from_text(args.curve)
    q = args.q
    payload: dict = {"curve": E.minimal.label(), "q": q, "a_q": frobenius_trace(E, q)}
    lines = [f"a_q = {payload['a_q']}"]
    if args.full_delta:
        D, b_q, delta = delta_q(E, q)
        a, b, c, d = integral_frobenius_entries(E, q)
        payload.update(delta_q=D, b_q=b_q, delta=delta, matrix=[[a, b], [c, d]])
        lines += [f"b_q = {b_q}", f"Delta_q = {D}", f"matrix [[{a},{b}],[{c},{d}]]"]
    if args.modulus:
        g = frobenius_matrix(E, q, args.modulus)
        labels = classify_N(g)
        dct = unramified_dct_N(g)
        payload.update(frob=g.format(), **{"class": format_product(labels)}, type=dct.format())
        lines += [f"Frob = {g}", f"class {format_product(labels)}", f"type {dct}"]
        if args.oracle:
            for p, n in prime_power_factors(args.modulus):
                h = frobenius_matrix_oracle(E, q, p ** n, seed=args.seed)
                agree = classify(h) == classify(g.reduce(p ** n))
                payload.setdefault("oracle", {})[str(p ** n)] = {"matrix": h.format(), "agrees": agree}
                lines.append(f"oracle mod {p ** n}: {h} ({'agrees' if agree else 'DISAGREES'})")
    _emit(args, payload, "\n".join(lines))


def cmd_tate_period(args) -> None:
    E = CurveQ.from_text(args.curve)
    period = tate_period(E, args.q, args.precision)
    _emit(args, {"q": period.q, "valuation": period.valuation, "unit": period.unit,
                 "precision": period.precision}, period.format())


def cmd_type(args) -> None:
    E = CurveQ.from_text(args.curve)
    report = per_prime_report(E, args.N, args.q)
    factors = " * ".join(f"(1 - x^{e['f']})^-{e['exponent']}" for e in report["euler_factor"])
    _emit(args, report, f"{report['type']}\nreduction {report['reduction']}, "
                        f"{report['primes']} primes, min degree {report['min_degree']}\n"
                        f"Euler factor {factors}")


def cmd_dist(args) -> None:
    dist = distribution(args.N)
    frame = distribution_table(dist)
    if args.csv:
        frame.to_csv(args.csv, index=False)
        logger.info("wrote %d rows to %s", len(frame), args.csv)
    rows = [{"type": d.format(), "mass": mass} for d, mass in dist.items()]
    text = "\n".join(f"{r['type']}\t{r['mass']}" for r in rows) + f"\ntotal\t{dist.total()}"
    _emit(args, {"N": args.N, "group_order": dist.group_order, "rows": rows}, text)


def cmd_min_degrees(args) -> None:
    report = min_degree_report(args.N)
    _emit(args,
          {str(f): [density.numerator, density.denominator] for f, density in report.items()},
          "\n".join(f"{f}\t{density_percent(density, args.places)}" for f, density in report.items()))


def cmd_zeta(args) -> None:
    E = CurveQ.from_text(args.curve)
    cache = FrobeniusCache(_db_url(args.cache)) if args.cache else None
    table = zeta_coefficients(E, args.N, args.A, args.B,
                              assume_maximal_image=args.assume_maximal_image,
                              threads=args.threads, cache=cache, quiet=args.quiet)
    if args.csv:
        table.to_frame().to_csv(args.csv, index=False)
    _emit(args, table.to_json(), "\n".join(f"{n}\t{z}" for n, z in table.coefficients.items()))


def cmd_sample(args) -> None:
    E = CurveQ.from_text(args.curve)
    frame = chebotarev_sample(E, args.N, args.B, threads=args.threads, quiet=args.quiet)
    if args.json:
        print(frame.to_json(orient="records"))
    else:
        print(frame.to_string(index=False))


def cmd_verify(args) -> None:
    if args.verify_budget:
        config.ORACLE_MAX_W = args.verify_budget
    moduli = args.moduli or list(DEFAULT_SWEEP_MODULI)
    suites = args.suite or list(SWEEPS)
    results = []
    for m in moduli:
        p, n = prime_power(m)
        for name in suites:
            result = SWEEPS[name](p, n)
            results.append(result)
            logger.info("%s mod %d: %d checked, %d mismatches",
                        name, m, result.checked, len(result.mismatches))
    payload = [{"suite": r.name, "modulus": r.modulus, "checked": r.checked,
                "mismatches": r.mismatches} for r in results]
    lines = []
    for r in results:
        lines.append(f"{'ok  ' if r.ok else 'FAIL'} {r.name} mod {r.modulus}: {r.checked} checked")
        lines += [f"     {m}" for m in r.mismatches]
    _emit(args, payload, "\n".join(lines))
    if not all(r.ok for r in results):
        raise SystemExit(EXIT_HYPOTHESIS)


def cmd_cache(args) -> None:
    cache = FrobeniusCache(_db_url(args.cache))
    path = Path(args.path)
    if args.action == "export":
        count = cache.export_jsonl(path)
    else:
        count = cache.import_jsonl(path)
    _emit(args, {"action": args.action, "records": count}, f"{args.action}: {count} records")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--cache", default=None, help="SQLAlchemy URL of the Frobenius cache")
    common.add_argument("--max-q", type=int, default=None)
    common.add_argument("--quiet", action="store_true")
    common.add_argument("--log-level", default=None)

    parser = _Parser(prog="divfield", description="Factorization types in division fields of elliptic curves")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, handler, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(handler=handler)
        return p

    p = add("std-dct", cmd_std_dct, "standard double coset type StdDCT(p, n, k; a, b)")
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)
    p.add_argument("orders", help="k0, or k1,k2 for the two-order form")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int, nargs="?")

    p = add("dct", cmd_dct, "double coset type of a matrix mod p^n")
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)
    p.add_argument("matrix")

    p = add("dct-n", cmd_dct_n, "double coset type of a matrix mod N")
    p.add_argument("N", type=int)
    p.add_argument("matrix")

    p = add("mult-dct", cmd_mult_dct, "type at a prime of multiplicative reduction")
    for name in ("p", "n", "alpha", "eps", "b1", "b2"):
        p.add_argument(name, type=int)

    p = add("ord-dct", cmd_ord_dct, "type at an ordinary prime dividing N")
    for name in ("p", "n", "alpha"):
        p.add_argument(name, type=int)

    p = add("classify", cmd_classify, "conjugacy class label of a matrix")
    p.add_argument("matrix", help='"[[a,b],[c,d]] mod m"')
    p.add_argument("--modulus", type=int, default=None)

    p = add("frob", cmd_frob, "Frobenius data of a curve at q")
    p.add_argument("curve")
    p.add_argument("q", type=int)
    p.add_argument("modulus", type=int, nargs="?")
    p.add_argument("--full-delta", action="store_true", help="also compute Delta_q and the integral matrix")
    p.add_argument("--oracle", action="store_true", help="cross-check with explicit torsion bases")

    p = add("tate-period", cmd_tate_period, "Tate period at a prime of multiplicative reduction")
    p.add_argument("curve")
    p.add_argument("q", type=int)
    p.add_argument("--precision", type=int, default=None)

    p = add("type", cmd_type, "factorization type of q in K")
    p.add_argument("curve")
    p.add_argument("N", type=int)
    p.add_argument("q", type=int)

    p = add("dist", cmd_dist, "distribution of unramified types mod N")
    p.add_argument("N", type=int)
    p.add_argument("--csv", default=None)

    p = add("min-degrees", cmd_min_degrees, "densities of minimal residual degrees")
    p.add_argument("N", type=int)
    p.add_argument("--places", type=int, default=2)

    p = add("zeta", cmd_zeta, "Dedekind zeta coefficients z_n, A <= n <= B")
    p.add_argument("curve")
    p.add_argument("N", type=int)
    p.add_argument("A", type=int)
    p.add_argument("B", type=int)
    p.add_argument("--assume-maximal-image", action="store_true",
                   help="assert surjective mod-N image and no companion forms")
    p.add_argument("--csv", default=None)

    p = add("sample", cmd_sample, "Chebotarev sampling of types over primes q <= B")
    p.add_argument("curve")
    p.add_argument("N", type=int)
    p.add_argument("B", type=int)

    p = add("verify", cmd_verify, "closed forms against orbit enumeration")
    p.add_argument("moduli", type=int, nargs="*")
    p.add_argument("--suite", action="append", choices=sorted(SWEEPS))
    p.add_argument("--verify-budget", type=int, default=None, help="largest |W| the oracle may enumerate")

    p = add("cache", cmd_cache, "export or import the Frobenius cache")
    p.add_argument("action", choices=["export", "import"])
    p.add_argument("path")
    return parser


def _apply_overrides(args) -> None:
    if args.seed is not None:
        config.SEED = args.seed
    if args.max_q is not None:
        config.MAX_Q = args.max_q
    if args.threads is not None and args.threads < 1:
        raise InvalidParameterError(f"--threads must be positive, got {args.threads}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"divfield: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config.setup_logging(args.log_level, quiet=args.quiet)
        _apply_overrides(args)
        args.handler(args)
    except (InvalidParameterError, ValueError, UsageError) as exc:
        print(f"divfield: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisViolation as exc:
        print(f"divfield: hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except BudgetExceeded as exc:
        print(f"divfield: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DivfieldError as exc:
        print(f"divfield: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
