"""Command-line front end: ``cyclosig <command> ...``.

Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 a proven
statement failed on computed data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from . import __version__
from .composite import composite_prime_powers, theorem_bound, two_adic_bound
from .errors import ClaimViolation
from .gf2 import SignMatrix, words_to_int
from .residues import make_conductor
from .signature import (
    build_matrix,
    build_modified_matrix,
    column_witness,
    lemma_range,
    lemma_witness,
    modified_rows,
    verify_lower_bound,
)
from .survey import (
    CACHE_ENV,
    DEFAULT_MAX_PHI_HALF,
    FILTERS,
    RankCache,
    parse_range,
    records_to_csv,
    run_survey,
    select_conductors,
)
from .validation import check_prime_power
from .verify import SUITES, run_suite

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_CLAIM = 0, 1, 2, 3


class InvalidInput(Exception):
    pass


def _conductor(m: int, prime_power: bool = False):
    try:
        c = make_conductor(m)
        return check_prime_power(c) if prime_power else c
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
        return
    with open(output, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def hex_rows(matrix: SignMatrix) -> list[str]:
    """Rows as hex of their bytes, bit ``j`` at byte ``j // 8`` bit ``j % 8``."""
    nbytes = -(-matrix.dim // 8)
    return [words_to_int(row).to_bytes(nbytes, "little").hex() for row in matrix.words]


def matrix_payload(m: int, kind: str, name: str, matrix: SignMatrix) -> dict:
    return {
        "m": m,
        "kind": kind,
        "matrix": name,
        "row_labels": list(matrix.row_labels),
        "col_labels": list(matrix.col_labels),
        "rows": hex_rows(matrix),
    }


def _text_matrix(name: str, matrix: SignMatrix) -> str:
    lines = [f"# {name}  rows={len(matrix.row_labels)} cols={matrix.dim}"]
    width = len(str(max(matrix.row_labels)))
    for a, row in zip(matrix.row_labels, matrix.to_bool()):
        lines.append(f"{a:>{width}} " + "".join("1" if x else "0" for x in row))
    return "\n".join(lines) + "\n"


def cmd_matrix(args) -> int:
    c = _conductor(args.m, prime_power=True)
    C = build_matrix(c)
    chosen = {"C": C, "M": build_modified_matrix(C)}
    if args.which != "both":
        chosen = {args.which: chosen[args.which]}
    if args.format == "json":
        payloads = [matrix_payload(c.m, c.kind, k, v) for k, v in chosen.items()]
        body = payloads[0] if len(payloads) == 1 else payloads
        text = json.dumps(body, separators=(",", ":")) + "\n"
    else:
        text = "".join(_text_matrix(k, v) for k, v in chosen.items())
    _emit(text, args.output)
    return EXIT_OK


def cmd_rank(args) -> int:
    c = _conductor(args.m, prime_power=True)
    report = verify_lower_bound(c)
    out = asdict(report)
    out["theorem_bound"] = theorem_bound(c).theorem_bound
    out["two_adic_deficiency_bound"] = two_adic_bound(report.circular_deficiency)
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_bound(args) -> int:
    c = _conductor(args.m)
    rep = theorem_bound(c)
    out = asdict(rep)
    out["per_factor_bounds"] = [list(x) for x in rep.per_factor_bounds]
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_composite(args) -> int:
    _conductor(args.left, prime_power=True)
    _conductor(args.right, prime_power=True)
    try:
        computed, predicted = composite_prime_powers(args.left, args.right)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    print(json.dumps({"left": args.left, "right": args.right,
                      "rank": computed, "predicted": predicted}))
    return EXIT_OK


def cmd_lemma(args) -> int:
    c = _conductor(args.m, prime_power=True)
    if not c.is_odd_prime_power:
        raise InvalidInput(f"m={c.m}: the lemma concerns odd prime powers")
    ks = [args.k] if args.k is not None else list(lemma_range(c.m))
    if not ks:
        print(f"m={c.m}: no k with 2^(k+2) < m")
        return EXIT_OK
    try:
        rows = modified_rows(c, [2**d for d in range(1, max(ks) + 1)])
        for k in ks:
            w = lemma_witness(c, k)
            reading = column_witness(rows, w)
            expected = (0,) * (k - 1) + (1,)
            print(json.dumps({**asdict(w), "column_witness": list(reading),
                              "column_ok": reading == expected}))
            if reading != expected:
                return EXIT_CLAIM
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_suite(args.suite, args.max_m)
    for check in checks:
        print(check.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_CLAIM


def cmd_survey(args) -> int:
    try:
        lo, hi = parse_range(args.range)
        conductors = select_conductors(lo, hi, args.filter)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    cache_dir = os.environ.get(CACHE_ENV) or args.cache_dir
    cache = RankCache(cache_dir) if cache_dir else None
    records = run_survey(conductors, jobs=args.jobs, cache=cache,
                         max_phi_half=args.max_phi_half, allow_large=args.allow_large)
    _emit(records_to_csv(records), args.out)
    errored = [r for r in records if r.status.startswith("error")]
    return EXIT_OK if not errored else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclosig",
        description="Signature ranks of circular units in real cyclotomic fields.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", help="export the signature matrices C and M")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--which", choices=("C", "M", "both"), default="both")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("rank", help="rank report for one prime-power conductor")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("bound", help="lower bounds from the factorization of m")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("composite", help="product-space rank for two coprime prime powers")
    p.add_argument("--left", type=int, required=True)
    p.add_argument("--right", type=int, required=True)
    p.set_defaults(func=cmd_composite)

    p = sub.add_parser("lemma", help="floor-parity witnesses B(k) for an odd prime power")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--max-m", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("survey", help="rank survey over a conductor range, as CSV")
    p.add_argument("--range", required=True, help="inclusive range like 3..10000")
    p.add_argument("--filter", choices=FILTERS, default="prime-powers")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--max-phi-half", type=int, default=DEFAULT_MAX_PHI_HALF)
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_survey)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ClaimViolation as exc:
        print(f"claim violated: {exc}", file=sys.stderr)
        return EXIT_CLAIM
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
