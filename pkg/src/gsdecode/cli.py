"""Command-line front end: decode, bench, iterhist.

Exit codes: 0 success, 2 decode produced an empty list, 64 usage error
(bad flags or malformed values), 65 field construction error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .field import COEFF_DTYPE, DEFAULT_PRIMITIVE_POLY, DegreeOutOfRange, GF2m, NotPrimitive
from .decoder import ALGORITHMS, CodeSpec, list_decode
from .bench import (
    BenchConfig,
    run_bench,
    run_iterhist,
    write_bench_csv,
    write_iterhist_csv,
)

EX_EMPTY_LIST = 2
EX_USAGE = 64
EX_FIELD = 65


class _UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EX_USAGE)


def _add_code_flags(parser):
    parser.add_argument("--n", type=int, required=True, help="code length")
    parser.add_argument("--k", type=int, required=True, help="code dimension")
    parser.add_argument("--m", type=int, required=True, help="field extension degree")
    parser.add_argument(
        "--prim-poly",
        type=str,
        default=None,
        help="primitive polynomial, hex (default: conventional choice for m)",
    )
    parser.add_argument("--seed", type=int, default=1)


def build_parser() -> _Parser:
    parser = _Parser(prog="gsdecode", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_decode = sub.add_parser("decode", help="list-decode one received word")
    _add_code_flags(p_decode)
    p_decode.add_argument("--r", type=int, required=True, help="interpolation multiplicity")
    p_decode.add_argument("--algorithm", choices=ALGORITHMS, default="binary")
    p_decode.add_argument(
        "--received", type=str, required=True, help="comma-separated hex symbols"
    )
    p_decode.add_argument(
        "--gao-early-exit",
        action="store_true",
        help="return immediately when a multiplicity-1 pass pins down a codeword",
    )

    p_bench = sub.add_parser("bench", help="timed Monte-Carlo comparison, CSV output")
    _add_code_flags(p_bench)
    p_bench.add_argument("--r-list", type=str, default="1", help="comma-separated multiplicities")
    p_bench.add_argument(
        "--algorithm", type=str, default="binary", help="comma-separated algorithm names"
    )
    p_bench.add_argument("--trials", type=int, default=10)
    p_bench.add_argument("--errors", type=int, default=None, help="error weight per trial")
    p_bench.add_argument("--out", type=str, required=True, help="CSV output path")

    p_hist = sub.add_parser("iterhist", help="histogram of extra merge iterations, CSV output")
    _add_code_flags(p_hist)
    p_hist.add_argument("--r-list", type=str, default="2")
    p_hist.add_argument(
        "--algorithm", choices=("binary", "binary_reencoded"), default="binary"
    )
    p_hist.add_argument("--trials", type=int, default=100)
    p_hist.add_argument("--errors", type=int, default=None)
    p_hist.add_argument("--out", type=str, required=True)
    return parser


def _parse_hex(text: str, what: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise _UsageError(f"malformed hex {what}: {text!r}")


def _make_code(args) -> CodeSpec:
    poly = (
        _parse_hex(args.prim_poly, "polynomial")
        if args.prim_poly is not None
        else DEFAULT_PRIMITIVE_POLY.get(args.m)
    )
    if poly is None:
        raise DegreeOutOfRange(f"no default polynomial for m={args.m}")
    field = GF2m(args.m, poly)
    return CodeSpec.standard(field, args.n, args.k)


def _parse_received(field, text: str, n: int) -> np.ndarray:
    symbols = []
    for token in text.split(","):
        value = _parse_hex(token.strip(), "symbol")
        if value >= field.q:
            raise _UsageError(f"symbol {token.strip()!r} out of range for GF(2^{field.m})")
        symbols.append(value)
    if len(symbols) != n:
        raise _UsageError(f"expected {n} symbols, got {len(symbols)}")
    return np.array(symbols, dtype=COEFF_DTYPE)


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise _UsageError(f"malformed {what}: {text!r}")


def _cmd_decode(args) -> int:
    code = _make_code(args)
    received = _parse_received(code.field, args.received, args.n)
    result = list_decode(
        received, code, args.r, args.algorithm, seed=args.seed,
        gao_early_exit=args.gao_early_exit,
    )
    print(f"candidates: {len(result.candidates)} (tau={result.params.tau})")
    for msg, agree in result.candidates:
        padded = list(msg.c.tolist()) + [0] * (code.k - len(msg.c))
        text = ",".join(format(v, "x") for v in padded)
        print(f"message={text} agreement={agree}")
    stats = result.stats
    print(
        f"merge_calls={stats.merge_call_count} "
        f"random_iterations={stats.random_iterations} "
        f"reduce_steps={stats.reduce_steps} "
        f"fallbacks={stats.fallback_count}"
    )
    return 0 if result.candidates else EX_EMPTY_LIST


def _bench_config(args) -> BenchConfig:
    return BenchConfig(
        n=args.n,
        k=args.k,
        m=args.m,
        r_list=_parse_int_list(args.r_list, "multiplicity list"),
        algorithms=tuple(tok.strip() for tok in args.algorithm.split(",")),
        trials=args.trials,
        seed=args.seed,
        error_weight=args.errors,
        primitive_poly=_parse_hex(args.prim_poly, "polynomial") if args.prim_poly else None,
        out=args.out,
    )


def _cmd_bench(args) -> int:
    config = _bench_config(args)
    records = run_bench(config)
    write_bench_csv(records, config.out)
    ok = sum(1 for record in records if record.success)
    print(f"wrote {len(records)} records to {config.out} ({ok} successful decodes)")
    return 0


def _cmd_iterhist(args) -> int:
    config = _bench_config(args)
    rows = run_iterhist(config, args.algorithm)
    write_iterhist_csv(rows, config.out)
    print(f"wrote {len(rows)} histogram rows to {config.out}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "decode":
            return _cmd_decode(args)
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_iterhist(args)
    except _UsageError as exc:
        print(f"gsdecode: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except (NotPrimitive, DegreeOutOfRange) as exc:
        print(f"gsdecode: field error: {exc}", file=sys.stderr)
        return EX_FIELD
    except ValueError as exc:
        print(f"gsdecode: error: {exc}", file=sys.stderr)
        return EX_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
