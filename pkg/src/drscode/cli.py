"""Command-line front end.

Exit codes: 0 success, 1 domain failure (capacity region, construction,
decoding, failed invariant), 2 I/O or parse error, 3 resource caps exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import combinations, product
from math import comb

import numpy as np

from . import errors
from .codec import corrupt, decode, encode_all, random_messages, simulate
from .construct import build, is_row_echelon_up_to_columns, verify
from .formats import (
    FormatError,
    bundle_to_json,
    dump_json,
    format_word,
    load_bundle,
    load_messages,
    load_topology,
    parse_error_spec,
    parse_word,
    read_json,
)
from .rs import span_words

EXIT_OK, EXIT_DOMAIN, EXIT_IO, EXIT_CAPS = 0, 1, 2, 3
ROW_SPACE_LIMIT = 1 << 16


INPUT_ERRORS = (
    OSError,
    json.JSONDecodeError,
    FormatError,
    errors.FieldError,
    errors.TopologyError,
    errors.LengthMismatch,
    errors.DuplicatePosition,
    errors.ZeroErrorValue,
    errors.IndexOutOfRange,
)


class CapsExceeded(Exception):
    pass


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_word(args, f) -> list[int]:
    text = args.word if args.word is not None else sys.stdin.read()
    return parse_word(text, f)


def cmd_construct(args) -> int:
    top, f = load_topology(read_json(args.topology))
    cons = build(top, f)
    report = verify(cons)
    text = dump_json(bundle_to_json(cons, power=args.power_notation))
    if args.output:
        _emit(text, args.output)
        out = sys.stdout
    else:
        _emit(text, None)
        out = sys.stderr
    print(f"case: {cons.case}", file=out)
    print(f"code: [{cons.code.N}, {cons.code.k}, {cons.code.d}] over GF(2^{f.m})", file=out)
    print(f"rank: {cons.G.nrows if report.ok else 'n/a'} / {top.total_rate}", file=out)
    for name, passed, detail in report.checks:
        print(f"  {name:<8} {'PASS' if passed else 'FAIL'}  {detail}", file=out)
    return EXIT_OK


def cmd_encode(args) -> int:
    cons = load_bundle(read_json(args.bundle))
    msgs = load_messages(read_json(args.messages), cons.code.field)
    c = encode_all(cons, msgs)
    _emit(format_word(c, cons.code.field, args.power_notation) + "\n", args.output)
    return EXIT_OK


def cmd_corrupt(args) -> int:
    cons = load_bundle(read_json(args.bundle))
    f = cons.code.field
    word = _read_word(args, f)
    if len(word) != cons.code.N:
        raise errors.LengthMismatch(f"word length {len(word)} != N = {cons.code.N}")
    y = corrupt(word, parse_error_spec(args.errors, f))
    _emit(format_word(y.y, f, args.power_notation) + "\n", args.output)
    return EXIT_OK


def _messages_json(msgs, f, power: bool) -> dict:
    return {"messages": [[f.format(v, power) if power else v for v in m] for m in msgs]}


def cmd_decode(args) -> int:
    cons = load_bundle(read_json(args.bundle))
    f = cons.code.field
    msgs = decode(cons, _read_word(args, f))
    _emit(dump_json(_messages_json(msgs, f, args.power_notation)), args.output)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    cons = load_bundle(read_json(args.bundle))
    f = cons.code.field
    msgs = load_messages(read_json(args.messages), f)
    c = encode_all(cons, msgs)
    y = corrupt(c, parse_error_spec(args.errors, f))
    print("sent:     " + format_word(c, f, args.power_notation))
    print("received: " + format_word(y.y, f, args.power_notation))
    try:
        out = decode(cons, y)
    except errors.DecodeFailure as exc:
        print(f"DECODE FAILURE: {exc}")
        return EXIT_DOMAIN
    print("recovered: " + json.dumps(_messages_json(out, f, args.power_notation)["messages"]))
    if out == msgs:
        print("MATCH")
        return EXIT_OK
    print("MISMATCH")
    return EXIT_DOMAIN


def cmd_simulate(args) -> int:
    cons = load_bundle(read_json(args.bundle))
    budget = cons.code.z if args.budget is None else args.budget
    report = simulate(cons, args.trials, budget, args.seed)
    report["error_budget"] = budget
    _emit(dump_json(report), args.output)
    return EXIT_OK


def _error_patterns(n: int, q: int, z: int):
    for w in range(z + 1):
        for positions in combinations(range(1, n + 1), w):
            for values in product(range(1, q), repeat=w):
                yield list(zip(positions, values))


def exhaustive_checks(cons, max_messages: int, max_patterns: int, seed: int) -> list[tuple[str, bool, str]]:
    """Structural invariants plus exhaustive <= z error correction within caps."""
    code = cons.code
    f = code.field
    n_patterns = sum(comb(code.N, w) * (f.q - 1) ** w for w in range(code.z + 1))
    if n_patterns > max_patterns:
        raise CapsExceeded(
            f"{n_patterns} error patterns of weight <= {code.z} exceed --max-patterns {max_patterns}; reduce caps"
        )
    rows = list(verify(cons).checks)
    if cons.case in ("Case1", "Case2", "Case3") and all(rp.pivot for rp in cons.rows):
        rows.append(("echelon", is_row_echelon_up_to_columns(cons), "row echelon up to column permutation"))

    R = cons.G.nrows
    if R and f.q**R <= ROW_SPACE_LIMIT:
        _, words = span_words(f, cons.G.rows, code.N)
        w = int(np.count_nonzero(words[1:], axis=1).min())
        rows.append(("rowspace", w >= code.d, f"min nonzero weight {w} over {f.q ** R} combinations"))
    else:
        rows.append(("rowspace", True, f"skipped: {f.q}^{R} combinations"))

    rng = random.Random(seed)
    n_msgs = min(max_messages, f.q**R) if R else 1
    patterns = list(_error_patterns(code.N, f.q, code.z))
    bad = 0
    for _ in range(n_msgs):
        msgs = random_messages(cons, rng)
        c = encode_all(cons, msgs)
        for pattern in patterns:
            try:
                ok = decode(cons, corrupt(c, pattern)) == msgs
            except errors.DecodeFailure:
                ok = False
            bad += not ok
    rows.append(
        ("correct", bad == 0, f"{n_msgs} messages x {len(patterns)} patterns, {bad} failures")
    )
    return rows


def cmd_verify(args) -> int:
    cons = load_bundle(read_json(args.bundle))
    try:
        rows = exhaustive_checks(cons, args.max_messages, args.max_patterns, args.seed)
    except CapsExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CAPS
    width = max(len(name) for name, _, _ in rows)
    lines = [f"{name:<{width}}  {'PASS' if ok else 'FAIL'}  {detail}" for name, ok, detail in rows]
    all_ok = all(ok for _, ok, _ in rows)
    lines.append(f"{'overall':<{width}}  {'PASS' if all_ok else 'FAIL'}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if all_ok else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drscode",
        description="Distributed Reed-Solomon codes for simple multiple access networks.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the primary output here instead of stdout")
    common.add_argument("--power-notation", action="store_true", help="print field elements as a^e")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a code bundle from a topology file")
    p.add_argument("topology")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("encode", parents=[common], help="encode source messages at every relay")
    p.add_argument("bundle")
    p.add_argument("messages")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("corrupt", parents=[common], help="add errors to a codeword")
    p.add_argument("bundle")
    p.add_argument("word", nargs="?", help="N space-separated symbols (default: stdin)")
    p.add_argument("--errors", default="", help="pos:value,... with 1-based positions")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("decode", parents=[common], help="decode a received word")
    p.add_argument("bundle")
    p.add_argument("word", nargs="?", help="N space-separated symbols (default: stdin)")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("roundtrip", parents=[common], help="encode, corrupt, decode, compare")
    p.add_argument("bundle")
    p.add_argument("messages")
    p.add_argument("--errors", default="", help="pos:value,... with 1-based positions")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("simulate", parents=[common], help="randomized error-correction trials")
    p.add_argument("bundle")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--budget", type=int, default=None, help="errors per trial (default: z)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", parents=[common], help="invariant suite and exhaustive correction")
    p.add_argument("bundle")
    p.add_argument("--max-messages", type=int, default=20)
    p.add_argument("--max-patterns", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except errors.UnsupportedTopology as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except errors.OracleTooLarge as exc:
        print(f"error: {exc}; reduce caps", file=sys.stderr)
        return EXIT_CAPS
    except errors.DRSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

if __name__ == "__main__":
    sys.exit(main())
