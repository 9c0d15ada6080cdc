"""Command-line entry point: construct, verify, plan, count, stats.

Exit codes: 0 success, 1 invalid object, 2 usage error, 3 order not
reachable with in-scope rules, 4 search budget exhausted.  All randomness
flows from --seed (default 0); identical invocations write byte-identical
files.
"""

from __future__ import annotations

import argparse
import sys
from math import comb

from . import census, io, planner
from .bbd import Bbd, expected_block_count
from .errors import (
    Inadmissible,
    MalformedBlock,
    PreconditionFailure,
    SearchTimeout,
    SqslabError,
    Unreachable,
    VerificationFailure,
)
from .latin import LatinSquare, OneFactorization, check_latin, check_one_factorization
from .mds import MdsCode
from .model import PARTIAL, S46, SQS, Design, sqs_block_count
from .sqs import AssemblyOutput, check_partial_coverage
from .verify import verify_bbd, verify_design, verify_mds


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="sqslab", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="plan and build a design, writing it to a file")
    con.add_argument("kind", choices=[SQS, S46])
    con.add_argument("--order", type=int, required=True)
    con.add_argument("--seed", type=int, default=0)
    con.add_argument("--out", required=True)
    con.add_argument("--holes", action="store_true", help="leave the 8n+2 holes open")
    con.add_argument("--input", action="append", default=[], help="design file (repeatable)")
    con.add_argument("--threads", type=int, default=1)
    con.add_argument("--budget", type=int, default=500_000)

    ver = sub.add_parser("verify", help="exhaustively check an object file")
    ver.add_argument("file")
    ver.add_argument("--threads", type=int, default=1)

    pla = sub.add_parser("plan", help="print the derivation tree for an order")
    pla.add_argument("--order", type=int, required=True)
    pla.add_argument("--kind", choices=[SQS, S46], default=SQS)

    cnt = sub.add_parser("count", help="exact labeled census at a tiny order")
    cnt.add_argument("--object", choices=["sqs", "quasigroup3", "bbd"], required=True)
    cnt.add_argument("--order", type=int, required=True)

    sta = sub.add_parser("stats", help="check an object file against its count identities")
    sta.add_argument("file")
    return top


def _cmd_construct(args) -> int:
    try:
        node = planner.plan(args.order, args.kind)
    except (Inadmissible, Unreachable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, Unreachable) and exc.missing:
            for rule in exc.missing:
                print(f"missing rule: {rule}", file=sys.stderr)
        return 3
    if args.holes and node.rule != "assembly":
        print("error: --holes applies only to 8n+2 targets", file=sys.stderr)
        return 2
    try:
        result = planner.execute(
            node,
            seed=args.seed,
            budget=args.budget,
            inputs=args.input,
            threads=args.threads,
            holes=args.holes,
        )
    except SearchTimeout as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except PreconditionFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (VerificationFailure, MalformedBlock) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if isinstance(result, AssemblyOutput):
        ok, _ = check_partial_coverage(result, args.threads)
        if not ok:
            print("error: holes-mode coverage profile failed", file=sys.stderr)
            return 1
        design = result.design
        parts = result.parts
        print(
            f"parts: code={parts.code_blocks} word={parts.word_blocks} "
            f"pair={parts.pair_blocks} hole={parts.hole_blocks}"
        )
    else:
        design = result
    io.save(design, args.out)
    print(f"wrote {args.out}: kind={design.kind} v={design.v} blocks={len(design.blocks)}")
    return 0


def _witness_text(items) -> str:
    return ",".join(str(w).replace(" ", "") for w in items)


def _cmd_verify(args) -> int:
    try:
        obj = io.load(args.file)
    except FileNotFoundError:
        print(f"error: no such file: {args.file}", file=sys.stderr)
        return 2
    except (MalformedBlock, ValueError) as exc:
        print(f"FAIL MalformedBlock {exc}")
        return 1
    try:
        if isinstance(obj, Design):
            report = verify_design(obj, args.threads)
            # a partial design is a valid packing as long as nothing is doubled
            ok = report.ok if obj.kind != PARTIAL else report.multiple_count == 0
            if ok:
                print(f"OK {obj.kind} v={obj.v} blocks={len(obj.blocks)}")
                return 0
            witnesses = report.uncovered[:4] + report.multiple[:4]
            print(
                f"FAIL coverage uncovered={report.uncovered_count} "
                f"multiple={report.multiple_count} witnesses={_witness_text(witnesses)}"
            )
            return 1
        if isinstance(obj, MdsCode):
            ok, witness = verify_mds(obj)
            if ok:
                print(f"OK mds d={obj.d} q={obj.q} dist={obj.dist} words={len(obj.words)}")
                return 0
            print(f"FAIL face-coverage witnesses={_witness_text([witness])}")
            return 1
        if isinstance(obj, Bbd):
            ok, report = verify_bbd(obj, args.threads)
            if ok:
                print(f"OK bbd v={2 * obj.m} blocks={len(obj.blocks)}")
                return 0
            witnesses = report.uncovered[:4] + report.multiple[:4]
            print(f"FAIL coverage witnesses={_witness_text(witnesses)}")
            return 1
        if isinstance(obj, LatinSquare):
            check_latin(obj)
            flags = []
            if obj.symmetric:
                flags.append("symmetric")
            if obj.nilpotent:
                flags.append("nilpotent")
            print(f"OK latin q={obj.q}" + (" " + ",".join(flags) if flags else ""))
            return 0
        if isinstance(obj, OneFactorization):
            check_one_factorization(obj)
            print(f"OK onefact m={obj.m} factors={len(obj.factors)}")
            return 0
    except SqslabError as exc:
        print(f"FAIL {type(exc).__name__} {exc}")
        return 1
    except ValueError as exc:
        print(f"FAIL invalid {exc}")
        return 1
    print(f"error: unsupported object in {args.file}", file=sys.stderr)
    return 2


def _cmd_plan(args) -> int:
    try:
        node = planner.plan(args.order, args.kind)
    except Inadmissible as exc:
        print(f"unreachable: {exc}", file=sys.stderr)
        return 3
    except Unreachable as exc:
        print(f"unreachable: {exc}", file=sys.stderr)
        for rule in exc.missing:
            print(f"missing rule: {rule}", file=sys.stderr)
        return 3
    print(planner.format_plan(node))
    return 0


def _cmd_count(args) -> int:
    try:
        if args.object == "sqs":
            n = census.enumerate_sqs(args.order)
        elif args.object == "quasigroup3":
            n = census.enumerate_quasigroups3(args.order)
        else:
            n = census.enumerate_bbd(args.order)
    except SqslabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{args.object} order={args.order} count={n}")
    return 0


def _cmd_stats(args) -> int:
    try:
        obj = io.load(args.file)
    except FileNotFoundError:
        print(f"error: no such file: {args.file}", file=sys.stderr)
        return 2
    except (MalformedBlock, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    ok = True
    if isinstance(obj, Design):
        blocks = len(obj.blocks)
        print(f"design kind={obj.kind} v={obj.v} blocks={blocks}")
        if obj.kind == SQS:
            expected = sqs_block_count(obj.v)
            ok = blocks == expected
            print(f"block-count identity v(v-1)(v-2)/24 = {expected}: {'ok' if ok else 'MISMATCH'}")
        elif obj.kind == PARTIAL and (obj.v - 2) % 8 == 0:
            n = (obj.v - 2) // 8
            expected = 14 * (n**3 - n**2) + 26 * n * n + 6 * n * n * (n - 1)
            ok = blocks == expected
            print(
                f"part identity 14(n^3-n^2)+26n^2+6n^2(n-1) = {expected} at n={n}: "
                f"{'ok' if ok else 'MISMATCH'}"
            )
        coverage = sum(comb(len(b), 3) for b in obj.blocks)
        total = comb(obj.v, 3)
        print(f"triple incidences {coverage} of C(v,3)={total}")
        if obj.kind != PARTIAL:
            ok = ok and coverage == total
    elif isinstance(obj, Bbd):
        expected = expected_block_count(obj.m)
        ok = len(obj.blocks) == expected
        print(f"bbd m={obj.m} blocks={len(obj.blocks)}")
        print(f"block-count identity m^2(m-1)/4 = {expected}: {'ok' if ok else 'MISMATCH'}")
    elif isinstance(obj, MdsCode):
        expected = obj.q ** (obj.d - obj.dist + 1)
        ok = len(obj.words) == expected
        print(f"mds d={obj.d} q={obj.q} dist={obj.dist} words={len(obj.words)}")
        print(f"cardinality identity q^(d-dist+1) = {expected}: {'ok' if ok else 'MISMATCH'}")
    elif isinstance(obj, LatinSquare):
        print(f"latin q={obj.q} symmetric={obj.symmetric} nilpotent={obj.nilpotent}")
    elif isinstance(obj, OneFactorization):
        ok = len(obj.factors) == obj.m - 1
        print(f"onefact m={obj.m} factors={len(obj.factors)} (expected {obj.m - 1})")
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    handlers = {
        "construct": _cmd_construct,
        "verify": _cmd_verify,
        "plan": _cmd_plan,
        "count": _cmd_count,
        "stats": _cmd_stats,
    }
    return handlers[args.command](args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
