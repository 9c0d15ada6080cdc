"""Derivation planning over the in-scope construction rules.

Rules: BASE (orders with explicit constructions), SEARCH (stochastic, for
quadruple systems up to a cap), DOUBLE (n to 2n), and the 8n+2 assembly.
Targets only reachable through the external injection rules cited but not
constructed here (2n-2, 3n-2, 6n-10, 3n-4) are reported as unreachable
with the absent rule named, rather than silently replaced by search.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .bbd import bbd_from_factorizations
from .errors import Inadmissible, PreconditionFailure, Unreachable, VerificationFailure
from .io import load_design
from .latin import mols_achievable, mols_supply, round_robin_one_factorization
from .mds import mds_from_mols
from .model import S46, SQS, Design, is_admissible
from .sqs import (
    SEARCH_CAP,
    AssemblyOutput,
    assemble_8n_plus_2,
    boolean_sqs8,
    double,
    normalize_s10,
    s46_base,
    search_small_sqs,
)
from .verify import verify_design

_BASE_ORDERS = {SQS: (1, 2, 4, 8), S46: (2, 4, 6)}

# sources below this order are treated as degenerate for the external
# injection rules; they neither block search nor appear in diagnostics
_ROUTE_MIN_SOURCE = 8
_ROUTE_DIAG_MIN_SOURCE = 4


@dataclass(frozen=True)
class PlanNode:
    """One rule application; children are the designs it consumes."""

    rule: str  # base | search | file | double | assembly
    kind: str
    v: int
    children: tuple["PlanNode", ...] = ()
    note: str = ""

    def cost(self) -> tuple[int, int, int]:
        files = searches = total = 0
        stack = [self]
        while stack:
            node = stack.pop()
            total += node.v
            files += node.rule == "file"
            searches += node.rule == "search"
            stack.extend(node.children)
        return (files, searches, total)

    def leaves(self, rule: str) -> list["PlanNode"]:
        out = []
        stack = [self]
        while stack:
            node = stack.pop()
            if node.rule == rule:
                out.append(node)
            stack.extend(node.children)
        return out


def _injection_routes(v: int, kind: str, min_source: int) -> list[str]:
    """External injection rules that would reach v from an in-principle
    admissible source of at least min_source points."""
    routes = []
    if kind == SQS:
        if (v + 2) % 3 == 0:
            n = (v + 2) // 3
            if n >= min_source and is_admissible(n, S46):
                routes.append(f"3n-2 (from s46({n}))")
        if (v + 10) % 6 == 0:
            n = (v + 10) // 6
            if n >= min_source and is_admissible(n, SQS):
                routes.append(f"6n-10 (from sqs({n}))")
        if (v + 4) % 3 == 0:
            n = (v + 4) // 3
            if n % 12 == 10 and n >= min_source:
                routes.append(f"3n-4 (from sqs({n}))")
    else:
        if (v + 2) % 2 == 0:
            n = (v + 2) // 2
            if n >= min_source and is_admissible(n, S46):
                routes.append(f"2n-2 (from s46({n}))")
    return routes


def _assembly_gates(n: int, kind: str) -> bool:
    if n < 2 or n % 2:
        return False
    if kind == SQS and n % 6 not in (0, 4):
        return False
    return mols_achievable(n) >= 6


def _subplan(v: int, kind: str, cap: int, memo: dict, as_root: bool) -> PlanNode | None:
    key = (v, kind)
    if not as_root and key in memo:
        return memo[key]
    candidates: list[PlanNode] = []
    if v in _BASE_ORDERS[kind]:
        candidates.append(PlanNode("base", kind, v))
    else:
        if v % 2 == 0 and v >= 4 and is_admissible(v // 2, kind):
            child = _subplan(v // 2, kind, cap, memo, as_root=False)
            if child is not None:
                candidates.append(PlanNode("double", kind, v, (child,)))
        if v > 2 and (v - 2) % 8 == 0:
            n = (v - 2) // 8
            if _assembly_gates(n, kind):
                ds = _subplan(2 * n + 2, kind, cap, memo, as_root=False)
                if ds is None:
                    ds = PlanNode("file", kind, 2 * n + 2, note="supply via --input")
                elif ds.rule == "search":
                    ds = PlanNode(
                        "search", kind, ds.v, note="search-only: no in-scope rule reaches this order"
                    )
                note = (
                    f"needs 6 MOLS of order {n}, 24 bipartite designs m={n}, "
                    f"base systems of orders 8 and 10; 4 holes of order {2 * n + 2}"
                )
                candidates.append(PlanNode("assembly", kind, v, (ds,), note))
        if not as_root and kind == SQS and v <= cap:
            candidates.append(PlanNode("search", kind, v))
    best = min(candidates, key=PlanNode.cost) if candidates else None
    if not as_root:
        memo[key] = best
    return best


def plan(v: int, kind: str = SQS, cap: int = SEARCH_CAP) -> PlanNode:
    """Derivation plan for a design of the given order and kind.

    Prefers constructive rules (fewest file leaves, then fewest search
    leaves, then smallest total order).  A bare search at the target order
    is offered only when no external injection route from a non-degenerate
    source exists; otherwise the absent rules are reported.
    """
    if kind not in (SQS, S46):
        raise ValueError(f"kind must be sqs or s46, got {kind!r}")
    if not is_admissible(v, kind):
        raise Inadmissible(f"no {kind} design exists at order {v}")
    memo: dict = {}
    node = _subplan(v, kind, cap, memo, as_root=True)
    if node is not None:
        return node
    if kind == SQS and v <= cap and not _injection_routes(v, kind, _ROUTE_MIN_SOURCE):
        return PlanNode("search", kind, v)
    missing = _injection_routes(v, kind, _ROUTE_DIAG_MIN_SOURCE)
    raise Unreachable(
        missing,
        f"order {v} ({kind}) is not reachable with in-scope rules"
        + (f"; absent rules: {', '.join(missing)}" if missing else ""),
    )


def format_plan(node: PlanNode, indent: int = 0) -> str:
    pad = "  " * indent
    line = f"{pad}{node.rule} {node.kind}({node.v})"
    if node.note:
        line += f"  [{node.note}]"
    lines = [line]
    for child in node.children:
        lines.append(format_plan(child, indent + 1))
    return "\n".join(lines)


def execute(
    node: PlanNode,
    seed: int = 0,
    budget: int = 500_000,
    inputs: Sequence[str] = (),
    threads: int = 1,
    holes: bool = False,
) -> Design | AssemblyOutput:
    """Run a plan bottom-up, verifying every intermediate object.

    Deterministic per seed: all per-node seeds derive from one stream.
    ``inputs`` are design files consumed by file leaves (and, when given,
    they override search leaves feeding the 8n+2 holes).  With ``holes``
    set and an 8n+2 root, the four holes stay open and the full assembly
    output (partial design, holes, part counts) is returned.
    """
    rng = random.Random(seed)
    if holes and node.rule != "assembly":
        raise PreconditionFailure("holes mode applies only to an 8n+2 assembly root")

    def run(node: PlanNode, at_root: bool) -> Design | AssemblyOutput:
        if node.rule == "base":
            design = _base_design(node.kind, node.v)
            if not verify_design(design).ok:
                raise VerificationFailure(f"base design at order {node.v} failed verification")
            return design
        if node.rule == "search":
            return search_small_sqs(node.v, seed=rng.randrange(1 << 62), budget=budget)
        if node.rule == "file":
            raise PreconditionFailure(
                f"plan needs an order-{node.v} design from a file; none supplied"
            )
        if node.rule == "double":
            half = run(node.children[0], False)
            cross = bbd_from_factorizations(
                round_robin_one_factorization(node.v // 2),
                round_robin_one_factorization(node.v // 2),
            )
            return double(half, half, cross)
        if node.rule == "assembly":
            n = (node.v - 2) // 8
            use_holes = holes and at_root
            ds = None
            if not use_holes:
                ds = _hole_inputs(node, n, rng, budget)
            s10n, _ = normalize_s10(
                search_small_sqs(10, seed=rng.randrange(1 << 62), budget=budget), 8, 9
            )
            code = mds_from_mols(mols_supply(n, 6))
            cross = bbd_from_factorizations(
                round_robin_one_factorization(n), round_robin_one_factorization(n)
            )
            out = assemble_8n_plus_2(
                n, boolean_sqs8(), s10n, code, cross, ds, kind=node.kind, threads=threads
            )
            return out if use_holes else out.design
        raise ValueError(f"unknown rule {node.rule!r}")

    def _hole_inputs(node: PlanNode, n: int, rng, budget: int) -> list[Design]:
        if inputs:
            designs = []
            for i in range(4):
                path = inputs[i % len(inputs)]
                design = load_design(path)
                if design.v != 2 * n + 2:
                    raise PreconditionFailure(
                        f"{path} holds order {design.v}, expected {2 * n + 2}"
                    )
                if not verify_design(design).ok:
                    raise VerificationFailure(f"{path} failed verification")
                designs.append(design)
            return designs
        child = node.children[0]
        if child.rule == "file":
            raise PreconditionFailure(
                f"plan needs order-{child.v} designs from files; pass them via inputs"
            )
        return [run(child, False) for _ in range(4)]

    def _base_design(kind: str, v: int) -> Design:
        if kind == SQS:
            if v in (1, 2):
                return Design(SQS, v, frozenset())
            if v == 4:
                return Design(SQS, 4, frozenset({(0, 1, 2, 3)}))
            return boolean_sqs8()
        return s46_base(v)

    return run(node, True)
