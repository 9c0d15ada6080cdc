"""Steiner quadruple system constructions.

Base systems (the Boolean system on 8 points, stochastic search for small
orders), the doubling construction, and the 8n+2 assembly that splices a
length-8 MDS code, two small base systems, and bipartite designs into one
system, optionally leaving its four recursion holes open.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .bbd import Bbd
from .errors import (
    AssemblyInvariantBroken,
    KindMismatch,
    OrderMismatch,
    PreconditionFailure,
    SearchTimeout,
    VerificationFailure,
)
from .mds import MdsCode, extend_to_distance2, project
from .model import PARTIAL, S46, SQS, Design, Hole, is_admissible, sqs_block_count
from .verify import CategoryCounts, coverage_profile, verify_bbd, verify_design, verify_mds

SEARCH_CAP = 40

# triple categories used by the 8n+2 assembly's coverage profile
THREE_GROUPS = "three_groups"
ONE_E_CROSS = "one_e_cross"
PAIR_CROSS = "pair_cross"
HOLE = "hole"
E_PAIR = "e_pair"


def boolean_sqs8() -> Design:
    """The system on 3-bit vectors whose blocks are the XOR-zero 4-sets."""
    blocks = frozenset(
        blk for blk in combinations(range(8), 4) if blk[0] ^ blk[1] ^ blk[2] ^ blk[3] == 0
    )
    return Design(SQS, 8, blocks)


def s46_base(v: int) -> Design:
    """Single-block (or empty) mixed designs at orders 2, 4, 6."""
    if v == 2:
        return Design(S46, 2, frozenset())
    if v == 4:
        return Design(S46, 4, frozenset({(0, 1, 2, 3)}))
    if v == 6:
        return Design(S46, 6, frozenset({(0, 1, 2, 3, 4, 5)}))
    raise PreconditionFailure(f"no base mixed design at order {v}")


def _rank3(a: int, b: int, c: int) -> int:
    return a + b * (b - 1) // 2 + c * (c - 1) * (c - 2) // 6


def search_small_sqs(v: int, seed: int = 0, budget: int = 500_000, cap: int = SEARCH_CAP) -> Design:
    """Seeded ejection walk: repeatedly cover a random uncovered triple by
    the completing point that ejects the fewest existing blocks; moves
    forcing two or more ejections are taken with small probability only.
    Restarts from scratch on long stalls, all within one move budget.

    Deterministic per (v, seed, budget); best-effort above the easy orders.
    Raises SearchTimeout when the budget runs out; callers may retry with
    another seed.
    """
    if not is_admissible(v, SQS):
        raise PreconditionFailure(f"no quadruple system exists at order {v}")
    if v > cap:
        raise PreconditionFailure(f"order {v} above the search cap {cap}")
    if v in (1, 2):
        return Design(SQS, v, frozenset())
    rng = random.Random(seed)
    triples = [
        (a, b, c) for c in range(2, v) for b in range(1, c) for a in range(b)
    ]  # index = colex rank
    restart_len = max(40_000, budget // 8)
    moves = 0
    blocks: set[tuple[int, int, int, int]] = set()
    while moves < budget:
        owner: dict[int, tuple[int, int, int, int]] = {}
        uncovered = list(range(len(triples)))
        position = {r: i for i, r in enumerate(uncovered)}
        blocks = set()

        def cover(rank: int, blk: tuple[int, int, int, int]) -> None:
            owner[rank] = blk
            i = position.pop(rank)
            last = uncovered.pop()
            if last != rank:
                uncovered[i] = last
                position[last] = i

        def uncover(rank: int) -> None:
            del owner[rank]
            position[rank] = len(uncovered)
            uncovered.append(rank)

        local = 0
        while uncovered and moves < budget and local < restart_len:
            moves += 1
            local += 1
            rank = uncovered[rng.randrange(len(uncovered))]
            a, b, c = triples[rank]
            best_cost = 5
            best: list[tuple] = []
            for z in range(v):
                if z == a or z == b or z == c:
                    continue
                blk = tuple(sorted((a, b, c, z)))
                w0, w1, w2, w3 = blk
                ranks = (
                    _rank3(w1, w2, w3),
                    _rank3(w0, w2, w3),
                    _rank3(w0, w1, w3),
                    _rank3(w0, w1, w2),
                )
                clashing = frozenset(owner[r] for r in ranks if r in owner)
                cost = len(clashing)
                if cost < best_cost:
                    best_cost = cost
                    best = [(blk, ranks, clashing)]
                elif cost == best_cost:
                    best.append((blk, ranks, clashing))
            if best_cost > 1 and rng.random() > 0.1:
                continue
            blk, ranks, clashing = best[rng.randrange(len(best))]
            for old in clashing:
                blocks.discard(old)
                o0, o1, o2, o3 = old
                for r in (
                    _rank3(o1, o2, o3),
                    _rank3(o0, o2, o3),
                    _rank3(o0, o1, o3),
                    _rank3(o0, o1, o2),
                ):
                    uncover(r)
            blocks.add(blk)
            for r in ranks:
                cover(r, blk)
        if not uncovered:
            design = Design(SQS, v, frozenset(blocks))
            report = verify_design(design)
            if not report.ok:
                raise VerificationFailure("search produced an invalid system")
            return design
    raise SearchTimeout(
        f"no quadruple system of order {v} after {budget} moves"
    )


def normalize_s10(s10: Design, e1: int, e2: int) -> tuple[Design, dict[tuple[int, int], int]]:
    """Relabel a verified order-10 system so that e1 -> 8, e2 -> 9 and the
    four blocks through {e1, e2} become {2i, 2i+1, 8, 9}.

    Those four blocks always partition the other eight points into pairs;
    pair i (by least original point) is labelled (2i, 2i+1).  Returns the
    relabelled design and the map from (i, delta) labels to original points.
    """
    if s10.v != 10:
        raise PreconditionFailure(f"expected order 10, got {s10.v}")
    if not verify_design(s10).ok:
        raise PreconditionFailure("input order-10 design fails verification")
    through = [blk for blk in s10.blocks if e1 in blk and e2 in blk]
    if len(through) != 4:
        raise PreconditionFailure(f"{len(through)} blocks through the point pair, expected 4")
    pairs = sorted(tuple(sorted(set(blk) - {e1, e2})) for blk in through)
    relabel = {e1: 8, e2: 9}
    labels: dict[tuple[int, int], int] = {}
    for i, (p, pp) in enumerate(pairs):
        relabel[p] = 2 * i
        relabel[pp] = 2 * i + 1
        labels[(i, 0)] = p
        labels[(i, 1)] = pp
    blocks = frozenset(tuple(sorted(relabel[p] for p in blk)) for blk in s10.blocks)
    design = Design(SQS, 10, blocks)
    for i in range(4):
        if (2 * i, 2 * i + 1, 8, 9) not in design.blocks:
            raise AssemblyInvariantBroken("normalization lost a required block")
    return design, labels


def double(sa: Design, sb: Design, cross: Bbd) -> Design:
    """Order-2n system from two order-n systems and a bipartite design.

    Blocks: sa as-is on [0, n), sb shifted to [n, 2n), plus the bipartite
    blocks; both inputs are literal sub-block-sets of the output.
    """
    if sa.kind != sb.kind:
        raise KindMismatch(f"cannot double {sa.kind} with {sb.kind}")
    if sa.v != sb.v:
        raise OrderMismatch(f"halves have orders {sa.v} and {sb.v}")
    n = sa.v
    if cross.m != n:
        raise OrderMismatch(f"bipartite group size {cross.m} does not match half order {n}")
    for half, name in ((sa, "first half"), (sb, "second half")):
        if not verify_design(half).ok:
            raise PreconditionFailure(f"{name} fails verification")
    ok, _ = verify_bbd(cross)
    if not ok:
        raise PreconditionFailure("bipartite design fails verification")
    shifted = {tuple(p + n for p in blk) for blk in sb.blocks}
    blocks = frozenset(sa.blocks | shifted | cross.blocks)
    design = Design(sa.kind, 2 * n, blocks)
    report = verify_design(design)
    if not report.ok:
        raise VerificationFailure("doubled design failed verification")
    return design


@dataclass(frozen=True)
class GroupLayout:
    """Point layout of the 8n+2 assembly.

    Group label c in [0, 8) covers points [c*n, (c+1)*n); labels pair up as
    (i, delta) = (c // 2, c % 2).  The two extra points come last.
    """

    n: int

    @property
    def e1(self) -> int:
        return 8 * self.n

    @property
    def e2(self) -> int:
        return 8 * self.n + 1

    @property
    def v(self) -> int:
        return 8 * self.n + 2

    def point(self, label: int, value: int) -> int:
        return label * self.n + value

    def hole_points(self, i: int) -> tuple[int, ...]:
        start = 2 * i * self.n
        return tuple(range(start, start + 2 * self.n)) + (self.e1, self.e2)

    def classify(self, a: int, b: int, c: int) -> str:
        n = self.n
        e1 = 8 * n
        if b >= e1:
            return E_PAIR
        la, lb = a // n, b // n
        if c >= e1:
            return ONE_E_CROSS if la // 2 != lb // 2 else HOLE
        lc = c // n
        if la != lb and lb != lc:
            return THREE_GROUPS
        if la == lb == lc:
            return HOLE
        same, other = (la, lc) if la == lb else (lb, la)
        return PAIR_CROSS if same // 2 != other // 2 else HOLE


@dataclass(frozen=True)
class PartCounts:
    """Block tallies of the four families making up the 8n+2 assembly."""

    code_blocks: int  # extended-code transverse blocks
    word_blocks: int  # blocks patterned on the order-10 system per code word
    pair_blocks: int  # bipartite-design blocks over cross-i group pairs
    hole_blocks: int  # order-(2n+2) systems filling the holes

    def total(self) -> int:
        return self.code_blocks + self.word_blocks + self.pair_blocks + self.hole_blocks


@dataclass(frozen=True)
class AssemblyOutput:
    design: Design
    holes: tuple[Hole, ...]
    parts: PartCounts


def _cross_pairs() -> list[tuple[int, int]]:
    return [(x, y) for x in range(8) for y in range(x + 1, 8) if x // 2 != y // 2]


def assemble_8n_plus_2(
    n: int,
    s8: Design,
    s10n: Design,
    code: MdsCode,
    cross_designs: Bbd | Mapping[tuple[int, int], Bbd],
    hole_designs: Sequence[Design] | None = None,
    kind: str = SQS,
    threads: int = 1,
) -> AssemblyOutput:
    """Assemble a system of order 8n+2 (or its holes-open partial form).

    Block families, over the layout of eight n-point groups plus {e1, e2}:

    * for each block s of the order-8 system, the words of the distance-2
      extension of the code's projection onto s, minus the projection
      itself, read as 4-group transverse blocks: 14(n^3 - n^2) blocks;
    * for each of the n^2 code words, the 26 blocks patterned on the
      normalized order-10 system (its 10 all-group blocks, and its 16
      blocks using exactly one extra point): 26 n^2 blocks;
    * a bipartite design on every one of the 24 group pairs with distinct
      i: 6 n^2 (n-1) blocks;
    * with hole designs supplied, an order-(2n+2) system on each of the
      four holes, completing the order to (8n+2)(8n+1)8n/24 blocks.

    Without hole designs the result is a partial design whose coverage
    profile is exactly once outside the holes and zero inside them.
    """
    if n < 2 or n % 2:
        raise PreconditionFailure(f"even n >= 2 required, got {n}")
    if kind == SQS and n % 6 not in (0, 4):
        raise PreconditionFailure(f"orders 2n+2 and 8n+2 are inadmissible at n={n}")
    if kind not in (SQS, S46):
        raise PreconditionFailure(f"target kind must be sqs or s46, got {kind}")
    if s8.v != 8 or len(s8.blocks) != 14 or not verify_design(s8).ok:
        raise PreconditionFailure("order-8 system input is invalid")
    if s10n.v != 10 or not verify_design(s10n).ok:
        raise PreconditionFailure("order-10 system input is invalid")
    for i in range(4):
        if (2 * i, 2 * i + 1, 8, 9) not in s10n.blocks:
            raise PreconditionFailure("order-10 system is not normalized")
    if (code.d, code.q, code.dist) != (8, n, 7):
        raise PreconditionFailure(
            f"need a length-8 distance-7 code of order {n}, got "
            f"(d={code.d}, q={code.q}, dist={code.dist})"
        )
    ok, witness = verify_mds(code)
    if not ok:
        raise PreconditionFailure(f"code input fails verification: {witness}")
    pairs = _cross_pairs()
    if isinstance(cross_designs, Bbd):
        cross_map = {pair: cross_designs for pair in pairs}
    else:
        cross_map = dict(cross_designs)
        if sorted(cross_map) != sorted(pairs):
            raise PreconditionFailure("need a bipartite design for each of the 24 cross pairs")
    for dev in {id(b): b for b in cross_map.values()}.values():
        if dev.m != n:
            raise PreconditionFailure(f"bipartite group size {dev.m}, expected {n}")
        ok, _ = verify_bbd(dev, threads)
        if not ok:
            raise PreconditionFailure("a bipartite design input fails verification")
    if hole_designs is not None:
        if len(hole_designs) != 4:
            raise PreconditionFailure(f"need 4 hole designs, got {len(hole_designs)}")
        for i, dsn in enumerate(hole_designs):
            if dsn.v != 2 * n + 2:
                raise PreconditionFailure(f"hole design {i} has order {dsn.v}, expected {2 * n + 2}")
            if kind == SQS and dsn.kind != SQS:
                raise PreconditionFailure(f"hole design {i} has kind {dsn.kind}, expected sqs")
            if not verify_design(dsn).ok:
                raise PreconditionFailure(f"hole design {i} fails verification")

    layout = GroupLayout(n)
    words = sorted(code.words)

    code_blocks: list[tuple[int, ...]] = []
    for s in sorted(s8.blocks):
        extra = min(set(range(8)) - set(s))
        five = tuple(sorted(s + (extra,)))
        m5 = project(code, five)
        extended = extend_to_distance2(m5, five.index(extra))
        m_s = project(code, s)
        for w in sorted(extended.words - m_s.words):
            code_blocks.append(tuple(layout.point(s[j], w[j]) for j in range(4)))

    word_blocks: list[tuple[int, ...]] = []
    patterns = sorted(blk for blk in s10n.blocks if not (8 in blk and 9 in blk))
    for w in words:
        pts = [layout.point(lab, w[lab]) for lab in range(8)] + [layout.e1, layout.e2]
        for blk in patterns:
            word_blocks.append(tuple(pts[x] for x in blk))

    pair_blocks: list[tuple[int, ...]] = []
    for la, lb in pairs:
        cross = cross_map[(la, lb)]
        for blk in sorted(cross.blocks):
            pair_blocks.append(
                tuple(layout.point(la, p) if p < n else layout.point(lb, p - n) for p in blk)
            )

    hole_blocks: list[tuple[int, ...]] = []
    if hole_designs is not None:
        for i, dsn in enumerate(hole_designs):
            base = 2 * i * n
            mapping = list(range(base, base + 2 * n)) + [layout.e1, layout.e2]
            for blk in sorted(dsn.blocks):
                hole_blocks.append(tuple(mapping[p] for p in blk))

    parts = PartCounts(
        len(code_blocks), len(word_blocks), len(pair_blocks), len(hole_blocks)
    )
    if parts.code_blocks != 14 * (n**3 - n**2):
        raise AssemblyInvariantBroken(f"code-block family has {parts.code_blocks} blocks")
    if parts.word_blocks != 26 * n * n:
        raise AssemblyInvariantBroken(f"word-block family has {parts.word_blocks} blocks")
    if parts.pair_blocks != 6 * n * n * (n - 1):
        raise AssemblyInvariantBroken(f"pair-block family has {parts.pair_blocks} blocks")
    all_blocks = frozenset(code_blocks) | frozenset(word_blocks) | frozenset(pair_blocks) | frozenset(hole_blocks)
    if len(all_blocks) != parts.total():
        raise AssemblyInvariantBroken("block families overlap")

    holes = tuple(Hole(layout.hole_points(i), kind) for i in range(4))
    if hole_designs is None:
        design = Design(PARTIAL, layout.v, all_blocks)
        return AssemblyOutput(design, holes, parts)
    design = Design(kind, layout.v, all_blocks)
    if kind == SQS and len(all_blocks) != sqs_block_count(layout.v):
        raise AssemblyInvariantBroken(
            f"assembled {len(all_blocks)} blocks, expected {sqs_block_count(layout.v)}"
        )
    report = verify_design(design, threads)
    if not report.ok:
        raise VerificationFailure(
            f"assembled design failed coverage: uncovered={report.uncovered[:4]} "
            f"multiple={report.multiple[:4]}"
        )
    return AssemblyOutput(design, holes, parts)


def check_partial_coverage(
    out: AssemblyOutput, threads: int = 1
) -> tuple[bool, dict[str, CategoryCounts]]:
    """Every non-hole triple covered exactly once, every hole triple never."""
    n = (out.design.v - 2) // 8
    layout = GroupLayout(n)
    profile = coverage_profile(out.design.v, out.design.blocks, layout.classify, threads)
    ok = True
    for label in (THREE_GROUPS, ONE_E_CROSS, PAIR_CROSS):
        counts = profile.get(label, CategoryCounts(0, 0, 0))
        if counts.uncovered or counts.multiple:
            ok = False
    for label in (HOLE, E_PAIR):
        counts = profile.get(label, CategoryCounts(0, 0, 0))
        if counts.once or counts.multiple:
            ok = False
    return ok, profile
