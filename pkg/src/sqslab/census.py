"""Exhaustive enumeration of tiny-order objects and distinctness reports.

Counts are labeled (no isomorphism reduction).  Every enumerator supports
two independent search orderings so results can be cross-checked before
being frozen as regression constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import comb, factorial
from typing import Sequence

from .errors import BadParams
from .model import SQS, Design, is_admissible


def _rank3(a: int, b: int, c: int) -> int:
    return a + b * (b - 1) // 2 + c * (c - 1) * (c - 2) // 6


def enumerate_sqs(v: int, ordering: str = "lex") -> int:
    """Exact labeled count of quadruple systems on v points (v <= 10).

    Backtracking over triple coverage: branch on one uncovered triple and
    try every completing block.  ``ordering`` picks which uncovered triple
    is branched on and the candidate order ("lex" or "reverse"); both must
    agree, which is used as an anti-bug oracle.
    """
    if not is_admissible(v, SQS):
        raise BadParams(f"no quadruple system exists at order {v}")
    if v > 10:
        raise BadParams(f"enumeration is capped at order 10, got {v}")
    if v in (1, 2):
        return 1
    total = comb(v, 3)
    full = (1 << total) - 1
    reverse = ordering == "reverse"
    if ordering not in ("lex", "reverse"):
        raise BadParams(f"unknown ordering {ordering!r}")

    triple_of_rank = [
        (a, b, c) for c in range(2, v) for b in range(1, c) for a in range(b)
    ]

    def block_mask(blk: tuple[int, int, int, int]) -> int:
        w0, w1, w2, w3 = blk
        return (
            (1 << _rank3(w1, w2, w3))
            | (1 << _rank3(w0, w2, w3))
            | (1 << _rank3(w0, w1, w3))
            | (1 << _rank3(w0, w1, w2))
        )

    def count(covered: int) -> int:
        if covered == full:
            return 1
        if reverse:
            rank = total - 1
            while covered >> rank & 1:
                rank -= 1
        else:
            rank = (~covered & -~covered).bit_length() - 1  # lowest zero bit
        a, b, c = triple_of_rank[rank]
        candidates = [z for z in range(v) if z not in (a, b, c)]
        if reverse:
            candidates.reverse()
        found = 0
        for z in candidates:
            blk = tuple(sorted((a, b, c, z)))
            mask = block_mask(blk)
            if mask & covered:
                continue
            found += count(covered | mask)
        return found

    return count(0)


def sqs_orbit_count(witness: Design) -> int:
    """Independent recount v!/|Aut| from one labeled witness.

    Valid when all labeled systems at this order form a single relabelling
    orbit (true at the tiny orders this is used for).
    """
    v = witness.v
    blocks = witness.blocks
    aut = 0
    for perm in permutations(range(v)):
        if all(tuple(sorted(perm[p] for p in blk)) in blocks for blk in blocks):
            aut += 1
    return factorial(v) // aut


def enumerate_quasigroups3(k: int, ordering: str = "rows") -> int:
    """Exact count of ternary quasigroups of order k (k <= 4).

    Cell-by-cell backtracking with the three line constraints; "rows" and
    "planes" orderings traverse the cube differently and must agree.
    """
    if k < 1:
        raise BadParams(f"order must be positive, got {k}")
    if k > 4:
        raise BadParams(f"enumeration is capped at order 4, got {k}")
    if ordering == "rows":
        cells = [(x, y, u) for x in range(k) for y in range(k) for u in range(k)]
        values = list(range(k))
    elif ordering == "planes":
        cells = [(x, y, u) for u in range(k) for y in range(k) for x in range(k)]
        values = list(range(k - 1, -1, -1))
    else:
        raise BadParams(f"unknown ordering {ordering!r}")
    full = (1 << k) - 1
    row = [[full] * k for _ in range(k)]
    col = [[full] * k for _ in range(k)]
    pil = [[full] * k for _ in range(k)]

    def count(pos: int) -> int:
        if pos == len(cells):
            return 1
        x, y, u = cells[pos]
        avail = row[x][y] & col[x][u] & pil[y][u]
        found = 0
        for v in values:
            bit = 1 << v
            if not avail & bit:
                continue
            row[x][y] ^= bit
            col[x][u] ^= bit
            pil[y][u] ^= bit
            found += count(pos + 1)
            row[x][y] ^= bit
            col[x][u] ^= bit
            pil[y][u] ^= bit
        return found

    return count(0)


def enumerate_bbd(m: int, ordering: str = "lex") -> int:
    """Exact labeled count of bipartite designs with group size m (m <= 4)."""
    if m < 2 or m % 2:
        raise BadParams(f"even group size >= 2 required, got {m}")
    if m > 4:
        raise BadParams(f"enumeration is capped at group size 4, got {m}")
    if ordering not in ("lex", "reverse"):
        raise BadParams(f"unknown ordering {ordering!r}")
    reverse = ordering == "reverse"
    v = 2 * m
    crossing = [
        (a, b, c)
        for c in range(2, v)
        for b in range(1, c)
        for a in range(b)
        if not (c < m or a >= m)
    ]
    index = {t: i for i, t in enumerate(crossing)}
    full = (1 << len(crossing)) - 1

    def completions(a: int, b: int, c: int) -> list[tuple[int, int, int, int]]:
        low = [p for p in (a, b, c) if p < m]
        if len(low) == 2:
            others = [z for z in range(m, v) if z not in (a, b, c)]
        else:
            others = [z for z in range(m) if z not in (a, b, c)]
        return [tuple(sorted((a, b, c, z))) for z in others]

    def block_mask(blk: tuple[int, int, int, int]) -> int:
        mask = 0
        w0, w1, w2, w3 = blk
        for t in ((w1, w2, w3), (w0, w2, w3), (w0, w1, w3), (w0, w1, w2)):
            mask |= 1 << index[t]
        return mask

    def count(covered: int) -> int:
        if covered == full:
            return 1
        if reverse:
            i = len(crossing) - 1
            while covered >> i & 1:
                i -= 1
        else:
            i = (~covered & -~covered).bit_length() - 1
        cands = completions(*crossing[i])
        if reverse:
            cands.reverse()
        found = 0
        for blk in cands:
            mask = block_mask(blk)
            if mask & covered:
                continue
            found += count(covered | mask)
        return found

    return count(0)


@dataclass(frozen=True)
class DistinctReport:
    distinct: int
    collisions: tuple[tuple[int, int], ...]


def _point_count(obj) -> int:
    v = getattr(obj, "v", None)
    if v is not None:
        return v
    return 2 * obj.m  # bipartite designs carry the group size


def distinct_family_report(designs: Sequence) -> DistinctReport:
    """Count pairwise-distinct block sets; witnesses are colliding index pairs."""
    if designs:
        v = _point_count(designs[0])
        if any(_point_count(d) != v for d in designs):
            raise BadParams("designs must share one point set")
    seen: dict[frozenset, int] = {}
    collisions: list[tuple[int, int]] = []
    for i, d in enumerate(designs):
        if d.blocks in seen:
            collisions.append((seen[d.blocks], i))
        else:
            seen[d.blocks] = i
    return DistinctReport(len(seen), tuple(collisions[:16]))
