"""Exact, exhaustive correctness checking for every object class.

Coverage is counted over the colexicographic triple index with a saturating
occupancy table (states 0, 1, >=2), so reports are exact even when witness
lists are truncated.  Verifiers recompute cardinalities instead of trusting
declared parameters: they are the oracles for every randomized construction
in the package.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import TYPE_CHECKING, Callable, Iterable, NamedTuple

import numpy as np

from .errors import AlphabetViolation, BadParams, BadSplit, MalformedBlock, NotTransverse
from .model import BLOCK_SIZES, Design, sqs_block_count, unrank_triple

if TYPE_CHECKING:  # pragma: no cover - type-only imports
    from .bbd import Bbd
    from .mds import MdsCode

WITNESS_LIMIT = 16

# occupancy scratch stays under this many bytes; larger orders are counted
# in triple-range partitions (the count table itself is one byte per triple)
_MEM_BUDGET = 64 * 1024 * 1024


class CategoryCounts(NamedTuple):
    once: int
    uncovered: int
    multiple: int


@dataclass(frozen=True)
class CoverageReport:
    """Exact triple-coverage tallies plus truncated witness lists."""

    total: int
    covered_once: int
    uncovered_count: int
    multiple_count: int
    uncovered: tuple[tuple[int, int, int], ...]
    multiple: tuple[tuple[int, int, int], ...]
    categories: dict[str, CategoryCounts] | None = None

    @property
    def ok(self) -> bool:
        return self.uncovered_count == 0 and self.multiple_count == 0


def _triple_ranks(blocks: Iterable[tuple[int, ...]]) -> np.ndarray:
    """int64 colex ranks of every (block, contained-triple) incidence."""
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for blk in blocks:
        by_size.setdefault(len(blk), []).append(blk)
    parts = []
    for size, blks in sorted(by_size.items()):
        arr = np.asarray(blks, dtype=np.int64)
        for i, j, l in combinations(range(size), 3):
            a, b, c = arr[:, i], arr[:, j], arr[:, l]
            parts.append(a + b * (b - 1) // 2 + c * (c - 1) * (c - 2) // 6)
    if not parts:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(parts)


def _occupancy(v: int, ranks: np.ndarray, threads: int = 1) -> np.ndarray:
    """Saturating per-triple cover states (uint8 values 0, 1, 2)."""
    total = comb(v, 3)
    parts = max(threads, -(-total * 8 // _MEM_BUDGET), 1)
    if parts == 1 or total < (1 << 14):
        counts = np.bincount(ranks, minlength=total)
        return np.minimum(counts, 2).astype(np.uint8)
    bounds = [total * i // parts for i in range(parts + 1)]

    def run(i: int) -> np.ndarray:
        lo, hi = bounds[i], bounds[i + 1]
        sel = ranks[(ranks >= lo) & (ranks < hi)] - lo
        return np.minimum(np.bincount(sel, minlength=hi - lo), 2).astype(np.uint8)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pieces = list(pool.map(run, range(parts)))
    else:
        pieces = [run(i) for i in range(parts)]
    return np.concatenate(pieces) if pieces else np.zeros(0, dtype=np.uint8)


def _report_from_state(v: int, state: np.ndarray) -> CoverageReport:
    total = int(state.size)
    uncovered_count = int(np.count_nonzero(state == 0))
    multiple_count = int(np.count_nonzero(state == 2))
    uncovered = tuple(
        unrank_triple(v, int(r)) for r in np.flatnonzero(state == 0)[:WITNESS_LIMIT]
    )
    multiple = tuple(
        unrank_triple(v, int(r)) for r in np.flatnonzero(state == 2)[:WITNESS_LIMIT]
    )
    return CoverageReport(
        total=total,
        covered_once=total - uncovered_count - multiple_count,
        uncovered_count=uncovered_count,
        multiple_count=multiple_count,
        uncovered=uncovered,
        multiple=multiple,
    )


def _check_blocks(v: int, blocks: Iterable[tuple[int, ...]], sizes: tuple[int, ...]) -> None:
    for blk in blocks:
        if len(blk) not in sizes:
            raise MalformedBlock(f"block {blk} has size {len(blk)}, expected one of {sizes}")
        if any(blk[i] >= blk[i + 1] for i in range(len(blk) - 1)):
            raise MalformedBlock(f"block {blk} is not strictly ascending")
        if blk[0] < 0 or blk[-1] >= v:
            raise MalformedBlock(f"block {blk} leaves the point range [0, {v})")


def verify_design(design: Design, threads: int = 1) -> CoverageReport:
    """Exact once-coverage check of all C(v,3) triples by the blocks.

    Malformed blocks raise before any coverage is counted.  The report has
    empty uncovered/multiple tallies iff the design is a valid 3-design of
    its kind (partial designs legitimately leave triples uncovered).
    """
    _check_blocks(design.v, design.blocks, BLOCK_SIZES[design.kind])
    state = _occupancy(design.v, _triple_ranks(design.blocks), threads)
    return _report_from_state(design.v, state)


def coverage_profile(
    v: int,
    blocks: Iterable[tuple[int, ...]],
    classifier: Callable[[int, int, int], str],
    threads: int = 1,
) -> dict[str, CategoryCounts]:
    """Per-category exact (once, uncovered, multiple) tallies.

    The classifier must be total on ascending triples of [0, v); triples
    are walked in colex rank order.
    """
    state = _occupancy(v, _triple_ranks(blocks), threads).tobytes()
    tallies: dict[str, list[int]] = {}
    r = 0
    for c in range(2, v):
        for b in range(1, c):
            for a in range(b):
                label = classifier(a, b, c)
                row = tallies.get(label)
                if row is None:
                    row = tallies[label] = [0, 0, 0]
                s = state[r]
                if s == 1:
                    row[0] += 1
                elif s == 0:
                    row[1] += 1
                else:
                    row[2] += 1
                r += 1
    return {label: CategoryCounts(*row) for label, row in tallies.items()}


def verify_mds(code: "MdsCode") -> tuple[bool, object | None]:
    """True iff the word set meets every face of its declared distance
    exactly once: cardinality q^(d-dist+1) and injectivity of every
    projection onto d-dist+1 coordinates.  Distance 1 degenerates to
    "every word of the full space present", which is what 2-coordinate
    projections of distance-(d-1) codes produce.

    The witness is a violating word pair (two words agreeing on enough
    coordinates) or a description of an empty face.
    """
    d, q, dist = code.d, code.q, code.dist
    if not 1 <= dist <= d:
        raise BadParams(f"distance {dist} outside [1, {d}]")
    for w in code.words:
        if len(w) != d:
            raise AlphabetViolation(f"word {w} has length {len(w)}, expected {d}")
        if any(not 0 <= x < q for x in w):
            raise AlphabetViolation(f"word {w} leaves the alphabet [0, {q})")
    fixed = d - dist + 1
    expected = q**fixed
    for coords in combinations(range(d), fixed):
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for w in sorted(code.words):
            key = tuple(w[i] for i in coords)
            if key in seen:
                return False, (seen[key], w)
            seen[key] = w
    if len(code.words) != expected:
        coords = tuple(range(fixed))
        present = {tuple(w[i] for i in coords) for w in code.words}
        for key in product(range(q), repeat=fixed):
            if key not in present:
                return False, ("empty-face", coords, key)
    return True, None


def verify_h_design(
    groups: tuple[tuple[int, ...], ...],
    blocks: Iterable[tuple[int, ...]],
    w: int,
    t: int,
) -> tuple[bool, tuple]:
    """Exact once-coverage of every t-element transverse by w-element blocks."""
    group_of: dict[int, int] = {}
    for gi, g in enumerate(groups):
        for p in g:
            group_of[p] = gi
    q = len(groups[0])
    if any(len(g) != q for g in groups):
        raise ValueError("groups must share a common size")
    counts: Counter[tuple[int, ...]] = Counter()
    for blk in blocks:
        if len(blk) != w:
            raise NotTransverse(f"block {blk} has size {len(blk)}, expected {w}")
        gs = []
        for p in blk:
            if p not in group_of:
                raise NotTransverse(f"point {p} of block {blk} lies in no group")
            gs.append(group_of[p])
        if len(set(gs)) != w:
            raise NotTransverse(f"block {blk} meets a group twice")
        for sub in combinations(sorted(blk), t):
            counts[sub] += 1
    ok = True
    witnesses: list[tuple] = []
    for gsub in combinations(range(len(groups)), t):
        for pts in product(*(groups[i] for i in gsub)):
            key = tuple(sorted(pts))
            c = counts.get(key, 0)
            if c != 1:
                ok = False
                if len(witnesses) < WITNESS_LIMIT:
                    witnesses.append((key, c))
    return ok, tuple(witnesses)


def verify_bbd(bbd: "Bbd", threads: int = 1) -> tuple[bool, CoverageReport]:
    """Blocks must split 2+2 across the groups; every triple meeting both
    groups must be covered exactly once and every within-group triple not
    at all."""
    m = bbd.m
    v = 2 * m
    for blk in bbd.blocks:
        if len(blk) != 4:
            raise MalformedBlock(f"block {blk} has size {len(blk)}, expected 4")
        if any(blk[i] >= blk[i + 1] for i in range(3)) or blk[0] < 0 or blk[3] >= v:
            raise MalformedBlock(f"block {blk} is not ascending within [0, {v})")
        low = sum(1 for p in blk if p < m)
        if low != 2:
            raise BadSplit(f"block {blk} has {low} points in the first group")
    state = _occupancy(v, _triple_ranks(bbd.blocks), threads).tobytes()
    tallies = {"crossing": [0, 0, 0], "internal": [0, 0, 0]}
    unc: list[tuple[int, int, int]] = []
    mult: list[tuple[int, int, int]] = []
    ok = True
    r = 0
    for c in range(2, v):
        for b in range(1, c):
            for a in range(b):
                internal = c < m or a >= m
                row = tallies["internal" if internal else "crossing"]
                s = state[r]
                row[0 if s == 1 else 1 if s == 0 else 2] += 1
                if internal and s != 0:
                    ok = False
                    if len(mult) < WITNESS_LIMIT:
                        mult.append((a, b, c))
                elif not internal and s != 1:
                    ok = False
                    target = unc if s == 0 else mult
                    if len(target) < WITNESS_LIMIT:
                        target.append((a, b, c))
                r += 1
    crossing = CategoryCounts(*tallies["crossing"])
    internal_counts = CategoryCounts(*tallies["internal"])
    total = comb(v, 3)
    report = CoverageReport(
        total=total,
        covered_once=crossing.once + internal_counts.once,
        uncovered_count=crossing.uncovered + internal_counts.uncovered,
        multiple_count=crossing.multiple + internal_counts.multiple,
        uncovered=tuple(unc),
        multiple=tuple(mult),
        categories={"crossing": crossing, "internal": internal_counts},
    )
    return ok, report


def verify_swap_closure(code: "MdsCode") -> tuple[bool, object | None]:
    """Closure under swapping the first pair and the second pair of
    coordinates, plus presence of every doubled-diagonal word (x,x,u,u)."""
    words = code.words
    q = code.q
    for x in range(q):
        for u in range(q):
            if (x, x, u, u) not in words:
                return False, (x, x, u, u)
    for w in sorted(words):
        x, y, u, v = w
        for other in ((y, x, u, v), (x, y, v, u), (y, x, v, u)):
            if other not in words:
                return False, (w, other)
    return True, None


def count_identity(design: Design) -> bool:
    """For all-4-block designs, |blocks| must equal v(v-1)(v-2)/24 when valid."""
    if any(len(b) != 4 for b in design.blocks):
        return True
    return len(design.blocks) == sqs_block_count(design.v)
