"""Shared domain types, admissibility arithmetic, and triple indexing.

Points are dense 0-based integers.  Blocks are strictly ascending tuples.
Triples of ``[0, v)`` are ranked colexicographically so that streaming
block generators can rank incrementally, and so that all triples inside
an initial segment ``[0, m)`` occupy the initial ranks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

from .errors import OutOfRange, NotIntegral

SQS = "sqs"
S46 = "s46"
PARTIAL = "partial"
KINDS = (SQS, S46, PARTIAL)

#: admitted block sizes per design kind
BLOCK_SIZES = {SQS: (4,), S46: (4, 6), PARTIAL: (4,)}


@dataclass(frozen=True)
class Design:
    """A point count plus a set of blocks; the central verifiable object.

    ``kind`` is one of ``sqs``, ``s46``, ``partial``.  Validity (every
    triple covered exactly once, block well-formedness) is established by
    :func:`sqslab.verify.verify_design`, never assumed.
    """

    kind: str
    v: int
    blocks: frozenset[tuple[int, ...]]

    @classmethod
    def make(cls, kind: str, v: int, blocks: Iterable[Iterable[int]]) -> "Design":
        return cls(kind, v, frozenset(tuple(b) for b in blocks))


@dataclass(frozen=True)
class Hole:
    """An uncovered region left by a partial assembly.

    ``points`` is the ascending support; a design of ``required_kind`` on
    these points completes the coverage there.
    """

    points: tuple[int, ...]
    required_kind: str


def sqs_block_count(v: int) -> int:
    """Block count v(v-1)(v-2)/24 of a Steiner quadruple system on v points."""
    if v < 0:
        raise OutOfRange(f"negative order {v}")
    prod = v * (v - 1) * (v - 2)
    if prod % 24:
        raise NotIntegral(f"v(v-1)(v-2) = {prod} is not divisible by 24 at v={v}")
    return prod // 24


def is_admissible(v: int, kind: str) -> bool:
    """Existence congruence for the given design kind.

    Quadruple systems need v = 2 or 4 (mod 6); v in {1, 2} is treated as
    vacuously admissible (no triples exist).  Mixed 4/6-block systems need
    an even order.
    """
    if v < 1:
        raise OutOfRange(f"order must be positive, got {v}")
    if kind == SQS:
        return v in (1, 2) or v % 6 in (2, 4)
    if kind == S46:
        return v % 2 == 0
    raise ValueError(f"no admissibility rule for kind {kind!r}")


def _rank3(a: int, b: int, c: int) -> int:
    # colex rank of {a < b < c}
    return a + b * (b - 1) // 2 + c * (c - 1) * (c - 2) // 6


def rank_triple(v: int, triple: tuple[int, int, int]) -> int:
    """Colexicographic rank of an ascending triple within [0, v)."""
    a, b, c = triple
    if not (0 <= a < b < c < v):
        raise OutOfRange(f"triple {triple} is not strictly ascending in [0, {v})")
    return _rank3(a, b, c)


def unrank_triple(v: int, rank: int) -> tuple[int, int, int]:
    """Inverse of :func:`rank_triple`."""
    if not (0 <= rank < comb(v, 3)):
        raise OutOfRange(f"rank {rank} outside [0, C({v},3))")
    c = 2
    while comb(c + 1, 3) <= rank:
        c += 1
    rest = rank - comb(c, 3)
    b = 1
    while comb(b + 1, 2) <= rest:
        b += 1
    a = rest - comb(b, 2)
    return (a, b, c)


@dataclass(frozen=True)
class TripleIndex:
    """Bijection between 3-subsets of [0, v) and [0, C(v,3)), colex order."""

    v: int

    def __len__(self) -> int:
        return comb(self.v, 3)

    def rank(self, triple: tuple[int, int, int]) -> int:
        return rank_triple(self.v, triple)

    def unrank(self, rank: int) -> tuple[int, int, int]:
        return unrank_triple(self.v, rank)

    def triples(self) -> Iterator[tuple[int, int, int]]:
        """All triples in rank order."""
        for c in range(2, self.v):
            for b in range(1, c):
                for a in range(b):
                    yield (a, b, c)
