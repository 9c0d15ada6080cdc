"""3-wise bipartite balanced designs.

Two equal groups of size m (points [0, m) and [m, 2m)) with 2+2-split
quadruple blocks covering every group-crossing triple exactly once.
Constructions: pairing two 1-factorizations, reading blocks off a
distance-2 code closed under the pair swaps, and the exponentially large
family obtained by exchanging corner subcodes of a symmetric-square code.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BadParams,
    DegenerateWord,
    SwapInvalid,
    SymmetryViolation,
    VerificationFailure,
)
from .latin import OneFactorization, symmetric_nilpotent_with_subsquares
from .mds import CoordBox, MdsCode, Quasigroup3, subcode_swap
from .verify import verify_bbd, verify_swap_closure, verify_mds


@dataclass(frozen=True)
class Bbd:
    """Group size m; blocks are ascending 4-tuples over [0, 2m)."""

    m: int
    blocks: frozenset[tuple[int, int, int, int]]


def expected_block_count(m: int) -> int:
    return m * m * (m - 1) // 4


def _checked(bbd: Bbd) -> Bbd:
    ok, report = verify_bbd(bbd)
    if not ok:
        raise VerificationFailure(
            f"bipartite design failed coverage: uncovered={report.uncovered[:4]} "
            f"multiple={report.multiple[:4]}"
        )
    return bbd


def bbd_from_factorizations(
    f1: OneFactorization,
    f2: OneFactorization,
    pairing: Sequence[int] | None = None,
) -> Bbd:
    """Blocks {x,y} u {u+m,v+m} over every edge pair of matched factors.

    ``pairing`` permutes which factor of f2 meets factor i of f1; identity
    by default.  Different pairings give different (all valid) designs.
    """
    if f1.m != f2.m:
        raise BadParams(f"factorization orders differ: {f1.m} vs {f2.m}")
    m = f1.m
    rounds = m - 1
    if pairing is None:
        pairing = tuple(range(rounds))
    if sorted(pairing) != list(range(rounds)):
        raise BadParams(f"pairing must be a permutation of [0, {rounds})")
    blocks = set()
    for i, factor in enumerate(f1.factors):
        partner = f2.factors[pairing[i]]
        for x, y in factor:
            for u, v in partner:
                blocks.add((x, y, u + m, v + m))
    return _checked(Bbd(m, frozenset(blocks)))


def bbd_from_code(code: MdsCode) -> Bbd:
    """Blocks {x1, x2, x3+q, x4+q} from words with x1 != x2.

    The code must have length 4, distance 2, even order, and be closed
    under swapping each coordinate pair with all doubled diagonals present;
    each unordered block then arises from exactly four words.
    """
    q = code.q
    if code.d != 4 or code.dist != 2:
        raise BadParams(f"need a length-4 distance-2 code, got d={code.d}, dist={code.dist}")
    if q % 2:
        raise BadParams(f"even order required, got {q}")
    ok, witness = verify_mds(code)
    if not ok:
        raise BadParams(f"input is not a valid distance-2 code: {witness}")
    ok, witness = verify_swap_closure(code)
    if not ok:
        raise SymmetryViolation(f"pair-swap/diagonal closure fails at {witness}")
    blocks = set()
    for w in code.words:
        x1, x2, x3, x4 = w
        if x1 == x2:
            continue
        if x3 == x4:
            raise DegenerateWord(f"word {w} has equal second pair; input code was invalid")
        blocks.add((min(x1, x2), max(x1, x2), min(x3, x4) + q, max(x3, x4) + q))
    if len(blocks) != (q**3 - q**2) // 4:
        raise DegenerateWord(
            f"got {len(blocks)} blocks, expected {(q**3 - q**2) // 4}; input code was invalid"
        )
    return _checked(Bbd(q, frozenset(blocks)))


def code_from_bbd(bbd: Bbd) -> MdsCode:
    """All four orderings of every block plus the doubled diagonals.

    Inverse of :func:`bbd_from_code`: the result verifies as a distance-2
    code satisfying the swap/diagonal closure, and round-trips.
    """
    m = bbd.m
    ok, _ = verify_bbd(bbd)
    if not ok:
        raise BadParams("input bipartite design fails verification")
    words = set()
    for a, b, c, d in bbd.blocks:
        u, v = c - m, d - m
        words.update({(a, b, u, v), (b, a, u, v), (a, b, v, u), (b, a, v, u)})
    for x in range(m):
        for u in range(m):
            words.add((x, x, u, u))
    code = MdsCode(4, m, 2, frozenset(words))
    ok, witness = verify_mds(code)
    if not ok:
        raise VerificationFailure(f"derived code failed distance check: {witness}")
    ok, witness = verify_swap_closure(code)
    if not ok:
        raise VerificationFailure(f"derived code failed closure: {witness}")
    return code


def square_pair_code(square) -> MdsCode:
    """The distance-2 code {(x,y,u,v) : f(x,y) = f(u,v)} of a Latin square.

    For symmetric nilpotent f the code satisfies the swap/diagonal closure
    and so corresponds to a bipartite design of group size q.
    """
    q = square.q
    cells: dict[int, list[tuple[int, int]]] = {}
    for x in range(q):
        for y in range(q):
            cells.setdefault(square.table[x][y], []).append((x, y))
    words = frozenset(
        (x, y, u, v)
        for same in cells.values()
        for x, y in same
        for u, v in same
    )
    return MdsCode(4, q, 2, words)


# box patterns (0 -> low corner K0, 1 -> high corner K1) and the coordinate
# swaps carrying the base 0101 box onto each of them
_BOX_PATTERNS = (
    ((0, 1, 0, 1), (0, 1, 2, 3)),
    ((1, 0, 0, 1), (1, 0, 2, 3)),
    ((0, 1, 1, 0), (0, 1, 3, 2)),
    ((1, 0, 1, 0), (1, 0, 3, 2)),
)


def swap_family(
    q: int,
    k: int,
    replacements: Sequence[Quasigroup3],
    seed: int = 0,
    threads: int = 1,
) -> list[Bbd]:
    """One bipartite design of group size q per replacement quasigroup.

    Builds a symmetric nilpotent square of order q whose K0 x K1 corner is
    a Latin subsquare, takes its pair code, and for each replacement
    exchanges the four corner subcodes (patterns 0101, 1001, 0110, 1010)
    by the swap-orbit of the replacement's distance-2 code, restoring the
    closure by construction and checking it.  Replacements that differ
    anywhere give distinct designs.
    """
    square, (k0, k1) = symmetric_nilpotent_with_subsquares(q, k, seed=seed)
    base = square_pair_code(square)
    ok, witness = verify_mds(base)
    if not ok:
        raise SwapInvalid(f"pair code of the base square is invalid: {witness}")
    ok, witness = verify_swap_closure(base)
    if not ok:
        raise SwapInvalid(f"pair code lost closure: {witness}")
    corners = {0: frozenset(k0), 1: frozenset(k1)}

    def build(rep: Quasigroup3) -> Bbd:
        if rep.k != k:
            raise BadParams(f"replacement order {rep.k} differs from corner size {k}")
        dense = rep.words()
        code = base
        for pattern, tau in _BOX_PATTERNS:
            box = CoordBox(tuple(corners[digit] for digit in pattern))
            permuted = frozenset(tuple(w[tau[i]] for i in range(4)) for w in dense)
            code = subcode_swap(code, box, MdsCode(4, k, 2, permuted))
        ok, witness = verify_swap_closure(code)
        if not ok:
            raise SwapInvalid(f"exchange broke pair-swap closure: {witness}")
        return bbd_from_code(code)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(build, replacements))
    return [build(rep) for rep in replacements]
