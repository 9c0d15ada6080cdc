"""Latin squares, MOLS families, and 1-factorizations.

Supplies the orthogonal-square families behind MDS codes (finite-field
construction plus the MacNeish product on prime-power factorizations) and
the symmetric nilpotent squares, with or without a prescribed bipartite
subsquare, that drive the bipartite-design swap family.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce

from . import gf
from .errors import (
    BadK,
    NotPrimePower,
    OddOrder,
    SearchExhausted,
    SupplyGap,
    TooMany,
)


@dataclass(frozen=True)
class LatinSquare:
    """q x q table whose rows and columns are permutations of [0, q)."""

    q: int
    table: tuple[tuple[int, ...], ...]

    def __call__(self, x: int, y: int) -> int:
        return self.table[x][y]

    @property
    def symmetric(self) -> bool:
        return all(self.table[x][y] == self.table[y][x] for x in range(self.q) for y in range(x))

    @property
    def nilpotent(self) -> bool:
        return all(self.table[x][x] == 0 for x in range(self.q))


@dataclass(frozen=True)
class MolsFamily:
    """Pairwise orthogonal Latin squares of a common order."""

    q: int
    squares: tuple[LatinSquare, ...]

    def __len__(self) -> int:
        return len(self.squares)


@dataclass(frozen=True)
class OneFactorization:
    """m-1 edge-disjoint perfect matchings partitioning the edges of K_m."""

    m: int
    factors: tuple[tuple[tuple[int, int], ...], ...]


def is_latin(table: tuple[tuple[int, ...], ...]) -> bool:
    q = len(table)
    full = set(range(q))
    if any(set(row) != full for row in table):
        return False
    return all({table[x][y] for x in range(q)} == full for y in range(q))


def check_latin(square: LatinSquare) -> None:
    if len(square.table) != square.q or not is_latin(square.table):
        raise ValueError(f"table of order {square.q} is not a Latin square")


def are_orthogonal(a: LatinSquare, b: LatinSquare) -> bool:
    q = a.q
    pairs = {(a.table[x][y], b.table[x][y]) for x in range(q) for y in range(q)}
    return len(pairs) == q * q


def check_mols(family: MolsFamily) -> None:
    """Exhaustive pairwise-orthogonality check; raises on violation."""
    for sq in family.squares:
        if sq.q != family.q:
            raise ValueError("order mismatch inside MOLS family")
        check_latin(sq)
    for i in range(len(family.squares)):
        for j in range(i + 1, len(family.squares)):
            if not are_orthogonal(family.squares[i], family.squares[j]):
                raise ValueError(f"squares {i} and {j} are not orthogonal")


def check_one_factorization(fac: OneFactorization) -> None:
    m = fac.m
    if len(fac.factors) != m - 1:
        raise ValueError(f"expected {m - 1} factors, got {len(fac.factors)}")
    seen: set[tuple[int, int]] = set()
    for factor in fac.factors:
        touched: set[int] = set()
        for a, b in factor:
            if not (0 <= a < b < m):
                raise ValueError(f"bad edge {(a, b)}")
            touched.update((a, b))
            if (a, b) in seen:
                raise ValueError(f"edge {(a, b)} repeated across factors")
            seen.add((a, b))
        if len(touched) != m or len(factor) != m // 2:
            raise ValueError("factor is not a perfect matching")
    if len(seen) != m * (m - 1) // 2:
        raise ValueError("factors do not partition the edge set")


def field_mols(q: int, d: int) -> MolsFamily:
    """d MOLS of prime-power order q via x, y -> a*x + y over the q-element field."""
    if gf.prime_power(q) is None:
        raise NotPrimePower(f"{q} is not a prime power")
    if not 1 <= d <= q - 1:
        raise TooMany(f"at most {q - 1} MOLS of order {q} from the field construction, requested {d}")
    f = gf.field(q)
    squares = []
    for a in range(1, d + 1):
        table = tuple(tuple(f.add(f.mul(a, x), y) for y in range(q)) for x in range(q))
        squares.append(LatinSquare(q, table))
    family = MolsFamily(q, tuple(squares))
    check_mols(family)
    return family


def macneish_product(fam_a: MolsFamily, fam_b: MolsFamily) -> MolsFamily:
    """min(|A|, |B|) MOLS of order qA*qB from componentwise products."""
    d = min(len(fam_a), len(fam_b))
    qa, qb = fam_a.q, fam_b.q
    q = qa * qb
    squares = []
    for i in range(d):
        sa, sb = fam_a.squares[i], fam_b.squares[i]
        table = tuple(
            tuple(
                sa.table[x // qb][y // qb] * qb + sb.table[x % qb][y % qb]
                for y in range(q)
            )
            for x in range(q)
        )
        squares.append(LatinSquare(q, table))
    family = MolsFamily(q, tuple(squares))
    check_mols(family)
    return family


def _prime_power_factors(n: int) -> list[int]:
    factors = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            pk = 1
            while m % d == 0:
                pk *= d
                m //= d
            factors.append(pk)
        d += 1
    if m > 1:
        factors.append(m)
    return sorted(factors)


def mols_achievable(n: int) -> int:
    """How many MOLS of order n the field + product route can deliver."""
    return min(q - 1 for q in _prime_power_factors(n))


def mols_supply(n: int, d: int) -> MolsFamily:
    """d MOLS of order n, by field construction on the prime-power parts
    of n glued with MacNeish products.  Raises SupplyGap naming the bound
    actually achievable when d exceeds it; the constructive reach here is
    narrower than what pure existence theory promises for large n.
    """
    if n < 2 or d < 1:
        raise ValueError(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    achievable = mols_achievable(n)
    if d > achievable:
        raise SupplyGap(achievable)
    parts = [field_mols(q, d) for q in _prime_power_factors(n)]
    return reduce(macneish_product, parts)


def round_robin_one_factorization(m: int) -> OneFactorization:
    """Circle-method factorization: round i pairs m-1 with i, and i+j with i-j mod m-1."""
    if m % 2:
        raise OddOrder(f"1-factorization needs even order, got {m}")
    if m == 2:
        fac = OneFactorization(2, (((0, 1),),))
        check_one_factorization(fac)
        return fac
    factors = []
    for i in range(m - 1):
        edges = [tuple(sorted((m - 1, i)))]
        for j in range(1, m // 2):
            a = (i + j) % (m - 1)
            b = (i - j) % (m - 1)
            edges.append(tuple(sorted((a, b))))
        factors.append(tuple(sorted(edges)))
    fac = OneFactorization(m, tuple(factors))
    check_one_factorization(fac)
    return fac


def _square_from_coloring(q: int, color_edges: dict[int, list[tuple[int, int]]]) -> LatinSquare:
    # colors 1..q-1, each a perfect matching; diagonal gets 0
    table = [[0] * q for _ in range(q)]
    for color, edges in color_edges.items():
        for a, b in edges:
            table[a][b] = color
            table[b][a] = color
    return LatinSquare(q, tuple(tuple(row) for row in table))


def symmetric_nilpotent_ls(q: int) -> LatinSquare:
    """Symmetric Latin square with zero diagonal: color of {x, y} plus one."""
    if q % 2:
        raise OddOrder(f"symmetric nilpotent squares exist for even order only, got {q}")
    fac = round_robin_one_factorization(q)
    colors = {i + 1: list(factor) for i, factor in enumerate(fac.factors)}
    square = _square_from_coloring(q, colors)
    check_latin(square)
    assert square.symmetric and square.nilpotent
    return square


def check_subsquare(square: LatinSquare, k0: tuple[int, ...], k1: tuple[int, ...]) -> None:
    """The K0 x K1 corner must be a Latin square on the symbol set K1."""
    sym = set(k1)
    k = len(k0)
    for x in k0:
        row = [square.table[x][y] for y in k1]
        if set(row) != sym or len(row) != k:
            raise ValueError(f"row {x} of the corner is not a permutation of K1")
    for y in k1:
        col = [square.table[x][y] for x in k0]
        if set(col) != sym:
            raise ValueError(f"column {y} of the corner is not a permutation of K1")


def _greedy_perfect_matching(adj: dict[int, set[int]], rng: random.Random) -> list[tuple[int, int]] | None:
    # fail-first greedy: repeatedly match the unmatched vertex of least
    # available degree with a random available neighbour
    free = set(adj)
    matching = []
    while free:
        v = min(free, key=lambda u: (len(adj[u] & free), u))
        options = sorted(adj[v] & free)
        if not options:
            return None
        w = rng.choice(options)
        matching.append((min(v, w), max(v, w)))
        free.discard(v)
        free.discard(w)
    return matching


def symmetric_nilpotent_with_subsquares(
    q: int,
    k: int,
    seed: int = 0,
    attempts: int = 400,
) -> tuple[LatinSquare, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Symmetric nilpotent square of even order q whose K0 x K1 corner,
    K0 = [0, k) and K1 = [q-k, q), is a Latin subsquare on symbols K1.

    The corner is laid down as a cyclic k x k square; each corner symbol is
    then completed to a perfect matching of K_q using a round-robin factor
    on the middle vertices (q - 2k is even since k <= q/4).  The remaining
    colors are extracted as random perfect matchings of the leftover
    regular graph, restarting on dead ends, and the result is verified.
    """
    if q % 2:
        raise OddOrder(f"even order required, got {q}")
    if not 1 <= k <= q // 4:
        raise BadK(f"need 1 <= k <= q/4, got k={k} at q={q}")
    k0 = tuple(range(k))
    k1 = tuple(range(q - k, q))
    middle = list(range(k, q - k))

    fixed: dict[int, list[tuple[int, int]]] = {}
    for t in range(k):
        color = q - k + t
        corner = [(x, q - k + (t - x) % k) for x in range(k)]
        fixed[color] = corner
    mid_fac = round_robin_one_factorization(len(middle)) if middle else None
    for t in range(k):
        color = q - k + t
        fixed[color] += [(middle[a], middle[b]) for a, b in mid_fac.factors[t]]

    used = {e for edges in fixed.values() for e in edges}
    remaining = [
        (a, b)
        for a in range(q)
        for b in range(a + 1, q)
        if (a, b) not in used and not (a in k0 and b in k1)
    ]
    free_colors = list(range(1, q - k))

    rng = random.Random(seed)
    for _ in range(attempts):
        adj: dict[int, set[int]] = {v: set() for v in range(q)}
        for a, b in remaining:
            adj[a].add(b)
            adj[b].add(a)
        coloring = dict(fixed)
        ok = True
        for color in free_colors:
            matching = None
            for _ in range(20):
                matching = _greedy_perfect_matching(adj, rng)
                if matching is not None:
                    break
            if matching is None:
                ok = False
                break
            coloring[color] = matching
            for a, b in matching:
                adj[a].discard(b)
                adj[b].discard(a)
        if not ok:
            continue
        square = _square_from_coloring(q, coloring)
        check_latin(square)
        assert square.symmetric and square.nilpotent
        check_subsquare(square, k0, k1)
        return square, (k0, k1)
    raise SearchExhausted(f"no completion found for q={q}, k={k} within {attempts} attempts")
