"""MDS codes as data: field/MOLS constructions, projections, the
distance-2 extension through a derived quasigroup, and subcode exchange.

A code of length d, alphabet q and minimum distance ``dist`` stores its
words explicitly; any d-dist+1 coordinates determine a word, which is what
:func:`sqslab.verify.verify_mds` checks exhaustively.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from . import gf
from .errors import (
    BadParams,
    NotPrimePower,
    NotWellDefined,
    ParameterMismatch,
    SearchExhausted,
    SwapInvalid,
    TooFewCoords,
)
from .latin import MolsFamily
from .verify import verify_mds


@dataclass(frozen=True)
class MdsCode:
    """Words of length d over [0, q) with declared minimum distance."""

    d: int
    q: int
    dist: int
    words: frozenset[tuple[int, ...]]

    @property
    def t(self) -> int:
        # dimension of the faces the code meets exactly once
        return self.dist - 1


@dataclass(frozen=True)
class CoordBox:
    """Per-coordinate alphabet restrictions A_1 x ... x A_d."""

    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if any(not s for s in self.sets):
            raise BadParams("every coordinate set of a box must be nonempty")

    def contains(self, word: tuple[int, ...]) -> bool:
        return all(x in s for x, s in zip(word, self.sets))


@dataclass(frozen=True)
class SubcodeExtraction:
    """Result of intersecting a code with a box.

    ``dense`` relabels each coordinate onto [0, k) when all box sets share
    size k; it is None for mixed sizes, where MDS semantics do not apply.
    ``maps[i][s]`` is the original symbol of dense symbol s at coordinate i.
    """

    raw_words: frozenset[tuple[int, ...]]
    dense: MdsCode | None
    maps: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Quasigroup3:
    """Ternary quasigroup: the graph {(x,y,u,g(x,y,u))} has distance 2."""

    k: int
    table: tuple[tuple[tuple[int, ...], ...], ...]

    def words(self) -> frozenset[tuple[int, int, int, int]]:
        k = self.k
        return frozenset(
            (x, y, u, self.table[x][y][u]) for x in range(k) for y in range(k) for u in range(k)
        )

    def to_code(self) -> MdsCode:
        return MdsCode(4, self.k, 2, self.words())


def _checked(code: MdsCode) -> MdsCode:
    ok, witness = verify_mds(code)
    if not ok:
        raise SwapInvalid(f"constructed code failed verification: {witness}")
    return code


def rs_mds_code(q: int, d: int, dist: int) -> MdsCode:
    """Evaluation-style codes for the two shapes used throughout.

    dist = d-1: words (a*x_i + b) over all lines of the q-element field,
    evaluated at d distinct points (needs q a prime power, d <= q).
    dist = 2: the parity-sum code, all words summing to 0 mod q.
    """
    if dist == 2:
        if d < 2:
            raise BadParams(f"need length >= 2, got {d}")
        words = set()
        for prefix in product(range(q), repeat=d - 1):
            words.add(prefix + ((-sum(prefix)) % q,))
        return _checked(MdsCode(d, q, 2, frozenset(words)))
    if dist == d - 1:
        if d > q:
            raise BadParams(f"need d <= q distinct evaluation points, got d={d}, q={q}")
        if gf.prime_power(q) is None:
            raise NotPrimePower(f"{q} is not a prime power")
        f = gf.field(q)
        words = set()
        for a in range(q):
            for b in range(q):
                words.add(tuple(f.add(f.mul(a, x), b) for x in range(d)))
        return _checked(MdsCode(d, q, d - 1, frozenset(words)))
    raise BadParams(f"only dist = 2 or dist = d-1 are constructed directly, got dist={dist}, d={d}")


def mds_from_mols(family: MolsFamily) -> MdsCode:
    """Words (x, y, L_1(x,y), ..., L_t(x,y)); distance d-1 for t squares."""
    q = family.q
    d = len(family.squares) + 2
    words = frozenset(
        (x, y) + tuple(sq.table[x][y] for sq in family.squares)
        for x in range(q)
        for y in range(q)
    )
    return _checked(MdsCode(d, q, d - 1, words))


def project(code: MdsCode, coords: tuple[int, ...]) -> MdsCode:
    """Projection onto the given ascending coordinate list; stays MDS."""
    keep = len(coords)
    if any(coords[i] >= coords[i + 1] for i in range(keep - 1)):
        raise BadParams(f"coordinates {coords} must be strictly ascending")
    if coords and (coords[0] < 0 or coords[-1] >= code.d):
        raise BadParams(f"coordinates {coords} outside [0, {code.d})")
    if keep < code.d - code.dist + 1:
        raise TooFewCoords(
            f"projection onto {keep} coordinates loses injectivity "
            f"(need at least {code.d - code.dist + 1})"
        )
    new_dist = code.dist - (code.d - keep)
    words = frozenset(tuple(w[i] for i in coords) for w in code.words)
    if len(words) != len(code.words):
        raise NotWellDefined("projection collided; the input was not a valid MDS code")
    return _checked(MdsCode(keep, code.q, new_dist, words))


def extend_to_distance2(m5: MdsCode, drop: int) -> MdsCode:
    """Extend the 4-coordinate projection of a distance-4 length-5 code to
    a distance-2 code containing it.

    With (x, y) the two lowest remaining coordinates and the dropped
    coordinate playing h, the quasigroup phi with phi(f(x,y), g(x,y)) =
    h(x,y) is read off the words; the result is all (x,y,u,v) with
    phi(u,v) = h(x,y).
    """
    if m5.d != 5 or m5.dist != 4:
        raise BadParams(f"need a length-5 distance-4 code, got d={m5.d}, dist={m5.dist}")
    if not 0 <= drop < 5:
        raise BadParams(f"drop index {drop} outside [0, 5)")
    q = m5.q
    remaining = [i for i in range(5) if i != drop]
    ix, iy = remaining[0], remaining[1]
    iu, iv = remaining[2], remaining[3]
    phi: dict[tuple[int, int], int] = {}
    hmap: dict[tuple[int, int], int] = {}
    for w in m5.words:
        h = w[drop]
        key_uv = (w[iu], w[iv])
        if phi.setdefault(key_uv, h) != h:
            raise NotWellDefined(f"phi collision at {key_uv}")
        key_xy = (w[ix], w[iy])
        if hmap.setdefault(key_xy, h) != h:
            raise NotWellDefined(f"h collision at {key_xy}")
    if len(phi) != q * q or len(hmap) != q * q:
        raise NotWellDefined("input words do not cover every coordinate pair")
    # invert phi row-wise: solve[u][h] = v; must be a quasigroup
    solve: list[list[int | None]] = [[None] * q for _ in range(q)]
    for (u, v), h in phi.items():
        if solve[u][h] is not None:
            raise NotWellDefined(f"phi is not row-Latin at u={u}, h={h}")
        solve[u][h] = v
    words = set()
    for (x, y), h in hmap.items():
        for u in range(q):
            v = solve[u][h]
            if v is None:
                raise NotWellDefined(f"phi is not a quasigroup at u={u}, h={h}")
            words.add((x, y, u, v))
    code = _checked(MdsCode(4, q, 2, frozenset(words)))
    contained = project(m5, tuple(remaining))
    if not contained.words <= code.words:
        raise SwapInvalid("extension lost the projected subcode")
    return code


def subcode_extract(code: MdsCode, box: CoordBox) -> SubcodeExtraction:
    """Intersect with a box; relabel densely when the box is square."""
    if len(box.sets) != code.d:
        raise BadParams(f"box has {len(box.sets)} coordinates, code has {code.d}")
    raw = frozenset(w for w in code.words if box.contains(w))
    maps = tuple(tuple(sorted(s)) for s in box.sets)
    sizes = {len(s) for s in box.sets}
    dense = None
    if len(sizes) == 1:
        k = sizes.pop()
        inverse = [{sym: i for i, sym in enumerate(mp)} for mp in maps]
        dense_words = frozenset(
            tuple(inverse[i][x] for i, x in enumerate(w)) for w in raw
        )
        dense = MdsCode(code.d, k, code.dist, dense_words)
    return SubcodeExtraction(raw, dense, maps)


def subcode_swap(code: MdsCode, box: CoordBox, replacement: MdsCode) -> MdsCode:
    """Replace the subcode living on the box by a same-parameter code.

    The extracted subcode and the replacement must both verify as MDS with
    the same length, distance, and box order; the exchanged code is
    verified to keep the ambient parameters.
    """
    ext = subcode_extract(code, box)
    if ext.dense is None:
        raise ParameterMismatch("box coordinate sets have mixed sizes")
    k = ext.dense.q
    if (replacement.d, replacement.dist, replacement.q) != (code.d, code.dist, k):
        raise ParameterMismatch(
            f"replacement parameters ({replacement.d}, {replacement.q}, {replacement.dist}) "
            f"do not match subcode ({code.d}, {k}, {code.dist})"
        )
    ok, _ = verify_mds(ext.dense)
    if not ok:
        raise ParameterMismatch("extracted subcode is not an MDS code on the box")
    ok, _ = verify_mds(replacement)
    if not ok:
        raise ParameterMismatch("replacement is not an MDS code of the declared parameters")
    embedded = frozenset(
        tuple(ext.maps[i][x] for i, x in enumerate(w)) for w in replacement.words
    )
    new_words = (code.words - ext.raw_words) | embedded
    result = MdsCode(code.d, code.q, code.dist, new_words)
    ok, witness = verify_mds(result)
    if not ok:
        raise SwapInvalid(f"exchange broke the ambient code: {witness}")
    return result


def random_quasigroup3(k: int, seed: int = 0) -> Quasigroup3:
    """Seeded backtracking fill of a ternary quasigroup of order k.

    Deterministic per seed; no uniformity claim over all quasigroups.
    """
    if k < 1:
        raise BadParams(f"order must be positive, got {k}")
    rng = random.Random(seed)
    full = (1 << k) - 1
    table = [[[-1] * k for _ in range(k)] for _ in range(k)]
    row = [[full] * k for _ in range(k)]  # free values on line (x, y, .)
    col = [[full] * k for _ in range(k)]  # free values on line (x, ., u)
    pil = [[full] * k for _ in range(k)]  # free values on line (., y, u)
    cells = [(x, y, u) for x in range(k) for y in range(k) for u in range(k)]
    choice_stack: list[list[int]] = []
    pos = 0
    while pos < len(cells):
        x, y, u = cells[pos]
        if len(choice_stack) == pos:
            avail = row[x][y] & col[x][u] & pil[y][u]
            options = [v for v in range(k) if avail >> v & 1]
            rng.shuffle(options)
            choice_stack.append(options)
        options = choice_stack[pos]
        prev = table[x][y][u]
        if prev >= 0:
            bit = 1 << prev
            row[x][y] |= bit
            col[x][u] |= bit
            pil[y][u] |= bit
            table[x][y][u] = -1
        if not options:
            choice_stack.pop()
            pos -= 1
            if pos < 0:
                raise SearchExhausted(f"no ternary quasigroup of order {k} found")
            continue
        v = options.pop()
        bit = 1 << v
        table[x][y][u] = v
        row[x][y] &= ~bit
        col[x][u] &= ~bit
        pil[y][u] &= ~bit
        pos += 1
    qg = Quasigroup3(k, tuple(tuple(tuple(layer) for layer in plane) for plane in table))
    ok, witness = verify_mds(qg.to_code())
    if not ok:
        raise SwapInvalid(f"generated quasigroup failed verification: {witness}")
    return qg
