"""Generate small quadruple systems and write them as design files.

Two engines:

* ``walk``: the package's seeded ejection walk (reliable at orders 8, 10;
  best-effort above).
* ``orbit``: exact cover by block orbits under a prescribed cyclic
  automorphism (a full cycle, or a cycle plus fixed points).  This is how
  the order-34 ingredient files in data/ were produced; cyclic solutions
  exist at 10, 20, 22, 26, 34, ... but not at every admissible order.

Examples:
    python scripts/make_small_sqs.py --order 10 --engine walk --out s10.txt
    python scripts/make_small_sqs.py --order 34 --engine orbit --seed 2 --out s34.txt
"""

import argparse
import random
import sys
import time
from itertools import combinations

from sqslab import io
from sqslab.model import SQS, Design
from sqslab.sqs import search_small_sqs
from sqslab.verify import verify_design


def build_orbit_matrix(v, cycles):
    """Triple-orbit columns and usable block-orbit rows under one permutation."""
    perm = [0] * v
    for cyc in cycles:
        for i, x in enumerate(cyc):
            perm[x] = cyc[(i + 1) % len(cyc)]

    def orbit_of(t):
        out = set()
        cur = t
        while cur not in out:
            out.add(cur)
            cur = tuple(sorted(perm[x] for x in cur))
        return out

    trip_rep = {}
    reps = []
    for t in combinations(range(v), 3):
        if t in trip_rep:
            continue
        orb = orbit_of(t)
        for u in orb:
            trip_rep[u] = t
        reps.append(t)
    col = {t: i for i, t in enumerate(reps)}
    rows = []
    seen = set()
    for b in combinations(range(v), 4):
        if b in seen:
            continue
        orb = orbit_of(b)
        seen.update(orb)
        touched = {trip_rep[t] for blk in orb for t in combinations(blk, 3)}
        # an orbit covering any triple orbit twice can never appear in a cover
        cover = {r: sum(1 for blk in orb if set(r) <= set(blk)) for r in touched}
        if any(c > 1 for c in cover.values()):
            continue
        rows.append((frozenset(col[r] for r in cover), orb))
    return len(reps), rows


def solve_exact_cover(ncols, rows, seed, node_cap):
    rng = random.Random(seed)
    col_rows = [set() for _ in range(ncols)]
    for ri, (cols, _) in enumerate(rows):
        for c in cols:
            col_rows[c].add(ri)
    uncovered = set(range(ncols))
    solution = []
    nodes = 0

    def cover_row(ri):
        removed = set()
        for c in rows[ri][0]:
            removed |= col_rows[c]
        pairs = []
        for r2 in removed:
            for c2 in rows[r2][0]:
                if r2 in col_rows[c2]:
                    col_rows[c2].discard(r2)
                    pairs.append((c2, r2))
        cols = list(rows[ri][0])
        for c in cols:
            uncovered.discard(c)
        return pairs, cols

    def uncover(pairs, cols):
        for c in cols:
            uncovered.add(c)
        for c2, r2 in pairs:
            col_rows[c2].add(r2)

    def dfs():
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            return False
        if not uncovered:
            return True
        c = min(uncovered, key=lambda cc: len(col_rows[cc]))
        cands = list(col_rows[c])
        if not cands:
            return False
        rng.shuffle(cands)
        for ri in cands:
            state = cover_row(ri)
            solution.append(ri)
            if dfs():
                return True
            solution.pop()
            uncover(*state)
        return False

    if dfs():
        blocks = set()
        for ri in solution:
            blocks.update(rows[ri][1])
        return blocks, nodes
    return None, nodes


def orbit_search(v, seed, node_cap, fixed_points):
    cycle = list(range(v - fixed_points))
    cycles = [cycle] + [[v - fixed_points + i] for i in range(fixed_points)]
    ncols, rows = build_orbit_matrix(v, cycles)
    print(f"orbit matrix: {ncols} triple orbits, {len(rows)} usable block orbits")
    blocks, nodes = solve_exact_cover(ncols, rows, seed, node_cap)
    print(f"search nodes: {nodes}")
    if blocks is None:
        return None
    return Design(SQS, v, frozenset(blocks))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, required=True)
    ap.add_argument("--engine", choices=["walk", "orbit"], default="walk")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=int, default=2_000_000, help="walk moves / orbit nodes")
    ap.add_argument("--fixed-points", type=int, default=0, help="orbit engine: cycle skips this many points")
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    t0 = time.perf_counter()
    if args.engine == "walk":
        design = search_small_sqs(args.order, seed=args.seed, budget=args.budget)
    else:
        design = orbit_search(args.order, args.seed, args.budget, args.fixed_points)
        if design is None:
            print("no solution within the node budget; try another seed or --fixed-points")
            return 4
    report = verify_design(design)
    assert report.ok
    io.save(design, args.out)
    print(
        f"wrote {args.out}: order {design.v}, {len(design.blocks)} blocks, "
        f"verified in {time.perf_counter() - t0:.1f}s"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
