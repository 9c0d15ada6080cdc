"""End-to-end demo of the 8n+2 assembly at n=16 (order 130).

Runs the holes-mode assembly, prints the coverage profile by triple
category, then completes the design with the four order-34 systems from
data/ and writes both files.
"""

import sys
import time
from pathlib import Path

from sqslab import io
from sqslab.bbd import bbd_from_factorizations
from sqslab.latin import mols_supply, round_robin_one_factorization
from sqslab.mds import mds_from_mols
from sqslab.sqs import assemble_8n_plus_2, boolean_sqs8, check_partial_coverage, normalize_s10, search_small_sqs
from sqslab.verify import verify_design

REPO = Path(__file__).resolve().parent.parent
OUT = REPO / "out"


def main():
    n = 16
    OUT.mkdir(exist_ok=True)
    t0 = time.perf_counter()
    s8 = boolean_sqs8()
    s10n, _ = normalize_s10(search_small_sqs(10, seed=0), 8, 9)
    code = mds_from_mols(mols_supply(n, 6))
    fac = round_robin_one_factorization(n)
    cross = bbd_from_factorizations(fac, fac)
    print(f"ingredients ready in {time.perf_counter() - t0:.2f}s")

    t0 = time.perf_counter()
    partial = assemble_8n_plus_2(n, s8, s10n, code, cross)
    ok, profile = check_partial_coverage(partial)
    print(f"holes mode: parts={partial.parts} profile-ok={ok} ({time.perf_counter() - t0:.2f}s)")
    for label, counts in sorted(profile.items()):
        print(f"  {label}: once={counts.once} uncovered={counts.uncovered} multiple={counts.multiple}")
    io.save(partial.design, OUT / "s130_holes.txt")

    files = sorted((REPO / "data").glob("sqs34_*.txt"))[:4]
    if len(files) < 4:
        print("data/sqs34_*.txt missing; run scripts/make_small_sqs.py --engine orbit first")
        return 1
    holes = [io.load_design(p) for p in files]
    t0 = time.perf_counter()
    complete = assemble_8n_plus_2(n, s8, s10n, code, cross, holes)
    report = verify_design(complete.design)
    print(
        f"complete mode: {len(complete.design.blocks)} blocks, verified={report.ok} "
        f"({time.perf_counter() - t0:.2f}s)"
    )
    io.save(complete.design, OUT / "s130.txt")
    print(f"wrote {OUT / 's130_holes.txt'} and {OUT / 's130.txt'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
