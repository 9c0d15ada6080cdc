"""Steiner quadruple systems and their ingredient combinatorial objects.

Constructions (MOLS, MDS codes, 1-factorizations, symmetric nilpotent
squares, bipartite balanced designs, doubling, the 8n+2 assembly) paired
with exact exhaustive verification of every produced object.
"""

from .bbd import Bbd, bbd_from_code, bbd_from_factorizations, code_from_bbd, swap_family
from .census import (
    distinct_family_report,
    enumerate_bbd,
    enumerate_quasigroups3,
    enumerate_sqs,
)
from .latin import (
    LatinSquare,
    MolsFamily,
    OneFactorization,
    field_mols,
    macneish_product,
    mols_supply,
    round_robin_one_factorization,
    symmetric_nilpotent_ls,
    symmetric_nilpotent_with_subsquares,
)
from .mds import (
    CoordBox,
    MdsCode,
    Quasigroup3,
    extend_to_distance2,
    mds_from_mols,
    project,
    random_quasigroup3,
    rs_mds_code,
    subcode_extract,
    subcode_swap,
)
from .model import (
    PARTIAL,
    S46,
    SQS,
    Design,
    Hole,
    TripleIndex,
    is_admissible,
    rank_triple,
    sqs_block_count,
    unrank_triple,
)
from .planner import PlanNode, execute, format_plan, plan
from .sqs import (
    GroupLayout,
    PartCounts,
    AssemblyOutput,
    assemble_8n_plus_2,
    boolean_sqs8,
    check_partial_coverage,
    double,
    normalize_s10,
    s46_base,
    search_small_sqs,
)
from .verify import (
    CoverageReport,
    coverage_profile,
    verify_bbd,
    verify_design,
    verify_swap_closure,
    verify_h_design,
    verify_mds,
)

__version__ = "0.1.0"
