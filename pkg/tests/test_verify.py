from itertools import combinations

import pytest

from sqslab import errors
from sqslab.bbd import Bbd, bbd_from_factorizations
from sqslab.latin import round_robin_one_factorization
from sqslab.mds import MdsCode
from sqslab.model import PARTIAL, SQS, Design
from sqslab.sqs import boolean_sqs8
from sqslab.verify import (
    coverage_profile,
    verify_bbd,
    verify_design,
    verify_swap_closure,
    verify_h_design,
    verify_mds,
)


def test_boolean_sqs8_coverage():
    report = verify_design(boolean_sqs8())
    assert report.ok
    assert report.total == 56 and report.covered_once == 56


def test_deleted_block_uncovers_four_triples():
    d8 = boolean_sqs8()
    victim = min(d8.blocks)
    partial = Design(SQS, 8, d8.blocks - {victim})
    report = verify_design(partial)
    assert report.uncovered_count == 4
    assert set(report.uncovered) == set(combinations(victim, 3))


def test_reordered_duplicate_is_malformed():
    d8 = boolean_sqs8()
    blk = min(d8.blocks)
    scrambled = (blk[1], blk[0], blk[2], blk[3])
    bad = Design(SQS, 8, d8.blocks | {scrambled})
    with pytest.raises(errors.MalformedBlock):
        verify_design(bad)


def test_wrong_size_and_range_blocks():
    with pytest.raises(errors.MalformedBlock):
        verify_design(Design(SQS, 8, frozenset({(0, 1, 2)})))
    with pytest.raises(errors.MalformedBlock):
        verify_design(Design(SQS, 8, frozenset({(5, 6, 7, 8)})))


def test_verify_design_threads_agree():
    d8 = boolean_sqs8()
    seq = verify_design(d8, threads=1)
    par = verify_design(d8, threads=3)
    assert (seq.total, seq.covered_once) == (par.total, par.covered_once)


def test_verify_mds_xor_code():
    words = frozenset((x, y, x ^ y) for x in range(2) for y in range(2))
    ok, _ = verify_mds(MdsCode(3, 2, 2, words))
    assert ok


def test_verify_mds_repetition_code():
    ok, _ = verify_mds(MdsCode(2, 2, 2, frozenset({(0, 0), (1, 1)})))
    assert ok


def test_verify_mds_bad_code_gives_pair_witness():
    words = frozenset({(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)})
    ok, witness = verify_mds(MdsCode(3, 2, 2, words))
    assert not ok
    a, b = witness
    assert sum(x == y for x, y in zip(a, b)) == 2


def test_verify_mds_alphabet_violation():
    with pytest.raises(errors.AlphabetViolation):
        verify_mds(MdsCode(2, 2, 2, frozenset({(0, 5)})))


def _parity_blocks():
    groups = tuple(tuple(2 * g + x for x in range(2)) for g in range(4))
    blocks = []
    for w in range(16):
        bits = [(w >> i) & 1 for i in range(4)]
        if sum(bits) % 2 == 0:
            blocks.append(tuple(groups[i][bits[i]] for i in range(4)))
    return groups, blocks


def test_verify_h_design_parity_code():
    groups, blocks = _parity_blocks()
    ok, witnesses = verify_h_design(groups, blocks, 4, 3)
    assert ok and not witnesses
    # fixing two coordinates of the parity code leaves two words
    ok, _ = verify_h_design(groups, blocks, 4, 2)
    assert not ok


def test_verify_h_design_empty_blocks():
    groups = ((0,), (1,), (2,), (3,))
    ok, witnesses = verify_h_design(groups, [], 4, 3)
    assert not ok and len(witnesses) == 4


def test_verify_h_design_not_transverse():
    groups, blocks = _parity_blocks()
    with pytest.raises(errors.NotTransverse):
        verify_h_design(groups, [(0, 1, 2, 4)], 4, 3)


def test_verify_bbd_pairing_construction():
    fac = round_robin_one_factorization(4)
    design = bbd_from_factorizations(fac, fac)
    ok, report = verify_bbd(design)
    assert ok
    assert report.categories["crossing"].once == 48


def test_verify_bbd_missing_block():
    fac = round_robin_one_factorization(4)
    design = bbd_from_factorizations(fac, fac)
    victim = min(design.blocks)
    ok, report = verify_bbd(Bbd(4, design.blocks - {victim}))
    assert not ok
    assert report.categories["crossing"].uncovered == 4


def test_verify_bbd_bad_split():
    with pytest.raises(errors.BadSplit):
        verify_bbd(Bbd(4, frozenset({(0, 1, 2, 4)})))


def _pair_code_order2():
    # words (x,y,u,v) with f(x,y) = f(u,v) for the order-2 symmetric square
    f = ((0, 1), (1, 0))
    return frozenset(
        (x, y, u, v)
        for x in range(2)
        for y in range(2)
        for u in range(2)
        for v in range(2)
        if f[x][y] == f[u][v]
    )


def test_verify_swap_closure_symmetric_square_code():
    ok, _ = verify_swap_closure(MdsCode(4, 2, 2, _pair_code_order2()))
    assert ok


def test_verify_swap_closure_mod4_sum_fails_on_diagonal():
    words = frozenset(
        (x, y, u, v)
        for x in range(4)
        for y in range(4)
        for u in range(4)
        for v in range(4)
        if (x + y) % 4 == (u + v) % 4
    )
    ok, witness = verify_swap_closure(MdsCode(4, 4, 2, words))
    assert not ok
    assert witness == (0, 0, 1, 1)


def test_verify_swap_closure_missing_diagonal():
    words = _pair_code_order2() - {(0, 0, 0, 0)}
    ok, witness = verify_swap_closure(MdsCode(4, 2, 2, words))
    assert not ok and witness == (0, 0, 0, 0)


def test_coverage_profile_empty_and_full():
    profile = coverage_profile(8, [], lambda a, b, c: "all")
    assert profile["all"].uncovered == 56
    profile = coverage_profile(8, boolean_sqs8().blocks, lambda a, b, c: "all")
    assert profile["all"].once == 56
    assert profile["all"].uncovered == 0


def test_partial_kind_allows_uncovered():
    d8 = boolean_sqs8()
    victim = min(d8.blocks)
    partial = Design(PARTIAL, 8, d8.blocks - {victim})
    report = verify_design(partial)
    assert report.multiple_count == 0 and report.uncovered_count == 4


def test_count_identity_corollary():
    from sqslab.verify import count_identity

    assert count_identity(boolean_sqs8())
    d8 = boolean_sqs8()
    assert not count_identity(Design(SQS, 8, d8.blocks - {min(d8.blocks)}))
