import pytest

from sqslab import errors
from sqslab.latin import field_mols
from sqslab.mds import (
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
from sqslab.verify import verify_mds


def test_parity_code():
    code = rs_mds_code(2, 4, 2)
    assert len(code.words) == 8
    assert all(sum(w) % 2 == 0 for w in code.words)


def test_rs_code_16_8_7():
    code = rs_mds_code(16, 8, 7)
    assert len(code.words) == 256
    ok, _ = verify_mds(code)
    assert ok


def test_rs_code_bad_params():
    with pytest.raises(errors.BadParams):
        rs_mds_code(4, 8, 7)
    with pytest.raises(errors.BadParams):
        rs_mds_code(5, 5, 3)  # only dist 2 and d-1 are built directly
    with pytest.raises(errors.NotPrimePower):
        rs_mds_code(6, 4, 3)


def test_mds_from_mols_order2():
    code = mds_from_mols(field_mols(2, 1))
    assert (code.d, code.q, code.dist) == (3, 2, 2)
    assert len(code.words) == 4


def test_mds_from_mols_16():
    code = mds_from_mols(field_mols(16, 6))
    assert (code.d, code.q, code.dist) == (8, 16, 7)
    assert len(code.words) == 256


def test_mds_from_mols_order4():
    code = mds_from_mols(field_mols(4, 3))
    assert (code.d, code.q, code.dist) == (5, 4, 4)


def test_project_chain():
    code = mds_from_mols(field_mols(16, 6))
    p4 = project(code, (0, 1, 2, 3))
    assert (p4.d, p4.dist, len(p4.words)) == (4, 3, 256)
    p5 = project(code, (0, 1, 2, 3, 4))
    assert (p5.d, p5.dist) == (5, 4)
    same = project(code, tuple(range(8)))
    assert same.words == code.words
    with pytest.raises(errors.TooFewCoords):
        project(code, (0,))


@pytest.mark.parametrize("q,t", [(4, 3), (8, 4), (16, 6)])
def test_pair_projections_are_bijections(q, t):
    # any two coordinates of a distance-(d-1) code range over the full square
    code = mds_from_mols(field_mols(q, t))
    full = frozenset((x, y) for x in range(q) for y in range(q))
    for i in range(code.d):
        for j in range(i + 1, code.d):
            assert project(code, (i, j)).words == full


def test_extend_to_distance2():
    m5 = mds_from_mols(field_mols(4, 3))
    code = extend_to_distance2(m5, 4)
    assert len(code.words) == 64 and code.dist == 2
    assert project(m5, (0, 1, 2, 3)).words <= code.words


def test_extend_to_distance2_order16():
    m5 = project(mds_from_mols(field_mols(16, 6)), (0, 1, 2, 3, 4))
    code = extend_to_distance2(m5, 2)
    assert len(code.words) == 16**3
    remaining = (0, 1, 3, 4)
    assert project(m5, remaining).words <= code.words


def test_extend_corrupted_input():
    m5 = mds_from_mols(field_mols(4, 3))
    words = sorted(m5.words)
    # merge two words: duplicate a word under another (x, y) prefix
    corrupted = frozenset(words[:-1] + [words[0][:2] + words[-1][2:]])
    with pytest.raises(errors.NotWellDefined):
        extend_to_distance2(MdsCode(5, 4, 4, corrupted), 4)


def _pair_code(q, square):
    return frozenset(
        (x, y, u, v)
        for x in range(q)
        for y in range(q)
        for u in range(q)
        for v in range(q)
        if square[x][y] == square[u][v]
    )


def test_subcode_extract_corner():
    from sqslab.latin import symmetric_nilpotent_with_subsquares

    sq, (k0, k1) = symmetric_nilpotent_with_subsquares(8, 2, seed=0)
    code = MdsCode(4, 8, 2, _pair_code(8, sq.table))
    box = CoordBox((frozenset(k0), frozenset(k1), frozenset(k0), frozenset(k1)))
    ext = subcode_extract(code, box)
    assert len(ext.raw_words) == 8
    ok, _ = verify_mds(ext.dense)
    assert ok and ext.dense.q == 2


def test_subcode_extract_identity_box():
    code = rs_mds_code(4, 4, 2)
    box = CoordBox(tuple(frozenset(range(4)) for _ in range(4)))
    ext = subcode_extract(code, box)
    assert ext.raw_words == code.words


def test_subcode_extract_empty_not_mds():
    code = rs_mds_code(2, 4, 2)
    # odd-sum corner never meets the even-sum code
    box = CoordBox((frozenset({1}), frozenset({0}), frozenset({0}), frozenset({0})))
    ext = subcode_extract(code, box)
    assert not ext.raw_words
    ok, witness = verify_mds(ext.dense)
    assert not ok and witness[0] == "empty-face"


def test_subcode_swap_with_other_code():
    from sqslab.latin import symmetric_nilpotent_with_subsquares

    sq, (k0, k1) = symmetric_nilpotent_with_subsquares(8, 2, seed=0)
    code = MdsCode(4, 8, 2, _pair_code(8, sq.table))
    box = CoordBox((frozenset(k0), frozenset(k1), frozenset(k0), frozenset(k1)))
    current = subcode_extract(code, box).dense
    # exactly two distance-2 codes exist on a 2-letter box: parity and its complement
    parity = frozenset(w for w in current.words if sum(w) % 2 == 0)
    other_words = (
        frozenset(w for w in _all_words(2) if sum(w) % 2 == 1)
        if current.words == parity
        else frozenset(w for w in _all_words(2) if sum(w) % 2 == 0)
    )
    swapped = subcode_swap(code, box, MdsCode(4, 2, 2, other_words))
    ok, _ = verify_mds(swapped)
    assert ok and swapped.words != code.words
    # identity exchange
    same = subcode_swap(code, box, current)
    assert same.words == code.words


def _all_words(q):
    return [
        (x, y, u, v)
        for x in range(q)
        for y in range(q)
        for u in range(q)
        for v in range(q)
    ]


def test_subcode_swap_wrong_count():
    from sqslab.latin import symmetric_nilpotent_with_subsquares

    sq, (k0, k1) = symmetric_nilpotent_with_subsquares(8, 2, seed=0)
    code = MdsCode(4, 8, 2, _pair_code(8, sq.table))
    box = CoordBox((frozenset(k0), frozenset(k1), frozenset(k0), frozenset(k1)))
    with pytest.raises(errors.ParameterMismatch):
        subcode_swap(code, box, MdsCode(4, 2, 2, frozenset({(0, 0, 0, 0)})))


def test_random_quasigroup3_trivial():
    qg = random_quasigroup3(1)
    assert qg.table == (((0,),),)


def test_random_quasigroup3_order2():
    seen = set()
    for seed in range(6):
        qg = random_quasigroup3(2, seed=seed)
        parity = all(qg.table[x][y][u] == x ^ y ^ u for x in range(2) for y in range(2) for u in range(2))
        complement = all(
            qg.table[x][y][u] == 1 ^ x ^ y ^ u for x in range(2) for y in range(2) for u in range(2)
        )
        assert parity or complement
        seen.add(qg.table)
    assert len(seen) == 2


def test_random_quasigroup3_order4_verified_and_seeded():
    a = random_quasigroup3(4, seed=0)
    b = random_quasigroup3(4, seed=0)
    assert a.table == b.table
    ok, _ = verify_mds(a.to_code())
    assert ok


def test_quasigroup_words_shape():
    qg = Quasigroup3(2, (((0, 1), (1, 0)), ((1, 0), (0, 1))))
    assert len(qg.words()) == 8
