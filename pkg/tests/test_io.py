import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqslab import errors, io
from sqslab.bbd import bbd_from_factorizations
from sqslab.latin import round_robin_one_factorization, symmetric_nilpotent_ls
from sqslab.mds import rs_mds_code
from sqslab.model import SQS, Design
from sqslab.sqs import boolean_sqs8, search_small_sqs


def test_design_round_trip(tmp_path):
    d8 = boolean_sqs8()
    path = tmp_path / "d8.txt"
    io.save(d8, path)
    assert io.load(path) == d8
    text = path.read_text()
    assert text.startswith("#design kind=sqs v=8\n")
    assert text.endswith("\n")


def test_design_write_is_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    io.save(boolean_sqs8(), a)
    io.save(Design(SQS, 8, frozenset(sorted(boolean_sqs8().blocks))), b)
    assert a.read_bytes() == b.read_bytes()


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=50))
def test_design_text_round_trip_searched(seed):
    design = search_small_sqs(10, seed=seed)
    assert io.from_text(io.design_to_text(design)) == design


def test_duplicate_lines_rejected():
    text = "#design kind=sqs v=8\n0 1 2 3\n0 1 2 3\n"
    with pytest.raises(errors.MalformedBlock):
        io.from_text(text)


def test_unsorted_block_rejected():
    text = "#design kind=sqs v=8\n1 0 2 3\n"
    with pytest.raises(errors.MalformedBlock):
        io.from_text(text)


def test_unknown_header_rejected():
    with pytest.raises(errors.MalformedBlock):
        io.from_text("#nonsense q=2\n")


def test_latin_round_trip(tmp_path):
    sq = symmetric_nilpotent_ls(4)
    path = tmp_path / "latin.txt"
    io.save(sq, path)
    assert io.load(path) == sq


def test_onefact_round_trip(tmp_path):
    fac = round_robin_one_factorization(6)
    path = tmp_path / "fac.txt"
    io.save(fac, path)
    assert io.load(path) == fac


def test_mds_round_trip(tmp_path):
    code = rs_mds_code(2, 4, 2)
    path = tmp_path / "code.txt"
    io.save(code, path)
    assert io.load(path) == code


def test_bbd_round_trip(tmp_path):
    fac = round_robin_one_factorization(4)
    design = bbd_from_factorizations(fac, fac)
    path = tmp_path / "bbd.txt"
    io.save(design, path)
    assert io.load(path) == design
