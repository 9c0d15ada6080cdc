import subprocess
import sys

from sqslab import io
from sqslab.bbd import bbd_from_factorizations
from sqslab.latin import round_robin_one_factorization
from sqslab.model import SQS, Design
from sqslab.sqs import boolean_sqs8


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "sqslab", *args],
        capture_output=True,
        text=True,
        timeout=300,
    )


def test_construct_and_verify_roundtrip(tmp_path):
    out = tmp_path / "s16.txt"
    res = run_cli("construct", "sqs", "--order", "16", "--seed", "1", "--out", str(out))
    assert res.returncode == 0, res.stderr
    res = run_cli("verify", str(out))
    assert res.returncode == 0
    assert res.stdout.startswith("OK sqs v=16 blocks=140")


def test_construct_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert run_cli("construct", "sqs", "--order", "16", "--seed", "1", "--out", str(a)).returncode == 0
    assert run_cli("construct", "sqs", "--order", "16", "--seed", "1", "--out", str(b)).returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_construct_s46(tmp_path):
    out = tmp_path / "s12.txt"
    res = run_cli("construct", "s46", "--order", "12", "--out", str(out))
    assert res.returncode == 0
    assert run_cli("verify", str(out)).stdout.startswith("OK s46 v=12 blocks=47")


def test_verify_corrupted_design(tmp_path):
    d8 = boolean_sqs8()
    bad = Design(SQS, 8, d8.blocks - {min(d8.blocks)})
    path = tmp_path / "bad.txt"
    io.save(bad, path)
    res = run_cli("verify", str(path))
    assert res.returncode == 1
    assert "FAIL" in res.stdout and "uncovered=4" in res.stdout


def test_verify_bbd_file(tmp_path):
    fac = round_robin_one_factorization(4)
    path = tmp_path / "bbd.txt"
    io.save(bbd_from_factorizations(fac, fac), path)
    res = run_cli("verify", str(path))
    assert res.returncode == 0
    assert res.stdout.startswith("OK bbd")


def test_plan_exit_codes():
    res = run_cli("plan", "--order", "26", "--kind", "sqs")
    assert res.returncode == 3
    assert "3n-4" in res.stderr
    res = run_cli("plan", "--order", "16", "--kind", "sqs")
    assert res.returncode == 0
    assert "double" in res.stdout
    res = run_cli("plan", "--order", "9", "--kind", "sqs")
    assert res.returncode == 3


def test_count_commands():
    res = run_cli("count", "--object", "sqs", "--order", "8")
    assert res.returncode == 0 and "count=30" in res.stdout
    res = run_cli("count", "--object", "quasigroup3", "--order", "2")
    assert res.returncode == 0 and "count=2" in res.stdout
    res = run_cli("count", "--object", "bbd", "--order", "4")
    assert res.returncode == 0 and "count=6" in res.stdout
    res = run_cli("count", "--object", "sqs", "--order", "14")
    assert res.returncode == 2


def test_stats_design(tmp_path):
    path = tmp_path / "d8.txt"
    io.save(boolean_sqs8(), path)
    res = run_cli("stats", str(path))
    assert res.returncode == 0 and "ok" in res.stdout
    bad = Design(SQS, 8, boolean_sqs8().blocks - {min(boolean_sqs8().blocks)})
    io.save(bad, tmp_path / "bad.txt")
    res = run_cli("stats", str(tmp_path / "bad.txt"))
    assert res.returncode == 1 and "MISMATCH" in res.stdout


def test_usage_errors():
    assert run_cli("construct", "sqs", "--order", "16").returncode == 2  # no --out
    assert run_cli("bogus").returncode == 2
    assert run_cli("verify", "/nonexistent/file.txt").returncode == 2


def test_construct_holes_small(tmp_path):
    out = tmp_path / "part66.txt"
    res = run_cli(
        "construct", "s46", "--order", "66", "--holes", "--out", str(out), "--threads", "2"
    )
    assert res.returncode == 0, res.stderr
    assert "parts:" in res.stdout
    res = run_cli("verify", str(out))
    assert res.returncode == 0
    assert res.stdout.startswith("OK partial v=66")
    res = run_cli("stats", str(out))
    assert res.returncode == 0 and "ok" in res.stdout


def test_construct_holes_on_non_assembly_order(tmp_path):
    res = run_cli("construct", "sqs", "--order", "16", "--holes", "--out", str(tmp_path / "x.txt"))
    assert res.returncode == 2


def test_construct_file_inputs_missing(tmp_path):
    res = run_cli("construct", "s46", "--order", "66", "--out", str(tmp_path / "x.txt"))
    assert res.returncode == 2
    assert "--input" in res.stderr or "file" in res.stderr


def test_construct_130_from_files(tmp_path, sqs34_files):
    out = tmp_path / "s130.txt"
    args = ["construct", "sqs", "--order", "130", "--out", str(out)]
    for p in sqs34_files:
        args += ["--input", str(p)]
    res = run_cli(*args)
    assert res.returncode == 0, res.stderr
    assert "blocks=89440" in res.stdout
    res = run_cli("verify", str(out), "--threads", "2")
    assert res.returncode == 0
    assert res.stdout.startswith("OK sqs v=130 blocks=89440")
    res = run_cli("stats", str(out))
    assert res.returncode == 0


def test_plan_130_prints_tree():
    res = run_cli("plan", "--order", "130", "--kind", "sqs")
    assert res.returncode == 0
    assert "assembly" in res.stdout and "search" in res.stdout


def test_search_timeout_exit_code(tmp_path):
    res = run_cli(
        "construct", "sqs", "--order", "14", "--budget", "1000", "--out", str(tmp_path / "x.txt")
    )
    assert res.returncode == 4


def test_verify_latin_and_factorization_files(tmp_path):
    from sqslab.latin import round_robin_one_factorization, symmetric_nilpotent_ls

    io.save(symmetric_nilpotent_ls(4), tmp_path / "sq.txt")
    res = run_cli("verify", str(tmp_path / "sq.txt"))
    assert res.returncode == 0 and "symmetric,nilpotent" in res.stdout
    io.save(round_robin_one_factorization(6), tmp_path / "fac.txt")
    res = run_cli("verify", str(tmp_path / "fac.txt"))
    assert res.returncode == 0 and res.stdout.startswith("OK onefact m=6")


def test_verify_mds_file(tmp_path):
    from sqslab.mds import rs_mds_code

    io.save(rs_mds_code(2, 4, 2), tmp_path / "code.txt")
    res = run_cli("verify", str(tmp_path / "code.txt"))
    assert res.returncode == 0 and res.stdout.startswith("OK mds d=4")
    io.save(rs_mds_code(16, 8, 7), tmp_path / "big.txt")
    res = run_cli("verify", str(tmp_path / "big.txt"))
    assert res.returncode == 0
