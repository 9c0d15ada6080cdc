import pytest

from sqslab import errors, io
from sqslab.model import S46, SQS, is_admissible, sqs_block_count
from sqslab.planner import execute, format_plan, plan
from sqslab.verify import verify_design


def test_plan_16_doubles_from_base():
    node = plan(16, SQS)
    assert node.rule == "double" and node.v == 16
    assert node.children[0].rule == "base" and node.children[0].v == 8


def test_plan_130_uses_assembly_with_searched_holes():
    node = plan(130, SQS)
    assert node.rule == "assembly"
    child = node.children[0]
    assert child.rule == "search" and child.v == 34
    assert "search-only" in child.note


def test_plan_14_is_search():
    node = plan(14, SQS)
    assert node.rule == "search" and node.v == 14


def test_plan_10_is_search():
    assert plan(10, SQS).rule == "search"


def test_plan_26_reports_missing_rule():
    with pytest.raises(errors.Unreachable) as exc:
        plan(26, SQS)
    assert any("3n-4" in rule for rule in exc.value.missing)


def test_plan_34_reports_missing_rule():
    with pytest.raises(errors.Unreachable) as exc:
        plan(34, SQS)
    assert any("3n-2" in rule for rule in exc.value.missing)


def test_plan_inadmissible():
    with pytest.raises(errors.Inadmissible):
        plan(9, SQS)
    with pytest.raises(errors.Inadmissible):
        plan(7, S46)


def test_plan_s46_small_orders():
    assert plan(12, S46).rule == "double"
    assert plan(6, S46).rule == "base"
    node = plan(66, S46)
    assert node.rule == "assembly"
    assert node.children[0].rule == "file"


def test_plan_s46_unreachable_lists_injection():
    with pytest.raises(errors.Unreachable) as exc:
        plan(10, S46)
    assert any("2n-2" in rule for rule in exc.value.missing)


def test_reachability_is_doubling_monotone():
    for v in range(1, 201):
        if not is_admissible(v, SQS):
            continue
        try:
            plan(v, SQS)
        except errors.Unreachable:
            continue
        plan(2 * v, SQS)  # must not raise


def test_format_plan_mentions_rules():
    text = format_plan(plan(130, SQS))
    assert "assembly" in text and "search" in text and "(34)" in text


def test_execute_double_chain():
    design = execute(plan(32, SQS), seed=0)
    assert design.v == 32
    assert len(design.blocks) == sqs_block_count(32)
    assert verify_design(design).ok


def test_execute_s46_12():
    design = execute(plan(12, S46), seed=0)
    assert design.v == 12 and design.kind == S46
    assert len(design.blocks) == 47


def test_execute_s46_24():
    design = execute(plan(24, S46), seed=0)
    assert design.v == 24 and design.kind == S46
    assert verify_design(design).ok


def test_execute_sqs_64():
    design = execute(plan(64, SQS), seed=0)
    assert len(design.blocks) == sqs_block_count(64) == 10416


def test_execute_deterministic():
    a = execute(plan(20, SQS), seed=4)
    b = execute(plan(20, SQS), seed=4)
    assert a == b


def test_execute_corrupted_file_leaf(tmp_path, sqs34_designs):
    broken = sqs34_designs[0].blocks - {min(sqs34_designs[0].blocks)}
    bad = sqs34_designs[0].__class__(SQS, 34, broken)
    path = tmp_path / "bad34.txt"
    io.save(bad, path)
    with pytest.raises(errors.VerificationFailure):
        execute(plan(130, SQS), seed=0, inputs=[str(path)])


def test_execute_file_leaf_requires_inputs():
    node = plan(66, S46)
    with pytest.raises(errors.PreconditionFailure):
        execute(node, seed=0)


def test_execute_holes_only_for_assembly_root():
    with pytest.raises(errors.PreconditionFailure):
        execute(plan(16, SQS), holes=True)
