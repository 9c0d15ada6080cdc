from pathlib import Path

import pytest

from sqslab import io

REPO = Path(__file__).resolve().parent.parent
DATA = REPO / "data"


@pytest.fixture(scope="session")
def sqs34_files():
    paths = sorted(DATA.glob("sqs34_*.txt"))
    assert len(paths) >= 4, "order-34 ingredient files missing from data/"
    return paths[:4]


@pytest.fixture(scope="session")
def sqs34_designs(sqs34_files):
    return [io.load_design(p) for p in sqs34_files]
