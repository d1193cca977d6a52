import json

import pytest

import oracles
from make_golden import CASES, GOLDEN, render
from qweyl.repspace import RepElement


@pytest.mark.parametrize("name", sorted(CASES))
def test_output_matches_golden(name):
    assert render(CASES[name]) == (GOLDEN / name).read_text()


@pytest.mark.parametrize("s", range(5))
def test_golden_planewave_is_correct(s):
    # the stored file is itself checked against the formula oracle
    stored = RepElement.from_json(json.loads((GOLDEN / f"hhat_s{s}.json").read_text()))
    assert oracles.dict_equal(oracles.rep_dict(stored), oracles.hhat(s))


def test_order_convention_recorded():
    assert "FAIL" not in (GOLDEN / "order_ascending.txt").read_text()
    assert "FAIL" in (GOLDEN / "order_descending.txt").read_text()
