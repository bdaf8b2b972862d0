# SPDX-License-Identifier: MIT
import json
import os
import pathlib

import pytest

import chcelim

FIXTURES = pathlib.Path(os.environ.get("CHCELIM_FIXTURES", pathlib.Path(__file__).parents[2] / "fixtures"))


def load(name):
    return chcelim.parse((FIXTURES / name).read_text(), name)


def test_parse_insertion_sort():
    p = load("insertion_sort.chc")
    assert len(p) == 8
    assert sorted(p.predicates) == ["ins", "insertionSort", "sumlist"]
    assert not p.is_list_free
    assert chcelim.parse(p.text()) == p


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        chcelim.parse("p(X :- q.")


def test_eliminate_insertion_sort():
    r = chcelim.eliminate(load("insertion_sort.chc"))
    assert r.status == "Ok"
    assert r.program.is_list_free
    assert [lid for lid, _ in r.lemmas] == ["I1"]
    assert "(check-sat)" in r.program.smt2()
    assert all(v.holds for _, v in chcelim.check_lemmas(r))


def test_rotate_lemmas_and_complements():
    r = chcelim.eliminate(load("rotate.chc"))
    assert r.status == "Ok"
    assert r.program.is_list_free
    assert [lid for lid, _ in r.lemmas] == ["L1", "L2", "L3"]
    small = chcelim.Bounds(max_list_len=2, int_lo=0, int_hi=1)
    assert chcelim.check_complement("not_exists_1st_append", r.extended, small).holds


def test_total_functional_counterexample():
    v = chcelim.check_total_functional("p", load("contradictory_fact.chc"))
    assert not v.holds
    assert "p(0)" in v.counterexample


def test_pipeline_with_stub_solver(tmp_path):
    stub = os.environ.get("CHCELIM_STUB_SOLVER")
    if not stub:
        pytest.skip("stub solver not available")
    answer = tmp_path / "answer.txt"
    answer.write_text("unknown\n")
    code, report = chcelim.run_pipeline(
        str(FIXTURES / "insertion_sort.chc"),
        str(tmp_path / "out"),
        transform=True,
        solve=True,
        solver_cmd=f"{stub} --answer {answer} {{file}}",
    )
    assert code == 4
    data = json.loads(report)
    assert data["solver"]["status"] == "unknown"
    assert data["transform"]["diff_predicates"] == ["diff"]
