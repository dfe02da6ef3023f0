import pytest

from puritylab.bounds import Settings
from puritylab.constructions import StaircaseSpec, staircase_module
from puritylab.modules import is_isomorphic
from puritylab.report import canonical_json
from puritylab.workspace import (
    WorkspaceError,
    format_module_block,
    format_ring_block,
    parse_workspace,
    run_workspace,
)

FIXTURE = "workspaces/prop48.toml"


def test_fixture_roundtrip():
    with open(FIXTURE) as fh:
        ws = parse_workspace(fh.read())
    assert set(ws.rings) == {"R"}
    assert set(ws.modules) == {"M", "F2"}
    assert [c.label for c in ws.checks] == [
        "flat-1-1",
        "flat-up-to-n-1",
        "kernel-is-1-1-pure",
        "flat-1-2-pinned-failure",
    ]
    assert ws.settings.up_to == 3
    assert ws.modules["M"].dim == 5


def test_fixture_runs_with_pinned_failure():
    with open(FIXTURE) as fh:
        ws = parse_workspace(fh.read())
    payload = run_workspace(ws)
    verdicts = [c["report"]["verdict"] for c in payload["checks"]]
    assert verdicts == ["pass", "pass", "pass", "fail"]
    assert payload["verdict"] == "fail"
    # canonical serialization is stable and float-free
    assert canonical_json(payload) == canonical_json(run_workspace(ws))


def test_empty_workspace():
    ws = parse_workspace("")
    assert ws.rings == {} and ws.modules == {} and ws.checks == []
    payload = run_workspace(ws)
    assert payload["checks"] == [] and payload["verdict"] == "pass"


def test_unknown_ring_name():
    text = """
[modules.M]
ring = "missing"
free = 1
"""
    with pytest.raises(WorkspaceError) as info:
        parse_workspace(text)
    assert any("UnknownName" in e and "missing" in e for e in info.value.errors)
    assert any("line" in e for e in info.value.errors)


def test_unknown_module_in_check():
    text = """
[rings.R]
family = "chain"
q = 2
e = 2

[[checks]]
kind = "flat"
module = "nope"
n = 1
m = 1
"""
    with pytest.raises(WorkspaceError) as info:
        parse_workspace(text)
    assert any("UnknownName" in e for e in info.value.errors)


def test_parse_error_has_position():
    with pytest.raises(WorkspaceError) as info:
        parse_workspace("[rings.R\nfamily=")
    assert any("ParseError" in e for e in info.value.errors)


def test_budget_cap_rejected():
    text = """
[settings]
budget = 999999999999
"""
    with pytest.raises(WorkspaceError) as info:
        parse_workspace(text)
    assert any("BudgetCap" in e for e in info.value.errors)


def test_bad_check_kind():
    text = """
[rings.R]
family = "chain"
q = 2
e = 2

[modules.M]
ring = "R"
free = 1

[[checks]]
kind = "frobnicate"
module = "M"
"""
    with pytest.raises(WorkspaceError):
        parse_workspace(text)


def test_explicit_table_ring():
    text = """
[rings.X]
q = 2
labels = ["1", "x"]
table = [[[1,0],[0,1]], [[0,1],[0,0]]]

[modules.M]
ring = "X"
free = 1
"""
    ws = parse_workspace(text)
    assert ws.rings["X"].dim == 2
    assert ws.modules["M"].dim == 2


def test_warfield_and_duals_in_workspace(sz22):
    text = """
[rings.R]
family = "squareZero"
q = 2
t = 2

[modules.W]
ring = "R"
warfield = { p = 1, n = 2, m = 3, ideal_gens = ["a", "b"] }

[modules.DW]
ring = "R"
dual = "W"

[modules.VW]
ring = "R"
fqdual = "W"
"""
    ws = parse_workspace(text)
    direct = staircase_module(sz22, StaircaseSpec(1, 2, 3, ("a", "b")))
    assert is_isomorphic(ws.modules["W"], direct)
    assert ws.modules["DW"].min_presentation().profile.gen == 3
    assert ws.modules["VW"].dim == direct.dim


def test_emitted_blocks_parse_back(sz22):
    w = staircase_module(sz22, StaircaseSpec(1, 2, 2, ("a", "b")))
    text = (
        format_ring_block("R", "squareZero", q=2, t=2)
        + "\n"
        + format_module_block("W", "R", w)
    )
    ws = parse_workspace(text)
    assert is_isomorphic(ws.modules["W"], w)


def test_settings_precedence_defaults():
    ws = parse_workspace("[settings]\nup_to = 5\nseed = 9\n")
    assert ws.settings.up_to == 5 and ws.settings.seed == 9
    assert ws.settings.budget == Settings().budget
