import json

from puritylab.cli import main
from puritylab.workspace import parse_workspace

FIXTURE = "workspaces/prop48.toml"


def test_list_suites(capsys):
    assert main(["list", "suites"]) == 0
    out = capsys.readouterr().out
    for name in ("prop-4-8", "thm-1-1-oracle", "cor-5-6"):
        assert name in out


def test_run_fixture_exit_code_and_report(tmp_path, capsys):
    report = tmp_path / "out.json"
    code = main(["run", FIXTURE, "--report", str(report)])
    assert code == 1  # the fixture pins a failing check on purpose
    payload = json.loads(report.read_text())
    assert payload["verdict"] == "fail"
    labels = [c["label"] for c in payload["checks"]]
    assert "flat-1-2-pinned-failure" in labels
    failing = [c for c in payload["checks"] if c["report"]["verdict"] == "fail"]
    assert failing and failing[0]["report"]["witness"] is not None


def test_run_missing_file():
    assert main(["run", "/nonexistent/ws.toml"]) == 3


def test_run_parse_error(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[modules.M]\nring = 'nope'\nfree = 1\n")
    assert main(["run", str(bad)]) == 3


def test_suite_exit_codes(tmp_path):
    assert main(["suite", "prop-4-8", "--report", str(tmp_path / "r.json")]) == 0
    assert main(["suite", "not-a-suite"]) == 3


def test_suite_undecided_exit_code(tmp_path):
    # a tiny budget forces honest undecided verdicts -> exit 2
    assert main(["suite", "prop-4-9", "--budget", "5"]) == 2


def test_suite_report_deterministic_across_threads(tmp_path):
    digests = []
    for threads in ("1", "4", "8"):
        path = tmp_path / f"r{threads}.json"
        code = main(["suite", "prop-4-10", "--threads", threads, "--report", str(path)])
        assert code == 0
        digests.append(path.read_bytes())
    assert digests[0] == digests[1] == digests[2]


def test_usage_error_exit_3():
    assert main([]) == 3
    assert main(["run"]) == 3
    assert main(["frobnicate"]) == 3


def test_construct_warfield_roundtrip(capsys):
    code = main([
        "construct", "warfield",
        "--p", "1", "--n", "2", "--m", "3", "--gens", "a,b", "--name", "W",
    ])
    assert code == 0
    out = capsys.readouterr().out
    ws = parse_workspace(out)
    assert ws.modules["W"].min_presentation().profile.rel == 3


def test_construct_warfield_range_error(capsys):
    code = main([
        "construct", "warfield",
        "--p", "1", "--n", "2", "--m", "4", "--gens", "a,b",
    ])
    assert code == 3


def test_construct_dual(tmp_path, capsys):
    code = main([
        "construct", "warfield",
        "--p", "1", "--n", "1", "--m", "2", "--gens", "a,b", "--name", "K",
    ])
    assert code == 0
    ws_text = capsys.readouterr().out
    ws_file = tmp_path / "w.toml"
    ws_file.write_text(ws_text)
    code = main(["construct", "dual", str(ws_file), "--module", "K"])
    assert code == 0
    out = capsys.readouterr().out
    ws = parse_workspace(ws_text + "\n" + out)
    # D(W_{1,1,2}) is the 2-generator, 1-relation separation module
    prof = ws.modules["K_dual"].min_presentation().profile
    assert (prof.gen, prof.rel) == (2, 1)


def test_check_verb_flat(tmp_path):
    report = tmp_path / "c.json"
    code = main([
        "check", "flat", FIXTURE, "--module", "M", "--n", "1", "--m", "2",
        "--report", str(report),
    ])
    assert code == 1
    payload = json.loads(report.read_text())
    assert payload["verdict"] == "fail"
    assert payload["reports"]["flat"]["witness"] is not None


def test_check_verb_purity_with_oracle(tmp_path):
    code = main([
        "check", "purity", FIXTURE, "--ambient", "F2", "--sub", "a,b",
        "--n", "1", "--m", "1", "--oracle",
    ])
    assert code == 0
    code = main([
        "check", "purity", FIXTURE, "--ambient", "F2", "--sub", "a,b",
        "--n", "1", "--m", "2", "--oracle",
    ])
    assert code == 1


def test_check_verb_upto_quantifier():
    # free modules are (n, m)-flat for every n; UP_TO(3) surrogate passes
    assert main(["check", "flat", FIXTURE, "--module", "F2",
                 "--n", "inf", "--m", "1"]) == 0
    # the ring is not self-injective, so the free module fails already there
    assert main(["check", "injective", FIXTURE, "--module", "F2",
                 "--n", "1", "--m", "1"]) == 1


def test_check_verb_usage_errors():
    assert main(["check", "flat", FIXTURE, "--module", "nope"]) == 3
    assert main(["check", "purity", FIXTURE, "--module", "M"]) == 3
    assert main(["check", "frobnicate", FIXTURE, "--module", "M"]) == 3


def test_report_witness_replays_through_checker(tmp_path):
    # harness invariant: a report's witness block, fed back through the
    # corresponding checker helper, reproduces the failure
    from puritylab.checkers import replay_flat_witness
    from puritylab.workspace import parse_workspace

    report = tmp_path / "out.json"
    assert main(["run", FIXTURE, "--report", str(report)]) == 1
    payload = json.loads(report.read_text())
    failing = [c for c in payload["checks"] if c["report"]["verdict"] == "fail"]
    assert failing
    with open(FIXTURE) as fh:
        ws = parse_workspace(fh.read())
    for entry in failing:
        assert entry["kind"] == "flat"
        module = ws.modules[entry["target"]]
        assert replay_flat_witness(module, entry["report"]["witness"])


def test_env_override_budget(tmp_path, monkeypatch):
    monkeypatch.setenv("PURITY_LAB_BUDGET", "5")
    assert main(["suite", "prop-4-9"]) == 2  # env budget forces undecided
    monkeypatch.setenv("PURITY_LAB_BUDGET", "2000000")
    assert main(["suite", "prop-4-9"]) == 0


def test_flags_beat_env(monkeypatch):
    monkeypatch.setenv("PURITY_LAB_BUDGET", "5")
    assert main(["suite", "prop-4-9", "--budget", "2000000"]) == 0


def test_staircase_tour_workspace_passes():
    assert main(["run", "workspaces/staircase-tour.toml"]) == 0


def test_reports_identical_across_fresh_processes(tmp_path):
    # different hash seeds would expose any set/hash-order leakage into the
    # canonical payload
    import os
    import subprocess
    import sys

    blobs = []
    for hashseed in ("1", "271828"):
        path = tmp_path / f"p{hashseed}.json"
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        proc = subprocess.run(
            [sys.executable, "-m", "puritylab.cli", "suite", "prop-4-10",
             "--report", str(path)],
            env=env,
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1]
