"""CLI commands, exit codes, file formats, and report determinism."""

import json

import pytest

from qmlib.cli import (EXIT_FAILURE, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION,
                       canonical_json, main)


@pytest.fixture
def discrete_file(tmp_path):
    path = tmp_path / "discrete.json"
    path.write_text(json.dumps(
        {"points": ["a", "b"], "matrix": [["0", "1"], ["1", "0"]]}))
    return str(path)


@pytest.fixture
def broken_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(
        {"points": ["a", "b", "c"],
         "matrix": [["0", "5", "1"], ["1", "0", "inf"], ["inf", "1", "0"]]}))
    return str(path)


@pytest.fixture
def family_file(tmp_path):
    path = tmp_path / "fm.json"
    path.write_text(json.dumps(
        {"rule": "sup-truncated-difference", "cutoff": 8,
         "params": {"prefix": "f"}}))
    return str(path)


def run(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, out


class TestCheck:
    def test_discrete_metric(self, capsys, discrete_file):
        rc, out = run(capsys, ["check", discrete_file])
        assert rc == EXIT_OK
        data = json.loads(out)
        assert data["validation"]["is_metric"] is True
        assert data["completeness"]["complete"] is True
        assert data["derived"]["d_up"]["values"] == ["0", "inf"]

    def test_invalid_distance_exits_nonzero(self, capsys, broken_file):
        rc, out = run(capsys, ["check", broken_file])
        assert rc == EXIT_FAILURE
        data = json.loads(out)
        assert data["validation"]["is_distance"] is False

    def test_family_file(self, capsys, family_file):
        rc, out = run(capsys, ["check", family_file])
        assert rc == EXIT_OK
        data = json.loads(out)
        assert data["kind"] == "family"
        assert data["completeness"]["complete"] is False

    def test_markdown_format(self, capsys, discrete_file):
        rc, out = run(capsys, ["check", discrete_file, "--format", "markdown"])
        assert rc == EXIT_OK and out.startswith("# check")

    def test_missing_file(self, capsys):
        rc, _ = run(capsys, ["check", "/nonexistent/space.json"])
        assert rc == EXIT_PARSE

    def test_unparseable_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        rc, _ = run(capsys, ["check", str(bad)])
        assert rc == EXIT_PARSE


class TestAudit:
    def test_audit_ok(self, capsys, discrete_file):
        rc, out = run(capsys, ["audit", discrete_file])
        assert rc == EXIT_OK
        data = json.loads(out)
        assert data["report"]["ok"] is True
        stmts = {e["statement"] for e in data["report"]["entries"]}
        assert "completeness_criterion_1" in stmts

    def test_theorem_selector(self, capsys, discrete_file):
        rc, out = run(capsys, ["audit", discrete_file, "--theorems", "sup_upgrade"])
        data = json.loads(out)
        assert [e["statement"] for e in data["report"]["entries"]] == ["sup_upgrade"]

    def test_second_distance(self, capsys, discrete_file, tmp_path):
        rc, out = run(capsys, ["audit", discrete_file,
                               "--second-distance", discrete_file])
        assert rc == EXIT_OK

    def test_family_input_is_precondition_error(self, capsys, family_file):
        rc, _ = run(capsys, ["audit", family_file])
        assert rc == EXIT_PRECONDITION

    def test_nonvalidated_input_is_precondition_error(self, capsys, broken_file):
        rc, _ = run(capsys, ["audit", broken_file])
        assert rc == EXIT_PRECONDITION


class TestGallery:
    def test_halfopen_json(self, capsys):
        rc, out = run(capsys, ["gallery", "halfopen", "--cutoff", "10", "--json"])
        assert rc == EXIT_OK
        data = json.loads(out)
        facts = {f["id"]: f for f in data["report"]["facts"]}
        assert facts["order_sup"]["actual"] == "2"
        assert facts["no_metric_sup"]["actual"] == ""

    def test_markdown(self, capsys):
        rc, out = run(capsys, ["gallery", "projection", "--cutoff", "4",
                               "--format", "markdown"])
        assert rc == EXIT_OK and out.startswith("# gallery projection")

    def test_unknown_fixture_rejected_by_parser(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["gallery", "mystery"])
        assert exc.value.code == 2


class TestRandom:
    def test_small_sweep(self, capsys):
        rc, out = run(capsys, ["random", "--n", "4", "--count", "8", "--seed", "5"])
        assert rc == EXIT_OK
        data = json.loads(out)
        assert data["instances_audited"] == 8
        assert data["failures"] == []
        assert data["derived_chain_violations"] == 0
        assert "content_hash" in data

    def test_determinism_bytes(self, capsys):
        _, out1 = run(capsys, ["random", "--n", "4", "--count", "6", "--seed", "9"])
        _, out2 = run(capsys, ["random", "--n", "4", "--count", "6", "--seed", "9"])
        assert out1.encode() == out2.encode()

    def test_seed_changes_output(self, capsys):
        _, out1 = run(capsys, ["random", "--n", "4", "--count", "6", "--seed", "9"])
        _, out2 = run(capsys, ["random", "--n", "4", "--count", "6", "--seed", "10"])
        assert out1 != out2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "sweep.json"
        rc, out = run(capsys, ["random", "--n", "4", "--count", "4", "--seed", "1",
                               "--out", str(target)])
        assert rc == EXIT_OK and out == ""
        assert json.loads(target.read_text())["command"] == "random"

    def test_worker_pool_matches_serial(self, capsys, tmp_path, monkeypatch):
        serial = tmp_path / "serial.json"
        pooled = tmp_path / "pooled.json"
        run(capsys, ["random", "--n", "4", "--count", "12", "--seed", "3",
                     "--out", str(serial)])
        monkeypatch.setenv("QML_WORKERS", "2")
        run(capsys, ["random", "--n", "4", "--count", "12", "--seed", "3",
                     "--out", str(pooled)])
        assert serial.read_bytes() == pooled.read_bytes()


class TestReport:
    def test_merge_to_markdown(self, capsys, tmp_path, discrete_file):
        audit_json = tmp_path / "audit.json"
        rc, _ = run(capsys, ["audit", discrete_file, "--out", str(audit_json)])
        assert rc == EXIT_OK
        sweep_json = tmp_path / "sweep.json"
        run(capsys, ["random", "--n", "4", "--count", "4", "--seed", "1",
                     "--out", str(sweep_json)])
        rc, out = run(capsys, ["report", str(audit_json), str(sweep_json)])
        assert rc == EXIT_OK
        assert "# audit" in out and "# random sweep" in out

    def test_bad_input(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("nope")
        rc, _ = run(capsys, ["report", str(bad)])
        assert rc == EXIT_PARSE


class TestCanonicalJson:
    def test_sorted_and_newline_terminated(self):
        text = canonical_json({"b": 1, "a": [2, 3]})
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("\n")
