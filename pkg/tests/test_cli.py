import json
import os

import pytest

from ssengine.cli import run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def workspace(tmp_path, capsys):
    """A built synthetic corpus + index, ready for queries and audits."""
    spec = {
        "groups": [
            {"term": "red fox", "docs": 12},
            {"term": "blue jay", "docs": 12},
            {"term": "green eel", "docs": 12},
        ],
        "noise": 0.0,
    }
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec))
    corpus_path = tmp_path / "corpus.json"
    index_path = tmp_path / "index.sse"
    assert run_cli(["synth", str(spec_path), "-o", str(corpus_path), "--seed", "42"]) == 0
    assert run_cli(["build", str(corpus_path), "-o", str(index_path)]) == 0
    capsys.readouterr()
    return tmp_path, str(corpus_path), str(index_path)


class TestIngest:
    def test_ingest_and_stats(self, tmp_path, capsys):
        jsonl = tmp_path / "in.jsonl"
        jsonl.write_text(
            '{"text": "one two"}\n{"bad": 1}\n{"text": "three"}\n'
        )
        out = tmp_path / "c.json"
        code, stdout, _ = run(capsys, "--format", "json",
                              "ingest", str(jsonl), "-o", str(out))
        assert code == 0
        doc = json.loads(stdout)
        assert doc["documents"] == 2
        assert doc["malformed_records"] == 1

        code, stdout, _ = run(capsys, "--format", "json", "stats", str(out))
        assert code == 0
        assert json.loads(stdout)["documents"] == 2

    def test_missing_input_is_io_error(self, tmp_path, capsys):
        code, _, err = run(capsys, "ingest", str(tmp_path / "nope.jsonl"),
                           "-o", str(tmp_path / "o.json"))
        assert code == 2
        assert "error" in err


class TestQuery:
    def test_single_word_modes_agree(self, workspace, capsys):
        _, _, index_path = workspace
        results = {}
        for mode in ("contains", "phrase"):
            code, stdout, _ = run(capsys, "--format", "json", "query",
                                  "--index", index_path, "--term", "fox",
                                  "--mode", mode)
            assert code == 0
            results[mode] = json.loads(stdout)["cardinality"]
        assert results["contains"] == results["phrase"] == 12

    def test_show_ids(self, workspace, capsys):
        _, _, index_path = workspace
        code, stdout, _ = run(capsys, "--format", "json", "query",
                              "--index", index_path, "--term", "red fox",
                              "--show-ids")
        doc = json.loads(stdout)
        assert doc["doc_ids"] == sorted(doc["doc_ids"])
        assert len(doc["doc_ids"]) == doc["cardinality"]

    def test_empty_term_is_validation_error(self, workspace, capsys):
        _, _, index_path = workspace
        code, _, err = run(capsys, "query", "--index", index_path, "--term", "!!!")
        assert code == 1
        assert "error" in err

    def test_bad_index_path_is_io_error(self, tmp_path, capsys):
        code, _, _ = run(capsys, "query", "--index", str(tmp_path / "x.sse"),
                         "--term", "a")
        assert code == 2


class TestSubsetsProb:
    def test_subsets_count(self, capsys):
        code, stdout, _ = run(capsys, "--format", "json", "subsets",
                              "--term", "w1 w2 w3 w4")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["subset_count"] == 15
        assert doc["subset_probability_exact"] == "1/15"

    def test_prob_reports_both_values(self, workspace, capsys):
        _, _, index_path = workspace
        code, stdout, _ = run(capsys, "--format", "json", "prob",
                              "--index", index_path, "--term", "red fox big bad")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["subset_probability_exact"] == "1/15"
        assert doc["universe_size"] == 36
        assert doc["event_probability"] is not None

    def test_env_var_format(self, workspace, capsys, monkeypatch):
        _, _, index_path = workspace
        monkeypatch.setenv("SSE_FORMAT", "json")
        code, stdout, _ = run(capsys, "prob", "--index", index_path, "--term", "fox")
        assert code == 0
        json.loads(stdout)


class TestAudit:
    def test_lemma2_on_disjoint_fixture(self, workspace, capsys):
        tmp_path, _, index_path = workspace
        pairs = tmp_path / "pairs.json"
        pairs.write_text(json.dumps([
            ["red fox", "blue jay"],
            ["red fox", "green eel"],
            ["blue jay", "green eel"],
        ]))
        code, stdout, _ = run(capsys, "--format", "json", "audit",
                              "--index", index_path, "--lemma", "l2",
                              "--pairs", str(pairs))
        assert code == 0
        doc = json.loads(stdout)
        assert doc["hold_rate"] == 1.0
        assert doc["pairs_tested"] == 3

    def test_independence_report_files(self, workspace, capsys):
        tmp_path, _, index_path = workspace
        terms = tmp_path / "terms.json"
        terms.write_text(json.dumps(["red fox", "blue jay", "green eel"]))
        report_dir = tmp_path / "report"
        code, stdout, _ = run(capsys, "--format", "json", "audit",
                              "--index", index_path, "--lemma", "indep",
                              "--pairs", str(terms),
                              "--report-dir", str(report_dir))
        assert code == 0
        doc = json.loads(stdout)
        assert doc["aggregate_bias"] == 0
        assert (report_dir / "verdicts.csv").exists()
        assert (report_dir / "jaccard.png").exists()
        assert (report_dir / "cardinalities.png").exists()
        header = (report_dir / "verdicts.csv").read_text().splitlines()[0]
        assert header.startswith("t_x,t_y,predicted,observed,holds")

    def test_precondition_violation_exit_1(self, workspace, capsys):
        tmp_path, _, index_path = workspace
        pairs = tmp_path / "pairs.json"
        pairs.write_text(json.dumps([["red fox", "fox hunt"]]))
        code, _, err = run(capsys, "audit", "--index", index_path,
                           "--lemma", "l2", "--pairs", str(pairs))
        assert code == 1
        assert "error" in err

    def test_p1_chain(self, workspace, capsys):
        tmp_path, _, index_path = workspace
        chain = tmp_path / "chain.json"
        chain.write_text(json.dumps(["red", "red fox"]))
        code, stdout, _ = run(capsys, "--format", "json", "audit",
                              "--index", index_path, "--lemma", "p1",
                              "--pairs", str(chain))
        assert code == 0
        assert json.loads(stdout)["lemma_id"] == "P1"


class TestCliContract:
    def test_unknown_flag_rejected(self, capsys):
        code, _, _ = run(capsys, "stats", "--bogus-flag", "x")
        assert code == 1

    def test_json_mode_single_document(self, workspace, capsys):
        _, corpus_path, _ = workspace
        code, stdout, _ = run(capsys, "--format", "json", "stats", corpus_path)
        assert code == 0
        assert len(stdout.strip().splitlines()) == 1
        json.loads(stdout)

    def test_deterministic_output(self, workspace, capsys):
        _, _, index_path = workspace
        outputs = set()
        for _ in range(3):
            code, stdout, _ = run(capsys, "--format", "json", "query",
                                  "--index", index_path,
                                  "--term", "red fox", "--show-ids")
            assert code == 0
            outputs.add(stdout)
        assert len(outputs) == 1
