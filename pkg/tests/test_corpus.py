import json

import pytest

from amalgam.catalog import bad_table
from amalgam.corpus import CORPUS_ENV, TAG_NAMES, computed_tags, corpus_dir, load_corpus, read_manifest
from amalgam.verify import FAIL, NOT_MET, PASS, REGISTRY, corpus_run, generated_instances

SHIPPED_MINIMUM = {
    "zero", "Q", "N1", "dual", "QxQ", "Qsqrt2", "T2", "M2",
    "Q_id_Q", "lau_QxQ_T2", "semidirect_T2", "modext_QxQ",
}


class TestShippedCorpus:
    def test_minimum_entries_present(self):
        names = {e.name for e in read_manifest()}
        assert SHIPPED_MINIMUM <= names

    def test_tags_match(self):
        loaded, errors = load_corpus()
        assert errors == []
        for item in loaded:
            assert set(item.entry.tags) == set(computed_tags(item.algebra))
            assert set(item.entry.tags) <= set(TAG_NAMES)

    def test_non_split_entry(self):
        loaded, _ = load_corpus()
        k = next(i for i in loaded if i.entry.name == "Qsqrt2")
        assert "split" not in k.entry.tags

    def test_all_checks_pass(self, shipped_run):
        c = shipped_run.counts()
        assert c[FAIL] == 0 and shipped_run.errors == [] and shipped_run.exit_code == 0
        assert c[PASS] > 1000
        ids = {r.theorem_id for r in shipped_run.reports if r.status == PASS}
        assert ids == set(REGISTRY)

    def test_sorted_output(self, shipped_run):
        keys = [(r.theorem_id, r.instance) for r in shipped_run.reports]
        assert keys == sorted(keys)

    def test_not_met_has_reason(self, shipped_run):
        for r in shipped_run.reports:
            if r.status == NOT_MET:
                assert r.details.get("reason")

    def test_summary_line(self, shipped_run):
        last = json.loads(shipped_run.json_lines().splitlines()[-1])
        assert last["summary"] == shipped_run.counts() and last["errors"] == 0


class TestCorpusDirectory:
    def test_env_override(self, monkeypatch, mini_corpus):
        monkeypatch.setenv(CORPUS_ENV, str(mini_corpus))
        assert corpus_dir() == mini_corpus
        assert {e.name for e in read_manifest()} == {"Q", "dual", "N1"}

    def test_empty_corpus(self, tmp_path):
        run = corpus_run(tmp_path)
        assert run.counts() == {PASS: 0, FAIL: 0, NOT_MET: 0}
        assert run.exit_code == 0

    def test_missing_directory(self, tmp_path):
        assert read_manifest(tmp_path / "absent") == []

    def test_corrupted_table_continues(self, mini_corpus):
        (mini_corpus / "bad.json").write_text(json.dumps({"dim": 2, "table": bad_table()}))
        doc = json.loads((mini_corpus / "manifest.json").read_text())
        doc["entries"].append({"name": "bad", "file": "bad.json", "tags": []})
        (mini_corpus / "manifest.json").write_text(json.dumps(doc))
        run = corpus_run(mini_corpus, budget=6)
        assert [n for n, _ in run.errors] == ["bad"]
        assert "AssociativityViolation" in run.errors[0][1] and "('e0', 'e0', 'e0')" in run.errors[0][1]
        assert run.reports and run.counts()[FAIL] == 0
        assert run.exit_code == 2

    def test_tag_mismatch(self, mini_corpus):
        doc = json.loads((mini_corpus / "manifest.json").read_text())
        doc["entries"][0]["tags"] = ["commutative"]
        (mini_corpus / "manifest.json").write_text(json.dumps(doc))
        _, errors = load_corpus(mini_corpus)
        assert errors and "TagMismatch" in errors[0][1]

    def test_no_manifest_globs_files(self, mini_corpus):
        (mini_corpus / "manifest.json").unlink()
        assert {e.name for e in read_manifest(mini_corpus)} == {"Q", "dual", "N1"}

    def test_deterministic(self, mini_corpus):
        first = corpus_run(mini_corpus, budget=6).json_lines()
        second = corpus_run(mini_corpus, budget=6).json_lines()
        assert first == second

    def test_budget_limits_generated_pairs(self, mini_corpus):
        loaded, _ = load_corpus(mini_corpus)
        bases = {i.entry.name: i.algebra for i in loaded}
        small = generated_instances(bases, budget=2)
        assert "id(Q)" in small and "id(dual)" not in small
        assert all(make().algebra.dim <= 2 for make in small.values())

    @pytest.mark.parametrize("budget", [2, 4])
    def test_exit_clean(self, mini_corpus, budget):
        assert corpus_run(mini_corpus, budget=budget).exit_code == 0
