import json
from pathlib import Path

import pytest

from flatcauchy.corpus import CorpusConfig, build_corpus
from flatcauchy.errors import BudgetExceeded, UnknownSuite
from flatcauchy.formats import load_json
from flatcauchy.suites import SUITE_NAMES, replay, run_fixture, run_suite

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.mark.parametrize("name", SUITE_NAMES)
def test_suite_passes_on_small_corpus(name, small_corpus):
    report = run_suite(name, small_corpus)
    assert report.attempted > 0
    assert report.ok, report.counterexamples[:1]


def test_reports_are_deterministic(small_corpus):
    for name in ("flat-char-equivalence", "smallacc", "boolmonad-laws"):
        a = run_suite(name, small_corpus).to_dict(timing=False)
        b = run_suite(name, small_corpus).to_dict(timing=False)
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_corrupted_fixture_is_caught_and_replays():
    raw = load_json(DATA / "corrupted_fixture.json")
    report = run_fixture("flat-char-equivalence", raw, base_dir=DATA)
    assert report.attempted == 1 and report.passed == 0
    (ce,) = report.counterexamples
    assert "invalid" in ce["observed"]
    reproduced, seen = replay(json.loads(json.dumps(ce)))
    assert reproduced and seen == ce["observed"]


def test_replay_of_healthy_witness_does_not_reproduce(small_corpus):
    M = small_corpus.presheaves["arrow"][0]
    from flatcauchy.suites import SUITES

    suite = SUITES["flat-char-equivalence"]
    fake = {"suite": suite.name, "case": M.name, "witness": suite.witness(M), "observed": {"bogus": 1}}
    reproduced, _ = replay(fake)
    assert not reproduced


def test_unknown_suite(small_corpus):
    with pytest.raises(UnknownSuite):
        run_suite("no-such-suite", small_corpus)
    with pytest.raises(UnknownSuite):
        run_fixture("no-such-suite", {})


def test_zero_budget_is_refused():
    with pytest.raises(BudgetExceeded):
        CorpusConfig(presheaf_budget=0)
    with pytest.raises(BudgetExceeded):
        CorpusConfig(case_budget=0)


def test_case_budget_overflow_raises():
    with pytest.raises(BudgetExceeded):
        build_corpus(CorpusConfig(presheaf_budget=2, case_budget=3, functor_budget=0))


def test_config_file(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"presheaf_budget": 2}))
    assert CorpusConfig.from_json(p).presheaf_budget == 2
    p.write_text(json.dumps({"presheaf_budgett": 2}))
    with pytest.raises(Exception):
        CorpusConfig.from_json(p)


def test_corpus_shape(small_corpus):
    names = [C.name for C in small_corpus.categories]
    assert len(names) == len(set(names)) >= 13
    assert {"idem", "kar(idem)", "empty", "terminal"} <= set(names)
    summary = small_corpus.summary()
    assert summary["functors"] == len(small_corpus.functors)
