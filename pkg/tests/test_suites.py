"""Suite runner: determinism, finding replay, pass/fail semantics."""

import json
from pathlib import Path

import pytest

from redsep import (
    Bounds,
    IndexedFamily,
    InputError,
    canonical_base,
    canonical_json,
    replay_finding,
    run_suite,
    suite_defaults,
    suite_description,
    suite_names,
)
from redsep import serialize

from conftest import mask

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

TIGHT = Bounds(max_points=2, alphabet=2, depth=2, cap=512)


def test_the_registered_suites():
    assert suite_names() == (
        "algebra-closure",
        "diagonal-absorption",
        "distributivity",
        "image-commutes",
        "image-necessity",
        "intersection-image",
        "intersection-image-necessity",
        "preimage-commutes",
        "reduction-dual-separation",
        "restriction",
        "transfer-identity",
        "zero-trace-gap",
        "zero-witness-certificate",
    )
    for name in suite_names():
        assert suite_description(name)
        bounds, budget, expects = suite_defaults(name)
        assert isinstance(bounds, Bounds) and budget >= 0
    expecting = {name for name in suite_names() if suite_defaults(name)[2]}
    assert expecting == {
        "image-necessity",
        "intersection-image-necessity",
        "zero-trace-gap",
    }


def test_unknown_suite_names_are_rejected():
    with pytest.raises(InputError):
        run_suite("no-such-suite")
    with pytest.raises(InputError):
        suite_defaults("no-such-suite")
    with pytest.raises(InputError):
        suite_description("no-such-suite")


@pytest.mark.parametrize(
    "name", ["distributivity", "intersection-image-necessity", "transfer-identity"]
)
def test_runs_are_deterministic_for_a_fixed_seed(name):
    first = run_suite(name, bounds=TIGHT, seed=3, budget=6)
    second = run_suite(name, bounds=TIGHT, seed=3, budget=6)
    assert first.cases == second.cases
    assert first.violation_count == second.violation_count
    assert first.witness_count == second.witness_count
    assert canonical_json(first.violations) == canonical_json(second.violations)
    assert canonical_json(first.witnesses) == canonical_json(second.witnesses)


def test_witness_documents_replay_through_the_public_api():
    res = run_suite("image-necessity", bounds=TIGHT, seed=0, budget=6)
    assert res.passed and res.witness_count > 0
    for doc in res.witnesses:
        assert doc["suite"] == "image-necessity" and doc["kind"] == "witness"
        assert replay_finding(json.loads(canonical_json(doc)))


def test_law_abiding_instances_do_not_replay_as_violations():
    base_doc = serialize.base_to_doc(canonical_base("union", 2))
    family_doc = serialize.family_to_doc(
        IndexedFamily.from_list(2, [mask(2, [0]), mask(2, [1])])
    )
    for identity in ("intersection", "union"):
        doc = {
            "suite": "distributivity",
            "kind": "violation",
            "instance": {
                "base": base_doc,
                "mode": "range",
                "family": family_doc,
                "mask": [0],
                "identity": identity,
            },
            "detail": {},
        }
        assert replay_finding(doc) is False


def test_replay_rejects_malformed_documents():
    with pytest.raises(InputError):
        replay_finding("not an object")
    with pytest.raises(InputError):
        replay_finding({"suite": "no-such-suite", "instance": {}})
    with pytest.raises(InputError):
        replay_finding({"suite": "distributivity", "instance": "nope"})


def test_shipped_corpus_findings_still_trigger():
    files = sorted(CORPUS.glob("*.json"))
    assert len(files) >= 4
    for path in files:
        doc = json.loads(path.read_text())
        assert replay_finding(doc), path.name
        assert path.read_text() == canonical_json(doc)


def test_witness_expectation_decides_the_verdict_when_nothing_turns_up():
    starved = run_suite("image-necessity", bounds=Bounds(max_points=1), seed=0)
    assert starved.witness_count == 0
    assert starved.expects_witnesses and not starved.passed
    assert "[FAIL]" in starved.summary()

    quiet = run_suite("distributivity", bounds=TIGHT, seed=0, budget=4)
    assert quiet.violation_count == 0 and quiet.passed
    assert quiet.summary().startswith("distributivity:")
    assert "[pass]" in quiet.summary()


def test_keep_caps_stored_documents_but_not_counts():
    capped = run_suite("image-necessity", keep=2)
    assert capped.witness_count == 36
    assert len(capped.witnesses) == 2
    assert capped.passed
