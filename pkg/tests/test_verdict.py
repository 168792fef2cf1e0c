import json

import pytest

from knotposet.config import DEFAULT, Budget
from knotposet.fpgroup.presentation import parse_presentation
from knotposet.fpgroup.triviality import word_is_trivial
from knotposet.verdict import EvidenceError, Status, Verdict, replay, replay_evidence


def test_status_roundtrip():
    v = Verdict.unknown("no idea")
    assert Verdict.from_dict(v.to_dict()) == v
    assert v.to_dict() == {"status": "Unknown", "note": "no idea"}
    assert str(Status.PROVED) == "Proved"


def test_decisive_verdicts_need_evidence():
    with pytest.raises(EvidenceError):
        Verdict.proved({})
    with pytest.raises(EvidenceError):
        Verdict(Status.REFUTED)


def test_json_roundtrip_replays():
    p = parse_presentation("gens: x,y; rels: xyx^-1y^-1")
    v = word_is_trivial(p, p.word("yxy^-1x^-1"))
    assert v.is_proved
    again = Verdict.from_dict(json.loads(json.dumps(v.to_dict())))
    assert again == v and replay(again)


def test_tampering_is_detected():
    p = parse_presentation("gens: x,y; rels: xyx^-1y^-1")
    v = word_is_trivial(p, p.word("yxy^-1x^-1"))
    bad = dict(v.evidence, word="xy")
    assert not replay_evidence(bad)
    with pytest.raises(EvidenceError):
        replay_evidence({"kind": "no_such_kind"})
    with pytest.raises(EvidenceError):
        replay_evidence({"kind": "relator_product"})


def test_budget_env_and_overrides():
    b = Budget.from_env({"KNOTPOSET_BUDGET_NODES": "7"}, conjugator_length=2, hom_cap=None)
    assert b.nodes == 7 and b.conjugator_length == 2 and b.hom_cap == DEFAULT.hom_cap
    assert b.with_(nodes=9).nodes == 9
    with pytest.raises(ValueError):
        Budget(nodes=0)
