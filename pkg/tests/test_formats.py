import json

import pytest

from flatcauchy import formats
from flatcauchy.errors import MalformedInput, NonFunctorial, ValidationError
from flatcauchy.suites import module_battery


def _roundtrip(dump, load, obj):
    text = json.dumps(dump(obj))
    again = load(json.loads(text))
    return dump(obj), dump(again)


def test_category_roundtrip(small_corpus):
    for C in small_corpus.categories:
        a, b = _roundtrip(formats.category_to_json, formats.category_from_json, C)
        assert a == b


def test_presheaf_roundtrip(small_corpus):
    for C in small_corpus.categories:
        for M in small_corpus.presheaves[C.name][:20]:
            a, b = _roundtrip(formats.presheaf_to_json, formats.presheaf_from_json, M)
            assert a == b


def test_functor_roundtrip(small_corpus):
    for H in small_corpus.functors[:60]:
        a, b = _roundtrip(formats.functor_to_json, formats.functor_from_json, H)
        assert a == b


def test_module_roundtrip():
    for M in module_battery()[:12]:
        a, b = _roundtrip(formats.module_to_json, formats.module_from_json, M)
        assert a == b


def test_witness_roundtrip(small_corpus):
    M = small_corpus.presheaves["arrow"][3]
    raw = formats.witness_to_json("presheaf", M, note="x")
    assert raw["note"] == "x"
    kind, back = formats.witness_from_json(json.loads(json.dumps(raw)))
    assert kind == "presheaf"
    assert formats.presheaf_to_json(back) == formats.presheaf_to_json(M)


def test_relative_base_reference(tmp_path, small_corpus):
    C = small_corpus.category("idem")
    formats.dump_json(formats.category_to_json(C), tmp_path / "base.json")
    raw = {"base": "base.json", "sets": {"*": ["x"]}, "action": {"e": {"x": "x"}}}
    formats.dump_json(raw, tmp_path / "m.json")
    M = formats.presheaf_from_json(str(tmp_path / "m.json"))
    assert M.base.name == "idem"


@pytest.mark.parametrize(
    "raw",
    [
        [],
        {"objects": ["a"]},
        {"objects": ["a"], "morphisms": [{"id": "f", "src": "a", "tgt": "zz"}]},
    ],
)
def test_bad_category(raw):
    with pytest.raises(ValidationError):
        formats.category_from_json(raw)


def test_bad_presheaf_and_nonfunctorial(small_corpus):
    base = formats.category_to_json(small_corpus.category("idem"))
    with pytest.raises(MalformedInput):
        formats.presheaf_from_json({"base": base})
    swap = {"base": base, "sets": {"*": ["x", "y"]}, "action": {"e": {"x": "y", "y": "x"}}}
    with pytest.raises(NonFunctorial):
        formats.presheaf_from_json(swap)
    lenient = formats.presheaf_from_json(swap, strict=False)
    assert lenient.action["e"] == {"x": "y", "y": "x"}


def test_bad_json_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(MalformedInput):
        formats.load_json(p)


def test_unknown_witness_kind():
    with pytest.raises(MalformedInput):
        formats.witness_to_json("sheaf", None)
    with pytest.raises(MalformedInput):
        formats.witness_from_json({"kind": "sheaf", "data": {}})


def test_bad_ring():
    with pytest.raises(ValidationError):
        formats.ring_from_json({"labels": ["0"], "add": [[0]], "mul": [[0]], "zero": 0})
