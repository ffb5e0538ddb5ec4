import pytest

from flatcauchy.cauchy import (
    NatTransformation,
    check_natural,
    enumerate_nat,
    is_cauchy,
    is_cauchy_complete,
    is_representable,
    karoubi_envelope,
    split_idempotent,
    splitting_presheaf,
    verify_smallacc,
)
from flatcauchy.corpus import chain3, idempotent_monoid, left_zero_band, walking_arrow
from flatcauchy.enumeration import canonical_key
from flatcauchy.errors import BaseMismatch, NotNatural, SweepBudgetExceeded
from flatcauchy.fincat import discrete, is_fully_faithful
from flatcauchy.presheaf import Presheaf, is_flat_elements, representable, restrict


def singleton(C):
    return Presheaf.build(C, {c: ["x"] for c in C.objects}, {f: {"x": "x"} for f in C.morphisms})


def empty(C):
    return Presheaf.build(C, {}, {f: {} for f in C.morphisms})


def test_karoubi_of_idempotent_monoid():
    C = idempotent_monoid()
    kar, emb = karoubi_envelope(C)
    assert len(kar.objects) == 2
    assert len(kar.hom(("*", "e"), ("*", "e"))) == 1
    assert is_fully_faithful(emb)
    assert is_cauchy_complete(kar)


def test_karoubi_of_poset_adds_nothing():
    kar, emb = karoubi_envelope(chain3())
    assert len(kar.objects) == 3 and len(kar.morphisms) == 6


def test_karoubi_of_empty(cats):
    kar, _ = karoubi_envelope(cats["empty"])
    assert kar.objects == ()


def test_karoubi_complete_on_corpus(small_corpus):
    for C in small_corpus.categories:
        kar, emb = karoubi_envelope(C)
        assert is_cauchy_complete(kar) and is_fully_faithful(emb)


def test_yoneda_counts(small_corpus):
    for C in small_corpus.categories:
        for M in small_corpus.presheaves[C.name]:
            for c in C.objects:
                assert len(enumerate_nat(representable(C, c), M)) == len(M.sets[c])


def test_nat_from_empty_is_unique(cats):
    C = cats["square"]
    assert len(enumerate_nat(empty(C), representable(C, "a"))) == 1


def test_nat_rep_to_rep_on_monoid():
    C = idempotent_monoid()
    Y = representable(C, "*")
    assert len(enumerate_nat(Y, Y)) == 2


def test_nat_base_mismatch():
    with pytest.raises(BaseMismatch):
        enumerate_nat(singleton(discrete(1)), singleton(discrete(1)))


def test_check_natural_rejects_bad_square():
    C = walking_arrow()
    Y0, Y1 = representable(C, "0"), representable(C, "1")
    bad = NatTransformation(Y1, Y1, {"0": {"a": "a"}, "1": {"id1": "id1"}})
    check_natural(bad)
    M = Presheaf.build(C, {"0": [0, 1], "1": [0]}, {"a": {0: 0}})
    wrong = NatTransformation(M, M, {"0": {0: 1, 1: 0}, "1": {0: 0}})
    with pytest.raises(NotNatural):
        check_natural(wrong)
    assert Y0 is not None


def test_representability():
    C = walking_arrow()
    assert is_representable(representable(C, "1")) == "1"
    assert is_representable(empty(C)) is None
    assert is_representable(singleton(idempotent_monoid())) is None


def test_cauchy_certificates():
    C = idempotent_monoid()
    cert = is_cauchy(representable(C, "*"))
    assert cert is not None and cert.verify()
    assert cert.section.is_identity() or cert.section.then(cert.retraction).is_identity()
    cert = is_cauchy(singleton(C))
    assert cert.obj == "*" and cert.element == "x"
    assert cert.section.components["*"]["x"] == "e"
    assert cert.verify()
    assert is_cauchy(empty(walking_arrow())) is None


def test_cauchy_complete_examples():
    assert not is_cauchy_complete(idempotent_monoid())
    assert is_cauchy_complete(chain3())
    assert split_idempotent(idempotent_monoid(), "e") is None


def test_cauchy_implies_flat_and_representable_implies_cauchy(small_corpus):
    for M in small_corpus.all_presheaves():
        cauchy = is_cauchy(M) is not None
        if cauchy:
            assert is_flat_elements(M)
        if is_representable(M) is not None:
            assert cauchy


def test_karoubi_restriction_matches_cauchy_presheaves(small_corpus):
    # representables on kar(C), restricted along the embedding, are exactly
    # the Cauchy presheaves on C up to isomorphism
    for C in (idempotent_monoid(), left_zero_band(), walking_arrow()):
        kar, emb = karoubi_envelope(C)
        restricted = {canonical_key(restrict(representable(kar, X), emb)) for X in kar.objects}
        from flatcauchy.enumeration import enumerate_presheaves

        cauchy = {canonical_key(M) for M in enumerate_presheaves(C, 3) if is_cauchy(M) is not None}
        assert restricted == cauchy, C.name


def test_splitting_presheaf_is_flat_witness():
    C = idempotent_monoid()
    W = splitting_presheaf(C, "e")
    assert W.sizes() == (1,)
    assert is_flat_elements(W) and is_representable(W) is None


def test_smallacc_examples(cats):
    kar, _ = karoubi_envelope(idempotent_monoid())
    rep = verify_smallacc(kar, 3)
    assert rep.holds and rep.cauchy_complete and rep.flat == rep.flat_representable == 2
    rep = verify_smallacc(idempotent_monoid(), 3)
    assert rep.holds and not rep.cauchy_complete and rep.witness.sizes() == (1,)
    rep = verify_smallacc(walking_arrow(), 3)
    assert rep.holds and rep.flat == rep.flat_representable == 2


def test_smallacc_budget():
    with pytest.raises(SweepBudgetExceeded):
        verify_smallacc(walking_arrow(), 3, case_budget=3)
