import pytest

from flatcauchy.cauchy import are_isomorphic, karoubi_envelope
from flatcauchy.corpus import idempotent_monoid, walking_arrow
from flatcauchy.errors import BaseMismatch, NonFunctorial, PreconditionViolated
from flatcauchy.fincat import discrete, identity_functor, pick_object, terminal
from flatcauchy.presheaf import (
    Presheaf,
    category_of_elements,
    corepresentable,
    flat_value_bound,
    is_flat_elements,
    is_flat_limits,
    lan_along,
    lan_unit,
    representable,
    restrict,
    weighted_colimit,
)
from flatcauchy.setcalc import FinSet, SetDiagram, colimit_finset


def const(C, n=1):
    return Presheaf.build(C, {c: range(n) for c in C.objects},
                          {f: {x: x for x in range(n)} for f in C.morphisms})


def empty(C):
    return Presheaf.build(C, {}, {f: {} for f in C.morphisms})


def test_representable_walking_arrow():
    assert representable(walking_arrow(), "1").sizes() == (1, 1)


def test_representable_monoid_acts_by_right_multiplication():
    C = idempotent_monoid()
    Y = representable(C, "*")
    assert list(Y.sets["*"]) == ["1", "e"]
    assert Y.act("e", "1") == "e" and Y.act("e", "e") == "e"


def test_representable_at_terminal_is_singletons(cats):
    Y = representable(cats["chain3"], "2")
    assert Y.sizes() == (1, 1, 1)


def test_elements_of_representable_has_terminal_object(small_corpus):
    for C in small_corpus.categories:
        for c in C.objects:
            el, _ = category_of_elements(representable(C, c))
            top = (c, C.id(c))
            assert all(len(el.hom(o, top)) == 1 for o in el.objects)


def test_elements_of_rep_at_source_of_arrow():
    el, proj = category_of_elements(representable(walking_arrow(), "0"))
    assert len(el.objects) == 1 and len(el.morphisms) == 1
    assert proj.obj(el.objects[0]) == "0"


def test_empty_presheaf(cats):
    for name in ("arrow", "idem", "square"):
        M = empty(cats[name])
        assert category_of_elements(M)[0].objects == ()
        assert not is_flat_elements(M)
        assert not is_flat_limits(M)


def test_singleton_on_idempotent_monoid_is_flat():
    M = const(idempotent_monoid())
    assert is_flat_elements(M) and is_flat_limits(M)


def test_nonfunctorial_action_rejected():
    C = idempotent_monoid()
    with pytest.raises(NonFunctorial):
        Presheaf.build(C, {"*": [0, 1]}, {"e": {0: 1, 1: 0}})


def test_weighted_colimit_coproduct_count():
    C = discrete(2)
    M = const(C)
    F = SetDiagram(C, {"0": FinSet(("a",)), "1": FinSet(("b", "c"))},
                   {"id_0": {"a": "a"}, "id_1": {"b": "b", "c": "c"}})
    assert len(weighted_colimit(M, F)) == 3


def test_weighted_colimit_of_representable_is_evaluation(small_corpus):
    for C in small_corpus.categories:
        for c in C.objects:
            for d in C.objects:
                F = corepresentable(C, d)
                assert len(weighted_colimit(representable(C, c), F)) == len(F.sets[c])


def test_constant_weight_gives_conical_colimit(small_corpus):
    for C in small_corpus.categories:
        for d in C.objects:
            F = corepresentable(C, d)
            assert len(weighted_colimit(const(C), F)) == len(colimit_finset(F)[0])


def test_weighted_colimit_base_mismatch():
    with pytest.raises(BaseMismatch):
        weighted_colimit(const(discrete(1)), corepresentable(discrete(1), "0"))


def test_lan_along_identity_is_iso(small_corpus):
    for C in small_corpus.categories[:8]:
        J = identity_functor(C)
        for M in small_corpus.presheaves[C.name][:20]:
            assert all(u.is_bijective() for u in lan_unit(J, M).values())


def test_lan_along_point_is_representable(small_corpus):
    one = terminal()
    M = const(one)
    for C in small_corpus.categories:
        for c in C.objects:
            J = pick_object(C, c)
            J = type(J)(one, C, J.on_objects, J.on_morphisms)
            L = lan_along(J, M)
            assert are_isomorphic(L, representable(C, c))


def test_lan_along_karoubi_embedding_restricts_back():
    C = idempotent_monoid()
    kar, emb = karoubi_envelope(C)
    for M in (const(C), representable(C, "*"), empty(C)):
        L = lan_along(emb, M)
        back = restrict(L, emb)
        assert back.sizes() == M.sizes()
        assert all(u.is_bijective() for u in lan_unit(emb, M).values())


def test_flat_value_bound_examples(small_corpus):
    C = idempotent_monoid()
    assert flat_value_bound(const(C))
    with pytest.raises(PreconditionViolated):
        flat_value_bound(empty(C))
    for D in small_corpus.categories:
        for c in D.objects:
            assert flat_value_bound(representable(D, c))


def test_flat_tests_agree_on_small_corpus(small_corpus):
    for M in small_corpus.all_presheaves():
        assert is_flat_elements(M) == is_flat_limits(M), M.name
