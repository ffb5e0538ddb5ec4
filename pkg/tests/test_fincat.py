import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatcauchy.cauchy import karoubi_envelope
from flatcauchy.corpus import walking_arrow
from flatcauchy.errors import (
    IllTypedComposite,
    MalformedInput,
    MissingComposite,
    MissingIdentity,
    NonAssociative,
)
from flatcauchy.fincat import (
    FinCategory,
    discrete,
    enumerate_functors,
    from_monoid,
    from_preorder,
    full_subcategory,
    identity_functor,
    is_filtered,
    is_final,
    is_fully_faithful,
    opposite,
    pick_object,
    terminal,
    to_terminal,
    validate_category,
)
from flatcauchy.formats import category_to_json
from flatcauchy.oracles import has_total_cocone


def arrow_raw():
    return category_to_json(walking_arrow())


def test_walking_arrow_valid():
    C = validate_category(arrow_raw())
    assert len(C.morphisms) == 3
    assert C.hom("0", "1") == ("a",)


def test_ill_typed_composite_rejected():
    raw = arrow_raw()
    for entry in raw["composition"]:
        if (entry["after"], entry["before"]) == ("a", "id0"):
            entry["equals"] = "id1"
    with pytest.raises(IllTypedComposite):
        validate_category(raw)


def test_missing_composite_rejected():
    raw = arrow_raw()
    raw["composition"] = [e for e in raw["composition"] if e["before"] != "id0"]
    with pytest.raises(MissingComposite):
        validate_category(raw)


def test_missing_identity_rejected():
    raw = arrow_raw()
    del raw["identities"]["1"]
    with pytest.raises(MissingIdentity):
        validate_category(raw)


def test_unknown_morphism_rejected():
    raw = arrow_raw()
    raw["composition"][0]["equals"] = "zz"
    with pytest.raises(MalformedInput):
        validate_category(raw)


def test_idempotent_monoid_valid():
    C = from_monoid(["1", "e"], lambda g, f: "e", "1")
    assert C.compose("e", "e") == "e"
    assert set(C.idempotents()) == {"1", "e"}


def _assoc(table, elems):
    def mul(x, y):
        if x == "1":
            return y
        if y == "1":
            return x
        return table[(x, y)]

    return all(mul(mul(x, y), z) == mul(x, mul(y, z)) for x, y, z in itertools.product(elems, repeat=3))


def test_monoid_tables_accepted_iff_associative():
    # every multiplication table on {1, a, b} with 1 a unit
    elems = ["1", "a", "b"]
    accepted = 0
    for values in itertools.product(elems, repeat=4):
        table = dict(zip(itertools.product("ab", repeat=2), values))
        associative = _assoc(table, elems)
        try:
            from_monoid(elems, lambda g, f: table[(g, f)], "1")
            ok = True
        except NonAssociative:
            ok = False
        assert ok == associative
        accepted += ok
    # labellings of the seven monoids of order 3: 1+2+2+2+1+1+2
    assert accepted == 11


def test_opposite_walking_arrow():
    A = opposite(walking_arrow())
    assert A.morphisms["a"] == ("1", "0")


def test_opposite_involution(small_corpus):
    for C in small_corpus.categories:
        assert opposite(opposite(C)) == C


def test_commutative_monoid_self_opposite():
    C = from_monoid(["1", "e"], lambda g, f: "e", "1")
    assert opposite(C) == C


def test_filtered_examples(cats):
    assert is_filtered(cats["chain3"])  # has a terminal object
    assert not is_filtered(discrete(2))
    assert is_filtered(cats["idem"])
    assert not is_filtered(cats["empty"])
    assert not is_filtered(cats["parallel"])  # u, v not coequalized


def test_filtered_matches_total_cocone(small_corpus):
    for C in small_corpus.categories:
        assert is_filtered(C) == has_total_cocone(C), C.name


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
))
def test_preorder_filtered_iff_directed(data):
    n, rel = data
    C = from_preorder(range(n), rel)
    leq = {(str(a), str(b)) for a, b in rel} | {(str(a), str(a)) for a in range(n)}
    # closure
    changed = True
    while changed:
        new = {(a, d) for a, b in leq for c, d in leq if b == c} - leq
        leq |= new
        changed = bool(new)
    objs = [str(a) for a in range(n)]
    directed = all(any((a, c) in leq and (b, c) in leq for c in objs) for a in objs for b in objs)
    assert is_filtered(C) == directed == has_total_cocone(C)


def test_fully_faithful_examples(cats):
    assert is_fully_faithful(identity_functor(cats["arrow"]))
    assert not is_fully_faithful(to_terminal(discrete(2)))
    for C in (cats["idem"], cats["band3"], cats["chain3"], cats["square"]):
        _, emb = karoubi_envelope(C)
        assert is_fully_faithful(emb)


def test_final_examples(cats):
    assert is_final(identity_functor(cats["square"]))
    assert is_final(pick_object(cats["chain3"], "2"))  # top element is terminal
    assert not is_final(pick_object(cats["chain3"], "1"))
    assert not is_final(pick_object(discrete(2), "0"))


def test_full_subcategory_inclusion_fully_faithful(cats):
    _, inc = full_subcategory(cats["square"], ["a", "d"])
    assert is_fully_faithful(inc)


def test_functors_out_of_walking_arrow_count_morphisms(small_corpus):
    # a functor from the walking arrow is exactly a choice of morphism
    A = walking_arrow()
    for E in small_corpus.categories:
        assert sum(1 for _ in enumerate_functors(A, E)) == len(E.morphisms), E.name


def test_functors_out_of_terminal_count_objects(small_corpus):
    for E in small_corpus.categories:
        assert sum(1 for _ in enumerate_functors(terminal(), E)) == len(E.objects)


def test_build_rejects_duplicate_ids():
    with pytest.raises(MalformedInput):
        FinCategory.build(["x"], [("f", "x", "x"), ("f", "x", "x")], lambda g, f: "f")
