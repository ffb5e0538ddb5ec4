import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatcauchy.corpus import cospan, parallel_pair, span
from flatcauchy.errors import MalformedInput, NonFunctorial
from flatcauchy.fincat import discrete
from flatcauchy.oracles import colimit_universal, limit_universal
from flatcauchy.setcalc import (
    FinFunction,
    FinSet,
    SetDiagram,
    all_functions,
    check_diagram,
    colimit_finset,
    colimit_mediator,
    is_cocone,
    limit_finset,
    limit_mediator,
)


def diagram(shape, sets, maps):
    sets = {s: FinSet(tuple(v)) for s, v in sets.items()}
    full = dict(maps)
    for s in shape.objects:
        full[shape.id(s)] = {x: x for x in sets[s]}
    return check_diagram(SetDiagram(shape, sets, full))


def test_finset_rejects_duplicates():
    with pytest.raises(MalformedInput):
        FinSet((1, 1))


def test_function_properties():
    X, Y = FinSet((0, 1)), FinSet(("a", "b"))
    funcs = list(all_functions(X, Y))
    assert len(funcs) == 4
    assert sum(f.is_bijective() for f in funcs) == 2
    f = funcs[1]
    assert f.then(FinFunction.identity(Y)) == f


def test_coequalizer():
    D = diagram(parallel_pair(), {"0": [0, 1], "1": ["a", "b", "c"]},
                {"u": {0: "a", 1: "b"}, "v": {0: "b", 1: "b"}})
    apex, legs = colimit_finset(D)
    assert len(apex) == 2  # {a, b} merged, c alone
    assert legs["1"]["a"] == legs["1"]["b"] != legs["1"]["c"]


def test_equalizer():
    D = diagram(parallel_pair(), {"0": [0, 1, 2], "1": ["a", "b"]},
                {"u": {0: "a", 1: "b", 2: "a"}, "v": {0: "a", 1: "a", 2: "b"}})
    apex, _ = limit_finset(D)
    assert len(apex) == 1


def test_pullback_and_pushout():
    P = diagram(cospan(), {"l": [0, 1], "r": [0, 1, 2], "m": ["x", "y"]},
                {"p": {0: "x", 1: "y"}, "q": {0: "x", 1: "x", 2: "y"}})
    assert len(limit_finset(P)[0]) == 2 * 1 + 1 * 1
    S = diagram(span(), {"l": ["a", "b"], "r": ["c"], "m": [0, 1]},
                {"p": {0: "a", 1: "b"}, "q": {0: "c", 1: "c"}})
    assert len(colimit_finset(S)[0]) == 1


def test_product_and_coproduct():
    D = diagram(discrete(2), {"0": [1, 2], "1": [1, 2, 3]}, {})
    assert len(limit_finset(D)[0]) == 6
    assert len(colimit_finset(D)[0]) == 5


def test_empty_shape():
    D = diagram(discrete(0), {}, {})
    assert len(limit_finset(D)[0]) == 1
    assert len(colimit_finset(D)[0]) == 0


def test_check_diagram_rejects_broken_map():
    with pytest.raises(MalformedInput):
        diagram(parallel_pair(), {"0": [0], "1": ["a"]}, {"u": {0: "zz"}, "v": {0: "a"}})


def test_check_diagram_rejects_nonfunctorial_identity():
    D = SetDiagram(discrete(1), {"0": FinSet((0, 1))}, {"id_0": {0: 1, 1: 0}})
    with pytest.raises(NonFunctorial):
        check_diagram(D)


def test_mediators():
    D = diagram(parallel_pair(), {"0": [0], "1": ["a", "b"]}, {"u": {0: "a"}, "v": {0: "b"}})
    colim = colimit_finset(D)
    cocone = {"0": {0: "z"}, "1": {"a": "z", "b": "z"}}
    assert is_cocone(D, cocone)
    assert colimit_mediator(D, colim, cocone) == {colim[1]["1"]["a"]: "z"}
    bad = {"0": {0: "z"}, "1": {"a": "z", "b": "w"}}
    assert colimit_mediator(D, colim, bad) is None
    lim = limit_finset(D)
    assert limit_mediator(D, lim, {"0": {}, "1": {}}, []) == {}


def _classes(D):
    """Connected components of the element graph, computed by flood fill."""
    nodes = [(s, x) for s in D.shape.objects for x in D.sets[s]]
    adj = {v: set() for v in nodes}
    for f, (a, b) in D.shape.morphisms.items():
        for x in D.sets[a]:
            adj[(a, x)].add((b, D.maps[f][x]))
            adj[(b, D.maps[f][x])].add((a, x))
    seen, count = set(), 0
    for v in nodes:
        if v in seen:
            continue
        count += 1
        stack = [v]
        while stack:
            w = stack.pop()
            if w not in seen:
                seen.add(w)
                stack.extend(adj[w])
    return count


@settings(max_examples=80, deadline=None)
@given(
    st.integers(0, 3), st.integers(0, 3), st.data()
)
def test_parallel_pair_against_brute_force(n0, n1, data):
    if n0 and not n1:
        return
    u = {i: data.draw(st.integers(0, n1 - 1)) for i in range(n0)}
    v = {i: data.draw(st.integers(0, n1 - 1)) for i in range(n0)}
    D = diagram(parallel_pair(), {"0": range(n0), "1": range(n1)}, {"u": u, "v": v})
    assert len(colimit_finset(D)[0]) == _classes(D)
    assert len(limit_finset(D)[0]) == sum(
        1 for x in range(n0) for y in itertools.product(range(n1), repeat=1) if u[x] == v[x] == y[0]
    )
    assert colimit_universal(D)
    assert limit_universal(D)
