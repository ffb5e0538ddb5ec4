"""Finite sets, finite diagrams of finite sets, and their exact (co)limits."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .errors import MalformedInput, NonFunctorial
from .fincat import FinCategory
from .unionfind import UnionFind


@dataclass(frozen=True)
class FinSet:
    elements: tuple = ()

    def __post_init__(self):
        if not isinstance(self.elements, tuple):
            object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise MalformedInput(f"duplicate elements in {self.elements!r}")

    @cached_property
    def _index(self):
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, x) -> int:
        return self._index[x]

    def __contains__(self, x):
        return x in self._index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FinSet({list(self.elements)!r})"


def finset(xs: Iterable) -> FinSet:
    return xs if isinstance(xs, FinSet) else FinSet(tuple(xs))


@dataclass(frozen=True, eq=False)
class FinFunction:
    domain: FinSet
    codomain: FinSet
    mapping: Mapping

    def __call__(self, x):
        return self.mapping[x]

    def __eq__(self, other):
        if not isinstance(other, FinFunction):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and all(self.mapping[x] == other.mapping[x] for x in self.domain)
        )

    __hash__ = object.__hash__

    def then(self, other: "FinFunction") -> "FinFunction":
        """other∘self."""
        return FinFunction(self.domain, other.codomain, {x: other(self(x)) for x in self.domain})

    def is_injective(self) -> bool:
        return len({self(x) for x in self.domain}) == len(self.domain)

    def is_surjective(self) -> bool:
        return {self(x) for x in self.domain} == set(self.codomain)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    @classmethod
    def identity(cls, X: FinSet) -> "FinFunction":
        return cls(X, X, {x: x for x in X})


def all_functions(X: FinSet, Y: FinSet):
    for values in itertools.product(Y.elements, repeat=len(X)):
        yield FinFunction(X, Y, dict(zip(X.elements, values)))


@dataclass(frozen=True, eq=False)
class SetDiagram:
    """A covariant functor ``shape -> FinSet``.

    ``maps[f]`` is a dict sending elements of ``sets[src f]`` to elements of
    ``sets[tgt f]``.
    """

    shape: FinCategory
    sets: Mapping
    maps: Mapping
    name: str = field(default="", compare=False)

    def total_size(self) -> int:
        return sum(len(self.sets[s]) for s in self.shape.objects)


def check_diagram(D: SetDiagram) -> SetDiagram:
    S = D.shape
    for s in S.objects:
        if s not in D.sets:
            raise MalformedInput(f"no set for shape object {s!r}")
    for f, (a, b) in S.morphisms.items():
        m = D.maps.get(f)
        if m is None:
            raise MalformedInput(f"no map for shape morphism {f!r}")
        for x in D.sets[a]:
            if x not in m or m[x] not in D.sets[b]:
                raise MalformedInput(f"map {f!r} is not a function {a!r} -> {b!r} at {x!r}")
    for a in S.objects:
        if any(D.maps[S.id(a)][x] != x for x in D.sets[a]):
            raise NonFunctorial(f"identity at {a!r} is not sent to an identity")
    for g, f in S.composable_pairs():
        gf = D.maps[S.compose(g, f)]
        mg, mf = D.maps[g], D.maps[f]
        for x in D.sets[S.src(f)]:
            if gf[x] != mg[mf[x]]:
                raise NonFunctorial(f"composite {g!r}∘{f!r} is not preserved at {x!r}")
    return D


def colimit_finset(D: SetDiagram) -> tuple[FinSet, dict]:
    """Quotient of the disjoint union by x ~ D(f)(x).

    Elements of the result are pairs ``(vertex, element)``: the first
    member of each class in (vertex order, element order). Legs map each
    vertex's elements to their class.
    """
    S = D.shape
    disjoint = [(s, x) for s in S.objects for x in D.sets[s]]
    uf = UnionFind(disjoint)
    for f, (a, b) in S.morphisms.items():
        m = D.maps[f]
        for x in D.sets[a]:
            uf.union((a, x), (b, m[x]))
    classes = uf.classes()
    apex = FinSet(tuple(classes))
    legs = {s: {x: uf.find((s, x)) for x in D.sets[s]} for s in S.objects}
    return apex, legs


def limit_finset(D: SetDiagram) -> tuple[FinSet, dict]:
    """Compatible families, as tuples in shape-object order.

    Legs are the projections, keyed by shape object.
    """
    S = D.shape
    objs = S.objects
    pos = {s: i for i, s in enumerate(objs)}
    # edges whose both endpoints are fixed once position i is assigned
    checks = [[] for _ in objs]
    for f, (a, b) in S.morphisms.items():
        checks[max(pos[a], pos[b])].append((f, pos[a], pos[b]))
    families = []

    def extend(prefix):
        i = len(prefix)
        if i == len(objs):
            families.append(tuple(prefix))
            return
        for x in D.sets[objs[i]]:
            prefix.append(x)
            if all(D.maps[f][prefix[ia]] == prefix[ib] for f, ia, ib in checks[i]):
                extend(prefix)
            prefix.pop()

    extend([])
    apex = FinSet(tuple(families))
    legs = {s: {fam: fam[pos[s]] for fam in families} for s in objs}
    return apex, legs


# -- universal properties -----------------------------------------------------

def is_cocone(D: SetDiagram, legs: Mapping) -> bool:
    S = D.shape
    return all(
        legs[b][D.maps[f][x]] == legs[a][x]
        for f, (a, b) in S.morphisms.items()
        for x in D.sets[a]
    )


def is_cone(D: SetDiagram, legs: Mapping, apex: Iterable) -> bool:
    S = D.shape
    return all(
        D.maps[f][legs[a][z]] == legs[b][z]
        for f, (a, b) in S.morphisms.items()
        for z in apex
    )


def colimit_mediator(D: SetDiagram, colim: tuple, cocone: Mapping) -> Optional[dict]:
    """The map out of the colimit through which ``cocone`` factors, if any."""
    apex, legs = colim
    u = {}
    for s in D.shape.objects:
        for x in D.sets[s]:
            w = legs[s][x]
            if u.setdefault(w, cocone[s][x]) != cocone[s][x]:
                return None
    if set(u) != set(apex):
        return None
    return u


def limit_mediator(D: SetDiagram, lim: tuple, cone: Mapping, apex: Iterable) -> Optional[dict]:
    """The map into the limit through which ``cone`` factors, if any."""
    lim_apex, _ = lim
    pos = {s: i for i, s in enumerate(D.shape.objects)}
    u = {}
    for z in apex:
        fam = tuple(cone[s][z] for s in sorted(pos, key=pos.get))
        if fam not in lim_apex:
            return None
        u[z] = fam
    return u
