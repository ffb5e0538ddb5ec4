"""Finite categories and functors given by explicit composition tables.

Objects and morphisms are arbitrary hashable identifiers. Identity of a
morphism is its declared id; nothing is ever quotiented.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping, Optional

from .errors import (
    IllTypedComposite,
    MalformedInput,
    MissingComposite,
    MissingIdentity,
    NonAssociative,
    NonFunctorial,
)
from .unionfind import UnionFind

Obj = Hashable
Mor = Hashable


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: tuple
    morphisms: Mapping  # mor -> (src, tgt), in declaration order
    identities: Mapping  # obj -> mor
    composition: Mapping  # (after, before) -> after∘before
    name: str = field(default="", compare=False)

    def src(self, f):
        return self.morphisms[f][0]

    def tgt(self, f):
        return self.morphisms[f][1]

    def id(self, a):
        return self.identities[a]

    def compose(self, g, f):
        """g∘f, defined when tgt(f) == src(g)."""
        return self.composition[(g, f)]

    @cached_property
    def _homs(self):
        homs = {(a, b): [] for a in self.objects for b in self.objects}
        for f, (a, b) in self.morphisms.items():
            homs[(a, b)].append(f)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, a, b) -> tuple:
        return self._homs[(a, b)]

    def out_of(self, a):
        return [f for f, (s, _) in self.morphisms.items() if s == a]

    def into(self, b):
        return [f for f, (_, t) in self.morphisms.items() if t == b]

    @cached_property
    def identity_set(self):
        return frozenset(self.identities.values())

    def is_identity(self, f) -> bool:
        return f in self.identity_set

    def idempotents(self):
        return [
            f for f, (a, b) in self.morphisms.items()
            if a == b and self.compose(f, f) == f
        ]

    def composable_pairs(self):
        for f, (_, b) in self.morphisms.items():
            for g in self.out_of(b):
                yield g, f

    def __len__(self):
        return len(self.objects)

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and dict(self.morphisms) == dict(other.morphisms)
            and dict(self.identities) == dict(other.identities)
            and dict(self.composition) == dict(other.composition)
        )

    __hash__ = object.__hash__

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"FinCategory({label}{len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    @classmethod
    def build(
        cls,
        objects: Iterable,
        arrows: Iterable[tuple],
        compose: Optional[Callable] = None,
        identities: Optional[Mapping] = None,
        name: str = "",
    ) -> "FinCategory":
        """Build and validate a category from non-identity arrows.

        ``arrows`` lists ``(id, src, tgt)`` triples. ``compose(g, f)`` is
        only consulted for pairs of non-identity arrows; composites with
        identities are filled in. Identities default to ``"id_<obj>"``.
        """
        objects = tuple(objects)
        identities = dict(identities or {a: f"id_{a}" for a in objects})
        morphisms = {identities[a]: (a, a) for a in objects}
        for f, a, b in arrows:
            if f in morphisms:
                raise MalformedInput(f"duplicate morphism id {f!r}")
            morphisms[f] = (a, b)
        ids = set(identities.values())
        table = {}
        for f, (a, b) in morphisms.items():
            for g, (b2, c) in morphisms.items():
                if b2 != b:
                    continue
                if g in ids:
                    table[(g, f)] = f
                elif f in ids:
                    table[(g, f)] = g
                else:
                    if compose is None:
                        raise MissingComposite(f"no rule to compose {g!r}∘{f!r}")
                    table[(g, f)] = compose(g, f)
        return check_category(cls(objects, morphisms, identities, table, name))


def validate_category(raw: Mapping) -> FinCategory:
    """Parse the JSON-shaped description and validate it."""
    try:
        objects = tuple(raw["objects"])
        morphisms = {}
        for m in raw["morphisms"]:
            if m["id"] in morphisms:
                raise MalformedInput(f"duplicate morphism id {m['id']!r}")
            morphisms[m["id"]] = (m["src"], m["tgt"])
        identities = dict(raw["identities"])
        composition = {}
        for entry in raw["composition"]:
            key = (entry["after"], entry["before"])
            if key in composition:
                raise MalformedInput(f"duplicate composition entry {key!r}")
            composition[key] = entry["equals"]
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"malformed category description: {exc!r}") from exc
    return check_category(
        FinCategory(objects, morphisms, identities, composition, raw.get("name", ""))
    )


def check_category(C: FinCategory) -> FinCategory:
    if len(set(C.objects)) != len(C.objects):
        raise MalformedInput("duplicate object ids")
    objs = set(C.objects)
    for f, (a, b) in C.morphisms.items():
        if a not in objs or b not in objs:
            raise MalformedInput(f"morphism {f!r} has unknown endpoint")
    for a in C.objects:
        if a not in C.identities:
            raise MissingIdentity(f"object {a!r} has no identity")
        i = C.identities[a]
        if C.morphisms.get(i) != (a, a):
            raise MissingIdentity(f"identity {i!r} of {a!r} is not an endomorphism of {a!r}")
    for (g, f), h in C.composition.items():
        if f not in C.morphisms or g not in C.morphisms or h not in C.morphisms:
            raise MalformedInput(f"composition entry {(g, f)!r} -> {h!r} names an unknown morphism")
        if C.tgt(f) != C.src(g):
            raise IllTypedComposite(f"entry for non-composable pair {(g, f)!r}")
        if C.morphisms[h] != (C.src(f), C.tgt(g)):
            raise IllTypedComposite(
                f"{g!r}∘{f!r} = {h!r} but {h!r} is not a morphism "
                f"{C.src(f)!r}->{C.tgt(g)!r}"
            )
    for g, f in C.composable_pairs():
        if (g, f) not in C.composition:
            raise MissingComposite(f"missing composite {g!r}∘{f!r}")
    for f, (a, b) in C.morphisms.items():
        if C.compose(C.id(b), f) != f or C.compose(f, C.id(a)) != f:
            raise MissingIdentity(f"declared identities are not units for {f!r}")
    for g, f in C.composable_pairs():
        gf = C.compose(g, f)
        for h in C.out_of(C.tgt(g)):
            if C.compose(h, gf) != C.compose(C.compose(h, g), f):
                raise NonAssociative(f"triple {(h, g, f)!r} is not associative")
    return C


def opposite(C: FinCategory) -> FinCategory:
    morphisms = {f: (b, a) for f, (a, b) in C.morphisms.items()}
    composition = {(f, g): h for (g, f), h in C.composition.items()}
    name = C.name[:-3] if C.name.endswith("^op") else (C.name + "^op" if C.name else "")
    return FinCategory(C.objects, morphisms, dict(C.identities), composition, name)


def stringify(C: FinCategory, name: str = "") -> FinCategory:
    """Rename every object and morphism by ``str``; ids must stay distinct."""
    objs = {a: _label(a) for a in C.objects}
    mors = {f: _label(f) for f in C.morphisms}
    if len(set(objs.values())) != len(objs) or len(set(mors.values())) != len(mors):
        raise MalformedInput("string labels collide")
    return FinCategory(
        tuple(objs[a] for a in C.objects),
        {mors[f]: (objs[a], objs[b]) for f, (a, b) in C.morphisms.items()},
        {objs[a]: mors[i] for a, i in C.identities.items()},
        {(mors[g], mors[f]): mors[h] for (g, f), h in C.composition.items()},
        name or C.name,
    )


def _label(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(_label(y) for y in x) + ")"
    return str(x)


# -- builders ---------------------------------------------------------------

def discrete(n_or_names, name: str = "") -> FinCategory:
    names = range(n_or_names) if isinstance(n_or_names, int) else n_or_names
    names = [str(a) for a in names]
    return FinCategory.build(names, [], name=name or f"discrete{len(names)}")


def from_preorder(objects, leq: Iterable[tuple], name: str = "") -> FinCategory:
    """Thin category of the reflexive-transitive closure of ``leq``."""
    objects = [str(a) for a in objects]
    rel = {(a, a) for a in objects} | {(str(a), str(b)) for a, b in leq}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    arrows = [
        (f"{a}->{b}", a, b)
        for a in objects for b in objects
        if a != b and (a, b) in rel
    ]

    def compose(g, f):
        a = f.split("->")[0]
        c = g.split("->")[1]
        return f"id_{a}" if a == c else f"{a}->{c}"

    return FinCategory.build(objects, arrows, compose, name=name)


def from_monoid(elements, mult: Callable, unit, obj="*", name: str = "") -> FinCategory:
    """One-object category; ``mult(g, f)`` is the composite g∘f."""
    elements = list(elements)
    arrows = [(m, obj, obj) for m in elements if m != unit]
    return FinCategory.build([obj], arrows, mult, identities={obj: unit}, name=name)


# -- functors ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    on_objects: Mapping
    on_morphisms: Mapping
    name: str = field(default="", compare=False)

    def __call__(self, x):
        if x in self.on_morphisms:
            return self.on_morphisms[x]
        return self.on_objects[x]

    def obj(self, a):
        return self.on_objects[a]

    def mor(self, f):
        return self.on_morphisms[f]

    def __repr__(self):
        return f"FinFunctor({self.name or '?'}: {self.source!r} -> {self.target!r})"


def check_functor(H: FinFunctor) -> FinFunctor:
    D, E = H.source, H.target
    for a in D.objects:
        if H.on_objects.get(a, _MISSING) not in E.identities:
            raise MalformedInput(f"object {a!r} is not sent to an object of the target")
    for f, (a, b) in D.morphisms.items():
        if f not in H.on_morphisms or H.on_morphisms[f] not in E.morphisms:
            raise MalformedInput(f"morphism {f!r} is not sent to a morphism of the target")
        if E.morphisms[H.mor(f)] != (H.obj(a), H.obj(b)):
            raise NonFunctorial(f"{f!r} changes endpoints under the functor")
    for a in D.objects:
        if H.mor(D.id(a)) != E.id(H.obj(a)):
            raise NonFunctorial(f"identity of {a!r} is not preserved")
    for g, f in D.composable_pairs():
        if H.mor(D.compose(g, f)) != E.compose(H.mor(g), H.mor(f)):
            raise NonFunctorial(f"composite {g!r}∘{f!r} is not preserved")
    return H


_MISSING = object()


def identity_functor(C: FinCategory) -> FinFunctor:
    return FinFunctor(C, C, {a: a for a in C.objects}, {f: f for f in C.morphisms}, "id")


def compose_functors(K: FinFunctor, H: FinFunctor) -> FinFunctor:
    """K∘H."""
    return FinFunctor(
        H.source,
        K.target,
        {a: K.obj(H.obj(a)) for a in H.source.objects},
        {f: K.mor(H.mor(f)) for f in H.source.morphisms},
        f"{K.name}∘{H.name}",
    )


def full_subcategory(C: FinCategory, objects) -> tuple[FinCategory, FinFunctor]:
    keep = [a for a in C.objects if a in set(objects)]
    kept = set(keep)
    morphisms = {f: ab for f, ab in C.morphisms.items() if ab[0] in kept and ab[1] in kept}
    sub = FinCategory(
        tuple(keep),
        morphisms,
        {a: C.id(a) for a in keep},
        {k: h for k, h in C.composition.items() if k[0] in morphisms and k[1] in morphisms},
        f"{C.name}|{','.join(map(str, keep))}",
    )
    inc = FinFunctor(sub, C, {a: a for a in keep}, {f: f for f in morphisms}, "incl")
    return sub, inc


def to_terminal(C: FinCategory) -> FinFunctor:
    one = terminal()
    return FinFunctor(C, one, {a: "*" for a in C.objects}, {f: "id_*" for f in C.morphisms}, "!")


def terminal() -> FinCategory:
    return FinCategory.build(["*"], [], name="terminal")


def pick_object(C: FinCategory, c) -> FinFunctor:
    """The functor 1 -> C selecting ``c``."""
    return FinFunctor(terminal(), C, {"*": c}, {"id_*": C.id(c)}, f"pick[{c}]")


# -- predicates ---------------------------------------------------------------

def is_filtered(C: FinCategory) -> bool:
    """Nonempty, every pair of objects has a cospan, every parallel pair is
    coequalized by some arrow out of its target."""
    if not C.objects:
        return False
    for a, b in itertools.combinations(C.objects, 2):
        if not any(C.hom(a, c) and C.hom(b, c) for c in C.objects):
            return False
    for a in C.objects:
        for b in C.objects:
            for f, g in itertools.combinations(C.hom(a, b), 2):
                if not any(C.compose(h, f) == C.compose(h, g) for h in C.out_of(b)):
                    return False
    return True


def is_fully_faithful(H: FinFunctor) -> bool:
    D, E = H.source, H.target
    for a in D.objects:
        for b in D.objects:
            image = [H.mor(f) for f in D.hom(a, b)]
            if len(set(image)) != len(image):
                return False
            if len(image) != len(E.hom(H.obj(a), H.obj(b))):
                return False
    return True


def comma_under(e, H: FinFunctor) -> tuple[list, list]:
    """Objects and morphisms of the comma category (e ↓ H).

    Objects are pairs ``(d, u)`` with ``u: e -> H d``; a morphism
    ``(d, u) -> (d2, u2)`` is ``k: d -> d2`` with ``H(k)∘u == u2``.
    """
    D, E = H.source, H.target
    objects = [(d, u) for d in D.objects for u in E.hom(e, H.obj(d))]
    arrows = []
    for d, u in objects:
        for k in D.out_of(d):
            arrows.append((k, (d, u), (D.tgt(k), E.compose(H.mor(k), u))))
    return objects, arrows


def is_final(H: FinFunctor) -> bool:
    for e in H.target.objects:
        objects, arrows = comma_under(e, H)
        if not objects:
            return False
        uf = UnionFind(objects)
        for _, x, y in arrows:
            uf.union(x, y)
        if len(uf) != 1:
            return False
    return True


def enumerate_functors(D: FinCategory, E: FinCategory):
    """Every functor D -> E, by backtracking with composition pruning."""
    mors = list(D.morphisms)
    pos = {f: i for i, f in enumerate(mors)}
    # composition constraints become checkable once their last member is set
    checks = [[] for _ in mors]
    for (g, f), h in D.composition.items():
        checks[max(pos[g], pos[f], pos[h])].append((g, f, h))
    for objs in itertools.product(E.objects, repeat=len(D.objects)):
        omap = dict(zip(D.objects, objs))
        mmap = {}

        def extend(i):
            if i == len(mors):
                yield FinFunctor(D, E, dict(omap), dict(mmap))
                return
            f = mors[i]
            a, b = D.morphisms[f]
            if D.is_identity(f):
                candidates = (E.id(omap[a]),)
            else:
                candidates = E.hom(omap[a], omap[b])
            for x in candidates:
                mmap[f] = x
                if all(E.compose(mmap[g], mmap[f2]) == mmap[h] for g, f2, h in checks[i]):
                    yield from extend(i + 1)
            mmap.pop(f, None)

        yield from extend(0)
