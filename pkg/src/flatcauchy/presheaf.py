"""Presheaves on finite categories: elements, coends, Kan extensions, flatness."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Mapping, Optional, Sequence

from .errors import (
    BaseMismatch,
    InvariantViolation,
    MalformedInput,
    NonFunctorial,
    PreconditionViolated,
    UnknownObject,
)
from .fincat import (
    FinCategory,
    FinFunctor,
    discrete,
    enumerate_functors,
    from_preorder,
    is_filtered,
    is_fully_faithful,
    opposite,
)
from .setcalc import FinFunction, FinSet, SetDiagram, colimit_finset, limit_finset


@dataclass(frozen=True, eq=False)
class Presheaf:
    """Contravariant functor ``base^op -> FinSet``.

    ``action[f]`` for ``f: A -> B`` is a dict from ``sets[B]`` to ``sets[A]``.
    """

    base: FinCategory
    sets: Mapping
    action: Mapping
    name: str = field(default="", compare=False)

    def __call__(self, c) -> FinSet:
        return self.sets[c]

    def act(self, f, y):
        return self.action[f][y]

    def sizes(self) -> tuple:
        return tuple(len(self.sets[c]) for c in self.base.objects)

    def total_size(self) -> int:
        return sum(self.sizes())

    @cached_property
    def elements(self):
        return category_of_elements(self)

    def __eq__(self, other):
        if not isinstance(other, Presheaf):
            return NotImplemented
        return (
            self.base is other.base
            and all(self.sets[c] == other.sets[c] for c in self.base.objects)
            and all(
                dict(self.action[f]) == dict(other.action[f]) for f in self.base.morphisms
            )
        )

    __hash__ = object.__hash__

    def __repr__(self):
        label = self.name or "Presheaf"
        return f"<{label} on {self.base.name or self.base!r} sizes={self.sizes()}>"

    @classmethod
    def build(cls, base: FinCategory, sets: Mapping, action: Mapping, name: str = "") -> "Presheaf":
        """Validated presheaf. Identity actions may be omitted."""
        sets = {c: FinSet(tuple(sets[c])) if c in sets else FinSet() for c in base.objects}
        full = {}
        for f, (a, b) in base.morphisms.items():
            if f in action:
                full[f] = dict(action[f])
            elif base.is_identity(f):
                full[f] = {x: x for x in sets[a]}
            else:
                raise MalformedInput(f"no action given for {f!r}")
        return check_presheaf(cls(base, sets, full, name))


def check_presheaf(M: Presheaf) -> Presheaf:
    C = M.base
    for c in C.objects:
        if c not in M.sets:
            raise MalformedInput(f"no value set at {c!r}")
    for f, (a, b) in C.morphisms.items():
        m = M.action.get(f)
        if m is None:
            raise MalformedInput(f"no action for {f!r}")
        for y in M.sets[b]:
            if y not in m or m[y] not in M.sets[a]:
                raise MalformedInput(f"action of {f!r} is not a function M({b!r}) -> M({a!r}) at {y!r}")
    for a in C.objects:
        m = M.action[C.id(a)]
        if any(m[x] != x for x in M.sets[a]):
            raise NonFunctorial(f"M(id_{a}) is not the identity")
    for g, f in C.composable_pairs():
        mgf, mf, mg = M.action[C.compose(g, f)], M.action[f], M.action[g]
        for z in M.sets[C.tgt(g)]:
            if mgf[z] != mf[mg[z]]:
                raise NonFunctorial(f"M({g!r}∘{f!r}) != M({f!r})∘M({g!r}) at {z!r}")
    return M


def representable(C: FinCategory, c) -> Presheaf:
    """Hom(-, c), acting by precomposition."""
    if c not in C.identities:
        raise UnknownObject(f"{c!r} is not an object of {C!r}")
    return _representable(C, c)


@lru_cache(maxsize=None)
def _representable(C, c):
    sets = {d: FinSet(C.hom(d, c)) for d in C.objects}
    action = {
        f: {g: C.compose(g, f) for g in C.hom(b, c)}
        for f, (a, b) in C.morphisms.items()
    }
    return Presheaf(C, sets, action, f"Y({c})")


def restrict(M: Presheaf, J: FinFunctor) -> Presheaf:
    """M∘J^op, a presheaf on the source of J."""
    if J.target is not M.base:
        raise BaseMismatch("functor does not land in the presheaf's base")
    B = J.source
    return Presheaf(
        B,
        {b: M.sets[J.obj(b)] for b in B.objects},
        {k: M.action[J.mor(k)] for k in B.morphisms},
        f"{M.name}|{J.name}" if M.name else "",
    )


def category_of_elements(M: Presheaf) -> tuple[FinCategory, FinFunctor]:
    """El(M) with its projection to the base.

    A morphism ``(c, x) -> (d, y)`` is ``f: c -> d`` with ``M(f)(y) == x``;
    it is stored under the id ``(f, y)``. With this orientation
    El(Y(c)) has the terminal object ``(c, id_c)``.
    """
    C = M.base
    objects = tuple((c, x) for c in C.objects for x in M.sets[c])
    morphisms = {}
    for f, (c, d) in C.morphisms.items():
        for y in M.sets[d]:
            morphisms[(f, y)] = ((c, M.action[f][y]), (d, y))
    identities = {(c, x): (C.id(c), x) for c, x in objects}
    composition = {}
    for (f, y), (_, (d, _)) in morphisms.items():
        for g in C.out_of(d):
            for z in M.sets[C.tgt(g)]:
                if M.action[g][z] == y:
                    composition[((g, z), (f, y))] = (C.compose(g, f), z)
    name = f"El({M.name})" if M.name else "El"
    el = FinCategory(objects, morphisms, identities, composition, name)
    proj = FinFunctor(
        el, C, {o: o[0] for o in objects}, {m: m[0] for m in morphisms}, "π"
    )
    return el, proj


def is_flat_elements(M: Presheaf) -> bool:
    return is_filtered(M.elements[0])


# -- coends -------------------------------------------------------------------

def coend(M: Presheaf, F: SetDiagram) -> tuple[FinSet, dict]:
    """Colimit of F∘π over El(M); legs are keyed by objects of El(M)."""
    if F.shape is not M.base:
        raise BaseMismatch("weight and diagram live over different categories")
    el, _ = M.elements
    sets = {o: F.sets[o[0]] for o in el.objects}
    maps = {m: F.maps[m[0]] for m in el.morphisms}
    return colimit_finset(SetDiagram(el, sets, maps))


def weighted_colimit(M: Presheaf, F: SetDiagram) -> FinSet:
    """Σ_c M(c)×F(c) modulo (M(f)(y), x) ~ (y, F(f)(x))."""
    return coend(M, F)[0]


def induced_map(M: Presheaf, src: tuple, tgt: tuple, alpha: Mapping) -> dict:
    """Map between coends induced by a natural transformation F => G.

    ``src``/``tgt`` are coend results, ``alpha[c]`` the component at c.
    Checks that the map is well defined on every class member.
    """
    (_, src_legs), (_, tgt_legs) = src, tgt
    out = {}
    for o, leg in src_legs.items():
        comp = alpha[o[0]]
        for z, w in leg.items():
            v = tgt_legs[o][comp[z]]
            if out.setdefault(w, v) != v:
                raise InvariantViolation(f"induced map not well defined at {w!r}")
    return out


@lru_cache(maxsize=None)
def corepresentable(C: FinCategory, c) -> SetDiagram:
    """Hom(c, -): C -> Set, acting by postcomposition."""
    sets = {d: FinSet(C.hom(c, d)) for d in C.objects}
    maps = {
        g: {u: C.compose(g, u) for u in C.hom(c, a)}
        for g, (a, _) in C.morphisms.items()
    }
    return SetDiagram(C, sets, maps, f"Hom({c},-)")


def lan_along(J: FinFunctor, M: Presheaf) -> Presheaf:
    """Left Kan extension of M along J^op.

    Value at c is the coend of Hom_C(c, J-) × M(-). Elements are coend
    classes ``((b, y), u)`` with ``u: c -> J b``. When J is fully faithful
    the unit M => Lan∘J^op is checked to be invertible.
    """
    lan, _ = _lan_data(J, M)
    if is_fully_faithful(J):
        if not all(u.is_bijective() for u in lan_unit(J, M).values()):
            raise InvariantViolation("unit of Lan along a fully faithful functor is not invertible")
    return lan


def lan_unit(J: FinFunctor, M: Presheaf) -> dict:
    """Canonical comparison M => Lan(M)∘J^op, y ↦ [((b, y), id_Jb)]."""
    lan, coends = _lan_data(J, M)
    C = J.target
    out = {}
    for b in J.source.objects:
        c = J.obj(b)
        legs = coends[c][1]
        out[b] = FinFunction(
            M.sets[b], lan.sets[c], {y: legs[(b, y)][C.id(c)] for y in M.sets[b]}
        )
    return out


@lru_cache(maxsize=256)
def _lan_data(J: FinFunctor, M: Presheaf):
    if J.source is not M.base:
        raise BaseMismatch("functor source differs from the presheaf's base")
    C, B = J.target, J.source
    coends = {}
    for c in C.objects:
        F = SetDiagram(
            B,
            {b: FinSet(C.hom(c, J.obj(b))) for b in B.objects},
            {
                k: {u: C.compose(J.mor(k), u) for u in C.hom(c, J.obj(a))}
                for k, (a, _) in B.morphisms.items()
            },
        )
        coends[c] = coend(M, F)
    sets = {c: coends[c][0] for c in C.objects}
    action = {}
    for f, (c2, c) in C.morphisms.items():
        alpha = {b: {u: C.compose(u, f) for u in C.hom(c, J.obj(b))} for b in B.objects}
        action[f] = induced_map(M, coends[c], coends[c2], alpha)
    lan = Presheaf(C, sets, action, f"Lan({M.name})" if M.name else "Lan")
    return lan, coends


# -- flatness via preservation of finite limits of representables ------------

def default_battery() -> tuple:
    """Shapes generating all finite limits, cheapest first."""
    return (
        discrete(0, "terminal"),
        discrete(2, "binary product"),
        discrete(3, "ternary product"),
        FinCategory.build(
            ["0", "1"], [("u", "0", "1"), ("v", "0", "1")], name="equalizer"
        ),
        from_preorder(["a", "b", "c"], [("a", "c"), ("b", "c")], name="pullback"),
    )


@dataclass(frozen=True)
class LimitCase:
    """One diagram of representables Hom(Φs, -) and its pointwise limit."""

    shape: FinCategory
    choice: FinFunctor  # Φ: shape^op -> base
    limit: SetDiagram  # the pointwise limit, a functor base -> Set
    edges: tuple  # (σ, s, t, Φσ) for every shape morphism σ: s -> t


def limit_cases(C: FinCategory, battery: Sequence[FinCategory]):
    for S in battery:
        yield from _limit_cases(C, S)


@lru_cache(maxsize=None)
def _limit_cases(C: FinCategory, S: FinCategory) -> tuple:
    out = []
    Sop = opposite(S)
    for phi in enumerate_functors(Sop, C):
        edges = tuple((sg, a, b, phi.mor(sg)) for sg, (a, b) in S.morphisms.items())
        sets, maps = {}, {}
        lims = {}
        for d in C.objects:
            D = SetDiagram(
                S,
                {s: FinSet(C.hom(phi.obj(s), d)) for s in S.objects},
                {sg: {u: C.compose(u, p) for u in C.hom(phi.obj(a), d)} for sg, a, b, p in edges},
            )
            lims[d] = limit_finset(D)[0]
            sets[d] = lims[d]
        for g, (d, d2) in C.morphisms.items():
            maps[g] = {fam: tuple(C.compose(g, u) for u in fam) for fam in lims[d]}
        out.append(LimitCase(S, phi, SetDiagram(C, sets, maps), edges))
    return tuple(out)


def limit_comparison(M: Presheaf, case: LimitCase, corep_coends: dict) -> bool:
    """Is M ⋆ lim_s Hom(Φs, -) -> lim_s (M ⋆ Hom(Φs, -)) a bijection?"""
    C, S, phi = M.base, case.shape, case.choice
    lhs = coend(M, case.limit)
    vertex = {s: corep_coends[phi.obj(s)] for s in S.objects}
    maps = {}
    for sg, a, b, p in case.edges:
        alpha = {d: {u: C.compose(u, p) for u in C.hom(phi.obj(a), d)} for d in C.objects}
        maps[sg] = induced_map(M, vertex[a], vertex[b], alpha)
    rhs, _ = limit_finset(SetDiagram(S, {s: vertex[s][0] for s in S.objects}, maps))
    comparison = {}
    lhs_apex, lhs_legs = lhs
    for o, leg in lhs_legs.items():
        for fam, w in leg.items():
            image = tuple(vertex[s][1][o][u] for s, u in zip(S.objects, fam))
            if comparison.setdefault(w, image) != image:
                raise InvariantViolation("limit comparison not well defined")
    images = set(comparison.values())
    return len(images) == len(lhs_apex) == len(rhs) and images <= set(rhs)


def is_flat_limits(M: Presheaf, battery: Optional[Sequence[FinCategory]] = None) -> bool:
    """Does M ⋆ - preserve every limit of representables over the battery?

    Diagrams are enumerated exhaustively as functors shape^op -> base.
    """
    battery = tuple(battery) if battery is not None else _DEFAULT_BATTERY
    corep_coends = {c: coend(M, corepresentable(M.base, c)) for c in M.base.objects}
    return all(limit_comparison(M, case, corep_coends) for case in limit_cases(M.base, battery))


_DEFAULT_BATTERY = default_battery()


def flat_value_bound(M: Presheaf) -> bool:
    """|M(C)| <= max_D |Hom(C, D)| at every object; M must be flat."""
    if not is_flat_elements(M):
        raise PreconditionViolated("flat_value_bound needs a flat presheaf")
    C = M.base
    return all(
        len(M.sets[c]) <= max(len(C.hom(c, d)) for d in C.objects) for c in C.objects
    )
