"""Natural transformations, Karoubi envelopes, Cauchy presheaves."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Optional

from .enumeration import enumerate_presheaves
from .errors import BaseMismatch, BudgetExceeded, InvariantViolation, NotNatural, SweepBudgetExceeded
from .fincat import FinCategory, FinFunctor
from .presheaf import Presheaf, is_flat_elements, representable
from .setcalc import FinSet


@dataclass(frozen=True, eq=False)
class NatTransformation:
    source: Presheaf
    target: Presheaf
    components: Mapping  # obj -> dict source element -> target element

    def __call__(self, c, x):
        return self.components[c][x]

    def then(self, other: "NatTransformation") -> "NatTransformation":
        """other∘self."""
        if self.target.base is not other.source.base:
            raise BaseMismatch("transformations live over different bases")
        comps = {
            c: {x: other.components[c][self.components[c][x]] for x in self.source.sets[c]}
            for c in self.source.base.objects
        }
        return NatTransformation(self.source, other.target, comps)

    def is_identity(self) -> bool:
        return all(
            self.components[c][x] == x
            for c in self.source.base.objects
            for x in self.source.sets[c]
        )

    def is_iso(self) -> bool:
        for c in self.source.base.objects:
            image = {self.components[c][x] for x in self.source.sets[c]}
            if len(image) != len(self.source.sets[c]) or len(image) != len(self.target.sets[c]):
                return False
        return True

    @classmethod
    def identity(cls, M: Presheaf) -> "NatTransformation":
        return cls(M, M, {c: {x: x for x in M.sets[c]} for c in M.base.objects})


def check_natural(alpha: NatTransformation) -> NatTransformation:
    M, N = alpha.source, alpha.target
    C = M.base
    for f, (a, b) in C.morphisms.items():
        for y in M.sets[b]:
            if alpha(a, M.act(f, y)) != N.act(f, alpha(b, y)):
                raise NotNatural(f"naturality square for {f!r} fails at {y!r}")
    return alpha


def _nat_search(M: Presheaf, N: Presheaf, allowed: Optional[Callable] = None) -> Iterator[dict]:
    """Backtracking over El(M) objects; each naturality constraint is
    checked as soon as both of its variables are assigned."""
    C = M.base
    variables = [(c, x) for c in C.objects for x in M.sets[c]]
    pos = {v: i for i, v in enumerate(variables)}
    constraints = [[] for _ in variables]
    for f, (a, b) in C.morphisms.items():
        for y in M.sets[b]:
            v, w = (b, y), (a, M.act(f, y))
            constraints[max(pos[v], pos[w])].append((f, v, w))
    values = {}

    def extend(i):
        if i == len(variables):
            comps = {c: {} for c in C.objects}
            for (c, x), z in values.items():
                comps[c][x] = z
            yield comps
            return
        v = variables[i]
        for z in N.sets[v[0]]:
            if allowed is not None and not allowed(v[0], v[1], z):
                continue
            values[v] = z
            if all(values[w] == N.act(f, values[u]) for f, u, w in constraints[i]):
                yield from extend(i + 1)
        values.pop(v, None)

    yield from extend(0)


def enumerate_nat(M: Presheaf, N: Presheaf) -> list:
    """All natural transformations M => N, in lexicographic order."""
    if M.base is not N.base:
        raise BaseMismatch("presheaves live over different bases")
    return [NatTransformation(M, N, comps) for comps in _nat_search(M, N)]


def are_isomorphic(M: Presheaf, N: Presheaf) -> bool:
    if M.base is not N.base:
        raise BaseMismatch("presheaves live over different bases")
    if M.sizes() != N.sizes():
        return False
    return any(
        NatTransformation(M, N, comps).is_iso() for comps in _nat_search(M, N)
    )


# -- representability and Cauchy-ness ---------------------------------------------

@dataclass(frozen=True, eq=False)
class Representation:
    """M ≅ Y(obj), witnessed by mutually inverse transformations."""

    obj: object
    element: object  # the universal element of M(obj)
    forward: NatTransformation  # Y(obj) => M
    inverse: NatTransformation  # M => Y(obj)


def yoneda_transformation(M: Presheaf, c, y) -> NatTransformation:
    """Y(c) => M corresponding to y ∈ M(c): g ↦ M(g)(y)."""
    Y = representable(M.base, c)
    comps = {d: {g: M.act(g, y) for g in Y.sets[d]} for d in M.base.objects}
    return NatTransformation(Y, M, comps)


def representation(M: Presheaf) -> Optional[Representation]:
    C = M.base
    for c in C.objects:
        for y in M.sets[c]:
            fwd = yoneda_transformation(M, c, y)
            if not fwd.is_iso():
                continue
            inv = NatTransformation(
                M, fwd.source,
                {d: {v: k for k, v in fwd.components[d].items()} for d in C.objects},
            )
            check_natural(inv)
            if not fwd.then(inv).is_identity() or not inv.then(fwd).is_identity():
                raise InvariantViolation("Yoneda inverse is not an inverse")
            return Representation(c, y, fwd, inv)
    return None


def is_representable(M: Presheaf):
    """A representing object, or None."""
    rep = representation(M)
    return None if rep is None else rep.obj


@dataclass(frozen=True, eq=False)
class CauchyCertificate:
    """M is a retract of Y(obj): retraction∘section = id_M."""

    obj: object
    element: object  # y ∈ M(obj) encoding the retraction
    section: NatTransformation  # M => Y(obj)
    retraction: NatTransformation  # Y(obj) => M

    def verify(self) -> bool:
        check_natural(self.section)
        check_natural(self.retraction)
        return self.section.then(self.retraction).is_identity()


def is_cauchy(M: Presheaf) -> Optional[CauchyCertificate]:
    """First certificate exhibiting M as a retract of a representable."""
    C = M.base
    for c in C.objects:
        Y = representable(C, c)
        for y in M.sets[c]:
            # r∘s = id forces M(s_d(x))(y) == x for every element x
            def allowed(d, x, g, y=y):
                return M.act(g, y) == x

            for comps in _nat_search(M, Y, allowed):
                s = NatTransformation(M, Y, comps)
                r = yoneda_transformation(M, c, y)
                cert = CauchyCertificate(c, y, s, r)
                if cert.verify():
                    return cert
    return None


# -- Karoubi envelope ------------------------------------------------------------------

def karoubi_envelope(C: FinCategory) -> tuple[FinCategory, FinFunctor]:
    """Idempotent completion with its full embedding c ↦ (c, id_c).

    Morphisms ``(c, e) -> (d, e2)`` are the ``f: c -> d`` with
    ``e2∘f∘e == f``, stored under the id ``((c, e), f, (d, e2))``.
    """
    objects = tuple((c, e) for c in C.objects for e in C.hom(c, c) if C.compose(e, e) == e)
    morphisms = {}
    for X in objects:
        for Y in objects:
            (c, e), (d, e2) = X, Y
            for f in C.hom(c, d):
                if C.compose(e2, C.compose(f, e)) == f:
                    morphisms[(X, f, Y)] = (X, Y)
    identities = {X: (X, X[1], X) for X in objects}
    composition = {}
    for (X, f, Y) in morphisms:
        for (Y2, g, Z) in morphisms:
            if Y2 == Y:
                composition[((Y, g, Z), (X, f, Y))] = (X, C.compose(g, f), Z)
    name = f"kar({C.name})" if C.name else "kar"
    kar = FinCategory(objects, morphisms, identities, composition, name)
    emb = FinFunctor(
        C, kar,
        {c: (c, C.id(c)) for c in C.objects},
        {f: ((a, C.id(a)), f, (b, C.id(b))) for f, (a, b) in C.morphisms.items()},
        "kar-embedding",
    )
    if not is_cauchy_complete(kar):
        raise InvariantViolation("an idempotent of the Karoubi envelope does not split")
    return kar, emb


def split_idempotent(C: FinCategory, e) -> Optional[tuple]:
    """(d, r, s) with s∘r = e and r∘s = id_d, or None."""
    c = C.src(e)
    for d in C.objects:
        for r in C.hom(c, d):
            for s in C.hom(d, c):
                if C.compose(s, r) == e and C.compose(r, s) == C.id(d):
                    return d, r, s
    return None


def is_cauchy_complete(C: FinCategory) -> bool:
    return all(split_idempotent(C, e) is not None for e in C.idempotents())


def splitting_presheaf(C: FinCategory, e) -> Presheaf:
    """{g: d -> c | e∘g = g}, the retract of Y(c) cut out by e."""
    c = C.src(e)
    sets = {d: FinSet(tuple(g for g in C.hom(d, c) if C.compose(e, g) == g)) for d in C.objects}
    action = {
        f: {g: C.compose(g, f) for g in sets[b]} for f, (a, b) in C.morphisms.items()
    }
    return Presheaf(C, sets, action, f"split({e})")


@dataclass
class SmallaccReport:
    category: str
    cauchy_complete: bool
    cases: int = 0
    flat: int = 0
    flat_representable: int = 0
    witness: Optional[Presheaf] = None
    counterexamples: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        if self.counterexamples:
            return False
        return self.cauchy_complete or self.witness is not None


def verify_smallacc(C: FinCategory, value_bound: int, case_budget: Optional[int] = None) -> SmallaccReport:
    """Flat ⇒ representable when every idempotent splits; otherwise exhibit
    a flat presheaf that is not representable."""
    report = SmallaccReport(C.name or repr(C), is_cauchy_complete(C))
    try:
        for M in enumerate_presheaves(C, value_bound, budget=case_budget):
            report.cases += 1
            if not is_flat_elements(M):
                continue
            report.flat += 1
            if is_representable(M) is not None:
                report.flat_representable += 1
            elif report.cauchy_complete:
                report.counterexamples.append(M)
    except BudgetExceeded as exc:
        raise SweepBudgetExceeded(str(exc)) from exc
    if not report.cauchy_complete:
        for e in C.idempotents():
            if split_idempotent(C, e) is None:
                W = splitting_presheaf(C, e)
                if is_flat_elements(W) and is_representable(W) is None:
                    report.witness = W
                    break
    return report
