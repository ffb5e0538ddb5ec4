"""The partition-of-unity monad G_B on finite sets, for a finite Boolean algebra B.

A finite Boolean algebra is the powerset of its atoms, so ``FinBoolAlg``
stores only the atom count and encodes elements as bitmasks. An element of
G_B(X) is a tuple aligned with ``X.elements`` whose entries are pairwise
disjoint masks joining to the top.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Iterable

from .errors import InvariantViolation, MalformedInput
from .setcalc import FinFunction, FinSet


@dataclass(frozen=True)
class FinBoolAlg:
    atoms: int

    def __post_init__(self):
        if not isinstance(self.atoms, int) or self.atoms < 0:
            raise MalformedInput(f"atom count must be a non-negative int, got {self.atoms!r}")

    @property
    def top(self) -> int:
        return (1 << self.atoms) - 1

    bottom = 0

    @property
    def elements(self) -> range:
        return range(1 << self.atoms)

    def join(self, xs: Iterable[int]) -> int:
        return reduce(lambda a, b: a | b, xs, 0)

    def meet(self, a: int, b: int) -> int:
        return a & b

    def complement(self, a: int) -> int:
        return self.top & ~a


def is_partition(B: FinBoolAlg, f: tuple) -> bool:
    seen = 0
    for v in f:
        if v & seen or v & ~B.top:
            return False
        seen |= v
    return seen == B.top


def gb_object(B: FinBoolAlg, X: FinSet) -> FinSet:
    """Partitions of unity indexed by X, one per assignment atoms -> X."""
    m = len(X)
    out = []
    for assignment in itertools.product(range(m), repeat=B.atoms):
        f = [0] * m
        for atom, i in enumerate(assignment):
            f[i] |= 1 << atom
        out.append(tuple(f))
    return FinSet(tuple(out))


def _push(f: tuple, positions: list, width: int) -> tuple:
    g = [0] * width
    for v, j in zip(f, positions):
        g[j] |= v
    return tuple(g)


def gb_map(B: FinBoolAlg, h: FinFunction) -> FinFunction:
    """(G h)(f)(y) is the join of f(x) over the fibre of y."""
    X, Y = h.domain, h.codomain
    positions = [Y.index(h(x)) for x in X]
    GX, GY = gb_object(B, X), gb_object(B, Y)
    return FinFunction(GX, GY, {f: _push(f, positions, len(Y)) for f in GX})


def monad_unit(B: FinBoolAlg, X: FinSet) -> FinFunction:
    GX = gb_object(B, X)
    m = len(X)
    mapping = {x: tuple(B.top if j == i else 0 for j in range(m)) for i, x in enumerate(X)}
    for f in mapping.values():
        if f not in GX:
            raise InvariantViolation(f"unit value {f!r} is not a partition of unity")
    return FinFunction(X, GX, mapping)


def monad_mult(B: FinBoolAlg, X: FinSet) -> FinFunction:
    """F ↦ (x ↦ ⋁_f F(f) ∧ f(x)); only the support of F contributes."""
    GX = gb_object(B, X)
    GGX = gb_object(B, GX)
    mapping = {}
    for F in GGX:
        out = [0] * len(X)
        for weight, f in zip(F, GX):
            if weight:
                for j, v in enumerate(f):
                    out[j] |= weight & v
        out = tuple(out)
        if not is_partition(B, out):
            raise InvariantViolation(f"multiplication produced {out!r}, not a partition")
        mapping[F] = out
    return FinFunction(GGX, GX, mapping)


# -- G_B(X) against Boolean homomorphisms 2^X -> B ----------------------------------

def is_boolean_hom(B: FinBoolAlg, m: int, phi: tuple) -> bool:
    """phi is indexed by subsets of an m-element set, encoded as masks."""
    full = (1 << m) - 1
    if phi[0] != 0 or phi[full] != B.top:
        return False
    for S in range(1 << m):
        if phi[full & ~S] != B.complement(phi[S]):
            return False
        for T in range(S, 1 << m):
            if phi[S | T] != phi[S] | phi[T] or phi[S & T] != phi[S] & phi[T]:
                return False
    return True


@dataclass(frozen=True, eq=False)
class HomIso:
    algebra: FinBoolAlg
    base: FinSet
    forward: dict  # partition -> hom table
    backward: dict  # hom table -> partition

    def witness_table(self) -> list:
        return sorted(self.forward.items())


def to_hom(f: tuple) -> tuple:
    """S ↦ ⋁_{x∈S} f(x)."""
    m = len(f)
    return tuple(
        reduce(lambda a, b: a | b, (f[j] for j in range(m) if S >> j & 1), 0)
        for S in range(1 << m)
    )


def from_hom(phi: tuple, m: int) -> tuple:
    return tuple(phi[1 << j] for j in range(m))


def gb_hom_iso(B: FinBoolAlg, X: FinSet) -> HomIso:
    """The bijection G_B(X) ≅ Bool(2^X, B), with both directions checked."""
    m = len(X)
    forward, backward = {}, {}
    for f in gb_object(B, X):
        phi = to_hom(f)
        if not is_boolean_hom(B, m, phi):
            raise InvariantViolation(f"{f!r} does not induce a Boolean homomorphism")
        back = from_hom(phi, m)
        if back != f:
            raise InvariantViolation(f"round trip of {f!r} gave {back!r}")
        if phi in backward:
            raise InvariantViolation(f"two partitions induce {phi!r}")
        forward[f], backward[phi] = phi, f
    return HomIso(B, X, forward, backward)


def inverse_image(h: FinFunction, S: int) -> int:
    """h^{-1} on subsets encoded as masks over the element order."""
    X, Y = h.domain, h.codomain
    return sum(1 << i for i, x in enumerate(X) if S >> Y.index(h(x)) & 1)


def hom_iso_natural(B: FinBoolAlg, h: FinFunction) -> bool:
    """iso_Y ∘ G(h) == (precompose with h^{-1}) ∘ iso_X."""
    X, Y = h.domain, h.codomain
    iso_x, iso_y = gb_hom_iso(B, X), gb_hom_iso(B, Y)
    Gh = gb_map(B, h)
    pre = [inverse_image(h, S) for S in range(1 << len(Y))]
    return all(
        iso_y.forward[Gh(f)] == tuple(phi[pre[S]] for S in range(1 << len(Y)))
        for f, phi in iso_x.forward.items()
    )


# -- law checks ---------------------------------------------------------------------

@dataclass
class LawReport:
    atoms: int
    size: int
    cardinality: int
    cardinality_ok: bool
    left_unit: bool
    right_unit: bool
    associative: bool
    iso_ok: bool

    @property
    def holds(self) -> bool:
        return all((self.cardinality_ok, self.left_unit, self.right_unit, self.associative, self.iso_ok))


def check_laws(B: FinBoolAlg, X: FinSet) -> LawReport:
    GX = gb_object(B, X)
    mu = monad_mult(B, X)
    ident = FinFunction.identity(GX)
    left = monad_unit(B, GX).then(mu) == ident
    right = gb_map(B, monad_unit(B, X)).then(mu) == ident
    mu_g = monad_mult(B, GX)
    assoc = mu_g.then(mu) == gb_map(B, mu).then(mu)
    try:
        iso = gb_hom_iso(B, X)
        iso_ok = len(iso.forward) == len(GX)
    except InvariantViolation:
        iso_ok = False
    return LawReport(
        B.atoms, len(X), len(GX), len(GX) == len(X) ** B.atoms, left, right, assoc, iso_ok
    )


def check_functoriality(B: FinBoolAlg, h: FinFunction, k: FinFunction) -> bool:
    """G(k∘h) == G(k)∘G(h) and G(id) == id."""
    composite = gb_map(B, h.then(k)) == gb_map(B, h).then(gb_map(B, k))
    ident = gb_map(B, FinFunction.identity(h.domain)) == FinFunction.identity(gb_object(B, h.domain))
    return composite and ident


def check_unit_mult_natural(B: FinBoolAlg, h: FinFunction) -> bool:
    X, Y = h.domain, h.codomain
    unit = monad_unit(B, X).then(gb_map(B, h)) == h.then(monad_unit(B, Y))
    Gh = gb_map(B, h)
    GGh = gb_map(B, Gh)
    mult = monad_mult(B, X).then(Gh) == GGh.then(monad_mult(B, Y))
    return unit and mult
