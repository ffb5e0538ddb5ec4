"""Brute-force oracles that share no search code with the main algorithms.

Each oracle answers a question the library answers elsewhere, by a
different route, so the verification suites can cross-check the two.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .fincat import FinCategory
from .ringmod import FinModule, FinRing, span
from .setcalc import SetDiagram, colimit_finset, limit_finset


# -- filteredness -------------------------------------------------------------------

def has_total_cocone(C: FinCategory) -> bool:
    """A finite category is filtered iff its identity diagram has a cocone.

    Searches for a vertex t and legs λ_c: c -> t with λ_d∘f = λ_c.
    """
    objs = C.objects
    arrows = [(f, C.src(f), C.tgt(f)) for f in C.morphisms if not C.is_identity(f)]
    for t in objs:
        legs: dict = {}

        def extend(i):
            if i == len(objs):
                return True
            c = objs[i]
            for lam in C.hom(c, t):
                legs[c] = lam
                if all(
                    C.compose(legs[b], f) == legs[a]
                    for f, a, b in arrows
                    if a in legs and b in legs and (a == c or b == c)
                ):
                    if extend(i + 1):
                        return True
            legs.pop(c, None)
            return False

        if extend(0):
            return True
    return False


# -- universal properties of (co)limits in finite sets -------------------------------

def _families(D: SetDiagram, Z: tuple, covariant_constraint) -> Iterator[dict]:
    variables = [(s, x) for s in D.shape.objects for x in D.sets[s]]
    pos = {v: i for i, v in enumerate(variables)}
    rules = [[] for _ in variables]
    for f, (a, b) in D.shape.morphisms.items():
        for x in D.sets[a]:
            u, w = (a, x), (b, D.maps[f][x])
            rules[max(pos[u], pos[w])].append((u, w))
    values: dict = {}

    def extend(i):
        if i == len(variables):
            yield dict(values)
            return
        for z in Z:
            values[variables[i]] = z
            if all(covariant_constraint(values[u], values[w]) for u, w in rules[i]):
                yield from extend(i + 1)
        values.pop(variables[i], None)

    yield from extend(0)


def colimit_universal(D: SetDiagram, Z: tuple = (0, 1)) -> bool:
    """Every cocone into Z factors through the computed colimit exactly once.

    Cocones are enumerated elementwise; candidate mediators are all
    functions apex -> Z.
    """
    apex, legs = colimit_finset(D)
    cocones = {
        tuple(sorted(c.items(), key=repr))
        for c in _families(D, Z, lambda zu, zw: zu == zw)
    }
    induced = {}
    for values in itertools.product(Z, repeat=len(apex)):
        u = dict(zip(apex, values))
        key = tuple(
            sorted(
                (((s, x), u[legs[s][x]]) for s in D.shape.objects for x in D.sets[s]),
                key=repr,
            )
        )
        if key in induced:
            return False  # two mediators for one cocone
        induced[key] = u
    return set(induced) == cocones


def limit_universal(D: SetDiagram, apex_size: int = 2) -> bool:
    """Every cone from an ``apex_size``-element set factors exactly once."""
    lim, proj = limit_finset(D)
    points = _compatible_families(D)
    cones = set(itertools.product(points, repeat=apex_size))
    induced = {}
    for values in itertools.product(lim, repeat=apex_size):
        key = tuple(
            tuple(sorted(((s, proj[s][v]) for s in D.shape.objects), key=repr))
            for v in values
        )
        if key in induced:
            return False
        induced[key] = values
    return set(induced) == cones


def _compatible_families(D: SetDiagram) -> list:
    """Cones from a point: one element per vertex, respected by every map."""
    objs = D.shape.objects
    out = []
    for choice in itertools.product(*(D.sets[s].elements for s in objs)):
        pick = dict(zip(objs, choice))
        if all(D.maps[f][pick[a]] == pick[b] for f, (a, b) in D.shape.morphisms.items()):
            out.append(tuple(sorted(pick.items(), key=repr)))
    return out


# -- dualizability by local freeness ----------------------------------------------------

def ring_idempotents(R: FinRing) -> list[int]:
    return [e for e in R.elements if R.mul[e][e] == e]


def primitive_idempotents(R: FinRing) -> list[int]:
    idem = ring_idempotents(R)
    return [
        e for e in idem
        if e != R.zero and not any(f not in (R.zero, e) and R.mul[e][f] == f for f in idem)
    ]


def _is_power(n: int, base: int) -> int | None:
    k, p = 0, 1
    while p < n:
        p *= base
        k += 1
    return k if p == n else None


def is_locally_free(M: FinModule) -> bool:
    """M is projective iff each block e·M is free over the local ring e·R.

    Freeness of rank k over e·R: |e·M| = |e·R|^k and k elements of e·M
    generate it.
    """
    R = M.ring
    for e in primitive_idempotents(R):
        block = sorted({M.act[e][m] for m in M.elements})
        local = {R.mul[e][r] for r in R.elements}
        k = _is_power(len(block), len(local))
        if k is None:
            return False
        if not any(len(span(M, gens)) == len(block) for gens in itertools.combinations(block, k)):
            return False
    return True
