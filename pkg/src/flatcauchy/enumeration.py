"""Exhaustive enumeration of presheaves on a finite category.

Value sets are ``range(n)``. Tables are generated by size profile, then
action tables lexicographically, with composites pruned as soon as all
three morphisms of a composition entry are assigned. Isomorphism classes
(relabelling of elements objectwise) are cut down with a vectorised
minimum over the relabelling group.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import BudgetExceeded
from .fincat import FinCategory
from .presheaf import Presheaf
from .setcalc import FinSet


def _plan(C: FinCategory):
    """Order of non-identity morphisms, forcing rules and pruning checks."""
    mors = [f for f in C.morphisms if not C.is_identity(f)]
    pos = {f: i for i, f in enumerate(mors)}
    forced = {}
    checks = [[] for _ in mors]
    for (g, f), h in C.composition.items():
        if g not in pos or f not in pos:
            continue
        last = max(pos[g], pos[f], pos.get(h, -1))
        if h in pos and pos[h] > max(pos[g], pos[f]) and h not in forced:
            forced[h] = (g, f)
        checks[last].append((g, f, h))
    return mors, pos, forced, checks


def raw_tables(C: FinCategory, sizes: dict):
    """Every functorial action table for the given size profile.

    A table is a tuple over non-identity morphisms (declaration order) of
    tuples ``t`` with ``t[y] = M(f)(y)``.
    """
    mors, pos, forced, checks = _plan(C)
    n = len(mors)
    assigned = [None] * n

    def value(h):
        if h in pos:
            return assigned[pos[h]]
        return tuple(range(sizes[C.src(h)]))  # identity

    def ok(i):
        for g, f, h in checks[i]:
            mg, mf, mh = assigned[pos[g]], assigned[pos[f]], value(h)
            # M(g∘f) = M(f)∘M(g)
            if any(mh[z] != mf[mg[z]] for z in range(len(mg))):
                return False
        return True

    def extend(i):
        if i == n:
            yield tuple(assigned)
            return
        h = mors[i]
        a, b = C.morphisms[h]
        if h in forced:
            g, f = forced[h]
            mg, mf = assigned[pos[g]], assigned[pos[f]]
            candidates = (tuple(mf[mg[z]] for z in range(sizes[b])),)
        else:
            candidates = itertools.product(range(sizes[a]), repeat=sizes[b])
        for t in candidates:
            assigned[i] = t
            if ok(i):
                yield from extend(i + 1)
        assigned[i] = None

    yield from extend(0)


def to_presheaf(C: FinCategory, sizes: dict, table: tuple, name: str = "") -> Presheaf:
    mors = [f for f in C.morphisms if not C.is_identity(f)]
    sets = {c: FinSet(tuple(range(sizes[c]))) for c in C.objects}
    action = {}
    for f, t in zip(mors, table):
        action[f] = dict(enumerate(t))
    for c in C.objects:
        action[C.id(c)] = {x: x for x in range(sizes[c])}
    action = {f: action[f] for f in C.morphisms}
    return Presheaf(C, sets, action, name)


def size_profiles(C: FinCategory, max_size: int):
    for combo in itertools.product(range(max_size + 1), repeat=len(C.objects)):
        yield dict(zip(C.objects, combo))


def canonical_keys(C: FinCategory, sizes: dict, tables: list) -> np.ndarray:
    """Minimum encoding of each table over all objectwise relabellings."""
    mors = [f for f in C.morphisms if not C.is_identity(f)]
    widths = [sizes[C.tgt(f)] for f in mors]
    E = sum(widths)
    N = len(tables)
    if N == 0:
        return np.zeros(0, dtype=np.int64)
    if E == 0:
        return np.zeros(N, dtype=np.int64)
    base = max(2, max(sizes.values()))
    if E * math.log2(base) >= 62:
        raise BudgetExceeded("tables too large for integer canonical keys")
    X = np.array([[v for t in table for v in t] for table in tables], dtype=np.int64)
    weights = base ** np.arange(E - 1, -1, -1, dtype=np.int64)
    offsets = np.cumsum([0] + widths[:-1])
    src_of_col = np.concatenate(
        [np.full(w, C.objects.index(C.src(f))) for f, w in zip(mors, widths)]
    )
    perms = [list(itertools.permutations(range(sizes[c]))) for c in C.objects]
    best = None
    for combo in itertools.product(*perms):
        inv = [np.argsort(p) for p in combo]
        gather = np.empty(E, dtype=np.int64)
        for f, w, off in zip(mors, widths, offsets):
            tb = C.objects.index(C.tgt(f))
            # new[f][σ_B(j)] = σ_A(old[f][j])
            gather[off:off + w] = off + inv[tb][np.arange(w)] if w else []
        lookup = np.zeros((E, base), dtype=np.int64)
        for col in range(E):
            p = combo[src_of_col[col]]
            lookup[col, :len(p)] = p
        Y = lookup[np.arange(E), X[:, gather]]
        keys = Y @ weights
        best = keys if best is None else np.minimum(best, keys)
    return best


def enumerate_presheaves(C: FinCategory, max_size: int, up_to_iso: bool = True, budget: int | None = None):
    """All presheaves on C with value sets of size <= max_size.

    With ``up_to_iso`` one representative per isomorphism class is kept:
    the first table of its class in enumeration order.
    """
    count = 0
    for sizes in size_profiles(C, max_size):
        tables = list(raw_tables(C, sizes))
        if up_to_iso and len(tables) > 1:
            keys = canonical_keys(C, sizes, tables)
            _, first = np.unique(keys, return_index=True)
            tables = [tables[i] for i in sorted(first)]
        for t in tables:
            count += 1
            if budget is not None and count > budget:
                raise BudgetExceeded(f"more than {budget} presheaves on {C.name or C!r}")
            label = "/".join(str(sizes[c]) for c in C.objects)
            yield to_presheaf(C, sizes, t, f"{C.name}[{label}]#{count}")


def count_presheaves(C: FinCategory, max_size: int, up_to_iso: bool = True) -> int:
    return sum(1 for _ in enumerate_presheaves(C, max_size, up_to_iso))


def canonical_key(M: Presheaf) -> tuple:
    """Isomorphism invariant that is complete: equal keys iff isomorphic."""
    C = M.base
    sizes = {c: len(M.sets[c]) for c in C.objects}
    idx = {c: M.sets[c].index for c in C.objects}
    mors = [f for f in C.morphisms if not C.is_identity(f)]
    table = tuple(
        tuple(idx[C.src(f)](M.action[f][y]) for y in M.sets[C.tgt(f)]) for f in mors
    )
    key = canonical_keys(C, sizes, [table])
    return (tuple(sizes[c] for c in C.objects), int(key[0]) if len(key) else 0)
