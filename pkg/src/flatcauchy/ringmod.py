"""Finite commutative rings and finite modules given by tables.

Elements are referred to by index; ``labels`` are for display and I/O.
Tensor products go through an integer presentation and Smith normal form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Sequence

from .errors import (
    BoundTooSmall,
    InvariantViolation,
    ModuleAxiomViolation,
    RingAxiomViolation,
    RingMismatch,
)
from .snf import smith_normal_form


@dataclass(frozen=True, eq=False)
class FinRing:
    labels: tuple
    add: tuple  # add[a][b]
    mul: tuple  # mul[a][b]
    zero: int
    one: int
    name: str = field(default="", compare=False)

    def __len__(self):
        return len(self.labels)

    @property
    def elements(self):
        return range(len(self.labels))

    @cached_property
    def neg(self):
        return tuple(next(b for b in self.elements if self.add[a][b] == self.zero) for a in self.elements)

    def __repr__(self):
        return f"FinRing({self.name or len(self)})"


def check_ring(R: FinRing) -> FinRing:
    E = R.elements
    n = len(R)
    for tab, what in ((R.add, "addition"), (R.mul, "multiplication")):
        if len(tab) != n or any(len(row) != n or any(not 0 <= v < n for v in row) for row in tab):
            raise RingAxiomViolation(f"{what} table is not a total operation on {n} elements")
    for a in E:
        if R.add[a][R.zero] != a:
            raise RingAxiomViolation(f"{R.labels[R.zero]} is not an additive unit at {R.labels[a]}")
        if R.mul[a][R.one] != a or R.mul[R.one][a] != a:
            raise RingAxiomViolation(f"{R.labels[R.one]} is not a multiplicative unit at {R.labels[a]}")
        if not any(R.add[a][b] == R.zero for b in E):
            raise RingAxiomViolation(f"{R.labels[a]} has no additive inverse")
        for b in E:
            if R.add[a][b] != R.add[b][a]:
                raise RingAxiomViolation(f"addition not commutative at {(a, b)}")
            if R.mul[a][b] != R.mul[b][a]:
                raise RingAxiomViolation(f"multiplication not commutative at {(a, b)}")
            for c in E:
                if R.add[R.add[a][b]][c] != R.add[a][R.add[b][c]]:
                    raise RingAxiomViolation(f"addition not associative at {(a, b, c)}")
                if R.mul[R.mul[a][b]][c] != R.mul[a][R.mul[b][c]]:
                    raise RingAxiomViolation(f"multiplication not associative at {(a, b, c)}")
                if R.mul[a][R.add[b][c]] != R.add[R.mul[a][b]][R.mul[a][c]]:
                    raise RingAxiomViolation(f"distributivity fails at {(a, b, c)}")
    return R


def zmod(n: int) -> FinRing:
    E = range(n)
    return check_ring(FinRing(
        tuple(str(i) for i in E),
        tuple(tuple((a + b) % n for b in E) for a in E),
        tuple(tuple((a * b) % n for b in E) for a in E),
        0, 1 % n, f"Z/{n}",
    ))


def dual_numbers_f2() -> FinRing:
    """F_2[x]/(x^2); element a + b·x has index a + 2b."""
    labels = ("0", "1", "x", "1+x")
    pairs = [(i % 2, i // 2) for i in range(4)]

    def idx(a, b):
        return (a % 2) + 2 * (b % 2)

    add = tuple(tuple(idx(p[0] + q[0], p[1] + q[1]) for q in pairs) for p in pairs)
    mul = tuple(tuple(idx(p[0] * q[0], p[0] * q[1] + p[1] * q[0]) for q in pairs) for p in pairs)
    return check_ring(FinRing(labels, add, mul, 0, 1, "F2[x]/(x^2)"))


def ideals(R: FinRing) -> list[frozenset]:
    """All ideals, as frozensets of element indices, smallest first."""
    out = set()
    for gens in itertools.chain.from_iterable(
        itertools.combinations(R.elements, k) for k in range(3)
    ):
        out.add(frozenset(_ideal_span(R, gens)))
    return sorted(out, key=lambda I: (len(I), sorted(I)))


def _ideal_span(R, gens):
    seen = {R.zero}
    frontier = [R.zero]
    steps = {R.mul[r][g] for r in R.elements for g in gens}
    while frontier:
        x = frontier.pop()
        for s in steps:
            y = R.add[x][s]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


# -- modules ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FinModule:
    ring: FinRing
    labels: tuple
    add: tuple  # add[m][n]
    act: tuple  # act[r][m]
    zero: int
    name: str = field(default="", compare=False)

    def __len__(self):
        return len(self.labels)

    @property
    def elements(self):
        return range(len(self.labels))

    @cached_property
    def neg(self):
        return tuple(next(b for b in self.elements if self.add[a][b] == self.zero) for a in self.elements)

    def sum(self, xs) -> int:
        out = self.zero
        for x in xs:
            out = self.add[out][x]
        return out

    def times(self, k: int, m: int) -> int:
        """Integer multiple k·m."""
        if k < 0:
            k, m = -k, self.neg[m]
        out, base = self.zero, m
        while k:
            if k & 1:
                out = self.add[out][base]
            base = self.add[base][base]
            k >>= 1
        return out

    def __repr__(self):
        return f"FinModule({self.name or len(self)} over {self.ring.name})"


def check_module(M: FinModule) -> FinModule:
    R = M.ring
    n = len(M)
    if len(M.add) != n or any(len(row) != n or any(not 0 <= v < n for v in row) for row in M.add):
        raise ModuleAxiomViolation("addition table is not a total operation")
    if len(M.act) != len(R) or any(len(row) != n or any(not 0 <= v < n for v in row) for row in M.act):
        raise ModuleAxiomViolation("action table has the wrong shape")
    E = M.elements
    for a in E:
        if M.add[a][M.zero] != a:
            raise ModuleAxiomViolation(f"zero is not an additive unit at {M.labels[a]}")
        if not any(M.add[a][b] == M.zero for b in E):
            raise ModuleAxiomViolation(f"{M.labels[a]} has no additive inverse")
        if M.act[R.one][a] != a:
            raise ModuleAxiomViolation(f"1·{M.labels[a]} != {M.labels[a]}")
        for b in E:
            if M.add[a][b] != M.add[b][a]:
                raise ModuleAxiomViolation(f"addition not commutative at {(a, b)}")
            for c in E:
                if M.add[M.add[a][b]][c] != M.add[a][M.add[b][c]]:
                    raise ModuleAxiomViolation(f"addition not associative at {(a, b, c)}")
        for r in R.elements:
            for s in R.elements:
                if M.act[R.mul[r][s]][a] != M.act[r][M.act[s][a]]:
                    raise ModuleAxiomViolation(f"(rs)m != r(sm) at {(r, s, a)}")
                if M.act[R.add[r][s]][a] != M.add[M.act[r][a]][M.act[s][a]]:
                    raise ModuleAxiomViolation(f"(r+s)m != rm+sm at {(r, s, a)}")
            for b in E:
                if M.act[r][M.add[a][b]] != M.add[M.act[r][a]][M.act[r][b]]:
                    raise ModuleAxiomViolation(f"r(m+n) != rm+rn at {(r, a, b)}")
    return M


def regular(R: FinRing) -> FinModule:
    return FinModule(R, R.labels, R.add, R.mul, R.zero, R.name)


def zero_module(R: FinRing) -> FinModule:
    return FinModule(R, ("0",), ((0,),), tuple((0,) for _ in R.elements), 0, "0")


def direct_sum(M: FinModule, N: FinModule) -> FinModule:
    if M.ring is not N.ring:
        raise RingMismatch("summands over different rings")
    pairs = [(a, b) for a in M.elements for b in N.elements]
    idx = {p: i for i, p in enumerate(pairs)}
    add = tuple(
        tuple(idx[(M.add[a][c], N.add[b][d])] for c, d in pairs) for a, b in pairs
    )
    act = tuple(
        tuple(idx[(M.act[r][a], N.act[r][b])] for a, b in pairs) for r in M.ring.elements
    )
    labels = tuple(f"({M.labels[a]},{N.labels[b]})" for a, b in pairs)
    return FinModule(M.ring, labels, add, act, idx[(M.zero, N.zero)], f"{M.name}⊕{N.name}")


def free(R: FinRing, n: int) -> FinModule:
    M = zero_module(R) if n == 0 else regular(R)
    for _ in range(n - 1):
        M = direct_sum(M, regular(R))
    return FinModule(R, M.labels, M.add, M.act, M.zero, f"{R.name}^{n}")


def quotient_ring_module(R: FinRing, ideal: frozenset) -> FinModule:
    """R/I as an R-module; cosets are labelled by their least member."""
    cosets = {}
    for a in R.elements:
        coset = frozenset(R.add[a][i] for i in ideal)
        cosets.setdefault(coset, min(coset))
    reps = sorted(cosets.values())
    idx = {}
    for coset, rep in cosets.items():
        for a in coset:
            idx[a] = reps.index(rep)
    add = tuple(tuple(idx[R.add[a][b]] for b in reps) for a in reps)
    act = tuple(tuple(idx[R.mul[r][a]] for a in reps) for r in R.elements)
    gens = sorted(R.labels[i] for i in ideal if i != R.zero)
    name = f"{R.name}/({','.join(gens) or '0'})"
    return FinModule(R, tuple(R.labels[a] for a in reps), add, act, idx[R.zero], name)


def span(M: FinModule, gens: Sequence[int]) -> set:
    """Submodule generated by ``gens``."""
    steps = {M.act[r][g] for r in M.ring.elements for g in gens}
    seen = {M.zero}
    frontier = [M.zero]
    while frontier:
        x = frontier.pop()
        for s in steps:
            y = M.add[x][s]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def greedy_generators(M: FinModule) -> list[int]:
    """Generating set built by repeatedly adding the element that enlarges
    the span most (ties: lowest index)."""
    gens: list[int] = []
    current = span(M, gens)
    while len(current) < len(M):
        best = max(
            (m for m in M.elements if m not in current),
            key=lambda m: (len(span(M, gens + [m])), -m),
        )
        gens.append(best)
        current = span(M, gens)
    return gens


def generates(M: FinModule, xs: Sequence[int]) -> bool:
    return len(span(M, xs)) == len(M)


# -- linear maps and Hom ------------------------------------------------------------

def _combinations(M: FinModule, gens: Sequence[int]):
    """Every (coefficients, element) with element = Σ r_i·g_i."""
    R = M.ring
    out = []
    for coeffs in itertools.product(R.elements, repeat=len(gens)):
        out.append((coeffs, M.sum(M.act[r][g] for r, g in zip(coeffs, gens))))
    return out


def is_linear(M: FinModule, N: FinModule, f: Sequence[int]) -> bool:
    E = M.elements
    if any(f[M.add[a][b]] != N.add[f[a]][f[b]] for a in E for b in E):
        return False
    return all(f[M.act[r][a]] == N.act[r][f[a]] for r in M.ring.elements for a in E)


def linear_maps(M: FinModule, N: FinModule) -> list[tuple]:
    """All R-linear maps as value tuples; candidates are fixed on a
    generating set, extended, then filtered exhaustively."""
    if M.ring is not N.ring:
        raise RingMismatch("modules over different rings")
    gens = greedy_generators(M)
    combos = _combinations(M, gens)
    out = []
    for images in itertools.product(N.elements, repeat=len(gens)):
        f = [None] * len(M)
        ok = True
        for coeffs, m in combos:
            v = N.sum(N.act[r][n] for r, n in zip(coeffs, images))
            if f[m] is None:
                f[m] = v
            elif f[m] != v:
                ok = False
                break
        if ok and is_linear(M, N, f):
            out.append(tuple(f))
    return sorted(out)


def hom_module(M: FinModule, N: FinModule) -> FinModule:
    """Hom_R(M, N) with pointwise operations; labels are value tuples."""
    maps = linear_maps(M, N)
    idx = {f: i for i, f in enumerate(maps)}
    add = tuple(
        tuple(idx[tuple(N.add[x][y] for x, y in zip(f, g))] for g in maps) for f in maps
    )
    act = tuple(
        tuple(idx[tuple(N.act[r][x] for x in f)] for f in maps) for r in M.ring.elements
    )
    zero = idx[tuple(N.zero for _ in M.elements)]
    return FinModule(M.ring, tuple(maps), add, act, zero, f"Hom({M.name},{N.name})")


def dual(M: FinModule) -> FinModule:
    return hom_module(M, regular(M.ring))


# -- tensor products ---------------------------------------------------------------

def _z_presentation(M: FinModule):
    """Abelian-group generators, integer coordinates of every element, and
    relation vectors generating the kernel of Z^a -> M."""
    gens: list[int] = []
    current = {M.zero}
    while len(current) < len(M):
        m = next(x for x in M.elements if x not in current)
        gens.append(m)
        current = _subgroup(M, gens)
    a = len(gens)
    vec = {M.zero: (0,) * a}
    order = [M.zero]
    for x in order:
        for i, g in enumerate(gens):
            y = M.add[x][g]
            if y not in vec:
                v = list(vec[x])
                v[i] += 1
                vec[y] = tuple(v)
                order.append(y)
    relations = []
    for x in M.elements:
        for i, g in enumerate(gens):
            y = M.add[x][g]
            r = [p - q for p, q in zip(vec[x], vec[y])]
            r[i] += 1
            if any(r):
                relations.append(r)
    return gens, vec, relations


def _subgroup(M, gens):
    seen = {M.zero}
    frontier = [M.zero]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = M.add[x][g]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def _representative(data: dict, label: tuple) -> list[int]:
    width, Vinv = data["width"], data["Vinv"]
    y = [0] * width
    for k, pos in enumerate(data["positions"]):
        y[pos] = label[k]
    return [sum(y[i] * Vinv[i][j] for i in range(width) if y[i]) for j in range(width)]


@dataclass(eq=False)
class TensorProduct:
    """M ⊗_R N with its universal bilinear map.

    ``module`` elements are residue tuples modulo the nontrivial invariant
    factors; ``bilinear[(m, n)]`` is the index of m ⊗ n.
    """

    left: FinModule
    right: FinModule
    module: FinModule
    bilinear: dict
    _data: dict = field(repr=False)

    def representative(self, t: int) -> list[int]:
        """An integer vector in Z^(a·b) whose class is t."""
        return _representative(self._data, self.module.labels[t])

    @cached_property
    def _representatives(self):
        return [self.representative(t) for t in self.module.elements]

    @cached_property
    def _basis(self):
        """Indices of the residue-tuple unit vectors; they generate T additively."""
        k = len(self._data["positions"])
        idx = {lab: i for i, lab in enumerate(self.module.labels)}
        return [idx[tuple(int(i == j) for j in range(k))] for i in range(k)]

    def lift(self, P: FinModule, f: Callable[[int, int], int]) -> list[int]:
        """The linear map T -> P with lift(m ⊗ n) = f(m, n).

        Raises ValueError when f is not R-bilinear: the candidate built from
        representatives must factor f on every pure tensor, be additive along
        a basis of T, and f must commute with scalars.
        """
        M, N, T = self.left, self.right, self.module
        R = M.ring
        d = self._data
        images = [f(g, h) for g in d["left_gens"] for h in d["right_gens"]]
        out = [
            P.sum(P.times(c, v) for c, v in zip(x, images) if c)
            for x in self._representatives
        ]
        for (m, n), t in self.bilinear.items():
            if out[t] != f(m, n):
                raise ValueError(f"map is not bilinear: fails to factor at {(m, n)}")
        for e in self._basis:
            if any(out[T.add[t][e]] != P.add[out[t]][out[e]] for t in T.elements):
                raise ValueError("map is not additive")
        for r in R.elements:
            for m in M.elements:
                for n in N.elements:
                    if f(M.act[r][m], n) != P.act[r][f(m, n)]:
                        raise ValueError("map does not commute with scalars")
        return out


def tensor_product(M: FinModule, N: FinModule) -> TensorProduct:
    if M.ring is not N.ring:
        raise RingMismatch("modules over different rings")
    R = M.ring
    ga, vec_m, rel_m = _z_presentation(M)
    gb, vec_n, rel_n = _z_presentation(N)
    a, b = len(ga), len(gb)
    width = a * b

    def outer(u, v):
        return [u[i] * v[j] for i in range(a) for j in range(b)]

    unit_a = [[int(i == k) for k in range(a)] for i in range(a)]
    unit_b = [[int(j == k) for k in range(b)] for j in range(b)]
    rows = []
    for r in rel_m:
        for j in range(b):
            rows.append(outer(r, unit_b[j]))
    for s in rel_n:
        for i in range(a):
            rows.append(outer(unit_a[i], s))
    for rho in R.elements:
        for i, g in enumerate(ga):
            for j, h in enumerate(gb):
                left = outer(vec_m[M.act[rho][g]], unit_b[j])
                right = outer(unit_a[i], vec_n[N.act[rho][h]])
                row = [p - q for p, q in zip(left, right)]
                if any(row):
                    rows.append(row)
    if width:
        diag, V, Vinv = smith_normal_form(rows, width)
    else:
        diag, V, Vinv = [], [], []
    if any(d == 0 for d in diag):
        raise InvariantViolation("tensor product of finite modules came out infinite")
    positions = [i for i, d in enumerate(diag) if d > 1]
    moduli = [diag[i] for i in positions]

    def coords(x):
        return tuple(
            sum(x[k] * V[k][i] for k in range(width)) % diag[i] for i in positions
        )

    labels = tuple(itertools.product(*[range(d) for d in moduli]))
    idx = {t: i for i, t in enumerate(labels)}
    add = tuple(
        tuple(idx[tuple((p + q) % d for p, q, d in zip(s, t, moduli))] for t in labels)
        for s in labels
    )
    data = {
        "width": width, "positions": positions, "Vinv": Vinv,
        "left_gens": ga, "right_gens": gb,
    }
    # r·(g_i ⊗ h_j) = (r g_i) ⊗ h_j
    basis_action = {
        rho: [outer(vec_m[M.act[rho][g]], unit_b[j]) for g in ga for j in range(b)]
        for rho in R.elements
    }
    act = []
    for rho in R.elements:
        row = []
        for label in labels:
            x = _representative(data, label)
            y = [0] * width
            for c, vecs in zip(x, basis_action[rho]):
                if c:
                    for k in range(width):
                        y[k] += c * vecs[k]
            row.append(idx[coords(y)])
        act.append(tuple(row))
    T = FinModule(R, labels, add, tuple(act), idx[tuple(0 for _ in moduli)], f"{M.name}⊗{N.name}")
    bilinear = {
        (m, n): idx[coords(outer(vec_m[m], vec_n[n]))] for m in M.elements for n in N.elements
    }
    return TensorProduct(M, N, T, bilinear, data)


def is_isomorphism(M: FinModule, N: FinModule, f: Sequence[int]) -> bool:
    return len(M) == len(N) and len(set(f)) == len(M) and is_linear(M, N, f)


# -- dualizability -------------------------------------------------------------------

@dataclass(eq=False)
class DualBasis:
    """Pairs (m_i, φ_i) with Σ φ_i(m)·m_i = m for every m.

    ``functionals`` are indices into ``dual``, whose labels are value tuples.
    """

    module: FinModule
    dual: FinModule
    vectors: tuple
    functionals: tuple
    triangles_verified: bool = False

    def pairs(self):
        return list(zip(self.vectors, self.functionals))


@dataclass(eq=False)
class Obstruction:
    """Every surjection R^n -> M with n <= bound was tried; none splits."""

    module: FinModule
    bound: int
    surjections_checked: int


def _reconstructs(M, R, vectors, phis, targets) -> bool:
    for m in targets:
        total = M.sum(M.act[phi[m]][v] for v, phi in zip(vectors, phis))
        if total != m:
            return False
    return True


def verify_triangles(cert: DualBasis) -> bool:
    """Check both triangle identities by chasing elements through M ⊗ M*."""
    M, Md = cert.module, cert.dual
    R = M.ring
    Rmod = regular(R)
    tp = tensor_product(M, Md)
    T = tp.module
    coev = T.sum(tp.bilinear[(v, p)] for v, p in cert.pairs())
    # lift raises unless the evaluation pairing M* x M -> R is bilinear
    tensor_product(Md, M).lift(Rmod, lambda psi, m: Md.labels[psi][m])
    for m in M.elements:
        chase = tp.lift(M, lambda a, psi, m=m: M.act[Md.labels[psi][m]][a])
        if chase[coev] != m:
            return False
    for psi in Md.elements:
        chase = tp.lift(Md, lambda a, phi, psi=psi: Md.act[Md.labels[psi][a]][phi])
        if chase[coev] != psi:
            return False
    return True


def default_bound(M: FinModule) -> int:
    return len(greedy_generators(M)) + 1


def is_dualizable(M: FinModule, bound: Optional[int] = None):
    """A verified dual basis, or None when a projectivity obstruction is
    established. Raises BoundTooSmall when neither is reached."""
    bound = default_bound(M) if bound is None else bound
    R = M.ring
    Md = dual(M)
    phis = [Md.labels[i] for i in Md.elements]
    gens = greedy_generators(M)
    for n in range(0, bound + 1):
        for vectors in itertools.combinations_with_replacement(M.elements, n):
            if not generates(M, vectors):
                continue
            for choice in itertools.product(Md.elements, repeat=n):
                chosen = [phis[i] for i in choice]
                if _reconstructs(M, R, vectors, chosen, gens) and _reconstructs(
                    M, R, vectors, chosen, M.elements
                ):
                    cert = DualBasis(M, Md, tuple(vectors), tuple(choice))
                    if not verify_triangles(cert):
                        raise InvariantViolation("dual basis fails a triangle identity")
                    cert.triangles_verified = True
                    return cert
    splitting, checked = find_splitting(M, bound)
    if splitting is not None:
        raise InvariantViolation(f"{M.name} splits off R^{splitting[0]} but has no dual basis")
    if checked == 0:
        raise BoundTooSmall(f"no surjection R^n -> {M.name} with n <= {bound}")
    return None


def find_splitting(M: FinModule, bound: int):
    """Search every surjection R^n -> M (n <= bound) for a linear section.

    Returns ``((n, vectors, section), checked)`` for the first split
    surjection, or ``(None, checked)`` with the number of surjections tried.
    """
    R = M.ring
    checked = 0
    for n in range(1, bound + 1):
        sections = linear_maps(M, free(R, n))
        # the element of R^n with coordinates c sits at index Σ c_i·|R|^(n-1-i)
        coords = list(itertools.product(R.elements, repeat=n))
        for vectors in itertools.combinations_with_replacement(M.elements, n):
            if not generates(M, vectors):
                continue
            checked += 1
            p = [M.sum(M.act[c][v] for c, v in zip(cs, vectors)) for cs in coords]
            for s in sections:
                if all(p[s[m]] == m for m in M.elements):
                    return (n, vectors, s), checked
    return None, checked


def splitting_obstruction(M: FinModule, bound: int) -> Optional[Obstruction]:
    splitting, checked = find_splitting(M, bound)
    if splitting is not None or checked == 0:
        return None
    return Obstruction(M, bound, checked)
