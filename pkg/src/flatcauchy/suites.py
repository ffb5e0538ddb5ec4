"""Verification suites over the corpus.

Every suite is a list of cases; each case is checked by a pure function
returning ``(ok, observed)``. A failing case is serialized together with
what was observed, and ``replay`` re-runs the same check on the
deserialized witness.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .boolmonad import (
    FinBoolAlg,
    check_functoriality,
    check_laws,
    check_unit_mult_natural,
    hom_iso_natural,
)
from .cauchy import enumerate_nat, is_cauchy, verify_smallacc
from .corpus import Corpus
from .enumeration import enumerate_presheaves
from .errors import BudgetExceeded, FlatCauchyError, InvariantViolation, UnknownSuite, ValidationError
from .fincat import FinCategory, FinFunctor, is_filtered, is_final, is_fully_faithful, opposite
from .formats import (
    category_from_json,
    category_to_json,
    functor_from_json,
    functor_to_json,
    module_from_json,
    module_to_json,
    presheaf_from_json,
    presheaf_to_json,
)
from .oracles import colimit_universal, has_total_cocone, is_locally_free, limit_universal
from .presheaf import (
    Presheaf,
    check_presheaf,
    flat_value_bound,
    is_flat_elements,
    is_flat_limits,
    lan_along,
    representable,
)
from .ringmod import (
    FinModule,
    default_bound,
    direct_sum,
    dual_numbers_f2,
    find_splitting,
    ideals,
    is_dualizable,
    quotient_ring_module,
    verify_triangles,
    zmod,
)
from .setcalc import FinSet, SetDiagram, all_functions


@dataclass
class Report:
    suite: str
    attempted: int = 0
    passed: int = 0
    counterexamples: list = field(default_factory=list)
    wall_time: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and self.passed == self.attempted

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "attempted": self.attempted,
            "passed": self.passed,
            "counterexamples": self.counterexamples,
            "notes": self.notes,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


# -- case checks (shared by the runner and replay) -------------------------------------

def _validated(M: Presheaf) -> Optional[dict]:
    try:
        check_presheaf(M)
    except ValidationError as exc:
        return {"invalid": f"{type(exc).__name__}: {exc}"}
    return None


def check_flat_char(M: Presheaf):
    bad = _validated(M)
    if bad:
        return False, bad
    seen = {
        "elements": is_flat_elements(M),
        "limits": is_flat_limits(M),
        "total_cocone": has_total_cocone(M.elements[0]),
    }
    return len(set(seen.values())) == 1, seen


def check_flat_cauchy(M: Presheaf):
    bad = _validated(M)
    if bad:
        return False, bad
    cert = is_cauchy(M)
    verified = cert is not None and cert.verify()
    return verified, {"flat": True, "certificate": cert is not None, "verified": verified}


def check_value_bound(M: Presheaf):
    bad = _validated(M)
    if bad:
        return False, bad
    ok = flat_value_bound(M)
    return ok, {"sizes": list(M.sizes()), "bound_holds": ok}


def check_flat_restriction(J: FinFunctor, M: Presheaf):
    bad = _validated(M)
    if bad:
        return False, bad
    ff = is_fully_faithful(J)
    flat = is_flat_elements(M)
    try:
        lan_flat = is_flat_elements(lan_along(J, M))
    except InvariantViolation as exc:
        return False, {"invariant": str(exc)}
    ok = (not flat or lan_flat) and (not (ff and lan_flat) or flat)
    return ok, {"fully_faithful": ff, "flat": flat, "lan_flat": lan_flat}


def check_final_filtered(H: FinFunctor):
    D, E = H.source, H.target
    seen = {
        "final": is_final(H),
        "fully_faithful": is_fully_faithful(H),
        "source_filtered": is_filtered(D),
        "target_filtered": is_filtered(E),
    }
    oracle_ok = (
        seen["source_filtered"] == has_total_cocone(D)
        and seen["target_filtered"] == has_total_cocone(E)
    )
    seen["oracle_agrees"] = oracle_ok
    forward = not (seen["final"] and seen["source_filtered"]) or seen["target_filtered"]
    backward = (
        not (seen["final"] and seen["fully_faithful"] and seen["target_filtered"])
        or seen["source_filtered"]
    )
    return forward and backward and oracle_ok, seen


def check_smallacc(C: FinCategory, value_bound: int, case_budget: Optional[int] = None):
    rep = verify_smallacc(C, value_bound, case_budget)
    seen = {
        "cauchy_complete": rep.cauchy_complete,
        "cases": rep.cases,
        "flat": rep.flat,
        "flat_representable": rep.flat_representable,
        "witness": None if rep.witness is None else list(rep.witness.sizes()),
        "counterexamples": len(rep.counterexamples),
    }
    return rep.holds, seen


def check_dualizable(M: FinModule):
    cert = is_dualizable(M)
    seen = {
        "dualizable": cert is not None,
        "triangles": cert is not None and cert.triangles_verified and verify_triangles(cert),
        "locally_free": is_locally_free(M),
        "splits": find_splitting(M, default_bound(M))[0] is not None,
    }
    ok = seen["dualizable"] == seen["locally_free"] == seen["splits"] and (
        not seen["dualizable"] or seen["triangles"]
    )
    return ok, seen


def check_boolmonad(atoms: int, size: int, other_max: int = 3):
    B = FinBoolAlg(atoms)
    X = FinSet(tuple(range(size)))
    rep = check_laws(B, X)
    natural = True
    for k in range(other_max + 1):
        Y = FinSet(tuple(f"y{i}" for i in range(k)))
        for h in all_functions(X, Y):
            natural &= hom_iso_natural(B, h) and check_unit_mult_natural(B, h)
    functorial = True
    if size <= 2:
        Y = FinSet(("p", "q"))
        Z = FinSet(("u", "v"))
        for h in all_functions(X, Y):
            for k in all_functions(Y, Z):
                functorial &= check_functoriality(B, h, k)
    seen = {
        "cardinality": rep.cardinality,
        "cardinality_ok": rep.cardinality_ok,
        "left_unit": rep.left_unit,
        "right_unit": rep.right_unit,
        "associative": rep.associative,
        "iso": rep.iso_ok,
        "natural": natural,
        "functorial": functorial,
    }
    return rep.holds and natural and functorial, seen


def as_diagram(M: Presheaf) -> SetDiagram:
    """M as a covariant diagram on the opposite category."""
    return SetDiagram(opposite(M.base), dict(M.sets), dict(M.action), M.name)


def check_universal(M: Presheaf):
    bad = _validated(M)
    if bad:
        return False, bad
    D = as_diagram(M)
    seen = {
        "colimit": colimit_universal(D),
        "limit": limit_universal(D),
        "yoneda": all(
            len(enumerate_nat(representable(M.base, c), M)) == len(M.sets[c])
            for c in M.base.objects
        ),
    }
    return all(seen.values()), seen


# -- case generation ---------------------------------------------------------------------

def _presheaves_on(corpus: Corpus, C: FinCategory, cache: dict) -> list:
    if C.name in corpus.presheaves and any(D is C for D in corpus.categories):
        return corpus.presheaves[C.name]
    if id(C) not in cache:
        cfg = corpus.config
        cache[id(C)] = (C, list(enumerate_presheaves(C, cfg.presheaf_budget, budget=cfg.case_budget)))
    return cache[id(C)][1]


def _flat_presheaves(corpus: Corpus):
    for M in corpus.all_presheaves():
        if is_flat_elements(M):
            yield M


def module_battery() -> list:
    """Quotients R/I and their pairwise sums (|M| <= 36) over the five rings."""
    out = []
    for R in (zmod(2), zmod(3), zmod(4), zmod(6), dual_numbers_f2()):
        base = [quotient_ring_module(R, I) for I in ideals(R)]
        out.extend(base)
        for i, A in enumerate(base):
            for B in base[i:]:
                if len(A) * len(B) <= 36:
                    out.append(direct_sum(A, B))
    return out


def _presheaf_witness(M):
    return {"presheaf": presheaf_to_json(M)}


@dataclass(frozen=True)
class Suite:
    name: str
    cases: Callable  # corpus -> iterable of (label, args)
    check: Callable  # *args -> (ok, observed)
    witness: Callable  # *args -> JSON
    load: Callable  # JSON -> args


def _load_presheaf(raw, strict=True, base_dir=None):
    return (presheaf_from_json(raw["presheaf"], base_dir, strict=strict),)


def _load_pair(raw, strict=True, base_dir=None):
    J = functor_from_json(raw["functor"], base_dir)
    return J, presheaf_from_json(raw["presheaf"], base_dir, base=J.source, strict=strict)


def _restriction_cases(corpus: Corpus):
    cache: dict = {}
    for J in corpus.functors:
        for M in _presheaves_on(corpus, J.source, cache):
            yield f"{J.name}/{M.name}", (J, M)


def _smallacc_cases(corpus: Corpus):
    for C in corpus.categories:
        yield C.name, (C, corpus.config.presheaf_budget, corpus.config.case_budget)


SUITES = {
    s.name: s
    for s in [
        Suite(
            "flat-char-equivalence",
            lambda corpus: ((M.name, (M,)) for M in corpus.all_presheaves()),
            check_flat_char,
            _presheaf_witness,
            _load_presheaf,
        ),
        Suite(
            "flat-implies-cauchy",
            lambda corpus: ((M.name, (M,)) for M in _flat_presheaves(corpus)),
            check_flat_cauchy,
            _presheaf_witness,
            _load_presheaf,
        ),
        Suite(
            "flat-value-bound",
            lambda corpus: ((M.name, (M,)) for M in _flat_presheaves(corpus)),
            check_value_bound,
            _presheaf_witness,
            _load_presheaf,
        ),
        Suite(
            "flat-restriction",
            _restriction_cases,
            check_flat_restriction,
            lambda J, M: {"functor": functor_to_json(J), "presheaf": presheaf_to_json(M)},
            _load_pair,
        ),
        Suite(
            "final-filtered",
            lambda corpus: ((H.name, (H,)) for H in corpus.functors),
            check_final_filtered,
            lambda H: {"functor": functor_to_json(H)},
            lambda raw, strict=True, base_dir=None: (functor_from_json(raw["functor"], base_dir),),
        ),
        Suite(
            "smallacc",
            _smallacc_cases,
            check_smallacc,
            lambda C, bound, budget: {"category": category_to_json(C), "value_bound": bound, "case_budget": budget},
            lambda raw, strict=True, base_dir=None: (
                category_from_json(raw["category"], base_dir), raw["value_bound"], raw["case_budget"]
            ),
        ),
        Suite(
            "dualizable-modules",
            lambda corpus: ((f"{M.ring.name}:{M.name}", (M,)) for M in module_battery()),
            check_dualizable,
            lambda M: {"module": module_to_json(M)},
            lambda raw, strict=True, base_dir=None: (module_from_json(raw["module"], base_dir),),
        ),
        Suite(
            "boolmonad-laws",
            lambda corpus: ((f"n={n},|X|={m}", (n, m)) for n in range(3) for m in range(4)),
            check_boolmonad,
            lambda n, m: {"atoms": n, "size": m},
            lambda raw, strict=True, base_dir=None: (raw["atoms"], raw["size"]),
        ),
        Suite(
            "universal-properties",
            lambda corpus: (
                (M.name, (M,)) for M in corpus.all_presheaves() if M.total_size() <= 12
            ),
            check_universal,
            _presheaf_witness,
            _load_presheaf,
        ),
    ]
}

SUITE_NAMES = tuple(SUITES)


def _run(suite: Suite, cases: Iterable, keep: bool = False) -> Report:
    report = Report(suite.name)
    if keep:
        report.notes["observed"] = {}
    start = time.perf_counter()
    for label, args in cases:
        report.attempted += 1
        try:
            ok, seen = suite.check(*args)
        except BudgetExceeded:
            raise
        except FlatCauchyError as exc:
            ok, seen = False, {"error": f"{type(exc).__name__}: {exc}"}
        if keep:
            report.notes["observed"][label] = seen
        if ok:
            report.passed += 1
        else:
            report.counterexamples.append(
                {"suite": suite.name, "case": label, "witness": suite.witness(*args), "observed": seen}
            )
    report.counterexamples.sort(key=lambda c: json.dumps(c, sort_keys=True))
    report.wall_time = time.perf_counter() - start
    return report


def run_suite(name: str, corpus: Corpus) -> Report:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    suite = SUITES[name]
    # per-category observations are small enough to keep for smallacc
    return _run(suite, suite.cases(corpus), keep=(name == "smallacc"))


def run_fixture(name: str, raw: dict, base_dir=None) -> Report:
    """Run one suite's check on a serialized witness, without validating it
    on load; the check itself decides whether the input is acceptable."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    suite = SUITES[name]
    args = suite.load(raw, strict=False, base_dir=base_dir)
    return _run(suite, [(raw.get("name", "fixture"), args)])


def replay(counterexample: dict) -> tuple[bool, dict]:
    """Re-run a serialized counterexample; True when the failure reproduces
    with identical observations."""
    suite = SUITES[counterexample["suite"]]
    args = suite.load(counterexample["witness"], strict=False)
    try:
        ok, seen = suite.check(*args)
    except FlatCauchyError as exc:
        ok, seen = False, {"error": f"{type(exc).__name__}: {exc}"}
    return (not ok and seen == counterexample["observed"]), seen


def run_all(corpus: Corpus) -> list[Report]:
    return [run_suite(name, corpus) for name in SUITE_NAMES]
