"""The default corpus: curated small categories, functors between them, and
every presheaf on each with bounded value sets."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import islice
from typing import Optional

from .cauchy import karoubi_envelope
from .enumeration import enumerate_presheaves
from .errors import BudgetExceeded, MalformedInput
from .fincat import (
    FinCategory,
    FinFunctor,
    check_category,
    check_functor,
    discrete,
    enumerate_functors,
    from_monoid,
    from_preorder,
    full_subcategory,
    identity_functor,
    pick_object,
    stringify,
    terminal,
    to_terminal,
)


@dataclass(frozen=True)
class CorpusConfig:
    presheaf_budget: int = 3  # max value-set size
    case_budget: Optional[int] = None  # max enumerated presheaves per category
    functor_budget: int = 12  # max enumerated functors per ordered pair
    functor_max_morphisms: int = 4  # only enumerate functors between small categories

    def __post_init__(self):
        if self.presheaf_budget < 1:
            raise BudgetExceeded(f"presheaf budget must be positive, got {self.presheaf_budget}")
        if self.case_budget is not None and self.case_budget < 1:
            raise BudgetExceeded(f"case budget must be positive, got {self.case_budget}")
        if self.functor_budget < 0 or self.functor_max_morphisms < 0:
            raise BudgetExceeded("functor budgets must be non-negative")

    @classmethod
    def from_json(cls, path) -> "CorpusConfig":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        known = set(cls.__dataclass_fields__)
        unknown = set(raw) - known
        if unknown:
            raise MalformedInput(f"unknown config keys: {sorted(unknown)}")
        return cls(**raw)

    def to_dict(self) -> dict:
        return asdict(self)


# -- curated categories -----------------------------------------------------------

def walking_arrow() -> FinCategory:
    return FinCategory.build(["0", "1"], [("a", "0", "1")], identities={"0": "id0", "1": "id1"}, name="arrow")


def parallel_pair() -> FinCategory:
    return FinCategory.build(["0", "1"], [("u", "0", "1"), ("v", "0", "1")], name="parallel")


def span() -> FinCategory:
    return FinCategory.build(["l", "m", "r"], [("p", "m", "l"), ("q", "m", "r")], name="span")


def cospan() -> FinCategory:
    return FinCategory.build(["l", "m", "r"], [("p", "l", "m"), ("q", "r", "m")], name="cospan")


def commutative_square() -> FinCategory:
    return from_preorder("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")], name="square")


def chain3() -> FinCategory:
    return from_preorder("012", [("0", "1"), ("1", "2")], name="chain3")


def idempotent_monoid() -> FinCategory:
    """{1, e} with e∘e = e."""
    return from_monoid(["1", "e"], lambda g, f: "e", "1", name="idem")


def left_zero_band() -> FinCategory:
    """{1, a, b} with x∘y = x for x, y in {a, b}."""
    return from_monoid(["1", "a", "b"], lambda g, f: g, "1", name="band3")


def cyclic_group2() -> FinCategory:
    return from_monoid(["1", "t"], lambda g, f: "1", "1", name="z2")


def arrow_plus_point() -> FinCategory:
    return FinCategory.build(["0", "1", "2"], [("a", "0", "1")], name="arrow+point")


def empty_category() -> FinCategory:
    return check_category(FinCategory((), {}, {}, {}, "empty"))


def curated_categories() -> list[FinCategory]:
    idem = idempotent_monoid()
    kar, _ = karoubi_envelope(idem)
    return [
        empty_category(),
        terminal(),
        discrete(2),
        discrete(3),
        walking_arrow(),
        parallel_pair(),
        span(),
        cospan(),
        commutative_square(),
        idem,
        stringify(kar, "kar(idem)"),
        left_zero_band(),
        cyclic_group2(),
        chain3(),
        arrow_plus_point(),
    ]


# -- functors ---------------------------------------------------------------------

def _karoubi_embedding(C: FinCategory, kar_name: str, cats: dict) -> Optional[FinFunctor]:
    """The embedding C -> kar(C), retargeted at the stringified corpus copy."""
    if kar_name not in cats:
        return None
    kar, emb = karoubi_envelope(C)
    target = cats[kar_name]
    label = stringify(kar)
    obj = dict(zip(kar.objects, label.objects))
    mor = dict(zip(kar.morphisms, label.morphisms))
    return check_functor(
        FinFunctor(
            C, target,
            {a: obj[b] for a, b in emb.on_objects.items()},
            {f: mor[g] for f, g in emb.on_morphisms.items()},
            f"kar-embedding[{C.name}]",
        )
    )


def corpus_functors(cats: list[FinCategory], config: CorpusConfig) -> list[FinFunctor]:
    by_name = {C.name: C for C in cats}
    out: list[FinFunctor] = []
    for C in cats:
        ident = identity_functor(C)
        out.append(FinFunctor(C, C, ident.on_objects, ident.on_morphisms, f"id[{C.name}]"))
        bang = to_terminal(C)
        out.append(FinFunctor(C, by_name["terminal"], bang.on_objects, bang.on_morphisms, f"![{C.name}]"))
        for c in C.objects:
            p = pick_object(C, c)
            out.append(FinFunctor(by_name["terminal"], C, p.on_objects, p.on_morphisms, f"pick[{C.name},{c}]"))
        # proper nonempty full subcategories on initial segments of objects
        for k in range(1, len(C.objects)):
            sub, inc = full_subcategory(C, C.objects[:k])
            out.append(FinFunctor(sub, C, inc.on_objects, inc.on_morphisms, f"incl[{sub.name}]"))
    emb = _karoubi_embedding(by_name["idem"], "kar(idem)", by_name)
    if emb is not None:
        out.append(emb)
    small = [C for C in cats if 0 < len(C.morphisms) <= config.functor_max_morphisms]
    for D in small:
        for E in small:
            if D is E:
                continue
            for i, H in enumerate(islice(enumerate_functors(D, E), config.functor_budget)):
                out.append(FinFunctor(D, E, H.on_objects, H.on_morphisms, f"{D.name}->{E.name}#{i}"))
    return out


# -- the corpus -------------------------------------------------------------------

@dataclass
class Corpus:
    config: CorpusConfig
    categories: list
    functors: list
    presheaves: dict = field(default_factory=dict)  # category name -> list of presheaves

    def category(self, name: str) -> FinCategory:
        for C in self.categories:
            if C.name == name:
                return C
        raise KeyError(name)

    def all_presheaves(self):
        for C in self.categories:
            yield from self.presheaves[C.name]

    def summary(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "categories": [
                {
                    "name": C.name,
                    "objects": len(C.objects),
                    "morphisms": len(C.morphisms),
                    "presheaves": len(self.presheaves[C.name]),
                }
                for C in self.categories
            ],
            "functors": len(self.functors),
        }


def build_corpus(config: Optional[CorpusConfig] = None) -> Corpus:
    config = config or CorpusConfig()
    cats = curated_categories()
    functors = corpus_functors(cats, config)
    presheaves = {
        C.name: list(enumerate_presheaves(C, config.presheaf_budget, budget=config.case_budget))
        for C in cats
    }
    return Corpus(config, cats, functors, presheaves)


@lru_cache(maxsize=4)
def default_corpus(config: Optional[CorpusConfig] = None) -> Corpus:
    """Cached corpus; callers must treat it as read-only."""
    return build_corpus(config)
