"""Finite-scale computations around flat and Cauchy presheaves.

Finite categories and presheaves, categories of elements, coends and Kan
extensions, Karoubi envelopes, dualizable modules over finite rings, the
partition-of-unity monad, and verification suites tying them together.
"""

from .boolmonad import FinBoolAlg, gb_hom_iso, gb_map, gb_object, monad_mult, monad_unit
from .cauchy import (
    NatTransformation,
    enumerate_nat,
    is_cauchy,
    is_cauchy_complete,
    is_representable,
    karoubi_envelope,
    verify_smallacc,
)
from .corpus import Corpus, CorpusConfig, build_corpus
from .fincat import (
    FinCategory,
    FinFunctor,
    is_filtered,
    is_final,
    is_fully_faithful,
    opposite,
    validate_category,
)
from .presheaf import (
    Presheaf,
    category_of_elements,
    flat_value_bound,
    is_flat_elements,
    is_flat_limits,
    lan_along,
    representable,
    weighted_colimit,
)
from .ringmod import FinModule, FinRing, hom_module, is_dualizable, tensor_product
from .setcalc import FinFunction, FinSet, SetDiagram, colimit_finset, limit_finset
from .suites import Report, run_suite

__version__ = "0.1.0"

__all__ = [
    "Corpus", "CorpusConfig", "FinBoolAlg", "FinCategory", "FinFunction", "FinFunctor",
    "FinModule", "FinRing", "FinSet", "NatTransformation", "Presheaf", "Report", "SetDiagram",
    "build_corpus", "category_of_elements", "colimit_finset", "enumerate_nat", "flat_value_bound",
    "gb_hom_iso", "gb_map", "gb_object", "hom_module", "is_cauchy", "is_cauchy_complete",
    "is_dualizable", "is_filtered", "is_final", "is_flat_elements", "is_flat_limits",
    "is_fully_faithful", "is_representable", "karoubi_envelope", "lan_along", "limit_finset",
    "monad_mult", "monad_unit", "opposite", "representable", "run_suite", "tensor_product",
    "validate_category", "verify_smallacc", "weighted_colimit",
]
