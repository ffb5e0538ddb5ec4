"""Write the sample input files under data/ used by the README and CLI tests."""

import argparse
from pathlib import Path

from flatcauchy import formats
from flatcauchy.corpus import idempotent_monoid, walking_arrow
from flatcauchy.fincat import FinFunctor
from flatcauchy.cauchy import karoubi_envelope
from flatcauchy.fincat import stringify
from flatcauchy.presheaf import Presheaf, representable
from flatcauchy.ringmod import quotient_ring_module, zmod


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "data"))
    out = Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)

    idem = idempotent_monoid()
    arrow = walking_arrow()
    formats.dump_json(formats.category_to_json(arrow), out / "arrow.json")
    formats.dump_json(formats.category_to_json(idem), out / "idem.json")

    single = Presheaf.build(idem, {"*": ["x"]}, {"e": {"x": "x"}}, "singleton")
    raw = formats.presheaf_to_json(single)
    raw["base"] = "idem.json"
    formats.dump_json(raw, out / "idem_singleton.json")

    rep = formats.presheaf_to_json(representable(arrow, "1"))
    rep["base"] = "arrow.json"
    rep["name"] = "Hom(-,1)"
    formats.dump_json(rep, out / "arrow_rep1.json")

    # the embedding of idem into its idempotent completion
    kar, emb = karoubi_envelope(idem)
    label = stringify(kar, "kar(idem)")
    obj = dict(zip(kar.objects, label.objects))
    mor = dict(zip(kar.morphisms, label.morphisms))
    J = FinFunctor(
        idem, label,
        {a: obj[b] for a, b in emb.on_objects.items()},
        {f: mor[g] for f, g in emb.on_morphisms.items()},
        "kar-embedding",
    )
    raw = formats.functor_to_json(J)
    raw["source"] = "idem.json"
    formats.dump_json(raw, out / "idem_to_kar.json")

    z6 = zmod(6)
    half = quotient_ring_module(z6, frozenset(i for i in z6.elements if i % 2 == 0))
    formats.dump_json(formats.module_to_json(half), out / "z2_over_z6.json")
    z4 = zmod(4)
    formats.dump_json(
        formats.module_to_json(quotient_ring_module(z4, frozenset({0, 2}))), out / "z2_over_z4.json"
    )

    # M(e) swaps two elements, but e∘e = e forces M(e)∘M(e) = M(e)
    broken = {
        "name": "broken",
        "base": "idem.json",
        "sets": {"*": ["p", "q"]},
        "action": {"e": {"p": "q", "q": "p"}},
    }
    formats.dump_json({"presheaf": broken}, out / "corrupted_fixture.json")
    formats.dump_json({"presheaf_budget": 2, "functor_budget": 4}, out / "small_config.json")


if __name__ == "__main__":
    main()
