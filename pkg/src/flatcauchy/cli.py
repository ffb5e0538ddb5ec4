"""Command-line front door.

Exit codes: 0 success, 1 counterexample found, 2 invalid input,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import formats
from .boolmonad import FinBoolAlg, gb_hom_iso
from .cauchy import is_cauchy, is_cauchy_complete, is_representable, karoubi_envelope
from .corpus import CorpusConfig, build_corpus
from .errors import BudgetExceeded, FlatCauchyError
from .fincat import _label, is_filtered
from .presheaf import flat_value_bound, is_flat_elements, is_flat_limits, lan_along
from .ringmod import default_bound, is_dualizable, splitting_obstruction
from .setcalc import FinSet
from .suites import (
    SUITE_NAMES,
    check_boolmonad,
    check_smallacc,
    replay,
    run_fixture,
    run_suite,
)

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


def _emit(payload: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
        return
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, ensure_ascii=False)
        out.write(f"{key}: {value}\n")


def _nat(alpha) -> dict:
    return {
        _label(c): {_label(x): _label(y) for x, y in comp.items()}
        for c, comp in alpha.components.items()
    }


# -- subcommands -----------------------------------------------------------------------

_KIND_LOADERS = {
    "category": formats.category_from_json,
    "functor": formats.functor_from_json,
    "presheaf": formats.presheaf_from_json,
    "diagram": formats.diagram_from_json,
    "ring": formats.ring_from_json,
    "module": formats.module_from_json,
}


def _guess_kind(raw: dict) -> str:
    if "kind" in raw and "data" in raw:
        return raw["kind"]
    for kind, keys in (
        ("functor", {"source", "target"}),
        ("presheaf", {"base", "sets"}),
        ("diagram", {"shape", "sets"}),
        ("module", {"ring", "act"}),
        ("ring", {"mul"}),
        ("category", {"objects", "morphisms"}),
    ):
        if keys <= set(raw):
            return kind
    raise formats.MalformedInput("cannot tell what kind of object this file describes")


def cmd_validate(args) -> int:
    raw = formats.load_json(args.file)
    kind = args.kind or _guess_kind(raw)
    if "kind" in raw and "data" in raw:
        raw = raw["data"]
    _KIND_LOADERS[kind](raw, Path(args.file).parent)
    _emit({"file": args.file, "kind": kind, "valid": True}, args.format)
    return EXIT_OK


def _presheaf(args):
    return formats.presheaf_from_json(args.presheaf)


def cmd_elements(args) -> int:
    M = _presheaf(args)
    el, proj = M.elements
    _emit(
        {
            "objects": len(el.objects),
            "morphisms": len(el.morphisms),
            "filtered": is_filtered(el),
            "category": formats.category_to_json(el),
            "projection": {_label(o): _label(c) for o, c in proj.on_objects.items()},
        },
        args.format,
    )
    return EXIT_OK


def cmd_filtered(args) -> int:
    C = formats.category_from_json(args.category)
    _emit({"category": C.name, "filtered": is_filtered(C)}, args.format)
    return EXIT_OK


def cmd_flat(args) -> int:
    M = _presheaf(args)
    flat = is_flat_elements(M)
    out = {"presheaf": M.name, "flat_elements": flat, "flat_limits": is_flat_limits(M)}
    if flat:
        out["value_bound_holds"] = flat_value_bound(M)
    _emit(out, args.format)
    return EXIT_OK


def cmd_cauchy(args) -> int:
    M = _presheaf(args)
    cert = is_cauchy(M)
    out = {"presheaf": M.name, "cauchy": cert is not None}
    rep = is_representable(M)
    out["representable_at"] = None if rep is None else _label(rep)
    if cert is not None:
        out["certificate"] = {
            "object": _label(cert.obj),
            "element": _label(cert.element),
            "section": _nat(cert.section),
            "retraction": _nat(cert.retraction),
            "verified": cert.verify(),
        }
    _emit(out, args.format)
    return EXIT_OK


def cmd_karoubi(args) -> int:
    C = formats.category_from_json(args.category)
    kar, emb = karoubi_envelope(C)
    _emit(
        {
            "category": C.name,
            "cauchy_complete": is_cauchy_complete(C),
            "envelope_objects": len(kar.objects),
            "envelope_morphisms": len(kar.morphisms),
            "envelope": formats.category_to_json(kar),
            "embedding": formats.functor_to_json(emb)["on_objects"],
        },
        args.format,
    )
    return EXIT_OK


def cmd_kan(args) -> int:
    J = formats.functor_from_json(args.functor)
    M = formats.presheaf_from_json(args.presheaf, base=J.source)
    L = lan_along(J, M)
    _emit(
        {
            "sizes": {_label(c): len(L.sets[c]) for c in L.base.objects},
            "flat_before": is_flat_elements(M),
            "flat_after": is_flat_elements(L),
            "extension": formats.presheaf_to_json(L),
        },
        args.format,
    )
    return EXIT_OK


def cmd_dualizable(args) -> int:
    M = formats.module_from_json(args.module)
    bound = args.bound if args.bound is not None else default_bound(M)
    cert = is_dualizable(M, bound)
    out = {
        "module": M.name,
        "ring": M.ring.name,
        "bound": bound,
        "dualizable": cert is not None,
        "criterion": "dual basis with both triangle identities checked; stands in for the infinite-product condition",
    }
    if cert is not None:
        out["dual_basis"] = [
            {"vector": M.labels[v], "functional": [M.ring.labels[x] for x in cert.dual.labels[p]]}
            for v, p in cert.pairs()
        ]
        out["triangles_verified"] = cert.triangles_verified
    else:
        obs = splitting_obstruction(M, bound)
        out["obstruction"] = {"surjections_checked": obs.surjections_checked, "bound": obs.bound}
    _emit(out, args.format)
    return EXIT_OK


def cmd_boolmonad(args) -> int:
    ok, seen = check_boolmonad(args.atoms, args.size)
    iso = gb_hom_iso(FinBoolAlg(args.atoms), FinSet(tuple(range(args.size))))
    out = {"atoms": args.atoms, "size": args.size, "laws_hold": ok, **seen}
    out["iso_witness"] = [{"partition": list(f), "hom": list(phi)} for f, phi in iso.witness_table()]
    _emit(out, args.format)
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def cmd_smallacc(args) -> int:
    C = formats.category_from_json(args.category)
    ok, seen = check_smallacc(C, args.bound, args.case_budget)
    _emit({"category": C.name, "holds": ok, **seen}, args.format)
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def _config(args) -> CorpusConfig:
    return CorpusConfig.from_json(args.config) if args.config else CorpusConfig()


def _write_counterexamples(reports, out_dir: Optional[str]) -> None:
    if not out_dir:
        return
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    for rep in reports:
        for i, ce in enumerate(rep.counterexamples):
            formats.dump_json(ce, d / f"{rep.suite}-{i:04d}.json")


def cmd_verify(args) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    if args.fixture:
        if args.suite == "all":
            raise formats.MalformedInput("a fixture needs a single suite")
        reports = [run_fixture(args.suite, formats.load_json(args.fixture), Path(args.fixture).parent)]
    else:
        corpus = build_corpus(_config(args))
        reports = [run_suite(name, corpus) for name in names]
    _write_counterexamples(reports, args.out)
    payload = {"reports": [r.to_dict(timing=not args.no_timing) for r in reports]}
    payload["ok"] = all(r.ok for r in reports)
    if args.format == "json":
        _emit(payload, "json")
    else:
        for r in reports:
            status = "PASS" if r.ok else "FAIL"
            sys.stdout.write(
                f"{status} {r.suite}: {r.passed}/{r.attempted} passed, "
                f"{len(r.counterexamples)} counterexamples"
                + ("" if args.no_timing else f", {r.wall_time:.2f}s")
                + "\n"
            )
            for ce in r.counterexamples:
                sys.stdout.write(f"  counterexample {ce['case']}: {json.dumps(ce['observed'])}\n")
    return EXIT_OK if payload["ok"] else EXIT_COUNTEREXAMPLE


def cmd_gen_corpus(args) -> int:
    corpus = build_corpus(_config(args))
    summary = corpus.summary()
    if args.out:
        d = Path(args.out)
        (d / "categories").mkdir(parents=True, exist_ok=True)
        for C in corpus.categories:
            formats.dump_json(formats.category_to_json(C), d / "categories" / f"{C.name}.json")
        formats.dump_json(summary, d / "summary.json")
    _emit(summary, args.format)
    return EXIT_OK


def cmd_replay(args) -> int:
    ce = formats.load_json(args.counterexample)
    reproduced, seen = replay(ce)
    _emit({"case": ce.get("case"), "reproduced": reproduced, "observed": seen}, args.format)
    return EXIT_COUNTEREXAMPLE if reproduced else EXIT_OK


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flatcauchy", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="validate a category/functor/presheaf/diagram/ring/module file")
    s.add_argument("file")
    s.add_argument("--kind", choices=sorted(_KIND_LOADERS))
    s.set_defaults(func=cmd_validate)

    for name, func, help_ in (
        ("elements", cmd_elements, "category of elements of a presheaf"),
        ("flat", cmd_flat, "both flatness tests on a presheaf"),
        ("cauchy", cmd_cauchy, "retract-of-representable certificate"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("presheaf")
        s.set_defaults(func=func)

    for name, func, help_ in (
        ("filtered", cmd_filtered, "is the category filtered"),
        ("karoubi", cmd_karoubi, "idempotent completion of a category"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("category")
        s.set_defaults(func=func)

    s = sub.add_parser("kan", help="left Kan extension of a presheaf along a functor")
    s.add_argument("functor")
    s.add_argument("presheaf")
    s.set_defaults(func=cmd_kan)

    s = sub.add_parser("dualizable", help="dual basis or splitting obstruction for a module")
    s.add_argument("module")
    s.add_argument("--bound", type=int)
    s.set_defaults(func=cmd_dualizable)

    s = sub.add_parser("boolmonad", help="partition-of-unity monad law checks")
    s.add_argument("--atoms", type=int, default=2)
    s.add_argument("--size", type=int, default=3)
    s.set_defaults(func=cmd_boolmonad)

    s = sub.add_parser("smallacc", help="flat vs representable sweep on one category")
    s.add_argument("category")
    s.add_argument("--bound", type=int, default=3)
    s.add_argument("--case-budget", type=int)
    s.set_defaults(func=cmd_smallacc)

    s = sub.add_parser("verify", help="run a verification suite over the corpus")
    s.add_argument("suite", choices=SUITE_NAMES + ("all",))
    s.add_argument("--config", help="JSON file with corpus budgets")
    s.add_argument("--fixture", help="run the suite's check on one serialized witness instead")
    s.add_argument("--out", help="directory for serialized counterexamples")
    s.add_argument("--no-timing", action="store_true", help="omit wall times (byte-stable output)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen-corpus", help="build the corpus and print its summary")
    s.add_argument("--config")
    s.add_argument("--out", help="directory for category files and summary.json")
    s.set_defaults(func=cmd_gen_corpus)

    s = sub.add_parser("replay", help="re-run a serialized counterexample")
    s.add_argument("counterexample")
    s.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (FlatCauchyError, OSError, KeyError, TypeError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
