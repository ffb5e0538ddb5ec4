"""JSON file formats for every input and witness the CLI handles.

Ids and elements become strings on the way out (tuples are flattened to
``"(a,b)"``). A presheaf or functor may name its base category either
inline or as a path, resolved relative to the referencing file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping, Optional

from .errors import MalformedInput
from .fincat import FinCategory, FinFunctor, _label, check_functor, stringify, validate_category
from .presheaf import Presheaf
from .ringmod import FinModule, FinRing, check_module, check_ring
from .setcalc import FinSet, SetDiagram, check_diagram


def load_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: not valid JSON ({exc})") from exc


def dump_json(obj: Any, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _resolve(ref, base_dir: Optional[Path]):
    if isinstance(ref, str):
        p = Path(ref)
        if not p.is_absolute() and base_dir is not None:
            p = base_dir / p
        return load_json(p), p.parent
    return ref, base_dir


# -- categories and functors --------------------------------------------------------

def category_to_json(C: FinCategory) -> dict:
    S = stringify(C)
    return {
        "name": S.name,
        "objects": list(S.objects),
        "morphisms": [{"id": f, "src": a, "tgt": b} for f, (a, b) in S.morphisms.items()],
        "identities": dict(S.identities),
        "composition": [
            {"after": g, "before": f, "equals": h} for (g, f), h in S.composition.items()
        ],
    }


def category_from_json(raw, base_dir=None) -> FinCategory:
    raw, _ = _resolve(raw, base_dir)
    if not isinstance(raw, Mapping):
        raise MalformedInput("category description must be an object")
    return validate_category(raw)


def functor_to_json(H: FinFunctor) -> dict:
    return {
        "name": H.name,
        "source": category_to_json(H.source),
        "target": category_to_json(H.target),
        "on_objects": {_label(a): _label(b) for a, b in H.on_objects.items()},
        "on_morphisms": {_label(f): _label(g) for f, g in H.on_morphisms.items()},
    }


def functor_from_json(raw, base_dir=None) -> FinFunctor:
    raw, base_dir = _resolve(raw, base_dir)
    try:
        D = category_from_json(raw["source"], base_dir)
        E = category_from_json(raw["target"], base_dir)
        H = FinFunctor(D, E, dict(raw["on_objects"]), dict(raw["on_morphisms"]), raw.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"malformed functor description: {exc!r}") from exc
    return check_functor(H)


# -- presheaves and diagrams ----------------------------------------------------------

def presheaf_to_json(M: Presheaf) -> dict:
    C = M.base
    return {
        "name": M.name,
        "base": category_to_json(C),
        "sets": {_label(c): [_label(x) for x in M.sets[c]] for c in C.objects},
        "action": {
            _label(f): {_label(y): _label(x) for y, x in M.action[f].items()}
            for f in C.morphisms
            if not C.is_identity(f)
        },
    }


def presheaf_from_json(
    raw, base_dir=None, base: Optional[FinCategory] = None, strict: bool = True
) -> Presheaf:
    """With ``strict=False`` functoriality is not checked on load (used to
    feed deliberately broken fixtures to the harness)."""
    raw, base_dir = _resolve(raw, base_dir)
    try:
        C = base if base is not None else category_from_json(raw["base"], base_dir)
        if strict:
            return Presheaf.build(C, raw["sets"], raw.get("action", {}), raw.get("name", ""))
        sets = {c: FinSet(tuple(raw["sets"].get(c, ()))) for c in C.objects}
        action = {
            f: dict(raw.get("action", {}).get(f, {x: x for x in sets[a]} if C.is_identity(f) else {}))
            for f, (a, _) in C.morphisms.items()
        }
        return Presheaf(C, sets, action, raw.get("name", ""))
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedInput(f"malformed presheaf description: {exc!r}") from exc


def diagram_to_json(D: SetDiagram) -> dict:
    S = D.shape
    return {
        "name": D.name,
        "shape": category_to_json(S),
        "sets": {_label(s): [_label(x) for x in D.sets[s]] for s in S.objects},
        "maps": {
            _label(f): {_label(x): _label(y) for x, y in D.maps[f].items()} for f in S.morphisms
        },
    }


def diagram_from_json(raw, base_dir=None) -> SetDiagram:
    raw, base_dir = _resolve(raw, base_dir)
    try:
        S = category_from_json(raw["shape"], base_dir)
        sets = {s: FinSet(tuple(raw["sets"][s])) for s in S.objects}
        maps = {}
        for f, (a, _) in S.morphisms.items():
            if f in raw.get("maps", {}):
                maps[f] = dict(raw["maps"][f])
            elif S.is_identity(f):
                maps[f] = {x: x for x in sets[a]}
            else:
                raise MalformedInput(f"no map for shape morphism {f!r}")
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedInput(f"malformed diagram description: {exc!r}") from exc
    return check_diagram(SetDiagram(S, sets, maps, raw.get("name", "")))


# -- rings and modules ----------------------------------------------------------------

def ring_to_json(R: FinRing) -> dict:
    return {
        "name": R.name,
        "labels": list(R.labels),
        "add": [list(r) for r in R.add],
        "mul": [list(r) for r in R.mul],
        "zero": R.zero,
        "one": R.one,
    }


def ring_from_json(raw, base_dir=None) -> FinRing:
    raw, _ = _resolve(raw, base_dir)
    try:
        R = FinRing(
            tuple(raw["labels"]),
            tuple(tuple(r) for r in raw["add"]),
            tuple(tuple(r) for r in raw["mul"]),
            int(raw["zero"]),
            int(raw["one"]),
            raw.get("name", ""),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"malformed ring description: {exc!r}") from exc
    return check_ring(R)


def module_to_json(M: FinModule) -> dict:
    return {
        "name": M.name,
        "ring": ring_to_json(M.ring),
        "labels": list(M.labels),
        "add": [list(r) for r in M.add],
        "act": [list(r) for r in M.act],
        "zero": M.zero,
    }


def module_from_json(raw, base_dir=None) -> FinModule:
    raw, base_dir = _resolve(raw, base_dir)
    try:
        R = ring_from_json(raw["ring"], base_dir)
        M = FinModule(
            R,
            tuple(raw["labels"]),
            tuple(tuple(r) for r in raw["add"]),
            tuple(tuple(r) for r in raw["act"]),
            int(raw["zero"]),
            raw.get("name", ""),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"malformed module description: {exc!r}") from exc
    return check_module(M)


# -- counterexamples --------------------------------------------------------------------

_LOADERS = {
    "category": category_from_json,
    "functor": functor_from_json,
    "presheaf": presheaf_from_json,
    "diagram": diagram_from_json,
    "module": module_from_json,
}

_DUMPERS = {
    "category": category_to_json,
    "functor": functor_to_json,
    "presheaf": presheaf_to_json,
    "diagram": diagram_to_json,
    "module": module_to_json,
}


def witness_to_json(kind: str, obj, **extra) -> dict:
    """Serialized object tagged with its kind; extra keys travel along."""
    if kind not in _DUMPERS:
        raise MalformedInput(f"unknown witness kind {kind!r}")
    return {"kind": kind, "data": _DUMPERS[kind](obj), **extra}


def witness_from_json(raw, base_dir=None):
    raw, base_dir = _resolve(raw, base_dir)
    try:
        kind = raw["kind"]
        loader = _LOADERS[kind]
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"malformed witness: {exc!r}") from exc
    return kind, loader(raw["data"], base_dir)
