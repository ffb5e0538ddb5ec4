import json
from pathlib import Path

import pytest

from flatcauchy.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(["--format", "json", *map(str, argv)])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith(("{", "[")) else out)


def test_validate_guesses_kind(capsys):
    for name, kind in [
        ("idem.json", "category"),
        ("idem_singleton.json", "presheaf"),
        ("idem_to_kar.json", "functor"),
        ("z2_over_z6.json", "module"),
    ]:
        code, out = run(capsys, "validate", DATA / name)
        assert code == 0 and out["kind"] == kind and out["valid"]


def test_relative_paths(capsys, monkeypatch):
    monkeypatch.chdir(DATA.parent)
    code, out = run(capsys, "flat", "data/idem_singleton.json")
    assert code == 0 and out["flat_elements"] and out["flat_limits"]


def test_presheaf_commands(capsys):
    code, out = run(capsys, "cauchy", DATA / "arrow_rep1.json")
    assert code == 0 and out["cauchy"] and out["representable_at"] == "1"
    code, out = run(capsys, "elements", DATA / "idem_singleton.json")
    assert code == 0 and out["objects"] == 1 and out["morphisms"] == 2


def test_category_commands(capsys):
    code, out = run(capsys, "filtered", DATA / "idem.json")
    assert code == 0 and out["filtered"]
    code, out = run(capsys, "karoubi", DATA / "idem.json")
    assert code == 0 and not out["cauchy_complete"] and out["envelope_objects"] == 2
    code, out = run(capsys, "smallacc", DATA / "idem.json", "--bound", 2)
    assert code == 0 and out["holds"] and out["witness"] == [1]


def test_kan(capsys):
    code, out = run(capsys, "kan", DATA / "idem_to_kar.json", DATA / "idem_singleton.json")
    assert code == 0 and out["flat_after"] and set(out["sizes"].values()) == {1}


def test_dualizable(capsys):
    code, out = run(capsys, "dualizable", DATA / "z2_over_z6.json")
    assert code == 0 and out["dualizable"] and out["triangles_verified"]
    code, out = run(capsys, "dualizable", DATA / "z2_over_z4.json")
    assert code == 0 and not out["dualizable"] and "obstruction" in out


def test_boolmonad(capsys):
    code, out = run(capsys, "boolmonad", "--atoms", 2, "--size", 3)
    assert code == 0 and out["laws_hold"] and out["cardinality"] == 9


def test_verify_and_replay(capsys, tmp_path):
    code, _ = run(capsys, "verify", "boolmonad-laws", "--config", DATA / "small_config.json")
    assert code == 0
    code, _ = run(
        capsys, "verify", "flat-char-equivalence",
        "--fixture", DATA / "corrupted_fixture.json", "--out", tmp_path,
    )
    assert code == 1
    (ce,) = sorted(tmp_path.glob("*.json"))
    code, _ = run(capsys, "replay", ce)
    assert code == 1  # the counterexample still reproduces


def test_text_format(capsys):
    assert main(["filtered", str(DATA / "arrow.json")]) == 0
    assert "filtered: True" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["flat", "/nonexistent.json"],
        ["validate", str(DATA / "corrupted_fixture.json"), "--kind", "category"],
        ["flat", str(DATA / "idem.json")],
    ],
)
def test_invalid_input_exit_code(capsys, argv):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_budget_exit_code(capsys, tmp_path):
    cfg = tmp_path / "zero.json"
    cfg.write_text(json.dumps({"presheaf_budget": 0}))
    assert main(["verify", "smallacc", "--config", str(cfg)]) == 3
    assert main(["smallacc", str(DATA / "idem.json"), "--bound", "3", "--case-budget", "2"]) == 3
