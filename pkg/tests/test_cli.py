import json

import pytest
from click.testing import CliRunner

from tilting_atlas.cli import main


def run(*args, env=None):
    r = CliRunner().invoke(main, list(args), env=env)
    return r


def payload(r):
    return json.loads(r.stdout)


def test_braid_nf():
    r = run("braid-nf", "--type", "A2", "b1 b2 b1 b2")
    assert r.exit_code == 0
    out = payload(r)
    assert out["command"] == "braid-nf" and out["config"] == {"type": "A2"}
    assert out["braid-nf"]["normal_form"] == "D^1 | s2"
    assert run("braid-nf", "--type", "A2", "b7").exit_code == 2


def test_explore(tmp_path):
    r = run("explore", "--quiver", "A1", "--N", "3", "--depth", "4")
    assert r.exit_code == 0
    out = payload(r)["explore"]
    assert out["size"] == 5 and out["is_chain"]
    dot = tmp_path / "w.dot"
    r = run("explore", "--quiver", "A2", "--N", "3", "--depth", "6", "--dot", str(dot))
    assert r.exit_code == 0 and "tilt:" in dot.read_text()


def test_invalid_quiver():
    assert run("explore", "--quiver", "X9").exit_code == 2
    assert run("explore", "--quiver", "A2", "--N", "1").exit_code == 2


def test_clusters(tmp_path):
    out = payload(run("clusters", "--quiver", "A2", "--N", "3", "--count"))["clusters"]
    assert out == {"count": 5, "exhaustive_count": 5, "agree": True, "h1": "Z"}
    assert payload(run("clusters", "--quiver", "A2", "--N", "4", "--count"))["clusters"]["count"] == 12
    assert payload(run("clusters", "--quiver", "A2", "--N", "2"))["clusters"]["skipped"]
    dot = tmp_path / "g.dot"
    assert run("clusters", "--quiver", "A2", "--N", "3", "--export", str(dot)).exit_code == 0
    assert dot.read_text().strip().endswith("}")


def test_homology_deterministic():
    args = ("homology", "--cone-samples", "6", "--quiver", "A2", "--N", "3", "--seed", "4")
    a, b = run(*args), run(*args)
    assert a.exit_code == 0 and a.stdout == b.stdout
    assert payload(a)["homology"]["all_reduced_betti_zero"]


def test_garside_and_strata(tmp_path):
    out = payload(run("garside", "--quiver", "A2", "--N", "3", "--samples", "5"))["garside"]
    assert out["passed"]
    assert run("garside", "--quiver", "A2", "--N", "2").exit_code == 2
    csv = tmp_path / "s.csv"
    r = run("strata", "--quiver", "A2", "--N", "3", "--depth", "1", "--csv", str(csv))
    out = payload(r)["strata"]
    assert out["pure"] == out["nodes"] and out["failures"] == []
    assert out["embed_in_boolean"] == out["intervals"]
    assert csv.read_text().startswith("braid,heart,I,codim")


def test_budget_exit_code():
    r = run("clusters", "--quiver", "A4", "--N", "3", env={"TILTING_ATLAS_BUDGET": "5"})
    assert r.exit_code == 3


def test_bad_budget_env():
    r = run("explore", "--quiver", "D5", "--N", "3", "--depth", "1", env={"TILTING_ATLAS_BUDGET": "-4"})
    assert r.exit_code == 2
