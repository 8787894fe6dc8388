"""Command-line interface: summaries, outputs, exit codes, determinism."""

import json

import pytest
from click.testing import CliRunner

from tilegraphs.cli import main

from conftest import SIGMA1_TEXT, SIGMA2_TEXT

TWINDRAGON_JSON = '{"M": [[1, -1], [1, 1]], "D": [[0, 0], [1, 0]]}'
REDUCIBLE_TEXT = "1 -> 12\n2 -> 12\n"


@pytest.fixture()
def runner():
    return CliRunner()


def _invoke(runner, args):
    return runner.invoke(main, args, catch_exceptions=False)


def _all_output(result):
    try:
        return result.output + result.stderr
    except ValueError:
        return result.output


def test_tile_neighbors_with_oracle(runner, tmp_path):
    tile = tmp_path / "tile.json"
    tile.write_text(TWINDRAGON_JSON)
    r = _invoke(runner, ["tile", "neighbors", str(tile), "--oracle", "--out", str(tmp_path)])
    assert r.exit_code == 0
    assert "S: 6 nodes; fixpoint after 2 iterations" in r.output
    assert "oracle: verified equal" in r.output
    assert (tmp_path / "neighbors.json").exists()
    assert (tmp_path / "neighbors_report.json").exists()


def test_tile_contact_dot(runner, tmp_path):
    tile = tmp_path / "tile.json"
    tile.write_text(TWINDRAGON_JSON)
    r = _invoke(runner, ["tile", "contact", str(tile), "--format", "dot", "--out", str(tmp_path)])
    assert r.exit_code == 0
    assert (tmp_path / "contact.dot").read_text().startswith("digraph")


def test_tile_invalid_input(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"M": [[2,0],[0,2]], "D": [[0,0]]}')
    r = _invoke(runner, ["tile", "contact", str(bad)])
    assert r.exit_code == 2


def test_tile_render_cap_exceeded(runner, tmp_path):
    tile = tmp_path / "tile.json"
    tile.write_text(TWINDRAGON_JSON)
    r = _invoke(runner, [
        "tile", "render", str(tile), "--level", "30", "--max-cells", "10",
        "--out", str(tmp_path),
    ])
    assert r.exit_code == 3


def test_subst_check_sigma1(runner, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text(SIGMA1_TEXT)
    r = _invoke(runner, ["subst", "check", str(f)])
    assert r.exit_code == 0
    assert "[-1, -2, -3, 1]" in r.output


def test_subst_check_reducible(runner, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text(REDUCIBLE_TEXT)
    r = _invoke(runner, ["subst", "check", str(f)])
    assert r.exit_code == 2
    assert "reducible characteristic polynomial" in _all_output(r)


def test_subst_contact_sigma2_summary(runner, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text(SIGMA2_TEXT)
    r = _invoke(runner, ["subst", "contact", str(f), "--out", str(tmp_path)])
    assert r.exit_code == 0
    assert "G_C: 15 nodes" in r.output
    assert (tmp_path / "contact.json").exists()
    assert (tmp_path / "contact_simple.json").exists()


def test_subst_neighbors_sigma1_summary(runner, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text(SIGMA1_TEXT)
    r = _invoke(runner, ["subst", "neighbors", str(f), "--out", str(tmp_path)])
    assert r.exit_code == 0
    assert "G_B: 14 nodes (simple: 26)" in r.output
    assert "G_B = G_C: true" in r.output
    report = json.loads((tmp_path / "neighbors_report.json").read_text())
    assert report["fixpoint"] is True


def test_subst_neighbors_iteration_cap(runner, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text(SIGMA2_TEXT)
    r = _invoke(runner, ["subst", "neighbors", str(f), "--max-iter", "2", "--out", str(tmp_path)])
    assert r.exit_code == 3


def test_subst_psgraph(runner, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text(SIGMA1_TEXT)
    r = _invoke(runner, ["subst", "psgraph", str(f), "--out", str(tmp_path)])
    assert r.exit_code == 0
    assert "psgraph: 8 edges" in r.output


def test_subst_render_and_stepped(runner, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text(SIGMA1_TEXT)
    r = _invoke(runner, [
        "subst", "render", str(f), "--letter", "1", "--level", "2", "--out", str(tmp_path)
    ])
    assert r.exit_code == 0
    assert (tmp_path / "subtile_1_n2.svg").exists()
    assert (tmp_path / "subtile_1_n2.csv").exists()
    r2 = _invoke(runner, ["subst", "stepped", str(f), "--radius", "1", "--out", str(tmp_path)])
    assert r2.exit_code == 0
    assert (tmp_path / "stepped_r1.svg").exists()


def test_cli_determinism(runner, tmp_path):
    """Re-running the same command produces bitwise-identical files."""
    f = tmp_path / "s.txt"
    f.write_text(SIGMA1_TEXT)
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    for out in (out1, out2):
        r = _invoke(runner, ["subst", "contact", str(f), "--out", str(out)])
        assert r.exit_code == 0
        r = _invoke(runner, ["subst", "stepped", str(f), "--radius", "1", "--out", str(out)])
        assert r.exit_code == 0
    for name in ("contact.json", "contact_simple.json", "stepped_r1.svg", "stepped_r1.faces.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name
