import io
import subprocess
import sys

import pytest

from orbitspace.cli import run_command
from orbitspace.report import parse_report


def run(args):
    out = io.StringIO()
    code = run_command(args, stdout=out)
    return code, out.getvalue()


def test_classify_aabb(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, text = run(["classify", "aabb"])
    assert code == 0
    rep = parse_report(text)
    assert rep["linking.verdict"] == "Witness"
    assert rep["lozenge.verdict"] == "NonSimple"
    assert int(rep["oracle.crossings_lower_bound"]) >= 1


def test_classify_simple_word_is_inconclusive():
    code, text = run(["classify", "ab", "--depth", "6"])
    assert code == 2
    assert parse_report(text)["linking.verdict"] == "NoneUpTo(6)"


def test_unknown_generator_exit_code():
    code, text = run(["classify", "xyz"])
    assert code == 4
    assert "UnknownGenerator" in parse_report(text)["error"]


def test_parabolic_word_exit_code():
    assert run(["classify", "abAB"])[0] == 4


def test_bad_config_exit_code(tmp_path):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("group:\n  generators:\n    - [0.9, 0, 0, 1]\n")
    assert run(["classify", "ab", "--config", str(cfg)])[0] == 4


def test_chain_render_deterministic(tmp_path):
    outs = []
    for name in ("one", "two"):
        d = tmp_path / name
        code, text = run(["chain", "ab", "--n", "4", "--render", "--out", str(d)])
        assert code == 0
        outs.append(
            (text, (d / "chain-ab.svg").read_bytes(), (d / "chain-ab.csv").read_bytes(), (d / "chain-ab.report").read_text())
        )
    assert outs[0] == outs[1]
    svg = outs[0][1].decode()
    assert svg.count('class="lozenge"') == 4
    assert parse_report(outs[0][0])["chain.sides_disjoint"] == "true"


def test_annulus_commands():
    code, text = run(["annulus", "ab"])
    assert code == 0 and parse_report(text)["arcs.count"] == "0"
    code, text = run(["annulus", "aabb", "--depth", "6"])
    rep = parse_report(text)
    assert rep["claim.holds"] == "true"
    assert code == 2 and rep["certificate"] == "refused"


def test_cocyl_and_info():
    code, text = run(["cocyl", "aabb", "--depth", "6", "--partner-range", "2"])
    assert code == 0 and parse_report(text)["cardinality_shift"] == "true"
    code, text = run(["info", "--group", "octagon-genus2", "--depth", "2"])
    assert code == 0 and parse_report(text)["group.rank"] == "4"


def test_timings_only_on_request():
    assert "timing.seconds" not in run(["chain", "ab"])[1]
    assert "timing.seconds" in run(["chain", "ab", "--timings"])[1]


def test_disk_cache_via_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("ORBITSPACE_CACHE_DIR", str(tmp_path))
    first = run(["classify", "aabb", "--depth", "5"])
    assert list(tmp_path.glob("*.npz"))
    assert run(["classify", "aabb", "--depth", "5"]) == first


@pytest.mark.slow
def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "orbitspace.cli", "classify", "xyz"], capture_output=True, text=True, cwd=tmp_path
    )
    assert proc.returncode == 4
