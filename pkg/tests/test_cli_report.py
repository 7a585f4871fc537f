import json

import numpy as np
import pytest

import artifact.cli as cli
import artifact.report as report_mod
from artifact.cases import build_manifest
from artifact.cli import main, parse_phis, read_basis_file
from artifact.report import emit_report, report_dict, run_classification

from conftest import SPACES, manifest, report

ACTION_IDS = {
    "sl3h": ["1", "2.i=1", "3", "4", "5.k=0", "5.k=1", "5.k=2", "5.k=3"],
    "so5c": ["1", "2.i=1", "2.i=2", "3", "4.j=1", "4.j=2", "5.j=1", "5.j=2"],
    "su:n=1": ["1", "2.i=1", "2.i=2", "3", "4", "6.k=0", "6.k=1",
               "7.phi=0.k=2", "7.phi=0.k=4", "7.phi=pi/2.k=2"],
    "su:n=2": ["1", "2.i=1", "2.i=2", "3", "4", "5", "6.k=0", "6.k=1",
               "7.phi=0.k=2", "7.phi=0.k=4", "7.phi=0.k=6", "7.phi=pi/2.k=2", "7.phi=pi/2.k=3",
               "7.phi=pi/6.k=2", "7.phi=pi/4.k=2", "7.phi=pi/3.k=2"],
}


def test_parse_phis():
    assert np.allclose(parse_phis("pi/6, 2pi/5,0.9,pi"), [np.pi / 6, 2 * np.pi / 5, 0.9, np.pi])
    with pytest.raises(ValueError):
        parse_phis("pi/x")


def test_read_basis_file(tmp_path):
    f = tmp_path / "basis.txt"
    f.write_text(
        "# two quaternion matrices and a complex one\n"
        "H 2x2 0,0,0,0 0,0,1,0 0,0,0,0 0,0,0,0\n"
        "\n"
        "C 1x2 1+2i 3j\n"
        "R 1x1 5\n"
    )
    mats = read_basis_file(str(f))
    assert [m.ring for m in mats] == ["H", "C", "R"]
    assert np.allclose(mats[0].data[0, 1], [0, 0, 1, 0])
    assert mats[1].data[0, 0] == 1 + 2j and mats[1].data[0, 1] == 3j
    assert mats[2].data[0, 0] == 5.0


@pytest.mark.parametrize("text", ["", "X 1x1 1\n", "R 2x2 1 2 3\n", "H 1x1 1,2\n"])
def test_read_basis_file_errors(tmp_path, text):
    f = tmp_path / "bad.txt"
    f.write_text(text)
    with pytest.raises(ValueError):
        read_basis_file(str(f))


@pytest.mark.parametrize("spec", SPACES)
def test_coverage_against_manifest(spec):
    man = manifest(spec)
    rep = report(spec)
    ids = [a.id for a in rep.actions]
    assert ids == ACTION_IDS[spec]
    assert len(set(ids)) == len(ids)
    cand_ids = [c.case.id for c in rep.candidates]
    assert cand_ids == [c.id for c in man.candidates]
    assert len(set(cand_ids)) == len(cand_ids)


@pytest.mark.parametrize("spec", SPACES)
def test_reports_are_clean(spec):
    rep = report(spec)
    s = rep.summary
    assert rep.ok, rep.mismatches
    assert s["new_actions_from_nilpotent_construction"] == 0
    assert s["actions_verified"] == s["actions"]
    assert s["matched"] == s["admissible_and_protohomogeneous"] > 0


def test_json_schema():
    data = json.loads(emit_report(report("so5c"), "json"))
    assert {"space", "root_system", "actions", "candidates", "summary"} <= set(data)
    assert data["summary"]["new_actions_from_nilpotent_construction"] == 0
    assert data["root_system"]["type"] == "B2"
    for a in data["actions"]:
        assert {"id", "family", "params", "singular_codim", "checks"} <= set(a)
    for c in data["candidates"]:
        assert {"id", "verdict", "matched_action", "expected"} <= set(c)


def test_markdown_rendering():
    md = emit_report(report("sl3h"), "md")
    assert md.startswith("# Cohomogeneity-one classification: sl3h")
    assert "| case1.phi=0 | 2 |" in md
    assert "- new actions from the nilpotent construction: 0" in md
    with pytest.raises(ValueError):
        emit_report(report("sl3h"), "html")


def test_determinism():
    a = emit_report(run_classification("so5c", seed=3), "json")
    b = emit_report(run_classification("so5c", seed=3), "json")
    assert a == b
    c = emit_report(run_classification("so5c", seed=3), "md")
    assert c == emit_report(run_classification("so5c", seed=3), "md")


def test_empty_candidate_list(monkeypatch):
    def no_candidates(spec, phis, seed):
        man = build_manifest(spec, phis, seed)
        man.candidates = []
        return man

    monkeypatch.setattr(report_mod, "build_manifest", no_candidates)
    rep = run_classification("sl3h")
    assert rep.summary["candidates"] == 0
    assert rep.summary["new_actions_from_nilpotent_construction"] == 0
    assert report_dict(rep)["candidates"] == []


def test_cli_roots_and_parabolic(capsys):
    assert main(["roots", "--space", "su:n=1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["type"] == "BC2" and out["dim_p"] == 12
    assert out["roots"]["2a1+2a2"] == 1
    assert main(["parabolic", "--space", "sl3h", "--j", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["dims"]["gtilde_j"] == 15 and out["centralizer_chain"] is True


def test_cli_classify(tmp_path, capsys):
    dest = tmp_path / "so5c.md"
    assert main(["classify", "--space", "so5c", "--format", "md", "--out", str(dest)]) == 0
    assert "## Summary" in dest.read_text()
    assert main(["classify", "--space", "so5c", "--phi", "pi/5"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["phi_samples"] == ["0.628319"]


def test_cli_classify_exit_code_on_mismatch(monkeypatch):
    real = cli.run_classification

    def broken(spec, phis, seed):
        rep = real(spec, phis, seed)
        rep.summary["mismatches"] = ["synthetic"]
        return rep

    monkeypatch.setattr(cli, "run_classification", broken)
    assert main(["classify", "--space", "so5c"]) == 1


def test_cli_check_named_case(capsys):
    assert main(["check", "--space", "sl3h", "--subspace", "case1.phi=0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["admissible"] and out["protohomogeneous"]
    assert out["matched_action"] == "5.k=3"
    assert main(["check", "--space", "sl3h", "--subspace", "no-such-case"]) == 2
    assert main(["check", "--space", "sl3h", "--j", "1", "--subspace", "case1.phi=0"]) == 2


def test_cli_check_basis_file(tmp_path, capsys):
    f = tmp_path / "cj.txt"
    # C j E23 of sl(3, H) as a real 2-plane
    zero = "0,0,0,0"
    rows = []
    for q in ("0,0,1,0", "0,0,0,1"):
        entries = [zero] * 9
        entries[5] = q
        rows.append("H 3x3 " + " ".join(entries))
    f.write_text("\n".join(rows) + "\n")
    assert main(["check", "--space", "sl3h", "--j", "2", "--subspace", str(f)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["admissible"] and out["protohomogeneous"] and out["dim"] == 2
    assert main(["check", "--space", "sl3h", "--subspace", str(f)]) == 2
    assert main(["check", "--space", "sl3h", "--j", "1", "--subspace", str(f)]) == 2
