"""Command-line interface: reports, exit codes, file round trips."""

import json

import pytest

from flatdeck.cli import main
from flatdeck.corpus import s1_surface, torus_surface
from flatdeck.deform import surfaces_isomorphic
from flatdeck.surface import load_surface, save_surface


@pytest.fixture()
def s1_file(tmp_path):
    path = tmp_path / "s1.surf"
    save_surface(s1_surface(), path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_validate(capsys, s1_file):
    code, rep = run(capsys, "validate", s1_file)
    assert code == 0
    assert rep["result"]["status"] == "valid"


def test_validate_bad_surface(capsys, tmp_path):
    path = tmp_path / "bad.surf"
    obj = {
        "format": "flatdeck-surface/1",
        "field": {"d": 1},
        "polygons": [
            [
                [{"a": "1"}, {"a": "0"}],
                [{"a": "0"}, {"a": "1"}],
                [{"a": "-1"}, {"a": "0"}],
                [{"a": "0"}, {"a": "-1"}],
            ]
        ],
        "gluings": [[[0, 0], [0, 1]], [[0, 2], [0, 3]]],
    }
    path.write_text(json.dumps(obj))
    code, rep = run(capsys, "validate", str(path))
    assert code == 1
    assert rep["result"]["status"] == "invalid"
    assert any(i["code"] == "non-translation gluing" for i in rep["result"]["issues"])


def test_info(capsys, s1_file):
    code, rep = run(capsys, "info", s1_file)
    assert code == 0
    res = rep["result"]
    assert res["stratum"] == [4]
    assert res["genus"] == 3
    assert res["area"] == "5"
    assert res["period_rank"] == 6


def test_decompose_horizontal(capsys, s1_file):
    code, rep = run(capsys, "decompose", s1_file, "--dir", "1,0")
    assert code == 0
    res = rep["result"]
    assert res["status"] == "periodic"
    assert len(res["cylinders"]) == 1
    assert res["cylinders"][0]["width"] == "5"
    assert res["cylinders"][0]["height"] == "1"
    assert len(res["saddle_connections"]) == 5


def test_decompose_inconclusive_exit_code(capsys, s1_file):
    code, rep = run(capsys, "decompose", s1_file, "--dir", "1,1", "--budget", "1/2")
    assert code == 2
    assert rep["result"]["status"] == "inconclusive"


def test_classify_vertical(capsys, s1_file):
    code, rep = run(capsys, "classify", s1_file, "--dir", "0,1")
    assert code == 0
    assert rep["result"]["model"] == "ThreeCyl_I"
    assert rep["result"]["involution"]["found"] is True


def test_classify_refuses_marked_points(capsys, tmp_path):
    path = tmp_path / "torus.surf"
    save_surface(torus_surface(), path)
    code, rep = run(capsys, "classify", str(path), "--dir", "1,0")
    assert code == 1
    assert rep["result"]["status"] == "refused"


def test_scan(capsys, s1_file):
    code, rep = run(capsys, "scan", s1_file, "--max-slope", "1")
    assert code == 0
    rows = rep["result"]["periodic_directions"]
    assert {tuple(r["direction"]) for r in rows} >= {(1, 0), (0, 1)}
    for r in rows:
        assert r["saddle_connections"] == 5
        assert r["cylinders"] <= 3


def test_scan_jobs_deterministic(capsys, s1_file):
    _code, rep1 = run(capsys, "scan", s1_file, "--max-slope", "2")
    _code, rep2 = run(capsys, "scan", s1_file, "--max-slope", "2", "--jobs", "3")
    assert rep1["result"] == rep2["result"]


def test_deform_roundtrip(capsys, s1_file, tmp_path):
    out = str(tmp_path / "out.surf")
    code, rep = run(
        capsys, "deform", s1_file, "--dir", "1,0", "--cyl", "0",
        "--shear", "0", "--stretch", "1", "-o", out,
    )
    assert code == 0
    assert surfaces_isomorphic(load_surface(out), s1_surface())


def test_deform_stretch_circumference(capsys, s1_file, tmp_path):
    out = str(tmp_path / "out.surf")
    # find the simple vertical cylinder index from a decompose report first
    _code, rep = run(capsys, "decompose", s1_file, "--dir", "0,1")
    simple = next(c["index"] for c in rep["result"]["cylinders"] if c["simple"])
    code, _rep = run(
        capsys, "deform", s1_file, "--dir", "0,1", "--cyl", str(simple),
        "--stretch", "2", "-o", out,
    )
    assert code == 0
    code, rep = run(capsys, "decompose", out, "--dir", "1,0")
    assert rep["result"]["cylinders"][0]["width"] == "6"


def test_homology(capsys, s1_file):
    code, rep = run(capsys, "homology", s1_file)
    assert code == 0
    assert rep["result"]["relative_rank"] == 6
    assert rep["result"]["absolute_rank"] == 6
    mat = rep["result"]["intersection_matrix"]
    assert all(mat[i][j] == -mat[j][i] for i in range(6) for j in range(6))


def test_portion(capsys, s1_file):
    _code, rep = run(capsys, "decompose", s1_file, "--dir", "0,1")
    simple = next(c["index"] for c in rep["result"]["cylinders"] if c["simple"])
    code, rep = run(
        capsys, "portion", s1_file, "--dir", "1,0", "--cyl", "0",
        "--against", "0,1", "--set", str(simple),
    )
    assert code == 0
    assert rep["result"]["portion"] == "1/5"


def test_corpus_emission(capsys, tmp_path):
    out = str(tmp_path / "g12.surf")
    code, rep = run(capsys, "corpus", "twelve-gon", "-o", out)
    assert code == 0
    s = load_surface(out)
    assert s.d == 3


def test_corpus_unknown(capsys, tmp_path):
    code, rep = run(capsys, "corpus", "nope", "-o", str(tmp_path / "x.surf"))
    assert code == 3


def test_render(capsys, s1_file, tmp_path):
    out = str(tmp_path / "s1.svg")
    code, _rep = run(capsys, "render", s1_file, "--dir", "1,0", "-o", out)
    assert code == 0
    svg = open(out).read()
    assert svg.startswith("<?xml")
    assert "<svg" in svg and "rect" in svg


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decompose"])
    assert exc.value.code == 3


def test_budget_env_var(capsys, s1_file, monkeypatch):
    monkeypatch.setenv("FLATDECK_BUDGET", "1/2")
    code, rep = run(capsys, "decompose", s1_file, "--dir", "1,1")
    assert code == 2
    assert rep["result"]["status"] == "inconclusive"


def test_reports_have_no_decimals(capsys, s1_file):
    _code, rep = run(capsys, "decompose", s1_file, "--dir", "2,1")
    text = json.dumps(rep["result"])
    assert "." not in text  # scalars are exact strings, never floats
