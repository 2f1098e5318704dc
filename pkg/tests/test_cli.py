import json
import subprocess
import sys

import pytest

from polycacti.cli import run
from polycacti.constructions import star_cactus
from polycacti.graph import parse_graph
from polycacti.indices import IndexParams, general_sombor


@pytest.fixture
def c3(tmp_path):
    path = tmp_path / "c3.edges"
    path.write_text("0 1\n1 2\n2 0\n")
    return path


def out_of(capsys, argv, code=0):
    assert run(argv) == code
    return capsys.readouterr()


def test_compute_named(c3, capsys):
    assert out_of(capsys, ["compute", "--index", "sombor", "--graph", str(c3)]).out.strip() == "8.48528137"


def test_compute_default_is_sombor(c3, capsys):
    assert out_of(capsys, ["compute", "--graph", str(c3)]).out.strip() == "8.48528137"


def test_compute_json_bit_exact(tmp_path, capsys):
    path = tmp_path / "s.edges"
    assert run(["generate", "star", "--n", "3", "--k", "3", "--out", str(path)]) == 0
    res = out_of(capsys, ["compute", "--alpha", "2", "--beta", "0.5", "--graph", str(path), "--format", "json"])
    value = json.loads(res.out)["value"]
    assert value == general_sombor(parse_graph(path.read_text()), IndexParams(2, 0.5))
    assert value == pytest.approx(46.4326132, abs=1e-6)


def test_compute_conflicting_flags(c3, capsys):
    res = out_of(capsys, ["compute", "--index", "sombor", "--alpha", "1", "--graph", str(c3)], code=1)
    assert "error" in res.err


def test_compute_missing_file(tmp_path, capsys):
    res = out_of(capsys, ["compute", "--graph", str(tmp_path / "nope")], code=1)
    assert res.err.startswith("error:")


def test_compute_bad_graph(tmp_path, capsys):
    path = tmp_path / "bad.edges"
    path.write_text("0 1\n0 1\n")
    assert "duplicate" in out_of(capsys, ["compute", "--graph", str(path)], code=1).err


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        run(["compute"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


@pytest.mark.parametrize("family", ["star", "chain_adjacent", "chain_nonadjacent", "nice_saturated"])
def test_generate_stdout(family, capsys):
    text = out_of(capsys, ["generate", family, "--n", "4", "--k", "5"]).out
    g = parse_graph(text)
    assert g.vertex_count == 4 * 5 - 4 + 1 and len(g.edges) == 20


def test_generate_matches_library(capsys):
    text = out_of(capsys, ["generate", "star", "--n", "3", "--k", "4"]).out
    assert parse_graph(text) == star_cactus(3, 4).graph


def test_generate_domain_error(capsys):
    assert "k = 3" in out_of(capsys, ["generate", "chain_nonadjacent", "--n", "3", "--k", "3"], code=1).err


def test_count(capsys):
    assert out_of(capsys, ["count", "--n", "3", "--k", "4", "--threads", "1"]).out.strip() == "3"


def test_enumerate_stdout(capsys):
    lines = out_of(capsys, ["enumerate", "--n", "4", "--k", "3", "--threads", "1"]).out.splitlines()
    assert len(lines) == 4 and lines == sorted(lines)


def test_enumerate_dir(tmp_path, capsys):
    out = tmp_path / "classes"
    assert run(["enumerate", "--n", "4", "--k", "4", "--out", str(out), "--limit", "5", "--threads", "1"]) == 0
    files = sorted(out.glob("*.edges"))
    assert len(files) == 5
    for f in files:
        g = parse_graph(f.read_text())
        assert g.vertex_count == 13


def test_enumerate_budget(monkeypatch, capsys):
    monkeypatch.setenv("SOMBOR_BUDGET", "2")
    assert "SOMBOR_BUDGET" in out_of(capsys, ["count", "--n", "4", "--k", "4"], code=1).err


def test_verify_text(capsys):
    text = out_of(capsys, ["verify", "thm_3_1", "--n", "3", "--k", "3", "--alpha", "2", "--beta", "0.5"]).out
    fields = dict(line.split(": ", 1) for line in text.splitlines())
    assert fields["match"] == "true"
    assert float(fields["gap"]) < 1e-9
    assert fields["num_extremal"] == "1"


def test_verify_csv_and_json(tmp_path, capsys):
    csv_path = tmp_path / "r.csv"
    res = out_of(
        capsys,
        ["verify", "cor_4_1", "--n", "3", "--k", "4", "--alpha", "1", "--beta", "2",
         "--csv", str(csv_path), "--format", "json", "--threads", "1"],
    )
    (rep,) = json.loads(res.out)
    assert rep["empirical_extremum"] == 352 and rep["characterization_match"]
    header, row = csv_path.read_text().splitlines()
    assert header == "theorem,n,k,alpha,beta,empirical,bound,gap,num_extremal,match,classes_checked"
    assert row.split(",")[0:3] == ["cor_4_1", "3", "4"]


def test_verify_thm_2_1_ignores_default_beta(capsys):
    text = out_of(capsys, ["verify", "thm_2_1", "--n", "3", "--k", "3", "--alpha", "3"]).out
    assert "match: true" in text


def test_verify_out_of_range(capsys):
    res = out_of(capsys, ["verify", "thm_2_1", "--n", "3", "--k", "3", "--alpha", "0.5"], code=1)
    assert "not covered" in res.err


def test_verify_explore(capsys):
    text = out_of(capsys, ["verify", "thm_2_1", "--n", "3", "--k", "3", "--alpha", "0.5", "--explore"]).out
    assert "EXTRAPOLATION" in text


def test_table_verify(capsys):
    text = out_of(capsys, ["table", "min_alpha", "--n", "3..5", "--k", "3..4", "--alpha", "2", "--verify"]).out
    rows = text.splitlines()
    assert len(rows) == 7
    header = rows[0].split(",")
    for row in rows[1:]:
        rec = dict(zip(header, row.split(",")))
        assert float(rec["gap"]) < 1e-9 * float(rec["bound"])
        assert rec["match"] == "true"


def test_table_bounds_only(capsys):
    text = out_of(capsys, ["table", "max_general", "--n", "3..4", "--k", "3", "--alpha", "1", "--beta", "2"]).out
    assert text.splitlines() == ["n,k,alpha,beta,bound", "3,3,1,2,432", "4,3,1,2,864"]


def test_table_deterministic(tmp_path, capsys):
    argv = ["table", "min_general", "--n", "3..4", "--k", "3..5", "--alpha", "2", "--beta", "1.5", "--verify"]
    a = out_of(capsys, argv).out
    b = out_of(capsys, argv).out
    assert a == b
    path = tmp_path / "t.csv"
    assert run(argv + ["--out", str(path)]) == 0
    assert path.read_text() == a


def test_table_bad_range():
    with pytest.raises(SystemExit):
        run(["table", "max_general", "--n", "5..3", "--k", "3"])


def test_module_entry_point(c3):
    res = subprocess.run(
        [sys.executable, "-m", "polycacti", "compute", "--index", "first_zagreb", "--graph", str(c3)],
        capture_output=True, text=True, check=True,
    )
    assert res.stdout.strip() == "12"
