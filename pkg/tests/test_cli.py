import json
import math

import pytest

from torsionlab.cli import EXIT_INPUT, EXIT_OK, main
from torsionlab.torsion import torsion_rectangle_series


@pytest.fixture
def square_file(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(
        json.dumps({"kind": "polygon", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]})
    )
    return path


@pytest.fixture
def disk_file(tmp_path):
    path = tmp_path / "disk.json"
    path.write_text(json.dumps({"kind": "ellipsoid", "d": 2, "a": [1, 1]}))
    return path


def test_eval_disk_analytic(disk_file, capsys):
    assert main(["eval", str(disk_file)]) == EXIT_OK
    out = dict(line.split(",") for line in capsys.readouterr().out.strip().split("\n"))
    assert float(out["perimeter"]) == pytest.approx(2 * math.pi, rel=1e-9)
    assert float(out["torsion"]) == pytest.approx(math.pi / 8, rel=1e-12)
    assert float(out["volume"]) == pytest.approx(math.pi, rel=1e-12)
    assert float(out["f_q"]) == pytest.approx(math.sqrt(0.5), rel=1e-9)
    assert float(out["torsion_error"]) == 0.0


def test_eval_square_fd(square_file, tmp_path, capsys):
    out_file = tmp_path / "eval.csv"
    code = main(["eval", str(square_file), "--grid", str(1.0 / 32.0), "--out", str(out_file)])
    assert code == EXIT_OK
    out = dict(line.split(",") for line in capsys.readouterr().out.strip().split("\n"))
    assert float(out["torsion"]) == pytest.approx(torsion_rectangle_series(1, 1), rel=1e-3)
    assert float(out["alpha_q"]) == pytest.approx(1.5)
    assert out_file.exists()
    manifest = json.loads((tmp_path / "run_manifest.json").read_text())
    assert manifest["command"] == "eval"
    assert str(out_file) in manifest["outputs"]


def test_eval_missing_file(tmp_path):
    assert main(["eval", str(tmp_path / "nope.json")]) == EXIT_INPUT


def test_eval_invalid_shape(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "polygon", "vertices": [[0, 0], [1, 0]]}))
    assert main(["eval", str(bad)]) == EXIT_INPUT


def test_sweep_slab(tmp_path, capsys):
    out_file = tmp_path / "slab.csv"
    code = main(
        ["sweep", "slab", "--params", "0.01,0.005,0.0025", "--q", "1", "--out", str(out_file)]
    )
    assert code == EXIT_OK
    printed = capsys.readouterr().out
    assert printed.startswith("loglog_slope,")
    slope = float(printed.split(",")[1])
    assert slope == pytest.approx(0.5, rel=0.05)  # (2q-1)(d-1)/d at q=1, d=2
    lines = out_file.read_text().strip().split("\n")
    assert len(lines) == 4
    assert (tmp_path / "run_manifest.json").exists()


def test_sweep_rejects_bad_params(tmp_path):
    out_file = tmp_path / "slab.csv"
    assert main(["sweep", "slab", "--params", "", "--out", str(out_file)]) == EXIT_INPUT
    assert (
        main(["sweep", "slab", "--params", "0.005,0.01", "--out", str(out_file)]) == EXIT_INPUT
    )


def test_sweep_reruns_are_byte_identical(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for out in (a, b):
        assert main(["sweep", "perforation", "--params", "1,10", "--out", str(out)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_verify_small_batch(tmp_path, capsys):
    out_file = tmp_path / "verify.csv"
    code = main(["verify", "--n-shapes", "3", "--seed", "0", "--out", str(out_file)])
    assert code == EXIT_OK
    printed = capsys.readouterr().out
    assert "all 3 shapes satisfied" in printed
    lines = out_file.read_text().strip().split("\n")
    assert lines[0] == "seed,name,value,bound,satisfied,margin"
    assert len(lines) == 1 + 3 * 4  # four reports per shape
    assert all(",true," in line for line in lines[1:])


def test_thin_tent_profile(tmp_path, capsys):
    prof = tmp_path / "tent.json"
    prof.write_text(
        json.dumps({"base": {"kind": "interval", "a": -1, "b": 1}, "h": {"kind": "tent"}})
    )
    assert main(["thin", str(prof)]) == EXIT_OK
    out = dict(line.split(",") for line in capsys.readouterr().out.strip().split("\n"))
    assert float(out["thin_limit_f_half"]) == pytest.approx(2 / math.sqrt(6), rel=1e-9)
    assert out["concave"] == "true"
    assert abs(float(out["borell_margin"])) < 1e-8
    assert float(out["conjecture_constant_d2"]) == pytest.approx(2 / math.sqrt(6), rel=1e-12)


def test_thin_nonconcave_profile_skips_borell(tmp_path, capsys):
    prof = tmp_path / "vee.json"
    prof.write_text(
        json.dumps(
            {
                "base": {"kind": "interval", "a": 0, "b": 1},
                "h": {"kind": "samples", "x": [0, 0.5, 1], "y": [1, 0.1, 1]},
            }
        )
    )
    assert main(["thin", str(prof)]) == EXIT_OK
    out = dict(line.split(",") for line in capsys.readouterr().out.strip().split("\n"))
    assert out["concave"] == "false"
    assert out["borell_margin"] == "skipped"


def test_thin_bad_profile(tmp_path):
    prof = tmp_path / "bad.json"
    prof.write_text(json.dumps({"base": {"kind": "interval", "a": 0, "b": 1}}))
    assert main(["thin", str(prof)]) == EXIT_INPUT


def test_search_triangles_to_json(tmp_path):
    out_file = tmp_path / "search.json"
    code = main(["search", "triangles", "--params", "1.0,0.5", "--out", str(out_file)])
    assert code == EXIT_OK
    payload = json.loads(out_file.read_text())
    assert payload["evaluations"] == 2
    assert 1 / math.sqrt(2) < payload["best_value"] < 2 / math.sqrt(6)
    manifest = json.loads((tmp_path / "run_manifest.json").read_text())
    assert manifest["command"] == "search"
