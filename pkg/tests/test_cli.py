import json
import shutil
import subprocess
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from qbild.cli import EXIT_INPUT, EXIT_OK, EXIT_VALIDATION, main
from qbild.fileio import read_points_csv

FAST = ["--starts", "16", "--samples", "20000"]


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bild_outputs(tmp_path, fixtures, capsys):
    code, out, _ = run(capsys, "bild", fixtures / "triangle_band.json", "--out-dir", tmp_path, "--svg", *FAST)
    assert code == EXIT_OK
    assert "v_max=" in out
    doc = json.loads((tmp_path / "bild.json").read_text())
    assert doc["schema"] == 1 and doc["band"]["status"] == "Solved"
    assert doc["band"]["v_max"] == pytest.approx(1.0, abs=1e-7)
    assert len(read_points_csv(tmp_path / "upper_inner.csv")) == len(doc["inner"])
    ET.parse(tmp_path / "bild.svg")


def test_crange_prints_enclosure(tmp_path, fixtures, capsys):
    code, out, _ = run(capsys, "crange", fixtures / "radius.txt", "--out-dir", tmp_path)
    assert code == EXIT_OK
    lo, hi = map(float, out.strip().split(","))
    assert lo <= np.sqrt(2) + 1e-12 <= hi + 1e-12 and hi - lo <= 1e-4
    assert (tmp_path / "sweep.csv").read_text().startswith("theta,lambda,re,im")


def test_bad_grid_is_input_error(tmp_path, fixtures, capsys):
    code, _, err = run(capsys, "crange", fixtures / "square.json", "--grid", 4, "--out-dir", tmp_path)
    assert code == EXIT_INPUT and "m >= 8" in err


def test_malformed_json_is_input_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"entries": [[1, 2],\n [3, 4]')
    code, _, err = run(capsys, "bild", p, "--out-dir", tmp_path)
    assert code == EXIT_INPUT and "line" in err and "column" in err


def test_missing_file_and_quaternion_input(tmp_path, fixtures, capsys):
    assert run(capsys, "bild", tmp_path / "nope.json", "--out-dir", tmp_path)[0] == EXIT_INPUT
    code, _, err = run(capsys, "bild", fixtures / "radius_quat.json", "--out-dir", tmp_path)
    assert code == EXIT_INPUT and "j/k" in err


def test_validate_shrunk_bild_fails(tmp_path, fixtures, capsys):
    run(capsys, "bild", fixtures / "triangle_band.json", "--out-dir", tmp_path, *FAST)
    doc = json.loads((tmp_path / "bild.json").read_text())
    code, out, _ = run(capsys, "validate", fixtures / "triangle_band.json", "--bild", tmp_path / "bild.json", *FAST)
    assert code == EXIT_OK and json.loads(out)["violations"] == 0
    c = np.mean([complex(*p) for p in doc["inner"]])
    for key in ("inner", "outer"):
        doc[key] = [[(c + 0.8 * (complex(*p) - c)).real, (c + 0.8 * (complex(*p) - c)).imag] for p in doc[key]]
    (tmp_path / "shrunk.json").write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", fixtures / "triangle_band.json", "--bild", tmp_path / "shrunk.json", *FAST)
    assert code == EXIT_VALIDATION and json.loads(out)["violations"] > 0
    (tmp_path / "junk.json").write_text('{"schema": 1}')
    assert run(capsys, "validate", fixtures / "square.json", "--bild", tmp_path / "junk.json")[0] == EXIT_INPUT


def test_band_and_sample(tmp_path, fixtures, capsys):
    code, out, _ = run(capsys, "band", fixtures / "posdef2.json", "--out-dir", tmp_path, "--starts", 8)
    assert code == EXIT_OK and "status=Solved" in out
    code, out, _ = run(capsys, "sample", fixtures / "radius_quat.json", "--out-dir", tmp_path, "--samples", 5000, "--svg")
    assert code == EXIT_OK and "samples=5000" in out
    pts = read_points_csv(tmp_path / "cloud.csv")
    assert np.all(np.abs(pts - 1) <= 0.5 + 1e-9)


def test_byte_identical_outputs(tmp_path, fixtures, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run(capsys, "bild", fixtures / "disk_shift.json", "--out-dir", d, "--svg", *FAST)[0] == EXIT_OK
    for name in ("bild.json", "upper_inner.csv", "upper_outer.csv", "bild.svg"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_seed_invariance(tmp_path, fixtures, capsys):
    vals = []
    for seed in range(5):
        d = tmp_path / str(seed)
        run(capsys, "bild", fixtures / "disk_shift.json", "--out-dir", d, "--seed", seed, *FAST)
        doc = json.loads((d / "bild.json").read_text())
        vals.append((doc["band"]["v_min"], doc["band"]["v_max"]))
    vals = np.array(vals)
    assert np.ptp(vals, axis=0).max() <= 1e-6


@pytest.mark.slow
def test_demos(tmp_path, capsys):
    code, out, _ = run(capsys, "demos", "--out-dir", tmp_path, "--samples", 50000, "--svg")
    assert code == EXIT_OK
    assert "FAIL" not in out
    assert json.loads((tmp_path / "demos.json").read_text())["schema"] == 1
    ET.parse(tmp_path / "conjecture.svg")


def test_console_script(tmp_path, fixtures):
    exe = shutil.which("qbild")
    if exe is None:
        pytest.skip("console script not installed")
    r = subprocess.run([exe, "crange", str(fixtures / "square.json"), "--out-dir", str(tmp_path)],
                       capture_output=True, text=True, timeout=60)
    assert r.returncode == 0 and "," in r.stdout
