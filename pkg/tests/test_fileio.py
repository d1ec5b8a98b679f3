import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given

from qbild import ConfigError, NotComplex, ParseError, RunConfig, upper_bild
from qbild.fileio import (
    bild_svg,
    dumps_json,
    matrix_file,
    parse_complex,
    parse_matrix,
    read_matrix,
    read_points_csv,
    write_json,
    write_points_csv,
)

from conftest import complex_matrices, complexes


@pytest.mark.parametrize(
    "text, value",
    [("1+2i", 1 + 2j), ("-i", -1j), ("2i", 2j), ("3", 3), ("1.5e-3-2.5j", 1.5e-3 - 2.5j), (" -2 - i ", -2 - 1j), ("+i", 1j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "x", "1+", "i2", "1+2k"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


@given(complex_matrices(max_n=4))
def test_json_round_trip(A):
    mf = matrix_file(A, "m")
    back = parse_matrix(dumps_json(mf.to_dict()))
    assert back.name == "m" and back.arity == 2
    assert np.array_equal(back.complex(), A)


def test_fixtures_load(fixtures):
    for path in sorted(fixtures.iterdir()):
        mf = read_matrix(path)
        assert mf.n >= 2
    assert read_matrix(fixtures / "radius.txt").complex()[1, 1] == -1 - 1j
    q = read_matrix(fixtures / "radius_quat.json")
    assert q.arity == 4
    with pytest.raises(NotComplex):
        q.complex()


def test_quaternion_file_with_zero_jk_is_complex():
    mf = parse_matrix('{"entries": [[[1, 2, 0, 0]]]}')
    assert mf.arity == 4 and mf.complex()[0, 0] == 1 + 2j


def test_string_and_number_entries():
    mf = parse_matrix('{"entries": [["1-i", 2], [0, "i"]]}')
    assert np.array_equal(mf.complex(), np.array([[1 - 1j, 2], [0, 1j]]))


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as exc:
        parse_matrix('{"entries": [[1, 2],\n  [3, ]]}')
    assert exc.value.line == 2 and exc.value.column is not None
    assert "line 2" in str(exc.value)


@pytest.mark.parametrize(
    "text",
    [
        '{"entries": [[1, 2], [3]]}',
        '{"entries": [[[1, 0], [1, 0, 0, 0]], [[0, 0], [1, 0]]]}',
        '{"entries": [[true]]}',
        '{"n": 3, "entries": [[1]]}',
        '{"entries": [["1+q"]]}',
        "[1, 2]",
    ],
)
def test_malformed_matrices(text):
    with pytest.raises(ParseError):
        parse_matrix(text)


def test_text_format_errors():
    with pytest.raises(ParseError) as exc:
        parse_matrix("1 2\n3 zz\n")
    assert exc.value.line == 2 and exc.value.column == 3
    with pytest.raises(ParseError):
        parse_matrix("1 2\n3\n")
    with pytest.raises(ParseError):
        parse_matrix("# only a comment\n")


def test_points_csv_round_trip(tmp_path):
    pts = np.array([1 + 2j, -0.1 + 1e-17j, 3.0])
    p = write_points_csv(tmp_path / "p.csv", pts)
    assert p.read_text().splitlines()[0] == "re,im"
    assert np.array_equal(read_points_csv(p), pts)


def test_json_is_strict(tmp_path):
    with pytest.raises(ValueError):
        dumps_json({"x": float("nan")})
    p = write_json(tmp_path / "a.json", {"b": 1, "a": [1.5]})
    assert json.loads(p.read_text()) == {"a": [1.5], "b": 1}


def test_svg_well_formed():
    b = upper_bild(np.diag([1 + 1j, 1 + 1j, -1j]))
    root = ET.fromstring(bild_svg(b, "t <&>"))
    assert root.tag.endswith("svg")
    assert any(el.tag.endswith("polygon") for el in root.iter())


def test_run_config_validation():
    assert RunConfig().bild_options().m == 720
    assert RunConfig(starts=8, seed=3).band_options().starts == 8
    for bad in ({"m": 4}, {"starts": 0}, {"samples": 0}, {"seed": -1}, {"tol": 0.0}):
        with pytest.raises(ConfigError):
            RunConfig(**bad)
