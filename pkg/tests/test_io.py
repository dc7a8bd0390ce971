"""Round-trip tests for the CSV, PGM, and JSON writers."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from ghostswap.io import (
    image_layout,
    parse_pgm,
    read_csv,
    read_image_records,
    to_raster,
    write_csv,
    write_image_records,
    write_json,
    write_pgm,
)


def test_csv_floats_survive_a_round_trip(tmp_path):
    path = tmp_path / "values.csv"
    values = [0.1, 1.0 / 3.0, math.pi, 1e-300, 45.0, 6.02214076e23]
    write_csv(path, ["index", "value"], [(k, v) for k, v in enumerate(values)])
    header, rows = read_csv(path)
    assert header == ["index", "value"]
    assert [float(row[1]) for row in rows] == values
    assert [int(row[0]) for row in rows] == list(range(len(values)))


def test_csv_uses_lf_and_leads_with_header(tmp_path):
    path = tmp_path / "values.csv"
    write_csv(path, ["a", "b"], [(1, 2.5)])
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw == b"a,b\n1,2.5\n"


def test_csv_blank_cells_for_none(tmp_path):
    path = tmp_path / "values.csv"
    write_csv(path, ["a", "b"], [(1, None), (None, 2)])
    header, rows = read_csv(path)
    assert rows == [["1", ""], ["", "2"]]


def test_csv_rejects_cells_with_separators(tmp_path):
    with pytest.raises(ValueError):
        write_csv(tmp_path / "x.csv", ["a"], [("1,2",)])


def test_pgm_peak_maps_to_full_scale(tmp_path):
    path = tmp_path / "image.pgm"
    scale = write_pgm(path, np.array([0.0, 0.25, 0.5, 1.0]), (1, 4))
    assert scale == 65535.0
    levels = parse_pgm(path.read_text())
    assert levels.shape == (1, 4)
    assert levels[0, 3] == 65535
    assert levels[0, 0] == 0
    assert levels[0, 1] == round(0.25 * 65535)


def test_pgm_zero_image_has_zero_scale(tmp_path):
    path = tmp_path / "flatzero.pgm"
    scale = write_pgm(path, np.zeros(4), (1, 4))
    assert scale == 0.0
    levels = parse_pgm(path.read_text())
    assert np.all(levels == 0)


def test_pgm_round_trip_within_quantization(tmp_path):
    rng = np.random.default_rng(4)
    pixels = rng.random(9)
    path = tmp_path / "grid.pgm"
    scale = write_pgm(path, pixels, (3, 3))
    levels = parse_pgm(path.read_text())
    recovered = to_raster(pixels, (3, 3))
    assert np.all(np.abs(levels / scale - recovered) <= 0.5 / scale + 1e-12)


def test_raster_rows_start_at_the_top():
    # pixel vectors are row-major from the bottom-left corner, rasters
    # list the top row first
    raster = to_raster(np.array([0.0, 1.0, 2.0, 3.0]), (2, 2))
    assert np.array_equal(raster, np.array([[2.0, 3.0], [0.0, 1.0]]))


def test_pgm_grid_orientation(tmp_path):
    path = tmp_path / "quad.pgm"
    write_pgm(path, np.array([3.0, 1.0, 0.0, 2.0]), (2, 2))
    levels = parse_pgm(path.read_text())
    expected = np.rint(np.array([[0.0, 2.0], [3.0, 1.0]]) * (65535 / 3.0))
    assert np.array_equal(levels, expected)


def test_parse_pgm_tolerates_comments_and_whitespace():
    text = "P2 # magic\n# a comment line\n 2   2\n65535\n0 1\n\n2   3\n"
    levels = parse_pgm(text)
    assert np.array_equal(levels, np.array([[0, 1], [2, 3]]))


def test_parse_pgm_rejects_malformed_input():
    with pytest.raises(ValueError):
        parse_pgm("P5\n1 1\n65535\n0\n")
    with pytest.raises(ValueError):
        parse_pgm("P2\n2 2\n65535\n0 1 2\n")
    with pytest.raises(ValueError):
        parse_pgm("P2\n1 1\n65535\n70000\n")


def test_write_json_is_sorted_and_ends_with_newline(tmp_path):
    path = tmp_path / "summary.json"
    write_json(path, {"zeta": 1, "alpha": {"b": np.float64(0.5), "a": np.int64(3)}})
    text = path.read_text()
    assert text.endswith("\n")
    assert text.index('"alpha"') < text.index('"zeta"')
    parsed = json.loads(text)
    assert parsed["alpha"] == {"a": 3, "b": 0.5}
    assert json.dumps(parsed, indent=2, sort_keys=True) + "\n" == text


def test_write_json_serializes_arrays(tmp_path):
    path = tmp_path / "arr.json"
    write_json(path, {"pixels": np.array([1.5, 2.5])})
    assert json.loads(path.read_text())["pixels"] == [1.5, 2.5]


def test_image_layout_shapes():
    assert image_layout(4) == (1, 4)
    assert image_layout(4, square=True) == (2, 2)
    assert image_layout(16, square=True) == (4, 4)
    assert image_layout(7) == (1, 7)
    with pytest.raises(ValueError):
        image_layout(8, square=True)


def test_image_records_round_trip(tmp_path):
    path = tmp_path / "image_records.csv"
    analytic = np.array([0.1, 1.0 / 3.0, 0.25, 0.0])
    sampled = np.array([12, 0, 7, 3])
    corrected = np.array([11.5, 0.0, 6.5, 2.5])
    write_image_records(path, analytic, sampled, corrected)
    records = read_image_records(path)
    assert np.array_equal(records["pixel_index"], np.array([1, 2, 3, 4]))
    assert np.array_equal(records["analytic_intensity"], analytic)
    assert np.array_equal(records["sampled_count"], sampled)
    assert records["sampled_count"].dtype == np.int64
    assert np.array_equal(records["corrected_count"], corrected)


def test_image_records_without_samples(tmp_path):
    path = tmp_path / "analytic_only.csv"
    analytic = np.array([0.5, 0.5])
    write_image_records(path, analytic, None, None)
    header, rows = read_csv(path)
    assert header == ["pixel_index", "analytic_intensity", "sampled_count", "corrected_count"]
    assert all(row[2] == "" and row[3] == "" for row in rows)
    records = read_image_records(path)
    assert records["sampled_count"] is None
    assert records["corrected_count"] is None
