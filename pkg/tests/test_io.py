"""Wire-format tests: matrix JSON round trips and rejection rules."""

import json

import numpy as np
import pytest

from opcheck.io import (
    dump_json,
    matrix_from_json,
    matrix_to_json,
    tolerance_from_json,
    tolerance_to_json,
)
from opcheck.linalg import Tolerance


class TestMatrixJson:
    def test_round_trip(self):
        rng = np.random.default_rng(0)
        for shape in [(1, 1), (2, 3), (4, 4)]:
            m = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
            back = matrix_from_json(matrix_to_json(m))
            assert np.array_equal(back, m)

    def test_row_major_layout(self):
        payload = matrix_to_json(np.array([[1 + 2j, 3.0], [4.0, 5 - 1j]]))
        assert payload["rows"] == 2 and payload["cols"] == 2
        assert payload["data"] == [[1.0, 2.0], [3.0, 0.0], [4.0, 0.0], [5.0, -1.0]]

    def test_rejects_non_finite(self):
        bad = {"rows": 1, "cols": 2, "data": [[1.0, 0.0], [float("nan"), 0.0]]}
        with pytest.raises(ValueError):
            matrix_from_json(bad)
        bad = {"rows": 1, "cols": 1, "data": [[float("inf"), 0.0]]}
        with pytest.raises(ValueError):
            matrix_from_json(bad)

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            matrix_from_json({"rows": 2, "cols": 2, "data": [[1.0, 0.0]]})


class TestToleranceJson:
    def test_round_trip(self):
        t = Tolerance(abs=1e-8, rel=2e-8, rank_cutoff=3e-12)
        assert tolerance_from_json(tolerance_to_json(t)) == t

    def test_defaults_fill_missing_fields(self):
        t = tolerance_from_json({"abs": 1e-7}, dim=4)
        assert t.abs == 1e-7
        assert t.rank_cutoff == pytest.approx(4e-12)

    def test_none_gives_dimension_default(self):
        assert tolerance_from_json(None, dim=5) == Tolerance.for_dim(5)


class TestDumpJson:
    def test_canonical_bytes(self, tmp_path):
        obj = {"b": [1.5, 2.25], "a": {"y": True, "x": None}}
        p1, p2 = tmp_path / "1.json", tmp_path / "2.json"
        dump_json(obj, str(p1))
        dump_json(json.loads(p1.read_text()), str(p2))
        assert p1.read_bytes() == p2.read_bytes()
        assert p1.read_text().endswith("\n")
