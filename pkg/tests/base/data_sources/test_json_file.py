from pathlib import Path

from stsig.base.data_sources import JsonFile
from tests.utils import pytest_assert


class TestJsonFile:
    def test_write_read(self, tmp_path: Path):
        source = JsonFile(tmp_path / "nested" / "report.json")
        data = {"status": "decoded", "candidates": [{"message": 2, "offset": -1}], "none": None}

        source.write(data)

        assert source.exists()
        assert source.read() == data

    def test_deterministic_bytes(self, tmp_path: Path):
        a, b = JsonFile(tmp_path / "a.json"), JsonFile(tmp_path / "b.json")

        a.write({"z": 1, "a": [1.5, 2]})
        b.write({"z": 1, "a": [1.5, 2]})

        assert a.path.read_bytes() == b.path.read_bytes()
        assert a.path.read_text().endswith("}\n")

    def test_missing(self, tmp_path: Path):
        path = tmp_path / "missing.json"

        with pytest_assert(AssertionError, f"JSON file {path} does not exist."):
            JsonFile(path).read()

    def test_rejects_nan(self, tmp_path: Path):
        with pytest_assert(ValueError, "Out of range float values are not JSON compliant", exact=False):
            JsonFile(tmp_path / "nan.json").write({"rate": float("nan")})

    def test_str(self, tmp_path: Path):
        assert str(JsonFile(tmp_path / "x.json")) == f"JsonFile({tmp_path / 'x.json'})"
