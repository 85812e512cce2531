import numpy as np
import pandas as pd
from pytest import mark

from stsig.base.catalog import ResultSet
from stsig.sim.experiments import (
    CURVE_COLUMNS,
    TABLE_SCHEMAS,
    ColumnSchema,
    RateBounds,
    cdf_is_monotone,
    concat_curves,
    curve_table,
)
from tests.utils import pytest_assert


def _link(erasure_rate: float = 0.2) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "sir_db": [-6.0],
            "n_antennas": [1],
            "signals": [2],
            "trials": [10],
            "erasure_rate": [erasure_rate],
            "error_rate": [0.0],
        }
    )


class TestColumnSchema:
    def test_documented(self):
        ColumnSchema("link").validate(ResultSet(link=_link()))

    def test_wrong_columns(self):
        data = ResultSet(link=_link().drop(columns="trials"))

        with pytest_assert(AssertionError, "Table `link` has columns", exact=False):
            ColumnSchema("link").validate(data)

    def test_missing_table(self):
        with pytest_assert(AssertionError, "Result table `link` is missing."):
            ColumnSchema("link").validate(ResultSet(summary={}))

    def test_undocumented_table(self):
        with pytest_assert(AssertionError, "No documented schema for table `extra`."):
            ColumnSchema("extra")

    def test_explicit_columns(self):
        ColumnSchema("extra", ["a"]).validate(ResultSet(extra=pd.DataFrame({"a": [1]})))

    def test_name(self):
        assert ColumnSchema("link").get_name() == "ColumnSchema"


class TestRateBounds:
    def test_within(self):
        RateBounds("link", "erasure_rate").validate(ResultSet(link=_link(1.0)))

    def test_above(self):
        with pytest_assert(AssertionError, "`link.erasure_rate` has values above 1.0."):
            RateBounds("link", "erasure_rate").validate(ResultSet(link=_link(1.5)))

    def test_below(self):
        with pytest_assert(AssertionError, "`link.erasure_rate` has values below 0.0."):
            RateBounds("link", "erasure_rate").validate(ResultSet(link=_link(-0.1)))

    def test_unbounded_and_missing(self):
        table = pd.DataFrame({"rate": [0.0, 12.0, np.nan]})

        RateBounds("rates", "rate", upper=None).validate(ResultSet(rates=table))


class TestCdfIsMonotone:
    def test_valid(self):
        cdf = pd.DataFrame({"scheme": ["none"] * 3 + ["slnr"], "rate": [1, 2, 3, 0.5], "cdf": [1 / 3, 2 / 3, 1, 1]})

        cdf_is_monotone(ResultSet(cdf=cdf))

    @mark.parametrize(
        ["rate", "cdf", "message"],
        [
            [[2, 1], [0.5, 1.0], "CDF of none is not sorted by rate."],
            [[1, 2], [1.0, 0.5], "CDF of none decreases."],
            [[1, 2], [0.25, 0.5], "CDF of none does not reach 1."],
        ],
    )
    def test_invalid(self, rate: list, cdf: list, message: str):
        table = pd.DataFrame({"scheme": "none", "rate": rate, "cdf": cdf})

        with pytest_assert(AssertionError, message):
            cdf_is_monotone(ResultSet(cdf=table))


class TestCurves:
    def test_curve_table(self):
        table = curve_table([1, 2], [0.5, 0.25], "slnr", 2, 7)

        assert table.columns.tolist() == CURVE_COLUMNS
        assert table["scheme"].tolist() == ["slnr", "slnr"]
        assert table["n_antennas"].tolist() == [2, 2]

    def test_concat(self):
        assert concat_curves([]).columns.tolist() == CURVE_COLUMNS
        assert len(concat_curves([curve_table([1], [1], "a", 1, 0)] * 3)) == 3

    def test_schemas(self):
        assert TABLE_SCHEMAS["curves"] == ["x_value", "metric", "scheme", "n_antennas", "seed"]
        assert set(TABLE_SCHEMAS) == {"curves", "link", "uplink", "rates", "percentiles", "cdf", "onoff", "sinr"}
