from typing import Dict, List, Optional

import numpy as np

from stsig.base.catalog import ResultSet
from stsig.base.validation import ValidatorObject

from .curves import CURVE_COLUMNS

TABLE_SCHEMAS: Dict[str, List[str]] = {
    "curves": CURVE_COLUMNS,
    "link": ["sir_db", "n_antennas", "signals", "trials", "erasure_rate", "error_rate"],
    "uplink": ["snr_db", "n_sts", "trials", "per_without", "per_with"],
    "rates": ["scheme", "drop", "user", "resource", "rate"],
    "percentiles": ["scheme", "percentile", "rate"],
    "cdf": ["scheme", "rate", "cdf"],
    "onoff": ["scheme", "drop", "subframe", "cell", "resource", "on"],
    "sinr": ["scheme", "drop", "subframe", "cell", "resource", "sinr_db"],
}


class ColumnSchema(ValidatorObject[ResultSet]):
    def __init__(self, table: str, columns: Optional[List[str]] = None) -> None:
        """Checks that a result table has exactly the documented columns, in order.

        Args:
            table (str): Name of the table in the ResultSet.
            columns (Optional[List[str]]): Expected columns. Defaults to the documented schema of `table`.
        """
        super().__init__()
        if columns is None:
            assert table in TABLE_SCHEMAS, f"No documented schema for table `{table}`."
            columns = TABLE_SCHEMAS[table]
        self.table = table
        self.columns = list(columns)

    def _validate(self, data: ResultSet) -> None:
        assert self.table in data, f"Result table `{self.table}` is missing."
        found = list(data[self.table].columns)
        assert found == self.columns, f"Table `{self.table}` has columns {found}, expected {self.columns}."


class RateBounds(ValidatorObject[ResultSet]):
    def __init__(self, table: str, column: str, lower: float = 0.0, upper: Optional[float] = 1.0) -> None:
        """Checks that every non-missing value of a column lies in [lower, upper].

        Args:
            table (str): Name of the table in the ResultSet.
            column (str): Column to check.
            lower (float): Smallest allowed value. Defaults to 0.
            upper (Optional[float]): Largest allowed value, None for no upper bound. Defaults to 1.
        """
        super().__init__()
        self.table = table
        self.column = column
        self.lower = lower
        self.upper = upper

    def _validate(self, data: ResultSet) -> None:
        values = data[self.table][self.column].dropna().to_numpy(dtype=float)
        assert np.all(values >= self.lower), f"`{self.table}.{self.column}` has values below {self.lower}."
        if self.upper is not None:
            assert np.all(values <= self.upper), f"`{self.table}.{self.column}` has values above {self.upper}."


def cdf_is_monotone(data: ResultSet, table: str = "cdf") -> None:
    """Every per-scheme CDF is non-decreasing in rate and ends at 1."""
    cdf = data[table]
    for scheme, group in cdf.groupby("scheme", sort=False):
        assert np.all(np.diff(group["rate"].to_numpy()) >= 0), f"CDF of {scheme} is not sorted by rate."
        assert np.all(np.diff(group["cdf"].to_numpy()) >= 0), f"CDF of {scheme} decreases."
        assert np.isclose(group["cdf"].iloc[-1], 1.0), f"CDF of {scheme} does not reach 1."
