from contextlib import contextmanager
from typing import Optional

import pandas as pd


@contextmanager
def pytest_assert(error_class, message: Optional[str] = None, exact: bool = True):
    """Expect `error_class` inside the block, optionally with an exact (or contained) message."""
    try:
        yield
    except error_class as e:
        if message is not None:
            error_message = str(e.args[0]) if e.args else ""
            if exact:
                assert error_message == message, f"`{error_message}` != `{message}`"
            else:
                assert message in error_message, f"`{message}` not in `{error_message}`"
    else:
        raise AssertionError(f"No {error_class.__name__} was raised!")


def are_dataframes_equal(expected: pd.DataFrame, result: pd.DataFrame, ordered: bool = True, **kwargs) -> None:
    """Compare two result tables, ignoring the index.

    Result tables have a documented column order, so the columns must match exactly.

    Args:
        expected (pd.DataFrame): The expected table.
        result (pd.DataFrame): The table under test.
        ordered (bool): Whether row order matters. Otherwise both tables are sorted on every column first.
        kwargs: Passed on to `pd.testing.assert_frame_equal`.
    """
    assert list(expected.columns) == list(result.columns), f"Columns: {list(expected.columns)} != {list(result.columns)}"
    if not ordered:
        columns = list(expected.columns)
        expected, result = expected.sort_values(columns), result.sort_values(columns)
    pd.testing.assert_frame_equal(expected.reset_index(drop=True), result.reset_index(drop=True), **kwargs)
