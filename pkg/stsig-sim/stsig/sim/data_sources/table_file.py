from pathlib import Path
from typing import Any, Dict, Optional, Union

import pandas as pd

from stsig.base.data_sources import FileDataSource

FLOAT_FORMAT = "%.10g"


class TableFile(FileDataSource[pd.DataFrame]):
    PANDAS_IO_FUNCTIONS = {
        "json": (pd.read_json, lambda df, path, **args: df.to_json(path, **args)),
        "csv": (pd.read_csv, lambda df, path, **args: df.to_csv(path, **args)),
    }
    DEFAULT_WRITE_ARGS = {
        "json": {"orient": "records", "double_precision": 10},
        "csv": {"index": False, "float_format": FLOAT_FORMAT},
    }

    def __init__(
        self,
        path: Union[str, Path],
        format: str = "csv",
        read_args: Optional[Dict[str, Any]] = None,
        write_args: Optional[Dict[str, Any]] = None,
    ):
        """A result table on disk, read and written with Pandas.

        Writes are deterministic: no index and a fixed float format, so the same table always gives the
        same bytes.

        Args:
            path (Union[str, Path]): The path to the file.
            format (str): `csv` or `json`. Defaults to `csv`.
            read_args (Optional[Dict[str, Any]]): Keyword arguments to be passed to `Pandas read_*`.
                By default no args are passed.
            write_args (Optional[Dict[str, Any]]): Keyword arguments to be passed to `Pandas to_*`,
                on top of the deterministic defaults.
        """
        super().__init__(path)
        assert format in self.PANDAS_IO_FUNCTIONS, f"`{format}` is not a supported table format!"

        self.format = format
        self.read_args = {} if read_args is None else read_args
        self.write_args = {**self.DEFAULT_WRITE_ARGS.get(format, {}), **({} if write_args is None else write_args)}

    def read(self) -> pd.DataFrame:
        read_func, _ = self.PANDAS_IO_FUNCTIONS[self.format]
        return read_func(self.path, **self.read_args)

    def write(self, data: pd.DataFrame) -> None:
        """Writes the given table, creating parent directories.

        Args:
            data (pd.DataFrame): The table to be written.
        """
        self._prepare_parent()
        _, write_func = self.PANDAS_IO_FUNCTIONS[self.format]
        write_func(data, self.path, **self.write_args)
