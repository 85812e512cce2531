import json
from pathlib import Path
from typing import Any, Union

from .data_source import FileDataSource


class JsonFile(FileDataSource[Any]):
    def __init__(self, path: Union[str, Path], indent: int = 2) -> None:
        """A JSON document on disk: observation files, decode reports, manifests and summaries.

        Keys are written in insertion order, so the same object always produces the same bytes.

        Args:
            path (Union[str, Path]): Location of the file.
            indent (int): Indentation used when writing. Defaults to 2.
        """
        super().__init__(path)
        self.indent = indent

    def read(self) -> Any:
        assert self.exists(), f"JSON file {self.path} does not exist."
        with open(self.path, "r") as f:
            return json.load(f)

    def write(self, data: Any) -> None:
        self._prepare_parent()
        with open(self.path, "w") as f:
            json.dump(data, f, indent=self.indent, allow_nan=False)
            f.write("\n")
