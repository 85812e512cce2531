from abc import ABC, abstractmethod
from pathlib import Path
from typing import Generic, TypeVar, Union

Data = TypeVar("Data")


class DataSource(ABC, Generic[Data]):
    """Something results or inputs can be read from."""

    @abstractmethod
    def read(self) -> Data:
        """Read the stored data.

        Returns:
            Data: The data, identical on every call while the underlying file is unchanged.
        """
        raise NotImplementedError


class DataSink(ABC, Generic[Data]):
    """Something results can be written to."""

    @abstractmethod
    def write(self, data: Data) -> None:
        """Persist `data`, replacing what was stored before."""
        raise NotImplementedError


class WriteableDataSource(DataSource[Data], DataSink[Data], ABC):
    """Both readable and writeable."""


class FileDataSource(WriteableDataSource[Data], ABC):
    def __init__(self, path: Union[str, Path]) -> None:
        """A readable and writeable file on local disk.

        Parent directories are created on write.

        Args:
            path (Union[str, Path]): Location of the file.
        """
        super().__init__()
        self.path = Path(path)

    def exists(self) -> bool:
        return self.path.exists()

    def _prepare_parent(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def __str__(self) -> str:
        return f"{self.__class__.__name__}({self.path})"
