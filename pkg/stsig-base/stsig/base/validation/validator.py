from abc import ABC, abstractmethod
from typing import Any, Callable, Generic, TypeVar

Data = TypeVar("Data")


class Validator(Generic[Data]):
    def __init__(self, callable: Callable[..., None], **kwargs: Any) -> None:
        """Checks experiment results with a plain function.

        The function receives the results followed by `kwargs` and raises (usually an AssertionError)
        when the results are not acceptable. For a class-based version, see ValidatorObject.

        Args:
            callable (Callable[..., None]): The check to run.
            **kwargs (Any): Extra keyword arguments for the check.
        """
        self.kwargs = kwargs
        self.callable = callable

    def validate(self, data: Data) -> None:
        self.callable(data, **self.kwargs)

    def get_name(self) -> str:
        """Name used in log lines; the function name by default."""
        return self.callable.__name__


class ValidatorObject(Generic[Data], Validator[Data], ABC):
    def __init__(self) -> None:
        """A check with its own configuration, written as a class."""
        super().__init__(callable=self._validate)

    @abstractmethod
    def _validate(self, data: Data) -> None:
        """Raise if `data` does not meet this check.

        Args:
            data (Data): The results to check.
        """
        raise NotImplementedError

    def get_name(self) -> str:
        return self.__class__.__name__
