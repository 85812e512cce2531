from typing import Any, Dict, Iterable, List


def _is_table(value: Any) -> bool:
    return hasattr(value, "to_csv") and hasattr(value, "columns")


class ResultSet(Dict[str, Any]):
    """Named outputs of one experiment run.

    Values are either result tables (DataFrames, written as CSV) or summaries
    (JSON-serialisable dicts).
    """

    def get_all(self, keys: List[str]) -> List[Any]:
        """Outputs for `keys`, in order."""
        return [self[key] for key in keys]

    def set_all(self, keys: Iterable[str], data: Iterable[Any]) -> None:
        """Store `data` under `keys`, pairwise and in order."""
        for key, d in zip(keys, data):
            self[key] = d

    @classmethod
    def from_dict(cls, dct: Dict[str, Any]) -> "ResultSet":
        return cls(**dct)

    def tables(self) -> Dict[str, Any]:
        """Only the DataFrame outputs."""
        return {name: value for name, value in self.items() if _is_table(value)}

    def summaries(self) -> Dict[str, Any]:
        """Everything that is not a DataFrame."""
        return {name: value for name, value in self.items() if not _is_table(value)}

    def copy(self) -> "ResultSet":
        return ResultSet(**super().copy())
