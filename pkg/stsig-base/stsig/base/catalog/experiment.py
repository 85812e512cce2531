from abc import ABC, abstractmethod
from typing import Any, Dict

from stsig.base.catalog.result_set import ResultSet


class Experiment(ABC):
    """A runnable, seeded experiment that produces a ResultSet."""

    @abstractmethod
    def run(self) -> ResultSet:
        """Run the experiment.

        Implementations must be deterministic given their constructor arguments, including the
        number of worker threads.

        Returns:
            ResultSet: The result tables and summaries.
        """
        raise NotImplementedError

    def describe(self) -> Dict[str, Any]:
        """Settings recorded in the run manifest. Defaults to nothing."""
        return {}
