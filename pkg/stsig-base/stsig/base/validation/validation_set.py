import logging
from typing import Any, Dict, List, TypeVar

from stsig.base.validation.validator import Validator

Data = TypeVar("Data")


class ValidationSet(Dict[str, List[Validator]]):
    def __init__(self, **kwargs: Any) -> None:
        """Checks to run on experiment results, keyed by experiment name.

        Args:
            **kwargs (Any): Experiment names and the list of validators for each.
        """
        super().__init__(**kwargs)
        self.logger = logging.getLogger(__name__)

    def validate_data(self, name: str, data: Data) -> Data:
        """Run every validator registered for `name` on `data`.

        Args:
            name (str): Experiment name.
            data (Data): Its results.

        Raises:
            AssertionError: If any of the checks fail.

        Returns:
            Data: `data`, unchanged.
        """
        if name in self.keys():
            self.logger.info(f">>> Validating results: {name}")
            for validation in self[name]:
                check = validation.get_name()
                self.logger.info(f">>> - Checking: {check}")
                validation.validate(data)
                self.logger.info(f">>> - {check} passed")
            self.logger.info(f"Results of {name} validated successfully")
        return data
