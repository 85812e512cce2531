from unittest.mock import MagicMock

from pytest import fixture

from stsig.base.catalog import ResultSet
from stsig.base.validation import ValidationSet


class TestValidationSet:
    @fixture
    def validations(self) -> ValidationSet:
        return ValidationSet(
            network=[
                MagicMock(),
                MagicMock(),
            ],
            link=[MagicMock()],
        )

    def test_not_present(self, validations: ValidationSet):
        validations.validate_data("uplink", ResultSet())

        for vals in validations.values():
            for v in vals:
                v.validate.assert_not_called()

    def test_multiple_checks(self, validations: ValidationSet):
        data = ResultSet(summary={"n_drops": 3})

        assert validations.validate_data("network", data) is data

        for v in validations["link"]:
            v.validate.assert_not_called()
        for v in validations["network"]:
            v.validate.assert_called_once_with(data)
