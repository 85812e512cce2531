from stsig.base.catalog import ResultSet
from stsig.base.validation import ValidatorObject


def dummy_check(results: ResultSet, z: int):
    assert results["summary"]["value"] < z, "Nope!"


class ValueBelow(ValidatorObject[ResultSet]):
    def __init__(self, z: int) -> None:
        super().__init__()
        self.z = z

    def _validate(self, data: ResultSet) -> None:
        assert data["summary"]["value"] < self.z, "Nope!"
