import pandas as pd
from pytest import fixture

from stsig.base.catalog import ResultSet


class TestResultSet:
    @fixture
    def data(self) -> ResultSet:
        return ResultSet(
            rates=pd.DataFrame({"rate": [1.0, 2.0]}),
            summary={"n_drops": 2},
        )

    def test_len(self, data: ResultSet):
        assert len(data) == 2

    def test_get_all(self, data: ResultSet):
        summary, rates = data.get_all(["summary", "rates"])

        assert summary == {"n_drops": 2}
        assert rates["rate"].tolist() == [1.0, 2.0]

    def test_set_all(self, data: ResultSet):
        data.set_all(["c", "d"], [8, 9])

        assert data["c"] == 8
        assert data["d"] == 9

    def test_tables_and_summaries(self, data: ResultSet):
        assert list(data.tables()) == ["rates"]
        assert data.summaries() == {"summary": {"n_drops": 2}}

    def test_copy(self, data: ResultSet):
        res = data.copy()
        res["extra"] = 1

        assert isinstance(res, ResultSet)
        assert "extra" not in data
        assert res["summary"] is data["summary"]

    def test_from_dict(self):
        assert ResultSet.from_dict({"a": 1}) == {"a": 1}
