from typing import Any, Dict, Optional

import numpy as np
import pandas as pd
from pytest import mark

from stsig.base.configuration import Configuration
from stsig.sim.experiments import CATALOG_PATH, DEFAULTS_PATH, RateBounds, SuiteConfig, parse_suite


def _configuration(overrides: Optional[Dict[str, Any]] = None, threads: int = 8) -> Configuration[SuiteConfig]:
    return Configuration.from_hierarchical_config(
        parameters_paths=[DEFAULTS_PATH],
        catalog_path=CATALOG_PATH,
        overrides=overrides,
        config_converter=parse_suite,
        initialised_parameters={"seed": 1, "threads": threads},
    )


def _error_rate_bound(cf: Configuration) -> RateBounds:
    (bound,) = [
        v for v in cf.catalog.validation_set["sts-link"] if isinstance(v, RateBounds) and v.column == "error_rate"
    ]
    return bound


def _percentile(table: pd.DataFrame, scheme: str, percentile: int) -> float:
    rows = table.loc[(table["scheme"] == scheme) & (table["percentile"] == percentile), "rate"]
    assert len(rows) == 1, f"No {percentile}th percentile for {scheme}."
    return float(rows.iloc[0])


class TestErrorRateLimit:
    def test_default(self):
        assert _error_rate_bound(_configuration()).upper == 0.01

    def test_override(self):
        cf = _configuration({"sts_link": {"error_rate_limit": 0.2}})

        assert cf.config.sts_link.error_rate_limit == 0.2
        assert _error_rate_bound(cf).upper == 0.2


@mark.end_to_end
class TestDefaultSuite:
    def test_sts_link(self):
        # the catalog rejects any point above the 1% error rate limit
        link = _configuration().catalog.run("sts-link")["link"]

        assert (link["error_rate"] < 0.01).all()
        erasure = {}
        for n_rx, group in link.groupby("n_antennas"):
            rates = group.sort_values("sir_db")["erasure_rate"].to_numpy()
            assert np.all(np.diff(rates) <= 0.02), f"Erasure rate grows with SIR at {n_rx} antennas: {rates}"
            erasure[n_rx] = rates
        assert np.all(erasure[4] <= erasure[1] + 0.02), f"4 antennas: {erasure[4]}, 1 antenna: {erasure[1]}"

    def test_data_impact(self):
        penalty = _configuration().catalog.run("data-impact")["summary"]["snr_penalty_db"]

        assert penalty["30"] is not None and penalty["30"] <= 0.5
        assert penalty["0"] is not None and abs(penalty["0"]) <= 0.05

    def test_network(self):
        percentiles = _configuration().catalog.run("network")["percentiles"]

        assert _percentile(percentiles, "onoff", 10) > _percentile(percentiles, "none", 10)
        assert _percentile(percentiles, "prioritized_slnr", 10) > _percentile(percentiles, "none", 10)
        ideal = _percentile(percentiles, "ideal_bf_uncoordinated", 90)
        assert abs(_percentile(percentiles, "slnr", 90) - ideal) <= 0.05 * ideal
