from typing import Any, Dict

import pandas as pd

from stsig.base.catalog import Experiment, ResultSet

from stsig.sim.netsim import monte_carlo

from .curves import concat_curves, curve_table
from .settings import NetworkSettings


class NetworkExperiment(Experiment):
    def __init__(self, settings: Dict[str, Any], seed: int, threads: int = 1) -> None:
        """Femtocell cluster Monte Carlo comparing interference management schemes.

        Args:
            settings (Dict[str, Any]): The `network` settings section.
            seed (int): Master seed.
            threads (int): Worker threads. Defaults to 1.
        """
        self.settings = NetworkSettings(**settings)
        self.seed = seed
        self.threads = threads

    def describe(self) -> Dict[str, Any]:
        return self.settings.model_dump()

    def run(self) -> ResultSet:
        s = self.settings
        result = monte_carlo(s.sim_config(), s.schemes, s.n_drops, self.seed, self.threads)

        cdf = result.cdf_table()
        curves = [
            curve_table(group["rate"], group["cdf"], scheme, s.bs_antennas, self.seed)
            for scheme, group in cdf.groupby("scheme", sort=False)
        ]
        summary = {
            "n_drops": s.n_drops,
            "schemes": list(result.schemes),
            "delivery": result.delivery(),
        }
        results = ResultSet(
            rates=result.rates(),
            percentiles=result.percentile_table(),
            cdf=cdf,
            curves=concat_curves(curves),
            summary=summary,
        )
        if s.write_traces:
            drops = [r for per_drop in result.drops for r in per_drop]
            results["onoff"] = pd.concat([r.onoff_trace() for r in drops], ignore_index=True)
            results["sinr"] = pd.concat([r.sinr_trace() for r in drops], ignore_index=True)
        return results
