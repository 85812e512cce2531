from typing import Any, Dict

import numpy as np
import pandas as pd

from stsig.base.catalog import Experiment, ResultSet
from stsig.base.utils import spawn_generator

from stsig.sim.phy import run_sts_link, run_uplink_impact, snr_penalty

from .curves import concat_curves, curve_table
from .settings import StsLinkSettings, UplinkImpactSettings

# Entropy label of the message draw, kept apart from the per-trial streams (seed, trial).
_MESSAGE_STREAM = 2**31


class StsLinkExperiment(Experiment):
    def __init__(self, settings: Dict[str, Any], seed: int, threads: int = 1) -> None:
        """Erasure and error rates of G simultaneous STS signals against SIR, per receive antenna count.

        The G distinct messages are drawn once from the seed and reused at every SIR point and
        antenna count.

        Args:
            settings (Dict[str, Any]): The `sts_link` settings section.
            seed (int): Master seed.
            threads (int): Worker threads. Defaults to 1.
        """
        self.settings = StsLinkSettings(**settings)
        self.seed = seed
        self.threads = threads

    def describe(self) -> Dict[str, Any]:
        return self.settings.model_dump()

    def run(self) -> ResultSet:
        s = self.settings
        code = s.code()
        n_messages = min(code.n_messages, s.icrm_profile.n_messages)
        assert s.signals <= n_messages, f"Cannot draw {s.signals} distinct messages out of {n_messages}."
        rng = spawn_generator(self.seed, _MESSAGE_STREAM)
        messages = sorted(int(m) for m in rng.choice(n_messages, size=s.signals, replace=False))

        tables = []
        for n_rx in s.antennas:
            tables.append(
                run_sts_link(
                    messages,
                    code,
                    s.ofdm(),
                    s.channel_profile(),
                    s.sir_db,
                    n_rx,
                    s.trials,
                    self.seed,
                    energy_fraction=s.energy_fraction,
                    tau=s.detection_threshold,
                    max_tones=s.max_detected_tones,
                    theta=s.decode_threshold,
                    interference_to_noise_db=s.interference_to_noise_db,
                    threads=self.threads,
                )
            )
        link = pd.concat(tables, ignore_index=True)

        curves = []
        for n_rx, table in zip(s.antennas, tables):
            for metric in ("erasure_rate", "error_rate"):
                curves.append(curve_table(table["sir_db"], table[metric], metric, n_rx, self.seed))
        summary = {
            "messages": messages,
            "max_error_rate": float(link["error_rate"].max()),
            "max_erasure_rate": float(link["erasure_rate"].max()),
        }
        return ResultSet(link=link, curves=concat_curves(curves), summary=summary)


class UplinkImpactExperiment(Experiment):
    def __init__(self, settings: Dict[str, Any], seed: int, threads: int = 1) -> None:
        """Packet error rate of a coded uplink with and without overlaid STS signals, and the SNR penalty.

        Args:
            settings (Dict[str, Any]): The `data_impact` settings section.
            seed (int): Master seed.
            threads (int): Worker threads. Defaults to 1.
        """
        self.settings = UplinkImpactSettings(**settings)
        self.seed = seed
        self.threads = threads

    def describe(self) -> Dict[str, Any]:
        return self.settings.model_dump()

    def run(self) -> ResultSet:
        s = self.settings
        tables, curves, penalties = [], [], {}
        for n_sts in s.n_sts:
            table = run_uplink_impact(
                n_sts,
                s.code(),
                s.ofdm(),
                s.snr_db,
                s.trials,
                self.seed,
                prof=s.channel_profile(),
                energy_fraction=s.energy_fraction,
                tau=s.detection_threshold,
                max_tones=s.max_detected_tones,
                batch_size=s.batch_size,
                threads=self.threads,
            )
            tables.append(table)
            curves.append(curve_table(table["snr_db"], table["per_without"], f"{n_sts}_sts_reference", 1, self.seed))
            curves.append(curve_table(table["snr_db"], table["per_with"], f"{n_sts}_sts", 1, self.seed))
            penalty = snr_penalty(table["snr_db"], table["per_without"], table["per_with"], s.target_per)
            penalties[str(n_sts)] = None if np.isnan(penalty) else penalty

        summary = {"target_per": s.target_per, "snr_penalty_db": penalties}
        return ResultSet(uplink=pd.concat(tables, ignore_index=True), curves=concat_curves(curves), summary=summary)
