from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from stsig.base.utils import build_logger, spawn_generator

from .channels import draw_realization
from .config import CHANNEL_STREAM, SCHEMES, SimConfig, check_scheme
from .delivery import DeliveryCounts
from .drop import DropResult, drop_topology, run_drop

PERCENTILES = (5, 10, 50, 90, 95)

logger = build_logger(__name__)


def empirical_cdf(values: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """Sorted samples and F(x) = fraction of samples <= x, a right-continuous step function."""
    x = np.sort(np.asarray(values, dtype=float))
    return x, np.arange(1, len(x) + 1) / max(len(x), 1)


def percentiles(values: Sequence[float], points: Sequence[float] = PERCENTILES) -> Dict[float, float]:
    """Linearly interpolated percentiles; NaN for an empty sample."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return {p: float("nan") for p in points}
    return {p: float(v) for p, v in zip(points, np.percentile(values, points))}


@dataclass
class MonteCarloResult:
    """Aggregated drops.

    Args:
        schemes (Tuple[str, ...]): Schemes, in canonical order.
        drops (List[List[DropResult]]): Per drop, one result per scheme.
    """

    schemes: Tuple[str, ...]
    drops: List[List[DropResult]]

    def results(self, scheme: str) -> List[DropResult]:
        index = self.schemes.index(scheme)
        return [per_drop[index] for per_drop in self.drops]

    def rates(self) -> pd.DataFrame:
        """User rates (scheme, drop, user, resource, rate), ordered by scheme, then drop."""
        frames = [r.user_rates() for scheme in self.schemes for r in self.results(scheme)]
        return pd.concat(frames, ignore_index=True)

    def percentile_table(self) -> pd.DataFrame:
        rates = self.rates()
        rows = []
        for scheme in self.schemes:
            summary = percentiles(rates.loc[rates["scheme"] == scheme, "rate"])
            rows.extend({"scheme": scheme, "percentile": p, "rate": v} for p, v in summary.items())
        return pd.DataFrame(rows, columns=["scheme", "percentile", "rate"])

    def cdf_table(self) -> pd.DataFrame:
        rates = self.rates()
        frames = []
        for scheme in self.schemes:
            x, f = empirical_cdf(rates.loc[rates["scheme"] == scheme, "rate"])
            frames.append(pd.DataFrame({"scheme": scheme, "rate": x, "cdf": f}))
        return pd.concat(frames, ignore_index=True)

    def delivery(self) -> Dict[str, Dict[str, Optional[float]]]:
        """ICRM delivery outcomes per scheme, with the fraction of neighbor pairs that decoded and the ON share."""
        summary = {}
        for scheme in self.schemes:
            results = self.results(scheme)
            counts = sum((r.delivery for r in results), DeliveryCounts())
            on = np.concatenate([r.on.reshape(-1) for r in results])
            summary[scheme] = {
                **counts.to_json(),
                "delivery_rate": counts.decoded / counts.sent if counts.sent else None,
                "on_fraction": float(on.mean()) if on.size else None,
            }
        return summary


class DropTask:
    """Runs every requested scheme on one drop, with channels shared across schemes."""

    def __init__(self, cfg: SimConfig, schemes: Tuple[str, ...], master_seed: int):
        self.cfg = cfg
        self.schemes = schemes
        self.master_seed = master_seed

    def __call__(self, drop: int) -> List[DropResult]:
        topology = drop_topology(self.cfg, self.master_seed, drop)
        realization = draw_realization(topology, self.cfg, spawn_generator(self.master_seed, drop, CHANNEL_STREAM))
        return [run_drop(topology, s, self.cfg, self.master_seed, drop, realization) for s in self.schemes]


def monte_carlo(
    cfg: SimConfig,
    schemes: Sequence[str],
    n_drops: int,
    master_seed: int,
    threads: int = 1,
) -> MonteCarloResult:
    """Repeatedly drop femtos and users, and run every scheme on every drop.

    Each drop draws its topology and channels from `(master_seed, drop)`, so the outcome does not
    depend on the thread count or on which other schemes are run.

    Args:
        cfg (SimConfig): Simulation parameters.
        schemes (Sequence[str]): Schemes to compare.
        n_drops (int): Number of drops, >= 1.
        master_seed (int): Master seed.
        threads (int): Worker threads. Defaults to 1.

    Returns:
        MonteCarloResult: Per-drop results.
    """
    assert n_drops >= 1, f"At least one drop is required, got {n_drops}."
    assert len(schemes) > 0, "At least one scheme is required."
    requested = {SCHEMES[check_scheme(s)] for s in schemes}
    ordered = tuple(s for s in SCHEMES if s in requested)

    logger.info(f"Network: {n_drops} drops, schemes {list(ordered)}")
    task = DropTask(cfg, ordered, master_seed)
    with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
        drops = list(pool.map(task, range(n_drops)))
    return MonteCarloResult(ordered, drops)
