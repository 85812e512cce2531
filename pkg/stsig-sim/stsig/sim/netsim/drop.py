from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import pandas as pd

from stsig.base.icrm import HashSalt, Icrm, hash_bs_id, pack
from stsig.base.utils import spawn_generator

from stsig.sim.coord import (
    MAX_PRIORITY,
    fixed_beam,
    leakage_channel,
    matched_filter,
    onoff_decide,
    priority_matrix,
    slnr_beamformer,
)
from stsig.sim.phy import linear_to_db

from .channels import DropRealization, draw_realization
from .config import CHANNEL_STREAM, SCHEME_STREAM, TOPOLOGY_STREAM, SimConfig, check_scheme
from .delivery import Broadcast, DeliveryCounts, IcrmDelivery, Reception
from .sinr import evaluate_downlink_sinr
from .topology import Topology, generate_topology


@dataclass
class DropResult:
    """Outcome of one scheme on one drop.

    Args:
        scheme (str): Interference management scheme.
        drop (int): Drop index.
        cells (np.ndarray): Apartment index of every active cell.
        rates (np.ndarray): Achieved rate log2(1 + SINR) in bit/s/Hz, shape (subframes, cells, resources).
        sinr_db (np.ndarray): Downlink SINR trace, same shape; -inf when the base station was OFF.
        on (np.ndarray): ON/OFF state of every base station on every resource, same shape.
        delivery (DeliveryCounts): ICRM delivery outcomes over the drop.
    """

    scheme: str
    drop: int
    cells: np.ndarray
    rates: np.ndarray
    sinr_db: np.ndarray
    on: np.ndarray
    delivery: DeliveryCounts = field(default_factory=DeliveryCounts)

    def __post_init__(self) -> None:
        assert np.all(self.rates >= 0), "Rates must be non-negative."

    @property
    def n_resources(self) -> int:
        return self.rates.shape[2]

    def _frame(self, values: np.ndarray, name: str) -> pd.DataFrame:
        n_subframes, n_cells, n_resources = values.shape
        subframe, cell, resource = np.meshgrid(
            np.arange(n_subframes), np.arange(n_cells), np.arange(n_resources), indexing="ij"
        )
        return pd.DataFrame(
            {
                "scheme": self.scheme,
                "drop": self.drop,
                "subframe": subframe.reshape(-1),
                "cell": self.cells[cell.reshape(-1)],
                "resource": resource.reshape(-1),
                name: values.reshape(-1),
            }
        )

    def user_rates(self) -> pd.DataFrame:
        """Mean rate of every user over the drop: columns (scheme, drop, user, resource, rate)."""
        mean = self.rates.mean(axis=0)
        cell, resource = np.meshgrid(np.arange(len(self.cells)), np.arange(self.n_resources), indexing="ij")
        user = self.cells[cell.reshape(-1)] * self.n_resources + resource.reshape(-1)
        return pd.DataFrame(
            {
                "scheme": self.scheme,
                "drop": self.drop,
                "user": user.astype(int),
                "resource": resource.reshape(-1),
                "rate": mean.reshape(-1),
            }
        )

    def sinr_trace(self) -> pd.DataFrame:
        return self._frame(self.sinr_db, "sinr_db")

    def onoff_trace(self) -> pd.DataFrame:
        return self._frame(self.on, "on")


def drop_topology(cfg: SimConfig, master_seed: int, drop: int) -> Topology:
    """Topology of drop number `drop` of a Monte Carlo run."""
    return generate_topology(cfg, spawn_generator(master_seed, drop, TOPOLOGY_STREAM))


class _Scheme:
    """Per-resource decision of one base station, given the ICRMs it decoded in the previous subframe."""

    def __init__(self, scheme: str, cfg: SimConfig, rng: np.random.Generator):
        self.scheme = scheme
        self.cfg = cfg
        self.rng = rng

    def beam(self, h_kk: np.ndarray, victims: List[Reception]) -> np.ndarray:
        n_t = self.cfg.bs_antennas
        if self.scheme in ("none", "onoff"):
            return fixed_beam(n_t)
        if self.scheme == "ideal_bf_uncoordinated":
            return matched_filter(h_kk)
        known = [v for v in victims if v.channel is not None]
        H = leakage_channel([v.channel for v in known], n_t)
        P = priority_matrix([v.icrm.priority for v in known]) if self.scheme == "prioritized_slnr" else None
        return slnr_beamformer(h_kk, H, P, 1.0)

    def onoff(self, own_priority: int, victims: List[Reception]):
        return onoff_decide(own_priority, [v.icrm.priority for v in victims], self.rng, self.cfg.hold_subframes)


def _check_schedule(schedule: np.ndarray) -> None:
    for cell, resources in enumerate(schedule):
        assert len(set(resources.tolist())) == len(resources), (
            f"Cell {cell} scheduled two users on the same resource: {resources.tolist()}."
        )


def run_drop(
    topology: Topology,
    scheme: str,
    cfg: SimConfig,
    seed: int = 0,
    drop: int = 0,
    realization: Optional[DropRealization] = None,
) -> DropResult:
    """Simulate `cfg.n_subframes` subframes of one drop under one interference management scheme.

    Every subframe, each base station first applies the scheme to the ICRMs it decoded in the
    previous subframe, then downlink SINRs and rates follow from the resulting beams and ON/OFF
    states. Served users whose SINR falls below `icrm_trigger_sinr_db` broadcast an ICRM carrying
    their resource, priority and hashed base station ID, which is delivered (over STS or ideally)
    for use in the next subframe. User priority is the traffic class plus one level per
    `priority_aging_subframes` consecutive subframes below `target_rate`, capped at the largest priority
    an ICRM of the profile can carry.

    Args:
        topology (Topology): The drop.
        scheme (str): One of `SCHEMES`.
        cfg (SimConfig): Simulation parameters.
        seed (int): Master seed. Defaults to 0.
        drop (int): Drop index, which selects the random streams. Defaults to 0.
        realization (Optional[DropRealization]): Channels and traffic classes; drawn from the seed when omitted.

    Returns:
        DropResult: Per-subframe rates, SINRs, ON/OFF states and ICRM delivery outcomes.
    """
    scheme_index = check_scheme(scheme)
    if realization is None:
        realization = draw_realization(topology, cfg, spawn_generator(seed, drop, CHANNEL_STREAM))
    rng = spawn_generator(seed, drop, SCHEME_STREAM, scheme_index)
    decide = _Scheme(scheme, cfg, rng)
    delivery = IcrmDelivery(topology, realization, cfg)

    n_t, n_r, n_c = cfg.n_subframes, cfg.n_resources, topology.n_cells
    rates = np.zeros((n_t, n_c, n_r))
    sinr_db = np.full((n_t, n_c, n_r), -np.inf)
    on = np.ones((n_t, n_c, n_r), dtype=bool)
    counts = DeliveryCounts()
    if n_c == 0:
        return DropResult(scheme, drop, topology.cells, rates, sinr_db, on, counts)

    schedule = np.tile(np.arange(n_r), (n_c, 1))
    rx_power = delivery.downlink_power
    hold_until = np.zeros((n_c, n_r), dtype=int)
    held_on = np.ones((n_c, n_r), dtype=bool)
    age = np.zeros((n_c, n_r), dtype=int)
    top_priority = min(MAX_PRIORITY, 2**cfg.profile.priority_bits - 1)
    inbox: List[List[Reception]] = [[] for _ in range(n_c)]
    for t in range(n_t):
        _check_schedule(schedule)
        priority = np.minimum(realization.base_priority + age // cfg.priority_aging_subframes, top_priority)
        beams = np.empty((n_c, n_r, cfg.bs_antennas), dtype=np.complex128)
        for k in range(n_c):
            relevant = [rx for rx in inbox[k] if rx.is_relevant(cfg.icrm_response_inr_db)]
            for r in range(n_r):
                victims = [rx for rx in relevant if rx.icrm.resource_id == r]
                h_kk = np.sqrt(rx_power[k, r, k]) * realization.downlink(t, r)[k, k]
                beams[k, r] = decide.beam(h_kk, victims)
                if scheme == "onoff" and t >= hold_until[k, r]:
                    decision = decide.onoff(int(priority[k, r]), victims)
                    held_on[k, r] = decision.is_on
                    hold_until[k, r] = t + decision.hold_subframes
        if scheme == "onoff":
            on[t] = held_on

        for r in range(n_r):
            sinr = evaluate_downlink_sinr(realization.downlink(t, r), beams[:, r], on[t, :, r], rx_power[:, r, :])
            rates[t, :, r] = np.log2(1 + sinr)
            with np.errstate(divide="ignore"):
                sinr_db[t, :, r] = linear_to_db(sinr)
        age = np.where(rates[t] < cfg.target_rate, age + 1, 0)

        salt = HashSalt(t)
        broadcasts = []
        for k, r in zip(*np.nonzero(on[t] & (sinr_db[t] < cfg.icrm_trigger_sinr_db))):
            bs_hash = hash_bs_id(int(topology.cells[k]), salt, cfg.profile.hash_bits)
            icrm = Icrm(int(r), int(priority[k, r]), bs_hash)
            broadcasts.append(Broadcast(int(k), int(r), icrm, pack(icrm, cfg.profile)))
        inbox, subframe_counts = delivery(t, broadcasts, rng)
        counts = counts + subframe_counts

    return DropResult(scheme, drop, topology.cells, rates, sinr_db, on, counts)
