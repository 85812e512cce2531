import dataclasses
from typing import Sequence

import numpy as np

from stsig.sim.netsim import DropRealization, SimConfig, Topology, draw_realization


def tiny_config(**overrides) -> SimConfig:
    """A 2x2 cluster on the DESK profile: 32 subcarriers, 2 resources, 3 subframes."""
    settings = dict(grid_size=2, icrm_profile="desk", subcarriers=32, n_resources=2, n_subframes=3)
    settings.update(overrides)
    return SimConfig(**settings)


def two_cell_topology(n_resources: int = 1) -> Topology:
    """Two femtos side by side, each user standing next to the shared wall."""
    active = np.array([[True, True], [False, False]])
    bs = np.array([[5.0, 5.0], [15.0, 5.0]])
    ue = np.array([[[9.0, 5.0]] * n_resources, [[11.0, 5.0]] * n_resources])
    return Topology(2, 10.0, active, bs, ue)


def with_priorities(
    topology: Topology, cfg: SimConfig, priorities: Sequence[Sequence[int]], seed: int = 0
) -> DropRealization:
    realization = draw_realization(topology, cfg, np.random.default_rng(seed))
    return dataclasses.replace(realization, base_priority=np.array(priorities))
