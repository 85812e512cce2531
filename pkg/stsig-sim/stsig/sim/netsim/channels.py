from dataclasses import dataclass

import numpy as np

from stsig.sim.phy import jakes_fading

from .config import SimConfig
from .topology import Topology, path_gains


@dataclass
class DropRealization:
    """Everything random about a drop that every scheme must share.

    Args:
        gain (np.ndarray): Linear path gains, shape (cells, resources, cells); [k, r, i] is from
            base station i to the user of cell k on resource r.
        fading (np.ndarray): Small-scale fading, shape (subframes, bands, cells, resources, cells, bs antennas).
            Flat within each resource's sub-band and constant within a subframe; the same channel is used
            downlink and, transposed, uplink.
        base_priority (np.ndarray): Traffic class of every user, shape (cells, resources).
    """

    gain: np.ndarray
    fading: np.ndarray
    base_priority: np.ndarray

    @property
    def n_cells(self) -> int:
        return self.gain.shape[0]

    def downlink(self, subframe: int, resource: int) -> np.ndarray:
        """Fading from every base station to every user on `resource`, shape (cells k, cells i, antennas)."""
        return self.fading[subframe, resource, :, resource]

    def channel(self, subframe: int, band: int, cell: int, resource: int, bs: int) -> np.ndarray:
        """Fading vector between base station `bs` and the user of (`cell`, `resource`) in sub-band `band`."""
        return self.fading[subframe, band, cell, resource, bs]


def draw_realization(topology: Topology, cfg: SimConfig, rng: np.random.Generator) -> DropRealization:
    """Path gains, Jakes fading over the subframes, and user traffic classes.

    Args:
        topology (Topology): The drop.
        cfg (SimConfig): Simulation parameters.
        rng (np.random.Generator): Random stream.

    Returns:
        DropRealization: The realization.
    """
    c, r, n_t, t = topology.n_cells, cfg.n_resources, cfg.bs_antennas, cfg.n_subframes
    times = np.arange(t) * cfg.subframe_duration_s
    fading = np.empty((t, r, c, r, c, n_t), dtype=np.complex128)
    for band in range(r):
        paths = jakes_fading(cfg.doppler_hz, times, c * r * c * n_t, rng, cfg.fading_sinusoids)
        fading[:, band] = np.moveaxis(paths.reshape(c, r, c, n_t, t), -1, 0)
    base_priority = rng.integers(0, cfg.max_base_priority + 1, size=(c, r))
    return DropRealization(path_gains(topology, cfg), fading, base_priority)
