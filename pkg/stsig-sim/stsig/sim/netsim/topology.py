from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from stsig.base.utils import as_generator

from .config import SimConfig

FREE_SPACE_ANCHOR_DB = 38.46


@dataclass
class Topology:
    """Square cluster of apartments, each hosting a femto with some probability.

    Args:
        grid_size (int): Apartments per side.
        apartment_size_m (float): Apartment side length.
        active (np.ndarray): Femto presence per apartment, shape (grid_size, grid_size).
        bs_positions (np.ndarray): Positions of the active femtos, shape (cells, 2), row-major apartment order.
        ue_positions (np.ndarray): Served user positions, shape (cells, resources, 2).
    """

    grid_size: int
    apartment_size_m: float
    active: np.ndarray
    bs_positions: np.ndarray
    ue_positions: np.ndarray

    def __post_init__(self) -> None:
        assert self.active.shape == (self.grid_size, self.grid_size), "Activity map does not match the grid."
        assert self.bs_positions.shape == (self.n_cells, 2), "One base station position per active apartment."
        assert self.ue_positions.shape[:1] == (self.n_cells,), "One set of users per active apartment."

    @property
    def n_cells(self) -> int:
        return int(self.active.sum())

    @property
    def n_resources(self) -> int:
        return self.ue_positions.shape[1]

    @property
    def cells(self) -> np.ndarray:
        """Row-major apartment index of every active femto; also its base station ID."""
        return np.flatnonzero(self.active.reshape(-1))

    def apartment(self, cell: int) -> Tuple[int, int]:
        """(row, column) of the apartment hosting cell number `cell`."""
        index = int(self.cells[cell])
        return index // self.grid_size, index % self.grid_size

    def are_neighbors(self, cell_a: int, cell_b: int, radius: int = 1) -> bool:
        """Distinct cells whose apartments are at most `radius` apartments apart in both directions."""
        (row_a, col_a), (row_b, col_b) = self.apartment(cell_a), self.apartment(cell_b)
        return cell_a != cell_b and max(abs(row_a - row_b), abs(col_a - col_b)) <= radius

    def walls_between(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Apartment boundaries crossed by the straight line between positions `a` and `b` (broadcasting)."""
        cell_a = np.floor(np.asarray(a) / self.apartment_size_m)
        cell_b = np.floor(np.asarray(b) / self.apartment_size_m)
        return np.abs(cell_a - cell_b).sum(axis=-1).astype(int)


def generate_topology(cfg: SimConfig, seed: Union[None, int, np.random.Generator] = None) -> Topology:
    """Drop femtos and users into the cluster.

    Every apartment independently hosts a femto with probability `deployment_ratio`. Base stations
    and users are placed uniformly inside their apartment, and users are always served by their own
    apartment's femto (restricted access), however strong a neighbor is.

    Args:
        cfg (SimConfig): Simulation parameters.
        seed (Union[None, int, np.random.Generator]): Random stream.

    Returns:
        Topology: The drop.
    """
    rng = as_generator(seed)
    g, a = cfg.grid_size, cfg.apartment_size_m
    active = rng.random((g, g)) < cfg.deployment_ratio
    corners = a * np.stack(np.divmod(np.arange(g * g), g), axis=-1)[:, ::-1].astype(float)
    bs = corners + a * rng.random((g * g, 2))
    ue = corners[:, None, :] + a * rng.random((g * g, cfg.n_resources, 2))

    cells = np.flatnonzero(active.reshape(-1))
    return Topology(g, a, active, bs[cells], ue[cells])


def pathloss_db(distance_m: Union[float, np.ndarray], n_walls: Union[int, np.ndarray], wall_loss_db: float = 5.0):
    """Indoor path loss: 38.46 + 20 log10(d) + wall_loss_db per wall.

    Args:
        distance_m (Union[float, np.ndarray]): Distance in metres, > 0.
        n_walls (Union[int, np.ndarray]): Walls crossed.
        wall_loss_db (float): Penetration loss per wall. Defaults to 5 dB.

    Returns:
        Union[float, np.ndarray]: Path loss in dB.
    """
    distance_m = np.asarray(distance_m, dtype=float)
    assert np.all(distance_m > 0), f"Distance must be positive, got {distance_m}."
    loss = FREE_SPACE_ANCHOR_DB + 20 * np.log10(distance_m) + wall_loss_db * np.asarray(n_walls)
    return float(loss) if loss.ndim == 0 else loss


def path_gains(topology: Topology, cfg: SimConfig) -> np.ndarray:
    """Linear path gain from every base station to every user, shape (cells, resources, cells).

    Entry [k, r, i] is the gain from base station i to the user of cell k on resource r. Distances are
    clipped at `min_distance_m`.
    """
    ue = topology.ue_positions[:, :, None, :]
    bs = topology.bs_positions[None, None, :, :]
    distance = np.maximum(np.linalg.norm(ue - bs, axis=-1), cfg.min_distance_m)
    walls = topology.walls_between(ue, bs)
    return 10 ** (-pathloss_db(distance, walls, cfg.wall_loss_db) / 10)
