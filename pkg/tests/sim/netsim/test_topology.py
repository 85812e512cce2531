import numpy as np
from pytest import mark

from stsig.sim.netsim import SimConfig, Topology, generate_topology, path_gains, pathloss_db
from tests.sim.netsim.utils import tiny_config, two_cell_topology
from tests.utils import pytest_assert


class TestGenerateTopology:
    def test_fully_deployed(self):
        topology = generate_topology(SimConfig(deployment_ratio=1.0), 0)

        assert topology.n_cells == 25
        assert topology.cells.tolist() == list(range(25))
        assert topology.ue_positions.shape == (25, 4, 2)

    def test_positions_inside_apartments(self):
        topology = generate_topology(SimConfig(deployment_ratio=1.0), 1)
        index = topology.cells

        np.testing.assert_array_equal(np.floor(topology.bs_positions / 10.0), np.stack([index % 5, index // 5], 1))
        for resource in range(4):
            np.testing.assert_array_equal(
                np.floor(topology.ue_positions[:, resource] / 10.0), np.stack([index % 5, index // 5], 1)
            )

    def test_empty(self):
        topology = generate_topology(SimConfig(deployment_ratio=0.0), 0)

        assert topology.n_cells == 0
        assert topology.bs_positions.shape == (0, 2)

    def test_mean_deployment(self):
        rng = np.random.default_rng(0)
        counts = [generate_topology(SimConfig(), rng).n_cells for _ in range(400)]

        assert abs(np.mean(counts) - 12.5) < 0.5

    def test_seeded(self):
        first = generate_topology(tiny_config(), 4)
        second = generate_topology(tiny_config(), 4)

        np.testing.assert_array_equal(first.ue_positions, second.ue_positions)


class TestTopology:
    def test_apartments_and_neighbors(self):
        topology = generate_topology(SimConfig(deployment_ratio=1.0), 0)

        assert topology.apartment(7) == (1, 2)
        assert topology.are_neighbors(0, 6)
        assert not topology.are_neighbors(0, 2)
        assert topology.are_neighbors(0, 2, radius=2)
        assert not topology.are_neighbors(3, 3)

    def test_walls(self):
        topology = two_cell_topology()

        assert topology.walls_between(np.array([1.0, 1.0]), np.array([25.0, 1.0])) == 2
        assert topology.walls_between(np.array([1.0, 1.0]), np.array([11.0, 11.0])) == 2
        assert topology.walls_between(np.array([1.0, 1.0]), np.array([9.0, 9.0])) == 0

    def test_mismatched_positions(self):
        with pytest_assert(AssertionError, "One base station position per active apartment."):
            Topology(2, 10.0, np.ones((2, 2), dtype=bool), np.zeros((3, 2)), np.zeros((4, 1, 2)))


class TestPathloss:
    @mark.parametrize(["distance", "walls", "loss"], [[1.0, 0, 38.46], [10.0, 2, 68.46], [100.0, 0, 78.46]])
    def test_examples(self, distance: float, walls: int, loss: float):
        assert np.isclose(pathloss_db(distance, walls), loss)

    def test_vectorised(self):
        np.testing.assert_allclose(pathloss_db(np.array([1.0, 10.0]), np.array([1, 0]), 3.0), [41.46, 58.46])

    def test_non_positive_distance(self):
        with pytest_assert(AssertionError, "Distance must be positive", exact=False):
            pathloss_db(0.0, 0)

    def test_path_gains(self):
        gains = path_gains(two_cell_topology(), tiny_config(n_resources=1))

        assert gains.shape == (2, 1, 2)
        assert np.isclose(gains[0, 0, 0], 10 ** (-pathloss_db(4.0, 0) / 10))
        assert np.isclose(gains[0, 0, 1], 10 ** (-pathloss_db(6.0, 1) / 10))
        assert np.isclose(gains[1, 0, 0], gains[0, 0, 1])

    def test_min_distance(self):
        topology = two_cell_topology()
        topology.ue_positions[0, 0] = topology.bs_positions[0]

        gains = path_gains(topology, tiny_config(n_resources=1, min_distance_m=2.0))

        assert np.isclose(gains[0, 0, 0], 10 ** (-pathloss_db(2.0, 0) / 10))
