import json
import os
import tempfile
import unittest

import networkx as nx
import numpy as np

import traffic_network
from traffic_network import (
    CITY_PRESETS,
    DEFAULT_CYCLE_SET,
    SATURATION_RANGE,
    CityArchetype,
    CityConfig,
    ConfigurationError,
    IntersectionSpec,
    RoadClass,
    TrafficNetwork,
    build_city,
    build_grid_city,
    build_irregular_city,
    build_radial_city,
    get_city_preset,
    neighbors,
)


def _spec(k, cycle=60, saturation=1800.0, road_class=RoadClass.LOCAL, weight=1.0):
    return IntersectionSpec(id=k, cycle_length=cycle, base_saturation=saturation,
                            road_class=road_class, type_weight=weight)


class TestNetworkInvariants(unittest.TestCase):
    """Structural invariants shared by every generator."""

    def assertValidNetwork(self, network):
        am = network.adjacency_matrix()
        self.assertTrue(np.array_equal(am, am.T))
        self.assertTrue(np.all(np.diag(am) == 0))
        self.assertTrue(np.all(am.sum(axis=1) >= 1))
        self.assertTrue(network.is_connected())
        self.assertTrue(np.all(network.base_saturation >= SATURATION_RANGE[0]))
        self.assertTrue(np.all(network.base_saturation <= SATURATION_RANGE[1]))
        self.assertTrue(set(network.cycle_lengths.astype(int)) <= set(DEFAULT_CYCLE_SET))
        self.assertTrue(np.all(network.type_weights > 0))

    def test_generators_hold_invariants_for_several_seeds(self):
        for seed in (0, 1, 42, 2 ** 63):
            self.assertValidNetwork(build_grid_city(4, 5, seed))
            self.assertValidNetwork(build_radial_city(5, 3, seed))
            self.assertValidNetwork(build_irregular_city(6, 7, seed))

    def test_rejects_self_loop(self):
        with self.assertRaises(ValueError):
            TrafficNetwork([_spec(0), _spec(1)], [(0, 0), (0, 1)])

    def test_rejects_isolated_node(self):
        with self.assertRaises(ValueError):
            TrafficNetwork([_spec(0), _spec(1), _spec(2)], [(0, 1)])

    def test_rejects_duplicate_edge(self):
        with self.assertRaises(ValueError):
            TrafficNetwork([_spec(0), _spec(1)], [(0, 1), (1, 0)])

    def test_rejects_cycle_outside_set(self):
        with self.assertRaises(ValueError):
            TrafficNetwork([_spec(0, cycle=75), _spec(1)], [(0, 1)])

    def test_rejects_saturation_outside_range(self):
        with self.assertRaises(ValueError):
            _spec(0, saturation=500.0)

    def test_edges_are_sorted_pairs(self):
        network = TrafficNetwork([_spec(0), _spec(1), _spec(2)], [(2, 1), (1, 0)])
        self.assertEqual(network.edges.tolist(), [[0, 1], [1, 2]])


class TestGridCity(unittest.TestCase):

    def test_manhattan_dimensions(self):
        network = build_grid_city(22, 120, seed=7)
        self.assertEqual(len(network), 2640)

    def test_smallest_grid(self):
        network = build_grid_city(2, 2, seed=3)
        self.assertEqual(len(network), 4)
        self.assertEqual(len(network.edges), 4)
        self.assertTrue(np.all(network.degrees == 2))

    def test_three_by_three_degrees(self):
        network = build_grid_city(3, 3, seed=3)
        self.assertEqual(network.degrees[4], 4)
        for corner in (0, 2, 6, 8):
            self.assertEqual(network.degrees[corner], 2)

    def test_dimension_below_two_is_configuration_error(self):
        with self.assertRaises(ConfigurationError):
            build_grid_city(1, 5, seed=0)

    def test_classes_follow_street_assignment(self):
        network = build_grid_city(3, 10, seed=11)
        classes = network.road_classes()
        for s in range(10):
            column = {classes[a * 10 + s] for a in range(3)}
            self.assertEqual(len(column), 1)
            self.assertIn(column.pop(), (RoadClass.COLLECTOR, RoadClass.LOCAL))

    def test_deterministic(self):
        self.assertEqual(build_grid_city(5, 6, seed=9), build_grid_city(5, 6, seed=9))
        self.assertNotEqual(build_grid_city(5, 6, seed=9), build_grid_city(5, 6, seed=10))


class TestRadialCity(unittest.TestCase):

    def test_paris_dimensions(self):
        network = build_radial_city(20, 60, seed=1)
        self.assertEqual(len(network), 1201)

    def test_minimal_layout_hub_degree(self):
        network = build_radial_city(3, 1, seed=1)
        self.assertEqual(len(network), 4)
        self.assertEqual(network.degrees[3], 3)
        self.assertEqual(network.road_classes()[3], RoadClass.ARTERIAL)

    def test_too_few_radials(self):
        with self.assertRaises(ConfigurationError):
            build_radial_city(2, 4, seed=1)


class TestIrregularCity(unittest.TestCase):

    def test_istanbul_dimensions_connected(self):
        network = build_irregular_city(30, 50, seed=5)
        self.assertEqual(len(network), 1500)
        self.assertTrue(nx.is_connected(network.to_networkx()))

    def test_same_seed_identical_edges(self):
        a = build_irregular_city(8, 9, seed=21)
        b = build_irregular_city(8, 9, seed=21)
        self.assertTrue(np.array_equal(a.edges, b.edges))

    def test_rewiring_changes_lattice(self):
        network = build_irregular_city(8, 9, seed=21)
        lattice = build_grid_city(8, 9, seed=21)
        self.assertFalse(np.array_equal(network.edges, lattice.edges))

    def test_single_intersection_rejected(self):
        with self.assertRaises(ConfigurationError):
            build_irregular_city(1, 1, seed=0)


class TestNeighbors(unittest.TestCase):

    def test_center_of_three_by_three(self):
        network = build_grid_city(3, 3, seed=0)
        self.assertEqual(neighbors(network, 4), [1, 3, 5, 7])

    def test_two_by_two(self):
        network = build_grid_city(2, 2, seed=0)
        for i in range(4):
            self.assertEqual(len(neighbors(network, i)), 2)

    def test_symmetry(self):
        network = build_irregular_city(5, 6, seed=4)
        for i in range(len(network)):
            for j in neighbors(network, i):
                self.assertIn(i, neighbors(network, j))

    def test_out_of_range(self):
        network = build_grid_city(2, 2, seed=0)
        with self.assertRaises(IndexError):
            neighbors(network, 4)


class TestPresetsAndSerialization(unittest.TestCase):

    def test_presets(self):
        self.assertEqual(set(CITY_PRESETS), {"manhattan", "istanbul", "paris", "sao_paulo"})
        self.assertEqual(get_city_preset("Manhattan").heatmap_layout, (88, 30))
        self.assertEqual(get_city_preset("sao-paulo").archetype, CityArchetype.IRREGULAR_MESH)
        self.assertAlmostEqual(get_city_preset("istanbul").peak_uplift, 0.25)

    def test_unknown_preset(self):
        with self.assertRaises(ConfigurationError):
            get_city_preset("atlantis")

    def test_build_city_dispatch(self):
        config = CityConfig(archetype=CityArchetype.RADIAL_CONCENTRIC, arterial_count=4, collector_count=2, seed=3)
        self.assertEqual(len(build_city(config)), 9)

    def test_city_config_rejects_unknown_keys(self):
        with self.assertRaises(ValueError):
            CityConfig(archetype=CityArchetype.GRID, arterial_count=2, collector_count=2, bridges=3)

    def test_json_round_trip(self):
        network = build_grid_city(3, 4, seed=8, city_label="Tiny")
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "network.json")
            network.save_json(path)
            with open(path) as f:
                document = json.load(f)
            self.assertEqual(document["city_label"], "Tiny")
            self.assertEqual(set(document["intersections"][0]), {"id", "cycle", "base_saturation", "class", "type_weight"})
            self.assertEqual(TrafficNetwork.load_json(path), network)

    def test_type_weight_table(self):
        self.assertEqual(traffic_network.type_weight_for_degree(4), 1.0)
        self.assertEqual(traffic_network.type_weight_for_degree(3), 0.75)
        self.assertEqual(traffic_network.type_weight_for_degree(2), 0.5)


if __name__ == '__main__':
    unittest.main(verbosity=2)
