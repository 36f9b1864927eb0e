import math
import random

import pytest

from annoforge.cluster_graph import ClusterGraph
from annoforge.errors import EmptyCanvas, MissingPosition
from annoforge.force_layout import (LayoutParams, LayoutState,
                                    group_centroids, init_layout, net_forces,
                                    run_until_stable, step)

from genutil import apply_cluster_op, fresh_graph, random_cluster_op

CANVAS = (800.0, 600.0)


def kinetic_energy(state):
    return 0.5 * sum(vx * vx + vy * vy
                     for vx, vy in state.velocities.values())


class TestParams:
    def test_defaults_are_valid(self):
        p = LayoutParams()
        assert p.gravity == 0.05 and p.damping == 0.6 and p.radius == 30

    @pytest.mark.parametrize("kwargs", [
        {"gravity": -1}, {"repulsion": -0.1}, {"damping": 0.0},
        {"damping": 1.0}, {"radius": 0}, {"spring_length": -5},
    ])
    def test_bad_params_rejected(self, kwargs):
        with pytest.raises(ValueError):
            LayoutParams(**kwargs)


class TestInitLayout:
    def test_empty_graph_gives_empty_state(self):
        state = init_layout(ClusterGraph([]), CANVAS, 1)
        assert state.positions == {} and state.velocities == {}

    def test_same_seed_reproduces_positions_exactly(self):
        g = fresh_graph(12)
        a = init_layout(g, CANVAS, 5)
        b = init_layout(g, CANVAS, 5)
        assert a.positions == b.positions

    def test_different_seeds_scatter_differently(self):
        g = fresh_graph(12)
        assert init_layout(g, CANVAS, 1).positions \
            != init_layout(g, CANVAS, 2).positions

    def test_positions_land_inside_canvas(self):
        g = fresh_graph(10)
        state = init_layout(g, CANVAS, 3)
        for x, y in state.positions.values():
            assert 0 <= x <= CANVAS[0] and 0 <= y <= CANVAS[1]
        assert all(v == (0.0, 0.0) for v in state.velocities.values())

    def test_zero_canvas_rejected(self):
        with pytest.raises(EmptyCanvas):
            init_layout(fresh_graph(1), (0, 600), 1)


class TestStep:
    def test_single_centered_node_does_not_move(self):
        g = fresh_graph(1)
        state = LayoutState({1: (400.0, 300.0)}, {1: (0.0, 0.0)}, CANVAS, 0)
        after = step(state, g, LayoutParams())
        assert after.positions[1] == (400.0, 300.0)
        assert after.velocities[1] == (0.0, 0.0)

    def test_mirror_symmetry_is_preserved(self):
        g = fresh_graph(2)
        state = LayoutState({1: (300.0, 300.0), 2: (500.0, 300.0)},
                            {1: (0.0, 0.0), 2: (0.0, 0.0)}, CANVAS, 0)
        params = LayoutParams()
        for _ in range(40):
            state = step(state, g, params)
            x1, y1 = state.positions[1]
            x2, y2 = state.positions[2]
            assert x1 - 400.0 == -(x2 - 400.0)
            assert y1 == y2 == 300.0

    def test_stretched_spring_contracts(self):
        g = fresh_graph(2)
        g.add_link(1, 2)
        params = LayoutParams()
        gap = params.spring_length * 2
        state = LayoutState({1: (400.0 - gap / 2, 300.0),
                             2: (400.0 + gap / 2, 300.0)},
                            {1: (0.0, 0.0), 2: (0.0, 0.0)}, CANVAS, 0)
        after = step(state, g, params)
        d0 = gap
        d1 = math.dist(after.positions[1], after.positions[2])
        assert d1 < d0

    def test_positions_stay_clamped_to_canvas(self):
        rng = random.Random(8)
        g = fresh_graph(15)
        for _ in range(10):
            apply_cluster_op(g, random_cluster_op(rng, g))
        state = init_layout(g, (200.0, 150.0), 4)
        params = LayoutParams(repulsion=5000.0)
        for _ in range(200):
            state = step(state, g, params)
            for x, y in state.positions.values():
                assert 0.0 <= x <= 200.0 and 0.0 <= y <= 150.0

    def test_missing_position_rejected(self):
        g = fresh_graph(2)
        state = LayoutState({1: (10.0, 10.0)}, {1: (0.0, 0.0)}, CANVAS, 0)
        with pytest.raises(MissingPosition):
            step(state, g, LayoutParams())

    def test_coincident_nodes_separate(self):
        g = fresh_graph(2)
        state = LayoutState({1: (400.0, 300.0), 2: (400.0, 300.0)},
                            {1: (0.0, 0.0), 2: (0.0, 0.0)}, CANVAS, 0)
        after = step(state, g, LayoutParams())
        assert after.positions[1] != after.positions[2]


class TestGroupCentroids:
    def test_singleton_centroid_is_its_position(self):
        g = fresh_graph(1)
        state = LayoutState({1: (5.0, 5.0)}, {1: (0.0, 0.0)}, CANVAS, 0)
        assert group_centroids(state, g) == {frozenset({1}): (5.0, 5.0)}

    def test_pair_centroid_is_midpoint(self):
        g = fresh_graph(2)
        g.add_link(1, 2)
        state = LayoutState({1: (0.0, 0.0), 2: (10.0, 0.0)},
                            {1: (0.0, 0.0), 2: (0.0, 0.0)}, CANVAS, 0)
        assert group_centroids(state, g)[frozenset({1, 2})] == (5.0, 0.0)

    def test_matches_independent_mean(self):
        rng = random.Random(21)
        g = fresh_graph(20)
        for i in range(1, 20):
            g.add_link(i, i + 1)
        state = init_layout(g, CANVAS, 9)
        centroid = group_centroids(state, g)[frozenset(range(1, 21))]
        mean_x = sum(state.positions[i][0] for i in range(1, 21)) / 20
        mean_y = sum(state.positions[i][1] for i in range(1, 21)) / 20
        assert abs(centroid[0] - mean_x) < 1e-9
        assert abs(centroid[1] - mean_y) < 1e-9


class TestRunUntilStable:
    def test_already_stable_takes_no_steps(self):
        g = fresh_graph(1)
        state = LayoutState({1: (400.0, 300.0)}, {1: (0.0, 0.0)}, CANVAS, 0)
        settled, steps = run_until_stable(state, g, LayoutParams(), 0.01,
                                          5000)
        assert steps <= 1
        assert settled.positions[1] == (400.0, 300.0)

    def test_deterministic_given_identical_inputs(self):
        g = fresh_graph(6)
        g.add_link(1, 2)
        g.add_link(2, 3)
        a = run_until_stable(init_layout(g, CANVAS, 11), g, LayoutParams(),
                             0.05, 2000)
        b = run_until_stable(init_layout(g, CANVAS, 11), g, LayoutParams(),
                             0.05, 2000)
        assert a[0].positions == b[0].positions and a[1] == b[1]

    def test_three_node_group_settles_before_cap(self):
        g = fresh_graph(3)
        g.add_link(1, 2)
        g.add_link(2, 3)
        state = init_layout(g, CANVAS, 17)
        settled, steps = run_until_stable(state, g, LayoutParams(), 0.01,
                                          5000)
        assert steps < 5000
        forces = net_forces(settled, g, LayoutParams())
        assert max(math.hypot(fx, fy) for fx, fy in forces.values()) < 0.01

    def test_bad_arguments_rejected(self):
        g = fresh_graph(1)
        state = init_layout(g, CANVAS, 0)
        with pytest.raises(ValueError):
            run_until_stable(state, g, LayoutParams(), 0.0, 10)
        with pytest.raises(ValueError):
            run_until_stable(state, g, LayoutParams(), 0.1, 0)


class TestEnergyDecay:
    def test_kinetic_energy_decays_over_a_50_step_window(self):
        # velocities start at zero, so a short warm-up lets the initial
        # kick play out before the dissipation window is measured
        params = LayoutParams()
        passed = 0
        trials = 20
        for seed in range(trials):
            rng = random.Random(seed)
            g = fresh_graph(20)
            for _ in range(15):
                apply_cluster_op(g, random_cluster_op(rng, g))
            state = init_layout(g, CANVAS, seed)
            for _ in range(25):
                state = step(state, g, params)
            ke_start = kinetic_energy(state)
            for _ in range(50):
                state = step(state, g, params)
            if kinetic_energy(state) <= ke_start + 1e-12:
                passed += 1
        assert passed >= 0.95 * trials
