from fractions import Fraction

import numpy as np
import pytest

import powerflow as pf
from powerflow.errors import (
    EmptyAdviceSetError,
    ParseError,
    RowSumOutOfToleranceError,
)

import nets


class TestLoadDense:
    def test_comma_and_whitespace_with_comments(self, tmp_path):
        path = tmp_path / "net.txt"
        path.write_text("# a three node network\n0, 0.5, 0.5\n1 0 0\n0.5,0.5 0\n")
        C = pf.load_network(path)
        assert np.allclose(C.entries, nets.THREE_NODE)

    def test_round_trip_is_bit_identical(self, tmp_path):
        rng = np.random.default_rng(77)
        C = nets.random_valid(rng, 6)
        path = tmp_path / "net.txt"
        pf.write_matrix(C, path)
        again = pf.load_network(path, format="dense")
        assert np.array_equal(again.entries, C.entries)

    def test_garbage_token_reports_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0 1\nx 0\n")
        with pytest.raises(ParseError) as err:
            pf.load_network(path)
        assert err.value.line_no == 2

    def test_ragged_rows_rejected(self, tmp_path):
        path = tmp_path / "ragged.txt"
        path.write_text("0 1 0\n1 0\n0.5 0.5 0\n")
        with pytest.raises(ParseError) as err:
            pf.load_network(path)
        assert err.value.line_no == 2

    def test_bad_row_sum_propagates(self, tmp_path):
        path = tmp_path / "sum.txt"
        path.write_text("0 0.4 0.4\n1 0 0\n0.5 0.5 0\n")
        with pytest.raises(RowSumOutOfToleranceError):
            pf.load_network(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("# only a comment\n")
        with pytest.raises(ParseError):
            pf.load_network(path)


class TestLoadAdjacency:
    def test_equal_split_rule(self, tmp_path):
        path = tmp_path / "adv.txt"
        path.write_text("1: 2 3\n2: 1\n3: 1 2\n")
        C = pf.load_network(path)
        assert np.allclose(C.entries[0], [0.0, 0.5, 0.5])
        assert np.allclose(C.entries[1], [1.0, 0.0, 0.0])  # row 2 = e_1
        assert np.allclose(C.entries[2], [0.5, 0.5, 0.0])

    def test_self_nominations_dropped(self, tmp_path):
        path = tmp_path / "adv.txt"
        path.write_text("1: 1 2\n2: 1 2 1\n")
        C = pf.load_network(path)
        assert np.allclose(C.entries, [[0.0, 1.0], [1.0, 0.0]])

    def test_empty_advice_rejected(self, tmp_path):
        path = tmp_path / "adv.txt"
        path.write_text("1: 2\n2: 2\n")  # node 2 only nominates itself
        with pytest.raises(EmptyAdviceSetError) as err:
            pf.load_network(path)
        assert err.value.node == 2

    def test_missing_node_rejected(self, tmp_path):
        path = tmp_path / "adv.txt"
        path.write_text("1: 3\n3: 1\n")  # node 2 never listed
        with pytest.raises(EmptyAdviceSetError) as err:
            pf.load_network(path)
        assert err.value.node == 2

    def test_duplicate_row_rejected(self, tmp_path):
        path = tmp_path / "adv.txt"
        path.write_text("1: 2\n1: 2\n2: 1\n")
        with pytest.raises(ParseError):
            pf.load_network(path)

    def test_rows_exact_in_rational_arithmetic(self):
        # the equal-split rule is exact before float conversion
        for n_advisors in range(1, 12):
            assert sum([Fraction(1, n_advisors)] * n_advisors) == 1

    def test_format_sniffing(self, tmp_path):
        adjacency = tmp_path / "a.txt"
        adjacency.write_text("1: 2\n2: 1\n")
        dense = tmp_path / "d.txt"
        dense.write_text("0 1\n1 0\n")
        assert np.array_equal(
            pf.load_network(adjacency).entries, pf.load_network(dense).entries
        )


class TestBuilders:
    def test_star_matches_canonical_pattern(self):
        C = pf.build_star(10)
        expected = np.zeros((10, 10))
        expected[0, 1:] = 1.0 / 9.0
        expected[1:, 0] = 1.0
        assert np.allclose(C.entries, expected, atol=1e-15)

    def test_star_three(self):
        assert np.allclose(pf.build_star(3).entries, nets.STAR3)

    def test_star_center_detected_across_sizes(self):
        for n in range(3, 51):
            assert pf.star_center(pf.build_star(n)) == 1

    def test_star_too_small(self):
        with pytest.raises(ValueError):
            pf.build_star(2)

    def test_ring_three(self):
        assert np.array_equal(pf.build_ring(3).entries, nets.RING3)

    def test_ring_centrality_uniform(self):
        C = pf.build_ring(4)
        c = pf.dominant_left_eigenvector(C.entries)
        assert np.allclose(c, 0.25, atol=1e-11)

    def test_ring_too_small(self):
        with pytest.raises(ValueError):
            pf.build_ring(2)

    def test_doubly_stochastic_properties(self):
        C = pf.build_doubly_stochastic_random(5, seed=123)
        assert np.allclose(C.entries.sum(axis=0), 1.0, atol=pf.EPS_VALIDATION)
        assert np.allclose(C.entries.sum(axis=1), 1.0, atol=pf.EPS_VALIDATION)
        assert np.all(np.diagonal(C.entries) == 0.0)
        assert isinstance(pf.classify(C), pf.Irreducible)

    def test_doubly_stochastic_deterministic_in_seed(self):
        a = pf.build_doubly_stochastic_random(6, seed=9)
        b = pf.build_doubly_stochastic_random(6, seed=9)
        c = pf.build_doubly_stochastic_random(6, seed=10)
        assert np.array_equal(a.entries, b.entries)
        assert not np.array_equal(a.entries, c.entries)


class TestTrajectoryCsv:
    def test_single_step_example(self, tmp_path):
        C = nets.reachable_pair()
        traj = pf.simulate("st", C, np.array([0.2, 0.2, 0.6]), max_steps=1)
        path = tmp_path / "traj.csv"
        pf.write_trajectory_csv(traj, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "t,x_1,x_2,x_3"
        t0 = [float(v) for v in lines[1].split(",")]
        t1 = [float(v) for v in lines[2].split(",")]
        assert t0 == [0, 0.2, 0.2, 0.6]
        assert t1[0] == 1
        assert np.allclose(t1[1:], [0.32, 0.32, 0.36], atol=1e-15)
        assert lines[-1].startswith("# status=")

    def test_values_round_trip_exactly(self, tmp_path):
        C = nets.three_node()
        traj = pf.simulate("st", C, np.array([0.2, 0.3, 0.5]), max_steps=50)
        path = tmp_path / "traj.csv"
        pf.write_trajectory_csv(traj, path)
        rows = [
            line.split(",")
            for line in path.read_text().splitlines()[1:]
            if not line.startswith("#")
        ]
        parsed = np.array([[float(v) for v in row[1:]] for row in rows])
        assert np.array_equal(parsed, traj.states)

    def test_multi_sink_columns(self, tmp_path):
        C = nets.two_sink_five()
        traj = pf.simulate("st", C, np.full(5, 0.2))
        path = tmp_path / "traj.csv"
        pf.write_trajectory_csv(traj, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "t,x_1,x_2,x_3,x_4,x_5,zeta_1,zeta_2"
        first = [float(v) for v in lines[1].split(",")]
        assert first[-2:] == [0.4, 0.4]

    def test_thinned_run_aligns_sink_power(self, tmp_path):
        C = nets.two_sink_five()
        traj = pf.simulate("st", C, np.full(5, 0.2), record_every=3)
        path = tmp_path / "traj.csv"
        pf.write_trajectory_csv(traj, path)
        for line in path.read_text().splitlines()[1:]:
            if line.startswith("#"):
                continue
            values = [float(v) for v in line.split(",")]
            assert values[6] == pytest.approx(values[1] + values[2], abs=1e-15)

    def test_empty_trajectory_rejected(self, tmp_path):
        C = nets.three_node()
        traj = pf.simulate("st", C, np.array([0.2, 0.3, 0.5]), max_steps=5)
        empty = pf.Trajectory(
            states=traj.states[:0],
            steps=traj.steps[:0],
            step_deltas=traj.step_deltas[:0],
            status=traj.status,
        )
        with pytest.raises(ValueError):
            pf.write_trajectory_csv(empty, tmp_path / "x.csv")

    def test_status_comment_for_vertex(self, tmp_path):
        C = nets.three_node()
        traj = pf.simulate("st", C, np.array([1.0, 0.0, 0.0]))
        path = tmp_path / "traj.csv"
        pf.write_trajectory_csv(traj, path)
        assert "status=vertex_absorbed vertex=1" in path.read_text()


class TestSyntheticStandIns:
    def test_krackhardt_shape(self, tmp_path):
        path = nets.write_lines(tmp_path / "advice.txt", nets.synthetic_krackhardt_lines())
        C = pf.load_network(path)
        assert C.n == 21
        structure = pf.classify(C)
        assert isinstance(structure, pf.ReducibleReachable)
        outside = sorted(set(range(1, 22)) - set(structure.reachable))
        assert tuple(outside) == nets.KRACKHARDT_NEVER_ASKED
        assert structure.r == 17

    def test_sampson_shape(self, tmp_path):
        path = nets.write_lines(tmp_path / "esteem.txt", nets.synthetic_sampson_lines())
        C = pf.load_network(path)
        assert C.n == 18
        structure = pf.classify(C)
        assert isinstance(structure, pf.MultiSink)
        assert structure.sink_sizes == (2, 13)
        assert structure.m == 3
        assert structure.sinks[0] == (1, 2)
