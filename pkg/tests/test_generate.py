import pytest

from circuitflow.errors import ValidationError
from circuitflow.generate import (
    erdos_renyi_edges,
    preferential_attachment_edges,
    write_edge_list,
)
from circuitflow.graph import build_wc_transmission, load_edge_list


class TestErdosRenyi:
    def test_deterministic(self):
        a = erdos_renyi_edges(30, 0.1, rng_seed=7)
        b = erdos_renyi_edges(30, 0.1, rng_seed=7)
        assert a == b

    def test_seed_changes_output(self):
        assert erdos_renyi_edges(30, 0.1, rng_seed=7) != \
            erdos_renyi_edges(30, 0.1, rng_seed=8)

    def test_edge_count_near_expectation(self):
        edges = erdos_renyi_edges(200, 0.05, rng_seed=3)
        expected = 200 * 199 * 0.05  # directed: n(n-1)p
        assert 0.7 * expected < len(edges) < 1.3 * expected

    def test_undirected_emits_each_pair_once(self):
        edges = erdos_renyi_edges(40, 0.2, rng_seed=1, directed=False)
        assert all(u < v for u, v in edges)

    def test_no_self_loops_and_in_range(self):
        edges = erdos_renyi_edges(25, 0.3, rng_seed=2)
        assert all(u != v and 0 <= u < 25 and 0 <= v < 25 for u, v in edges)

    def test_validation(self):
        with pytest.raises(ValidationError):
            erdos_renyi_edges(0, 0.1, rng_seed=1)
        with pytest.raises(ValidationError):
            erdos_renyi_edges(10, 1.5, rng_seed=1)


class TestPreferentialAttachment:
    def test_deterministic(self):
        a = preferential_attachment_edges(50, 3, rng_seed=11)
        assert a == preferential_attachment_edges(50, 3, rng_seed=11)

    def test_edge_count(self):
        n, m = 60, 2
        edges = preferential_attachment_edges(n, m, rng_seed=4)
        assert len(edges) == (n - m) * m

    def test_validation(self):
        with pytest.raises(ValidationError):
            preferential_attachment_edges(5, 0, rng_seed=1)
        with pytest.raises(ValidationError):
            preferential_attachment_edges(3, 3, rng_seed=1)


class TestWriteEdgeList:
    def test_round_trip(self, tmp_path):
        edges = erdos_renyi_edges(20, 0.2, rng_seed=5)
        path = tmp_path / "graph.txt"
        write_edge_list(path, edges, comment="generated fixture")
        graph = load_edge_list(path)
        text = path.read_text()
        assert text.startswith("# generated fixture")
        reloaded = {tuple(map(int, line.split()[:2]))
                    for line in text.splitlines() if not line.startswith("#")}
        assert reloaded == set(edges)
        # and it feeds straight into the transmission builder
        build_wc_transmission(graph)

    def test_empty_rejected(self, tmp_path):
        with pytest.raises(ValidationError):
            write_edge_list(tmp_path / "x.txt", [])
