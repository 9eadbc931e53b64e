import numpy as np
import pytest

from conftest import assert_vec
from instances import random_wc_instance
from circuitflow.errors import ValidationError
from circuitflow.graph import (
    DampingConfig,
    InfluenceGraph,
    build_wc_transmission,
)
from circuitflow.influence import InfluenceEngine
from circuitflow.selection import (
    celf_ic_select,
    degree_discount_topk,
    degree_topk,
    delta_complete,
    delta_fast,
    greedy_select,
    pagerank_rank,
)


@pytest.fixture()
def eng3(g3_tm, lam3):
    return InfluenceEngine(g3_tm, lam3)


class TestMarginals:
    def test_delta_complete_examples(self, eng3):
        assert delta_complete(eng3, [], 0) == pytest.approx(2.5972222222222223,
                                                            abs=1e-12)
        assert delta_complete(eng3, [0], 1) == pytest.approx(0.2361111111111111,
                                                             abs=1e-9)
        # adding the sink is worth exactly the same as adding the middle node
        assert delta_complete(eng3, [0], 1) == delta_complete(eng3, [0], 2)

    def test_delta_fast_examples(self, eng3):
        assert delta_fast(eng3, [], 0) == pytest.approx(2.5972222222222223,
                                                        abs=1e-9)
        assert delta_fast(eng3, [0], 1) == pytest.approx(0.2361111111111111,
                                                         abs=1e-9)
        assert delta_fast(eng3, [0], 2) == pytest.approx(0.5833333333333334,
                                                         abs=1e-9)

    def test_candidate_already_selected(self, eng3):
        with pytest.raises(ValidationError, match="already"):
            delta_complete(eng3, [0], 0)
        with pytest.raises(ValidationError, match="already"):
            delta_fast(eng3, [0], 0)

    def test_initial_gain_never_exceeds_damped_potential(self):
        for seed in range(8):
            graph, tm, damping, T, lam = random_wc_instance(seed + 20, n_max=25)
            eng = InfluenceEngine(tm, damping)
            p = eng.potential_vector(range(tm.n)).values
            rng = np.random.default_rng(seed)
            for s in rng.choice(tm.n, size=min(5, tm.n), replace=False):
                s = int(s)
                bound = (1.0 + damping.values[s]) * p[s]
                assert delta_complete(eng, [], s) <= bound + 1e-8

    def test_fast_equals_complete_without_feedback(self, eng3):
        # on a cycle-free graph both coincide for the empty set
        assert delta_fast(eng3, [], 1) == pytest.approx(
            delta_complete(eng3, [], 1), abs=1e-9)


class TestGreedyOnFixtures:
    def test_cc_picks_tie_by_lower_id(self, eng3):
        sel = greedy_select(eng3, 2, "cc")
        assert sel.seeds == (0, 1)
        assert sel.marginal_gains[0] == pytest.approx(2.5972222222222223, abs=1e-9)
        assert sel.marginal_gains[1] == pytest.approx(0.2361111111111111, abs=1e-9)

    def test_cf_prefers_sink(self, eng3):
        sel = greedy_select(eng3, 2, "cf")
        assert sel.seeds == (0, 2)
        assert sel.marginal_gains[1] == pytest.approx(0.5833333333333334, abs=1e-9)

    def test_full_exhaustion(self, eng3):
        sel = greedy_select(eng3, 3, "cc")
        assert set(sel.seeds) == {0, 1, 2}
        assert sum(sel.marginal_gains) == pytest.approx(3.0, abs=1e-9)

    def test_k_validated(self, eng3):
        with pytest.raises(ValidationError):
            greedy_select(eng3, 0, "cc")
        with pytest.raises(ValidationError):
            greedy_select(eng3, 4, "cc")

    def test_unknown_method(self, eng3):
        with pytest.raises(ValidationError, match="method"):
            greedy_select(eng3, 1, "newton")

    def test_deterministic_reruns(self, g3c_tm, lam3):
        a = greedy_select(InfluenceEngine(g3c_tm, lam3), 2, "cc")
        b = greedy_select(InfluenceEngine(g3c_tm, lam3), 2, "cc")
        assert a.seeds == b.seeds
        assert a.marginal_gains == b.marginal_gains
        assert a.evaluations == b.evaluations


class TestLazyPruning:
    @pytest.mark.parametrize("method", ["cc", "cf"])
    def test_matches_exhaustive_on_random_graphs(self, method):
        for seed in range(10):
            graph, tm, damping, T, lam = random_wc_instance(seed + 40, n_min=8,
                                                            n_max=40)
            k = min(4, tm.n)
            pruned = greedy_select(InfluenceEngine(tm, damping), k, method)
            full = greedy_select(InfluenceEngine(tm, damping), k, method,
                                 prune=False)
            assert pruned.seeds == full.seeds
            assert_vec(pruned.marginal_gains, full.marginal_gains, 1e-12)
            assert pruned.evaluations <= full.evaluations

    def test_gains_non_increasing(self):
        for seed in range(6):
            graph, tm, damping, T, lam = random_wc_instance(seed + 70, n_min=8,
                                                            n_max=30)
            k = min(5, tm.n)
            for method in ("cc", "cf"):
                sel = greedy_select(InfluenceEngine(tm, damping), k, method)
                gains = np.array(sel.marginal_gains)
                assert np.all(np.diff(gains) <= 1e-9)

    def test_cf_first_seed_matches_ranking(self):
        # with uniform damping the cf queue seed order is the walk-score order
        for seed in range(5):
            graph, tm, damping, T, lam = random_wc_instance(
                seed + 200, n_min=5, n_max=30, lam=0.25)
            sel = greedy_select(InfluenceEngine(tm, damping), 1, "cf")
            ranked = pagerank_rank(tm, 0.25, range(tm.n))
            assert sel.seeds[0] == ranked.order[0]


class TestCelf:
    def test_g3_single_seed_gain(self, g3_tm):
        sel = celf_ic_select(g3_tm, 1, trials=100_000, rng_seed=123)
        assert sel.seeds == (0,)
        assert sel.marginal_gains[0] == pytest.approx(2.75, abs=0.02)

    def test_g3_second_seed_completes_sink(self, g3_tm):
        # adding node 1 after node 0 adds nothing (already surely active);
        # adding node 2 completes the 0.25 gap
        sel = celf_ic_select(g3_tm, 2, trials=100_000, rng_seed=123)
        assert sel.seeds == (0, 2)
        assert sel.marginal_gains[1] == pytest.approx(0.25, abs=0.02)

    def test_deterministic(self, g3c_tm):
        a = celf_ic_select(g3c_tm, 2, trials=400, rng_seed=9)
        b = celf_ic_select(g3c_tm, 2, trials=400, rng_seed=9)
        assert a.seeds == b.seeds and a.marginal_gains == b.marginal_gains

    def test_matches_exhaustive(self, g3c_tm):
        a = celf_ic_select(g3c_tm, 2, trials=300, rng_seed=5)
        b = celf_ic_select(g3c_tm, 2, trials=300, rng_seed=5, prune=False)
        assert a.seeds == b.seeds

    def test_trials_validated(self, g3_tm):
        with pytest.raises(ValidationError):
            celf_ic_select(g3_tm, 1, trials=0, rng_seed=1)


class TestPagerank:
    def test_g3_order(self, g3_tm):
        ranked = pagerank_rank(g3_tm, 0.2, [0, 1, 2])
        assert ranked.order == (0, 1, 2)

    def test_edgeless_uniform_score(self):
        tm = build_wc_transmission(InfluenceGraph.from_arcs([], nodes=[1, 2, 3]))
        ranked = pagerank_rank(tm, 0.2, [0, 1, 2])
        assert_vec(ranked.scores, [1 / 18, 1 / 18, 1 / 18], 1e-9)

    def test_proportional_to_potentials(self):
        for seed in range(6):
            graph, tm, damping, T, lam = random_wc_instance(
                seed + 500, n_max=30, lam=0.3)
            eng = InfluenceEngine(tm, damping)
            rng = np.random.default_rng(seed)
            topic = sorted(
                int(v) for v in
                rng.choice(tm.n, size=max(1, tm.n // 4), replace=False))
            scores = pagerank_rank(tm, 0.3, topic).scores
            potentials = eng.potential_vector(topic).values
            factor = 0.3 / len(topic)
            mask = potentials > 1e-12
            rel = np.abs(scores[mask] / potentials[mask] - factor) / factor
            assert np.max(rel) < 1e-6
            assert np.all(scores[~mask] < 1e-12)

    def test_topic_validated(self, g3_tm):
        with pytest.raises(ValidationError):
            pagerank_rank(g3_tm, 0.2, [])


class TestDegreeBaselines:
    def test_degree_topk(self, g3_graph):
        assert degree_topk(g3_graph, 2).seeds == (0, 1)

    def test_degree_ties_lower_id(self):
        g = InfluenceGraph.from_arcs([(1, 2, 1.0), (3, 2, 1.0)], nodes=[4])
        assert degree_topk(g, 2).seeds == (0, 2)

    def test_degree_discount_example(self, g3_graph):
        sel = degree_discount_topk(g3_graph, 2, p=0.01)
        assert sel.seeds == (0, 1)
        # after selecting node 0: both discounted, middle node wins the tiebreak
        assert sel.marginal_gains[1] == pytest.approx(-1.0, abs=1e-12)

    def test_degree_discount_sink_score(self, g3_graph):
        sel = degree_discount_topk(g3_graph, 3, p=0.01)
        assert sel.seeds == (0, 1, 2)
        # sink discounted twice by then: 0 - 2*2 - (0-2)*2*0.01 = -3.96
        assert sel.marginal_gains[2] == pytest.approx(-3.96, abs=1e-12)

    def test_edgeless_all_zero(self):
        g = InfluenceGraph.from_arcs([], nodes=[1, 2, 3])
        sel = degree_discount_topk(g, 2)
        assert sel.seeds == (0, 1)
        assert sel.marginal_gains == (0.0, 0.0)

    def test_k_validated(self, g3_graph):
        with pytest.raises(ValidationError):
            degree_topk(g3_graph, 0)
        with pytest.raises(ValidationError):
            degree_discount_topk(g3_graph, 4)
