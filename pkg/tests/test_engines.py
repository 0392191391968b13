import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfopt.core import Individual, is_valid_genome
from mfopt.engines import (
    EngineConfig,
    GenerationRecord,
    RmpMatrix,
    RunTrace,
    rmp_update,
    run_dmfea2,
    run_mfea,
    transfer_outcome,
)


@pytest.fixture
def two_tasks(square_tsp, line_tsp):
    return [square_tsp, line_tsp]


def small_config(**kw):
    defaults = dict(population_size=20, eval_budget=400)
    defaults.update(kw)
    return EngineConfig(**defaults)


class TestRmpMatrix:
    def test_initial_matrix(self):
        m = RmpMatrix.initial(3, 0.95, 0.99, 0.99)
        assert m.entries.shape == (3, 3)
        assert (m.entries == 0.95).all()

    def test_positive_update_divides(self):
        m = RmpMatrix.initial(2, 0.5, 0.99, 0.99)
        rmp_update(m, 0, 1, transfer_positive=True)
        assert m.get(0, 1) == pytest.approx(0.5 / 0.99)
        assert m.get(1, 0) == m.get(0, 1)  # symmetry is maintained

    def test_negative_update_multiplies(self):
        m = RmpMatrix.initial(2, 0.5, 0.99, 0.99)
        rmp_update(m, 0, 1, transfer_positive=False)
        assert m.get(0, 1) == pytest.approx(0.5 * 0.99)

    def test_ceiling_and_floor(self):
        m = RmpMatrix.initial(2, 0.999, 0.99, 0.99)
        rmp_update(m, 0, 1, True)
        assert m.get(0, 1) == 1.0
        m2 = RmpMatrix.initial(2, 0.1004, 0.99, 0.99)
        rmp_update(m2, 0, 1, False)
        assert m2.get(0, 1) == 0.1

    @given(st.floats(min_value=0.1, max_value=1.0),
           st.floats(min_value=0.5, max_value=0.9999),
           st.booleans())
    @settings(max_examples=200, deadline=None)
    def test_update_stays_in_bounds(self, entry, delta, positive):
        m = RmpMatrix.initial(2, entry, delta, delta)
        rmp_update(m, 0, 1, positive)
        assert 0.1 <= m.get(0, 1) <= 1.0
        assert m.get(0, 1) == m.get(1, 0)


class TestTransferOutcome:
    def _pair(self, child_cost, parent_cost):
        child = Individual.fresh(np.arange(1, 4), 1)
        child.skill_factor = 0
        child.factorial_costs[0] = child_cost
        parent = Individual.fresh(np.arange(1, 4), 1)
        parent.factorial_costs[0] = parent_cost
        return child, parent

    def test_strict_improvement_required(self):
        assert transfer_outcome(*self._pair(9.0, 10.0))
        assert not transfer_outcome(*self._pair(10.0, 10.0))
        assert not transfer_outcome(*self._pair(11.0, 10.0))

    def test_unevaluated_parent_counts_positive(self):
        assert transfer_outcome(*self._pair(9.0, math.inf))


class TestEngineConfig:
    def test_odd_population_rejected(self):
        with pytest.raises(ValueError):
            EngineConfig(population_size=7)

    def test_budget_must_cover_init(self, two_tasks):
        with pytest.raises(ValueError, match="budget"):
            run_mfea(two_tasks, EngineConfig(population_size=20, eval_budget=10))


class TestTrace:
    def test_jsonl_roundtrip(self):
        trace = RunTrace([
            GenerationRecord(0, 40, [10.0, 8.0], None),
            GenerationRecord(1, 60, [9.0, 8.0], [[0.95, 0.9], [0.9, 0.95]]),
        ])
        again = RunTrace.from_jsonl(trace.to_jsonl())
        assert again == trace
        assert again.final_best_costs() == [9.0, 8.0]


@pytest.mark.parametrize("runner", [run_mfea, run_dmfea2],
                         ids=["mfea", "dmfea2"])
class TestEngineRuns:
    def test_budget_respected_and_progress(self, runner, two_tasks):
        cfg = small_config(eval_budget=600)
        best, trace = runner(two_tasks, cfg, np.random.default_rng(0))
        assert len(best) == 2
        assert trace.records[-1].evaluations >= 600
        # one extra pair of evaluations may land after the check
        assert trace.records[-1].evaluations <= 600 + 2 * len(two_tasks)
        evals = [r.evaluations for r in trace.records]
        assert evals == sorted(evals)
        for k in range(2):
            per_gen = [r.best_costs[k] for r in trace.records]
            assert per_gen == sorted(per_gen, reverse=True)  # never regresses

    def test_solves_tiny_instances(self, runner, two_tasks):
        best, _ = runner(two_tasks, small_config(eval_budget=2000),
                         np.random.default_rng(1))
        assert best[0].cost == 40.0  # square perimeter
        assert best[1].cost == 8.0   # collinear sweep
        assert is_valid_genome(best[0].genome)

    def test_deterministic_given_rng_seed(self, runner, two_tasks):
        cfg = small_config(eval_budget=800)
        b1, t1 = runner(two_tasks, cfg, np.random.default_rng(7))
        b2, t2 = runner(two_tasks, cfg, np.random.default_rng(7))
        assert [b.cost for b in b1] == [b.cost for b in b2]
        assert t1.to_jsonl() == t2.to_jsonl()

    def test_single_task(self, runner, square_tsp):
        best, _ = runner([square_tsp], small_config(eval_budget=500),
                         np.random.default_rng(2))
        assert best[0].cost == 40.0

    def test_falls_back_to_config_seed(self, runner, two_tasks):
        cfg = small_config(eval_budget=400, seed=3)
        b1, _ = runner(two_tasks, cfg)
        b2, _ = runner(two_tasks, cfg)
        assert [b.cost for b in b1] == [b.cost for b in b2]


class TestAdaptiveSpecifics:
    def test_trace_carries_rmp_snapshots(self, two_tasks):
        _, trace = run_dmfea2(two_tasks, small_config(eval_budget=600),
                              np.random.default_rng(0))
        for rec in trace.records:
            m = np.array(rec.rmp)
            assert m.shape == (2, 2)
            assert (m >= 0.1).all() and (m <= 1.0).all()
            assert np.array_equal(m, m.T)
        # the matrix actually moves from its initial value
        assert not np.allclose(trace.records[0].rmp, trace.records[-1].rmp)

    def test_baseline_trace_has_no_rmp(self, two_tasks):
        _, trace = run_mfea(two_tasks, small_config(eval_budget=600),
                            np.random.default_rng(0))
        assert all(rec.rmp is None for rec in trace.records)
