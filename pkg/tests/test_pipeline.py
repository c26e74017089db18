"""
Test the compilation pipeline and sweeps
"""
import pytest

from muxbench.models.options import GroupingStrategy, SerializerOptions
from muxbench.processors.benchgen import ghz, qft
from muxbench.services.pipeline import compile_circuit
from muxbench.services.sweeps import (
    SeedTask,
    merge_tables,
    optimization_study,
    random_sweep,
    random_tasks,
    ratio_study,
    run_seed_task,
    run_tasks,
    sweep_k,
)
from muxbench.utils.error_handlers import ValidationError


class TestPipeline:
    """Test single-circuit compilation."""

    def test_adjacent_ghz_needs_no_routing(self, grid5):
        run = compile_circuit(ghz(5), grid5, k=1, name="ghz5", algo="ghz")
        assert run.stage.routed.swap_count == 0
        assert run.report.t_translated_ns == run.report.t_routed_ns == run.report.t_serialized_ns
        assert run.report.n == 5
        assert run.report.circuit == "ghz5"

    def test_overheads_over_k(self, eagle):
        reports = sweep_k(qft(6), eagle, GroupingStrategy.TRIVIAL, ks=[6, 1, 3, 2], seeds=[2]).rows
        assert [r.k for r in reports] == [1, 2, 3, 6]
        assert len({r.t_routed_ns for r in reports}) == 1
        assert reports[0].abs_overhead_ns == 0
        assert all(r.t_serialized_ns >= r.t_routed_ns >= r.t_translated_ns for r in reports)

    def test_report_records_options(self, grid5):
        options = SerializerOptions(order_heuristic="by_index", hide_delays=False)
        run = compile_circuit(qft(4), grid5, k=4, strategy=GroupingStrategy.CLUSTERED, seed=1, options=options)
        assert run.report.order == "by_index"
        assert run.report.hide_delays is False
        assert run.report.strategy == "clustered"
        assert run.grouping.k == 4


class TestSweeps:
    """Test seed-parallel sweeps."""

    def test_sweep_k(self, grid5):
        table = sweep_k(ghz(8), grid5, GroupingStrategy.RANDOM, ks=[4, 1, 2], seeds=[1, 2, 3], name="ghz8")
        assert len(table.rows) == 9
        assert [r.k for r in table.rows] == [1, 1, 1, 2, 2, 2, 4, 4, 4]
        assert [s.k for s in table.summary] == [1, 2, 4]
        assert all(s.samples == 3 for s in table.summary)

    def test_merge_tables(self, grid5):
        first = sweep_k(ghz(4), grid5, GroupingStrategy.TRIVIAL, ks=[1, 2], seeds=[0], name="ghz4")
        second = sweep_k(qft(4), grid5, GroupingStrategy.TRIVIAL, ks=[1, 2], seeds=[0], name="qft4")
        merged = merge_tables([second, first])
        assert [(r.circuit, r.k) for r in merged.rows] == [("ghz4", 1), ("ghz4", 2), ("qft4", 1), ("qft4", 2)]
        assert {(s.circuit, s.k) for s in merged.summary} == {("ghz4", 1), ("ghz4", 2), ("qft4", 1), ("qft4", 2)}

    def test_random_sweep(self, grid5):
        table = random_sweep(grid5, [60, 30], [1, 5], GroupingStrategy.TRIVIAL, seeds=[0, 1])
        assert [r.num_gates for r in table.rows][:4] == [30, 30, 30, 30]
        assert {r.circuit for r in table.rows} == {"random_g30", "random_g60"}
        assert all(r.abs_overhead_ns == 0 for r in table.rows if r.k == 1)

    def test_workers_do_not_change_rows(self, grid5):
        tasks = random_tasks(grid5, [80], [2, 5], GroupingStrategy.RANDOM, [3, 4], [SerializerOptions()])
        assert run_tasks(tasks, jobs=1) == run_tasks(tasks, jobs=2)

    def test_optimization_study(self, grid5):
        rows, reports = optimization_study(grid5, [150], [5], seeds=[0, 1, 2])
        assert len(rows) == 4
        assert len(reports) == 12
        medians = {(r.order, r.hide_delays): r.median_duration_ns for r in rows}
        for order in ("by_index", "distance_to_next_2q"):
            assert medians[(order, True)] <= medians[(order, False)]

    def test_ratio_study(self, grid5):
        rows = ratio_study(grid5, [10, 1], [3], num_gates=100, seeds=[0, 1])
        assert [(r.ratio, r.k) for r in rows] == [(1, 3), (10, 3)]
        assert all(r.samples == 2 and r.median_rel_overhead >= 1.0 for r in rows)

    def test_empty_grid(self, grid5):
        with pytest.raises(ValidationError):
            sweep_k(ghz(3), grid5, GroupingStrategy.TRIVIAL, ks=[], seeds=[0])
        with pytest.raises(ValidationError):
            random_sweep(grid5, [], [2], GroupingStrategy.TRIVIAL, seeds=[0])

    def test_task_without_circuit(self, grid5):
        task = SeedTask(spec=grid5, ks=(2,), strategy=GroupingStrategy.TRIVIAL, seed=0, options=(), name="x")
        with pytest.raises(ValidationError):
            run_seed_task(task)
