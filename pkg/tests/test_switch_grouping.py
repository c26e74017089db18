"""
Test switch grouping strategies
"""
import json
import math

import pydantic
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muxbench.models.grouping import SwitchGrouping, write_grouping
from muxbench.models.options import GroupingStrategy
from muxbench.processors.switch_grouping import (
    balanced_sizes,
    build_grouping,
    clustered_grouping,
    dispersed_grouping,
    distinct_switch_ks,
    random_grouping,
    trivial_grouping,
)
from muxbench.utils.error_handlers import ValidationError


def min_intra_distance(coupling, grouping):
    dist = coupling.distance_matrix
    pairs = [(a, b) for g in grouping.groups for i, a in enumerate(g) for b in g[i + 1:]]
    return min((float(dist[a, b]) for a, b in pairs), default=math.inf)


def assert_partition(grouping, n, k):
    assert sorted(q for g in grouping.groups for q in g) == list(range(n))
    assert grouping.m == math.ceil(n / k)
    sizes = [len(g) for g in grouping.groups]
    assert max(sizes) <= k
    assert max(sizes) - min(sizes) <= 1


class TestBalancedSizes:
    """Test group sizes."""

    @pytest.mark.parametrize(
        "n,k,expected",
        [
            (25, 20, [13, 12]),
            (25, 4, [4, 4, 4, 4, 3, 3, 3]),
            (10, 5, [5, 5]),
            (3, 1, [1, 1, 1]),
            (7, 7, [7]),
        ],
    )
    def test_sizes(self, n, k, expected):
        assert balanced_sizes(n, k) == expected

    @pytest.mark.parametrize("k", [0, 26])
    def test_out_of_range(self, k):
        with pytest.raises(ValidationError):
            balanced_sizes(25, k)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=1, max_value=60).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))))
    def test_sizes_are_balanced(self, nk):
        n, k = nk
        sizes = balanced_sizes(n, k)
        assert sum(sizes) == n
        assert len(sizes) == math.ceil(n / k)
        assert max(sizes) <= k and max(sizes) - min(sizes) <= 1
        assert sizes == sorted(sizes, reverse=True)

    def test_distinct_switch_ks(self):
        assert distinct_switch_ks(25) == [1, 2, 3, 4, 5, 7, 9, 13, 25]
        assert distinct_switch_ks(36) == [1, 2, 3, 4, 5, 6, 8, 9, 12, 18, 36]

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=1, max_value=200))
    def test_distinct_switch_ks_cover_every_count(self, n):
        ks = distinct_switch_ks(n)
        counts = [math.ceil(n / k) for k in ks]
        assert len(set(counts)) == len(ks)
        assert set(counts) == {math.ceil(n / k) for k in range(1, n + 1)}


class TestStrategies:
    """Test each grouping strategy."""

    def test_trivial(self):
        grouping = trivial_grouping(5, 2)
        assert grouping.groups == [[0, 1], [2, 3], [4]]
        assert grouping.group_of == [0, 0, 1, 1, 2]

    def test_random_is_seeded(self):
        first = random_grouping(25, 5, seed=3)
        assert first.groups == random_grouping(25, 5, seed=3).groups
        assert first.groups != random_grouping(25, 5, seed=4).groups
        assert first.metadata == {"seed": 3}
        assert_partition(first, 25, 5)

    @pytest.mark.parametrize("strategy", list(GroupingStrategy))
    @pytest.mark.parametrize("k", [1, 3, 5, 20, 25])
    def test_every_strategy_partitions(self, grid5, strategy, k):
        grouping = build_grouping(strategy, grid5.coupling, k, seed=1)
        assert grouping.strategy == strategy.value
        assert_partition(grouping, 25, k)

    def test_k_beyond_register(self, grid5):
        with pytest.raises(ValidationError):
            build_grouping(GroupingStrategy.CLUSTERED, grid5.coupling, 26)

    def test_clustered_history_improves(self, grid5):
        grouping = clustered_grouping(grid5.coupling, 5, seed=2)
        history = [tuple(h) for h in grouping.metadata["objective_history"]]
        assert all(a < b for a, b in zip(history, history[1:]))
        assert history[-1][0] <= grouping.m

    def test_clustered_singletons_do_not_move(self, grid5):
        grouping = clustered_grouping(grid5.coupling, 1, seed=0)
        assert grouping.metadata["objective_history"] == [[25, 0]]

    def test_dispersed_distance(self, grid5):
        grouping = dispersed_grouping(grid5.coupling, 5)
        d = grouping.metadata["d"]
        assert d >= 1
        assert min_intra_distance(grid5.coupling, grouping) >= d

    def test_dispersed_single_switch(self, grid5):
        grouping = dispersed_grouping(grid5.coupling, 25)
        assert grouping.metadata["d"] == 1
        assert min_intra_distance(grid5.coupling, grouping) == 1

    def test_singletons_have_no_intra_distance(self, grid5):
        assert min_intra_distance(grid5.coupling, trivial_grouping(25, 1)) == math.inf


class TestSwitchGroupingModel:
    """Test the grouping schema."""

    def test_written_as_json(self, tmp_path):
        path = write_grouping(trivial_grouping(7, 3), tmp_path / "switches.json")
        assert json.loads(path.read_text()) == {"k": 3, "groups": [[0, 1, 2], [3, 4], [5, 6]]}

    def test_unbalanced_rejected(self):
        with pytest.raises(pydantic.ValidationError):
            SwitchGrouping(k=3, n=4, groups=[[0, 1, 2], [3]])

    def test_missing_qubit_rejected(self):
        with pytest.raises(pydantic.ValidationError):
            SwitchGrouping(k=2, n=4, groups=[[0, 1], [2, 2]])
