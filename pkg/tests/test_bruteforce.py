import numpy as np
import pytest

from netinfer import (MatchingTransform, Protocol, all_feasible_sets,
                      any_feasible, is_feasible, matching_transform,
                      min_feasible_size, transform_from_arrays)

MAJ = Protocol.majority()


def _transform(rows, preds):
    return MatchingTransform(np.array(rows, dtype=np.int8),
                             np.array(preds, dtype=bool))


class TestAllFeasibleSets:
    def test_empty_sample_every_subset(self):
        M = matching_transform([], n=3)
        sets = all_feasible_sets(M, MAJ)
        assert len(sets) == 8
        # smallest first, lexicographic inside each size
        assert sets[:4] == [frozenset(), {0}, {1}, {2}]
        assert sets[4:] == [{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}]

    def test_worked_example_contains_truth(self):
        M = _transform([[-1, -1, 1, 1, 1], [-1, -1, 1, 1, -1]], [True, False])
        sets = all_feasible_sets(M, MAJ)
        assert frozenset({2, 3, 4}) in sets

    def test_guard_refuses_large_n(self):
        M = matching_transform([], n=22)
        with pytest.raises(ValueError):
            all_feasible_sets(M, MAJ)
        assert min_feasible_size(M, MAJ, max_n=22) == 0

    def test_agrees_with_is_feasible(self):
        rng = np.random.default_rng(19)
        for _ in range(60):
            n = int(rng.integers(1, 6))
            m = int(rng.integers(1, 5))
            entries = rng.integers(0, 2, size=(m, n), dtype=np.int8) * 2 - 1
            preds = rng.random(m) < 0.5
            M = MatchingTransform(entries, preds)
            found = set(map(frozenset, all_feasible_sets(M, MAJ)))
            for msk in range(1 << n):
                cand = frozenset(j for j in range(n) if (msk >> j) & 1)
                assert (cand in found) == is_feasible(M, cand, MAJ)


class TestMinFeasibleSize:
    def test_all_unchanged_zero(self):
        M = _transform([[1, -1], [-1, 1]], [False, False])
        assert min_feasible_size(M, MAJ) == 0

    def test_unanimity_singleton(self):
        # oracle sample from the one-agent truth {0}: one change (agent 0
        # disagreeing) and one non-change (agent 0 agreeing)
        M = transform_from_arrays(
            np.array([[-1, 1, 1], [1, -1, -1]], dtype=np.int8),
            np.array([True, False]))
        assert min_feasible_size(M, Protocol.unanimity()) == 1

    def test_infeasible_returns_none(self):
        M = _transform([[-1, -1]], [True])
        assert min_feasible_size(M, MAJ) is None
        assert not any_feasible(M, MAJ)
