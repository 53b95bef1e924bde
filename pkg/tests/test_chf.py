from itertools import combinations

import numpy as np
import pytest

from netinfer import (MatchingTransform, Protocol, any_feasible, chf_allbutk,
                      chf_allbutk_always_changing, chf_unanimity, is_feasible,
                      matching_transform, oracle_examples)
from netinfer.experiments import all_labellings


def _transform(rows, preds):
    return MatchingTransform(np.array(rows, dtype=np.int8),
                             np.array(preds, dtype=bool))


def _sets_to_transform(matching_sets, n, preds=None):
    m = len(matching_sets)
    entries = np.full((m, n), -1, dtype=np.int8)
    for k, s in enumerate(matching_sets):
        for j in s:
            entries[k, j] = 1
    preds = [True] * m if preds is None else preds
    return _transform(entries, preds)


class TestChfUnanimity:
    def test_single_changed_row(self):
        M = _sets_to_transform([{0, 1}], n=4)
        assert chf_unanimity(M) == {0, 1}

    def test_intersection_of_two(self):
        M = _sets_to_transform([{0, 1, 2}, {1, 2, 3}], n=4)
        assert chf_unanimity(M) == {1, 2}

    def test_no_changed_rows_full_set_convention(self):
        # all-unchanged sample with every matching set populated
        M = _sets_to_transform([{0, 2}, {1, 2}], n=3, preds=[False, False])
        assert chf_unanimity(M) == {0, 1, 2}

    def test_infeasible_returns_none(self):
        # the changed row pins candidates to {0}, but the unchanged row
        # needs an agreeing influencer outside it
        M = _sets_to_transform([{0}, {1}], n=3, preds=[True, False])
        assert chf_unanimity(M) is None

    def test_exhaustive_n4_nonempty_truth(self):
        labels_all = all_labellings(4)
        proto = Protocol.unanimity()
        for g_mask in range(1, 16):
            truth = frozenset(j for j in range(4) if (g_mask >> j) & 1)
            exs = oracle_examples(truth, proto, labels_all)
            for rows in combinations(range(16), 2):
                M = matching_transform([exs[r] for r in rows])
                got = chf_unanimity(M)
                assert got is not None
                assert is_feasible(M, got, proto)


class TestChfAlwaysChanging:
    def test_kappa0_returns_singleton_inside_intersection(self):
        M = _sets_to_transform([{1, 2}, {1, 3}], n=4)
        got = chf_allbutk_always_changing(M, 0)
        assert got == {1}

    def test_kappa1_lexicographic_pair(self):
        M = _sets_to_transform([{0, 1}, {1, 2}, {0, 2}], n=3)
        got = chf_allbutk_always_changing(M, 1)
        assert got == {0, 1}

    def test_rejects_mixed_sample(self):
        M = _sets_to_transform([{0}], n=2, preds=[False])
        with pytest.raises(ValueError):
            chf_allbutk_always_changing(M, 0)

    def test_empty_sample_first_candidate_at_top_size(self):
        # the size scan runs kappa+1 downward, so with nothing to check the
        # lexicographically first pair comes back
        M = matching_transform([], n=3)
        assert chf_allbutk_always_changing(M, 1) == {0, 1}

    def test_soundness_and_cover_completeness(self):
        # returns a set iff some <=kappa+1 subset hits every matching set;
        # returned sets are feasible and within the kappa+1 size bound
        rng = np.random.default_rng(4)
        for _ in range(300):
            n = int(rng.integers(1, 6))
            m = int(rng.integers(1, 5))
            kappa = int(rng.integers(0, 3))
            entries = rng.integers(0, 2, size=(m, n), dtype=np.int8) * 2 - 1
            M = _transform(entries, [True] * m)
            got = chf_allbutk_always_changing(M, kappa)
            sets = [frozenset(np.flatnonzero(entries[k] == 1).tolist())
                    for k in range(m)]
            cover_exists = any(
                all(set(cand) & s for s in sets)
                for size in range(1, min(kappa + 1, n) + 1)
                for cand in combinations(range(n), size))
            assert (got is not None) == cover_exists
            if got is not None:
                assert len(got) <= kappa + 1
                assert is_feasible(M, got, Protocol.all_but_k(kappa))


class TestChfAllButK:
    def test_empty_sample_returns_empty_set(self):
        M = matching_transform([], n=4)
        assert chf_allbutk(M, 0) == set()

    def test_agrees_with_unanimity_finder_on_verdict(self):
        rng = np.random.default_rng(17)
        for _ in range(250):
            n = int(rng.integers(1, 6))
            m = int(rng.integers(1, 6))
            entries = rng.integers(0, 2, size=(m, n), dtype=np.int8) * 2 - 1
            preds = rng.random(m) < 0.5
            M = _transform(entries, preds)
            assert ((chf_allbutk(M, 0) is None)
                    == (chf_unanimity(M) is None))

    def test_max_size_cap(self):
        # feasible sets need at least kappa+1 = 2 agents here
        M = _sets_to_transform([{0, 1}], n=3, preds=[False])
        assert chf_allbutk(M, 1) == {0, 1}
        assert chf_allbutk(M, 1, max_size=1) is None

    def test_oracle_data_size_bound(self):
        rng = np.random.default_rng(29)
        for _ in range(150):
            n = int(rng.integers(1, 6))
            kappa = int(rng.integers(0, 3))
            labels = rng.integers(0, 2, size=(4, n), dtype=np.int8) * 2 - 1
            truth = frozenset(int(j) for j in np.flatnonzero(rng.random(n) < 0.5))
            proto = Protocol.all_but_k(kappa)
            M = matching_transform(oracle_examples(truth, proto, labels), n=n)
            got = chf_allbutk(M, kappa)
            assert got is not None
            assert len(got) <= len(truth)
            assert is_feasible(M, got, proto)

    def test_verdict_matches_bruteforce(self):
        rng = np.random.default_rng(31)
        for _ in range(150):
            n = int(rng.integers(1, 6))
            m = int(rng.integers(1, 5))
            kappa = int(rng.integers(0, 3))
            entries = rng.integers(0, 2, size=(m, n), dtype=np.int8) * 2 - 1
            preds = rng.random(m) < 0.5
            M = _transform(entries, preds)
            proto = Protocol.all_but_k(kappa)
            assert (chf_allbutk(M, kappa) is not None) == any_feasible(M, proto)
