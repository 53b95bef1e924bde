"""Exact consistent-hypothesis finders for all-but-kappa dynamics.

All three finders return a feasible influencer set (frozenset) or ``None``
when the search establishes that none is reachable.  Enumeration order is
pinned for reproducibility: sizes are scanned in the documented direction
and combinations lexicographically within each size.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .core import (InfluencerSet, MatchingTransform, Protocol, is_feasible,
                   set_from_mask)


def chf_unanimity(transform: MatchingTransform) -> InfluencerSet | None:
    """Intersect the matching sets of all changed rows, then verify.

    Any feasible set must sit inside every changed row's matching set under
    unanimity, and supersets stay feasible, so the full intersection is
    feasible whenever anything is.  With no changed rows the empty
    intersection convention yields the full agent set.  O(m n) plus the
    verification.
    """
    entries = transform.entries
    mask = np.ones(transform.n, dtype=np.bool_)
    for k in np.flatnonzero(transform.predictions):
        mask &= entries[k] == 1
    candidate = set_from_mask(mask)
    if is_feasible(transform, candidate, Protocol.unanimity()):
        return candidate
    return None


def chf_allbutk_always_changing(transform: MatchingTransform,
                                kappa: int) -> InfluencerSet | None:
    """Bounded search for always-changing samples.

    Scans subsets of size kappa+1 down to 0 and returns the first one that
    intersects every row's matching set.  Such a set explains every changed
    row with at least one disagreeing influencer while keeping at most kappa
    agents outside each matching set.  Requires every prediction to be True.
    """
    if kappa < 0:
        raise ValueError("kappa must be >= 0")
    if not transform.predictions.all():
        raise ValueError("sample must be always-changing (every prediction True)")
    n = transform.n
    positive = transform.entries == 1
    for size in range(min(kappa + 1, n), -1, -1):
        for cand in combinations(range(n), size):
            idx = np.fromiter(cand, dtype=np.int64, count=size)
            if size == 0:
                hits_every_row = transform.m == 0
            else:
                hits_every_row = bool(positive[:, idx].any(axis=1).all())
            if hits_every_row:
                return frozenset(cand)
    return None


def chf_allbutk(transform: MatchingTransform, kappa: int,
                max_size: int | None = None) -> InfluencerSet | None:
    """General finder: smallest-first exhaustive search.

    Enumerates candidate sets by increasing size (lexicographic within a
    size) and returns the first one consistent with every example.  On data
    produced by a true influencer set G the search never passes size |G|,
    since G itself is consistent.  ``max_size`` caps the search depth on
    adversarial inputs; default is n.
    """
    if kappa < 0:
        raise ValueError("kappa must be >= 0")
    n = transform.n
    cap = n if max_size is None else min(max_size, n)
    protocol = Protocol.all_but_k(kappa)
    for size in range(cap + 1):
        for cand in combinations(range(n), size):
            if is_feasible(transform, cand, protocol):
                return frozenset(cand)
    return None
