"""Exhaustive feasibility oracle over all 2^n candidate sets.

This is the ground truth behind the equivalence and completeness tests: it
enumerates every subset as a bitmask (kernel-accelerated) and reports the
feasible ones.  Guarded by ``max_n`` since the enumeration is exponential.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .core import InfluencerSet, MatchingTransform, Protocol

DEFAULT_MAX_N = 20


def _feasible_flags(transform: MatchingTransform, protocol: Protocol,
                    max_n: int) -> np.ndarray:
    if transform.n > max_n:
        raise ValueError(
            f"n={transform.n} exceeds the enumeration guard ({max_n}); "
            "raise max_n explicitly to override")
    return _kernels.brute_feasible(transform.entries, transform.predictions,
                                   protocol.kind_code, protocol.threshold)


def _mask_to_set(msk: int) -> InfluencerSet:
    out = []
    j = 0
    while msk:
        if msk & 1:
            out.append(j)
        msk >>= 1
        j += 1
    return frozenset(out)


def all_feasible_sets(transform: MatchingTransform, protocol: Protocol,
                      max_n: int = DEFAULT_MAX_N) -> list[InfluencerSet]:
    """Every feasible subset, smallest first, lexicographic within a size."""
    flags = _feasible_flags(transform, protocol, max_n)
    sets = [_mask_to_set(int(msk)) for msk in np.flatnonzero(flags)]
    sets.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return sets


def any_feasible(transform: MatchingTransform, protocol: Protocol,
                 max_n: int = DEFAULT_MAX_N) -> bool:
    return bool(_feasible_flags(transform, protocol, max_n).any())


def min_feasible_size(transform: MatchingTransform, protocol: Protocol,
                      max_n: int = DEFAULT_MAX_N) -> int | None:
    """Cardinality of the smallest feasible set, or None if none exists."""
    flags = _feasible_flags(transform, protocol, max_n)
    feasible = np.flatnonzero(flags)
    if feasible.size == 0:
        return None
    return min(int(msk).bit_count() for msk in feasible)
