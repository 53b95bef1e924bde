"""Hitting-Set <-> feasible-influencer-set reduction for majority dynamics.

Encodes a Hitting Set instance (sets S_1..S_m over a universe, budget d) as
an always-changing sample over n = |universe| + d + 1 agents and m + d + 2
examples.  A size-d hitting set exists iff the encoding admits a feasible
influencer set, and every feasible set consists of all d+1 auxiliary agents
plus exactly d element agents, which decode back to a hitting set.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np

from .core import InfluencerSet, MatchingTransform


@dataclass(frozen=True)
class HittingSetInstance:
    universe: tuple[Hashable, ...]
    sets: tuple[frozenset, ...]
    budget: int

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if len(set(self.universe)) != len(self.universe):
            raise ValueError("universe elements must be distinct")
        if not self.sets:
            raise ValueError("at least one input set is required")
        uni = set(self.universe)
        covered = set()
        for s in self.sets:
            extra = s - uni
            if extra:
                raise ValueError(f"set elements outside the universe: {extra}")
            covered |= s
        if covered != uni:
            raise ValueError("universe must equal the union of the input sets")

    @classmethod
    def from_lists(cls, universe: Sequence, sets: Sequence[Iterable],
                   budget: int) -> "HittingSetInstance":
        return cls(tuple(universe), tuple(frozenset(s) for s in sets),
                   int(budget))


@dataclass(frozen=True)
class ReductionLayout:
    """Agent arrangement of an encoding: auxiliaries first, then elements."""

    a_agents: tuple[int, ...]
    b_agents: tuple[int, ...]
    elements: tuple[Hashable, ...]  # element carried by each b agent, in order
    budget: int
    num_sets: int

    @property
    def n(self) -> int:
        return len(self.a_agents) + len(self.b_agents)

    @property
    def m_hat(self) -> int:
        return self.num_sets + self.budget + 2


def encode_hitting_set(instance: HittingSetInstance):
    """Build the matching transform of the reduction.

    Rows 1..m carry a_2..a_{d+1} plus the element agents of S_k; the next
    d+1 rows carry one auxiliary each plus every element agent; the last row
    carries exactly the auxiliaries.  Every prediction is "changed".
    """
    d = instance.budget
    m = len(instance.sets)
    elements = instance.universe
    n_hat = len(elements)
    n = n_hat + d + 1
    m_hat = m + d + 2
    col_of = {e: d + 1 + i for i, e in enumerate(elements)}

    entries = np.full((m_hat, n), -1, dtype=np.int8)
    for k, s in enumerate(instance.sets):
        entries[k, 1:d + 1] = 1  # a_2 .. a_{d+1}
        for e in s:
            entries[k, col_of[e]] = 1
    for j in range(d + 1):
        k = m + j
        entries[k, j] = 1
        entries[k, d + 1:] = 1
    entries[m_hat - 1, :d + 1] = 1

    transform = MatchingTransform(entries, np.ones(m_hat, dtype=bool))
    layout = ReductionLayout(
        a_agents=tuple(range(d + 1)),
        b_agents=tuple(range(d + 1, n)),
        elements=tuple(elements),
        budget=d,
        num_sets=m,
    )
    return transform, layout


def decode_feasible_set(influencers: Iterable[int],
                        layout: ReductionLayout) -> frozenset | None:
    """Map a feasible set back to a hitting set, or None if malformed.

    A conforming set contains every auxiliary agent and exactly ``budget``
    element agents; anything else cannot be feasible on an encoding, so a
    None here for a set that passed the feasibility check would contradict
    the reduction.
    """
    chosen = frozenset(int(a) for a in influencers)
    a_set = frozenset(layout.a_agents)
    if not a_set <= chosen:
        return None
    b_chosen = chosen - a_set
    if len(b_chosen) != layout.budget or not b_chosen <= frozenset(layout.b_agents):
        return None
    offset = len(layout.a_agents)
    return frozenset(layout.elements[b - offset] for b in b_chosen)


def reduction_epsilon(m: int, d: int) -> float:
    """Error bound forcing an approximate learner to be exactly consistent.

    Under the uniform distribution on the m+d+2 encoded examples, any
    hypothesis with error below 1/(m+d+2) misclassifies none of them, so
    1/(m+d+3) suffices.
    """
    if m < 1 or d < 1:
        raise ValueError("m and d must be >= 1")
    return 1.0 / (m + d + 3)


def solve_hitting_set(instance: HittingSetInstance) -> frozenset | None:
    """Exhaustive size-d hitting set search (test-scale ground truth)."""
    for cand in combinations(instance.universe, instance.budget):
        chosen = set(cand)
        if all(chosen & s for s in instance.sets):
            return frozenset(cand)
    return None
