"""Greedy influencer-set search for tau-margin dynamics.

The search grows a candidate set from each source agent in turn, always
adding the agent that appears in the matching sets of the most rows that
need rescuing.  A row needs rescuing when it cannot absorb one more
non-matching agent: margin <= tau+1 on changed rows, margin <= -tau on
unchanged ones (at tau=0 these are exactly the inconsistent, inconsistent-
tie, consistent-tie and barely-consistent states).  Feasibility is verified
before every return, so a reported set is never wrong; a NotFound outcome
may be a false negative.

Hot paths run through the kernels in ``_kernels`` (numba or numpy backend).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .core import (InfluencerSet, MatchingTransform, Protocol, influencer_set,
                   is_feasible, mask_from_set, set_from_mask)

TIE_FIRST = "first"
TIE_RANDOM = "random"
TIE_FILTERS = "filters"

_TIE_CODES = {TIE_FIRST: 0, TIE_RANDOM: 1, TIE_FILTERS: 2}


@dataclass(frozen=True)
class WaterfallConfig:
    tau: int = 0
    tie_break: str = TIE_RANDOM
    seed: int = 0
    source_order: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError("tau must be >= 0")
        if self.tie_break not in _TIE_CODES:
            raise ValueError(f"unknown tie_break: {self.tie_break!r}")


@dataclass(frozen=True)
class ValidationRecord:
    """Margins observed at one of the feasibility checkpoints."""

    point: str  # "empty" | "growth" | "full"
    margins: tuple[int, ...]
    feasible: bool


@dataclass(frozen=True)
class WaterfallResult:
    found: bool
    influencers: InfluencerSet | None
    source: int | None
    additions: tuple[int, ...]
    validation_point: str | None
    checks: tuple[ValidationRecord, ...] = field(default=())


_POINT_NAMES = {0: "empty", 1: "growth", 2: "full"}


def rescue_set(transform: MatchingTransform, influencers: Iterable[int],
               tau: int = 0) -> frozenset[int]:
    """Rows that cannot absorb another non-matching agent."""
    mask = mask_from_set(influencers, transform.n)
    margins = _kernels.margins_for_mask(transform.entries, mask)
    needs = np.where(transform.predictions, margins <= tau + 1, margins <= -tau)
    return frozenset(int(k) for k in np.flatnonzero(needs))


def filters_tiebreak(transform: MatchingTransform, ambit: Iterable[int],
                     tau: int = 0) -> int:
    """Multi-filter selection among the agents tied on the rescue count.

    Takes the agents outside the ambit that match the most rescue rows,
    then, while ties persist, recounts with a margin cutoff that drops one
    observed value at a time, never counting rows at margin tau+1 with a
    changed prediction.  Final ties go to the lowest agent index.
    """
    mask = mask_from_set(ambit, transform.n)
    if mask.all():
        raise ValueError("ambit already covers every agent; nothing to pick")
    margins = _kernels.margins_for_mask(transform.entries, mask)
    needs = np.where(transform.predictions, margins <= tau + 1,
                     margins <= -tau)
    counts = (transform.entries[needs] == 1).sum(axis=0, dtype=np.int64)
    avail = ~mask
    tied = avail & (counts == counts[avail].max())
    if _kernels.BACKEND == "numba":
        return int(_kernels._filters_pick_loop(
            transform.entries, transform.predictions, margins, mask, tau,
            tied))
    return int(_kernels._filters_pick_np(
        transform.entries, transform.predictions, margins, mask, tau, tied))


def waterfall(transform: MatchingTransform,
              config: WaterfallConfig | None = None,
              initial: Iterable[int] | None = None) -> WaterfallResult:
    """Run the greedy search; see the module docstring.

    ``initial`` skips the source loop and grows from the given set instead,
    which is how the one-agent-short guarantee is exercised in tests; the
    empty-set and full-set checkpoints still apply as usual.
    """
    config = config or WaterfallConfig()
    n = transform.n
    if config.source_order is None:
        order = np.arange(n, dtype=np.int64)
    else:
        order = np.array([int(s) for s in config.source_order], dtype=np.int64)
        if len(set(order.tolist())) != len(order):
            raise ValueError("source_order must not repeat agents")
        for s in order:
            if not 0 <= s < n:
                raise ValueError(f"source {s} out of range for n={n}")
    use_init = initial is not None
    init_mask = (mask_from_set(initial, n) if use_init
                 else np.zeros(n, dtype=np.bool_))

    found, accept_code, source, mask, additions, n_added = _kernels.waterfall_run(
        transform.entries, transform.predictions, config.tau, order,
        _TIE_CODES[config.tie_break], config.seed, init_mask, use_init)

    checks = _audit(transform, config.tau, bool(found), int(accept_code),
                    mask, use_init, init_mask)
    if not found:
        return WaterfallResult(False, None, None, (), None, checks)
    return WaterfallResult(
        True,
        set_from_mask(mask),
        int(source) if source >= 0 else None,
        tuple(int(a) for a in additions[:n_added]),
        _POINT_NAMES[int(accept_code)],
        checks,
    )


def _audit(transform, tau, found, accept_code, mask, use_init, init_mask):
    """Reconstruct the margins at each checkpoint the run evaluated."""
    protocol = Protocol.tau_margin(tau)
    records = []

    def record(point, check_mask, feasible):
        margins = _kernels.margins_for_mask(transform.entries, check_mask)
        records.append(ValidationRecord(point, tuple(int(v) for v in margins),
                                        feasible))

    empty = np.zeros(transform.n, dtype=np.bool_)
    if not use_init:
        record("empty", empty, found and accept_code == 0)
    if found and accept_code == 1:
        record("growth", mask, True)
    if accept_code == 2 or not found:
        full = np.ones(transform.n, dtype=np.bool_)
        record("full", full, found and accept_code == 2)
    return tuple(records)


def build_waterfall_streams(transform: MatchingTransform,
                            influencers: Iterable[int]):
    """Row-disjoint paths through the matching sets restricted to F.

    Stream v is, for every row, the v-th agent (ascending index) of the
    row's matching set intersected with F; the number of streams w is the
    smallest such intersection.  Returns ``(w, streams)`` with each stream a
    length-m int array.
    """
    members = influencer_set(influencers, transform.n)
    idx = np.array(sorted(members), dtype=np.int64)
    m = transform.m
    if idx.size == 0:
        return 0, []
    hits = transform.entries[:, idx] == 1  # (m, |F|)
    per_row = hits.sum(axis=1)
    w = int(per_row.min()) if m else len(members)
    streams = []
    for v in range(w):
        stream = np.empty(m, dtype=np.int64)
        for k in range(m):
            stream[k] = idx[np.flatnonzero(hits[k])[v]]
        streams.append(stream)
    return w, streams


def streams_certify_feasible(transform: MatchingTransform,
                             influencers: Iterable[int]) -> bool:
    """Feasibility under majority via the stream characterisation.

    F is feasible iff w >= ceil(|F|/2) streams exist, where rows whose
    matching intersection is exactly |F|/2 (even |F| only) must carry an
    unchanged prediction.  Independent arithmetic from the margin check.
    """
    members = influencer_set(influencers, transform.n)
    if transform.m == 0:
        return True
    size = len(members)
    idx = np.array(sorted(members), dtype=np.int64)
    if size == 0:
        per_row = np.zeros(transform.m, dtype=np.int64)
    else:
        per_row = (transform.entries[:, idx] == 1).sum(axis=1)
    w = int(per_row.min())
    if 2 * w < size + (size % 2):  # w < ceil(size / 2)
        return False
    if size % 2 == 0:
        tie_rows = per_row == size // 2
        if np.any(tie_rows & transform.predictions):
            return False
    return True
