"""Domain types and the consistency checks every solver builds on.

Opinions are stored relative to a distinguished target agent: each of the
``n`` observable agents either agrees (+1) or disagrees (-1) with it.  An
update protocol decides whether the target flips its opinion given the
labels of a candidate influencer set.  The matching transform re-encodes a
sample of labelled updates as a +/-1 matrix whose row sums over a candidate
set determine, in one pass, whether the set explains every observation.

Agent indices are 0-based everywhere, including file formats and the CLI.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._kernels import KIND_ALL_BUT_K, KIND_TAU_MARGIN

InfluencerSet = frozenset[int]

ALL_BUT_K = "all_but_k"
TAU_MARGIN = "tau_margin"


class Label(enum.IntEnum):
    """Binary opinion of an agent relative to the target agent."""

    AGREE = 1
    DISAGREE = -1

    def flipped(self) -> "Label":
        return Label(-int(self))


class RowState(enum.IntEnum):
    """Consistency of one sample row under a candidate influencer set."""

    CONSISTENT = 2
    BARELY_CONSISTENT = 1
    CONSISTENT_TIE = 0
    INCONSISTENT_TIE = -1
    INCONSISTENT = -2


@dataclass(frozen=True)
class Protocol:
    """Threshold update rule: all-but-kappa or tau-margin.

    ``all_but_k``: the target changes opinion unless ``threshold`` (kappa) or
    more influencers agree with it.  ``tau_margin``: it changes opinion when
    disagreeing influencers outnumber agreeing ones by more than
    ``threshold`` (tau).  Majority is tau-margin with tau=0; unanimity is
    all-but-kappa with kappa=0.
    """

    kind: str
    threshold: int

    def __post_init__(self):
        if self.kind not in (ALL_BUT_K, TAU_MARGIN):
            raise ValueError(f"unknown protocol kind: {self.kind!r}")
        if self.threshold < 0:
            raise ValueError("protocol threshold must be >= 0")

    @classmethod
    def all_but_k(cls, kappa: int) -> "Protocol":
        return cls(ALL_BUT_K, int(kappa))

    @classmethod
    def tau_margin(cls, tau: int) -> "Protocol":
        return cls(TAU_MARGIN, int(tau))

    @classmethod
    def majority(cls) -> "Protocol":
        return cls.tau_margin(0)

    @classmethod
    def unanimity(cls) -> "Protocol":
        return cls.all_but_k(0)

    @property
    def kind_code(self) -> int:
        return KIND_ALL_BUT_K if self.kind == ALL_BUT_K else KIND_TAU_MARGIN


def labelling(values: Iterable[int]) -> np.ndarray:
    """Validate and normalise a +/-1 opinion vector to int8."""
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                     dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("a labelling must be one-dimensional")
    if arr.size and not np.isin(arr, (-1, 1)).all():
        raise ValueError("labels must be +1 (agree) or -1 (disagree)")
    return arr.astype(np.int8)


@dataclass(frozen=True)
class Example:
    """One oracle observation: a labelling and whether the target flipped."""

    labels: np.ndarray
    changed: bool

    def __post_init__(self):
        object.__setattr__(self, "labels", labelling(self.labels))
        object.__setattr__(self, "changed", bool(self.changed))


@dataclass(frozen=True)
class MatchingTransform:
    """The m x n +/-1 matrix of matching sets plus the prediction vector."""

    entries: np.ndarray
    predictions: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.int8)
        predictions = np.asarray(self.predictions, dtype=bool)
        if entries.ndim != 2:
            raise ValueError("entries must be an m x n matrix")
        if entries.size and not np.isin(entries, (-1, 1)).all():
            raise ValueError("entries must be -1 or +1")
        if predictions.shape != (entries.shape[0],):
            raise ValueError("predictions length must equal the row count")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "predictions", predictions)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]


def influencer_set(agents: Iterable[int], n: int) -> InfluencerSet:
    """Validate agent indices against the agent count."""
    out = frozenset(int(a) for a in agents)
    for a in out:
        if not 0 <= a < n:
            raise ValueError(f"agent index {a} out of range for n={n}")
    return out


def mask_from_set(agents: Iterable[int], n: int) -> np.ndarray:
    mask = np.zeros(n, dtype=np.bool_)
    for a in influencer_set(agents, n):
        mask[a] = True
    return mask


def set_from_mask(mask: np.ndarray) -> InfluencerSet:
    return frozenset(int(j) for j in np.flatnonzero(mask))


def apply_protocol(protocol: Protocol, labels: np.ndarray,
                   influencers: Iterable[int]) -> bool:
    """Evaluate the update rule: does the target change opinion?"""
    labels = labelling(labels)
    idx = np.fromiter(influencer_set(influencers, len(labels)), dtype=np.int64,
                      count=-1)
    agree = int(np.count_nonzero(labels[idx] == 1)) if idx.size else 0
    if protocol.kind == ALL_BUT_K:
        return agree <= protocol.threshold
    disagree = idx.size - agree
    return disagree - agree > protocol.threshold


def matching_set(example: Example) -> InfluencerSet:
    """Agents whose label matches the prediction.

    Disagreers match on changed examples, agreers on unchanged ones.
    """
    wanted = -1 if example.changed else 1
    return frozenset(int(j) for j in np.flatnonzero(example.labels == wanted))


def matching_transform(examples: Sequence[Example],
                       n: int | None = None) -> MatchingTransform:
    """Stack the matching sets of a sample into a +/-1 matrix."""
    if not examples:
        return MatchingTransform(np.zeros((0, n or 0), dtype=np.int8),
                                 np.zeros(0, dtype=bool))
    lengths = {len(e.labels) for e in examples}
    if len(lengths) != 1:
        raise ValueError(f"ragged labelling lengths in sample: {sorted(lengths)}")
    if n is not None and lengths != {n}:
        raise ValueError(f"labelling length {lengths} does not match n={n}")
    labels = np.stack([e.labels for e in examples])
    changed = np.array([e.changed for e in examples], dtype=bool)
    return transform_from_arrays(labels, changed)


def transform_from_arrays(labels: np.ndarray,
                          changed: np.ndarray) -> MatchingTransform:
    """Array fast path: entry (k, j) = +1 iff agent j matches prediction k."""
    labels = np.asarray(labels, dtype=np.int8)
    changed = np.asarray(changed, dtype=bool)
    signs = np.where(changed, -1, 1).astype(np.int8)
    return MatchingTransform(labels * signs[:, None], changed)


def row_margin(transform: MatchingTransform, influencers: Iterable[int],
               k: int) -> int:
    """Row sum of the transform restricted to the candidate set."""
    if not 0 <= k < transform.m:
        raise ValueError(f"row index {k} out of range for m={transform.m}")
    mask = mask_from_set(influencers, transform.n)
    return int(transform.entries[k][mask].sum())


def row_margins(transform: MatchingTransform,
                influencers: Iterable[int]) -> np.ndarray:
    mask = mask_from_set(influencers, transform.n)
    return _kernels.margins_for_mask(transform.entries, mask)


def row_state(margin: int, changed: bool) -> RowState:
    """Classify a row by its margin and prediction.

    At margin 1 with a changed prediction the row is barely consistent, not
    plain consistent: it cannot absorb another non-matching agent, which the
    rescue bookkeeping must track.
    """
    if margin < 0:
        return RowState.INCONSISTENT
    if margin == 0:
        return RowState.INCONSISTENT_TIE if changed else RowState.CONSISTENT_TIE
    if margin == 1 and changed:
        return RowState.BARELY_CONSISTENT
    return RowState.CONSISTENT


def row_states(transform: MatchingTransform,
               influencers: Iterable[int]) -> list[RowState]:
    margins = row_margins(transform, influencers)
    return [row_state(int(mg), bool(c))
            for mg, c in zip(margins, transform.predictions)]


def is_feasible(transform: MatchingTransform, influencers: Iterable[int],
                protocol: Protocol) -> bool:
    """Does the candidate set reproduce every prediction in the sample?

    Tau-margin: changed rows need margin > tau, unchanged rows margin >=
    -tau.  All-but-kappa: changed rows need at most kappa agents outside the
    matching set, unchanged rows at least kappa+1 inside it.  Both are the
    update rule itself rewritten through the matching transform, so this
    check is exactly ``apply_protocol(...) == prediction`` on every row.
    """
    mask = mask_from_set(influencers, transform.n)
    margins = _kernels.margins_for_mask(transform.entries, mask)
    return bool(_kernels.feasible_margins(
        margins, transform.predictions, protocol.kind_code,
        protocol.threshold, int(mask.sum())))


def sample_size(epsilon: float, delta: float, n: int, c: float = 1.0) -> int:
    """Labellings sufficient to PAC-learn an influencer set.

    ceil((c / epsilon) * ((n + 1) + ln(1 / delta))); the theory fixes the
    expression only up to a constant, exposed here as ``c``.
    """
    if not 0 < epsilon < 0.5:
        raise ValueError("epsilon must lie in (0, 1/2)")
    if not 0 < delta < 0.5:
        raise ValueError("delta must lie in (0, 1/2)")
    if n < 0:
        raise ValueError("n must be >= 0")
    if c <= 0:
        raise ValueError("scale c must be positive")
    return math.ceil((c / epsilon) * ((n + 1) + math.log(1.0 / delta)))
