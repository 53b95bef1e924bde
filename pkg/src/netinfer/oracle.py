"""Example oracle simulation: sample labellings, label them with the truth.

RNG: numpy's PCG64 via ``np.random.default_rng``.  Independent parallel
streams come from offsetting or spawning the master seed; every consumer in
this package derives child seeds deterministically from a single master.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Example, InfluencerSet, Protocol, apply_protocol, influencer_set

UNIFORM_UNIQUE = "unique"
UNIFORM = "uniform"
BERNOULLI = "bernoulli"

DISTRIBUTIONS = (UNIFORM_UNIQUE, UNIFORM, BERNOULLI)


class InfeasibleSampleError(ValueError):
    """Asked for more distinct labellings than exist."""


@dataclass(frozen=True)
class SamplerConfig:
    distribution: str = UNIFORM_UNIQUE
    p_agree: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution: {self.distribution!r}")
        if not 0.0 < self.p_agree < 1.0:
            raise ValueError("p_agree must lie strictly inside (0, 1)")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


def generate_labellings(n: int, m: int,
                        config: SamplerConfig | None = None) -> np.ndarray:
    """Draw m labellings over n agents as an (m, n) +/-1 int8 matrix."""
    config = config or SamplerConfig()
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    rng = np.random.default_rng(config.seed)
    if config.distribution == UNIFORM:
        return (rng.integers(0, 2, size=(m, n), dtype=np.int8) * 2 - 1)
    if config.distribution == BERNOULLI:
        return np.where(rng.random((m, n)) < config.p_agree, 1, -1).astype(np.int8)
    # uniform without duplicates: rejection sampling, as in the experiments
    if n < 63 and m > (1 << n):
        raise InfeasibleSampleError(
            f"cannot draw {m} distinct labellings over {n} agents "
            f"(only {1 << n} exist)")
    seen: set[bytes] = set()
    rows: list[np.ndarray] = []
    while len(rows) < m:
        batch = rng.integers(0, 2, size=(max(m - len(rows), 16), n),
                             dtype=np.int8) * 2 - 1
        for row in batch:
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                rows.append(row)
                if len(rows) == m:
                    break
    if not rows:
        return np.zeros((0, n), dtype=np.int8)
    return np.stack(rows)


def oracle_predictions(influencers, protocol: Protocol,
                       labellings: np.ndarray) -> np.ndarray:
    """Vectorised protocol evaluation over a whole sample."""
    labellings = np.asarray(labellings, dtype=np.int8)
    n = labellings.shape[1]
    members = influencer_set(influencers, n)
    idx = np.fromiter(members, dtype=np.int64, count=len(members))
    if idx.size == 0:
        agree = np.zeros(labellings.shape[0], dtype=np.int64)
    else:
        agree = (labellings[:, idx] == 1).sum(axis=1)
    if protocol.kind_code == 1:  # all-but-kappa
        return agree <= protocol.threshold
    disagree = idx.size - agree
    return disagree - agree > protocol.threshold


def oracle_examples(influencers, protocol: Protocol,
                    labellings: np.ndarray) -> list[Example]:
    """Label each sampled labelling with the true set's prediction."""
    preds = oracle_predictions(influencers, protocol, labellings)
    return [Example(row, bool(c)) for row, c in zip(labellings, preds)]
