"""False-negative-rate study harness and the exhaustive small-n mode.

A grid cell is (n, m, model, p).  For every (n, m) grid point the harness
draws ``samples_per_cell`` duplicate-free labelling samples shared by all
networks of that point; each (network, target agent, sample) triple is one
trial.  The target's true in-neighbourhood is feasible for its own oracle
output by construction, so a NotFound outcome is always a false negative.

Determinism: every random stream (samples, graphs, tie-breaks) is spawned
from the master seed via ``np.random.SeedSequence`` keyed by the work
unit's grid coordinates, so the CSV is byte-identical for a given config
regardless of worker count or scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import _kernels
from .graphs import MODELS, GraphSpec, generate_graph
from .oracle import SamplerConfig, generate_labellings
from .waterfall import _TIE_CODES, TIE_RANDOM

WORKERS_ENV = "NETINFER_WORKERS"

DEFAULT_P_VALUES = (0.1, 0.25, 0.5, 0.75, 0.9)


@dataclass(frozen=True)
class ExperimentConfig:
    n_values: tuple[int, ...] = (10, 20, 30, 40, 50)
    m_values: tuple[int, ...] = (10, 20, 30, 40, 50)
    models: tuple[str, ...] = MODELS
    p_values: tuple[float, ...] = DEFAULT_P_VALUES
    networks_per_cell: int = 40  # per (n, m, p), split evenly across models
    samples_per_cell: int = 50
    master_seed: int = 0
    workers: int = 1
    tie_break: str = TIE_RANDOM

    def __post_init__(self):
        if not self.n_values or not self.m_values or not self.p_values:
            raise ValueError("grid axes must be non-empty")
        if any(n < 3 for n in self.n_values):
            raise ValueError("network sizes must be >= 3")
        if any(m < 1 for m in self.m_values):
            raise ValueError("sample sizes must be >= 1")
        unknown = set(self.models) - set(MODELS)
        if unknown or not self.models:
            raise ValueError(f"unknown models: {sorted(unknown)}")
        if self.networks_per_cell < 1 or self.samples_per_cell < 1:
            raise ValueError("counts must be positive")
        if self.networks_per_cell % len(self.models):
            raise ValueError("networks_per_cell must divide evenly over models")
        if self.tie_break not in _TIE_CODES:
            raise ValueError(f"unknown tie_break: {self.tie_break!r}")

    @property
    def networks_per_model(self) -> int:
        return self.networks_per_cell // len(self.models)

    def to_dict(self) -> dict:
        return {
            "n_values": list(self.n_values),
            "m_values": list(self.m_values),
            "models": list(self.models),
            "p_values": list(self.p_values),
            "networks_per_cell": self.networks_per_cell,
            "samples_per_cell": self.samples_per_cell,
            "master_seed": self.master_seed,
            "workers": self.workers,
            "tie_break": self.tie_break,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        kwargs = dict(data)
        for key in ("n_values", "m_values", "models", "p_values"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        return cls(**kwargs)


@dataclass(frozen=True)
class FnrCell:
    n: int
    m: int
    model: str
    p: float
    trials: int
    failures: int

    @property
    def fnr(self) -> float:
        return self.failures / self.trials if self.trials else 0.0


def _spawn_seed(master_seed: int, *key: int) -> int:
    ss = np.random.SeedSequence(master_seed, spawn_key=tuple(key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _cell_samples(master_seed, n_idx, m_idx, n, m, count):
    out = []
    for s_idx in range(count):
        seed = _spawn_seed(master_seed, 1, n_idx, m_idx, s_idx)
        out.append(generate_labellings(n, m, SamplerConfig(seed=seed)))
    return out


def _run_unit(args):
    """One (n, m, p, model, network) unit; returns (cell key, trials, failures)."""
    (master_seed, n_idx, m_idx, p_idx, model_idx, net_idx,
     n, m, p, model, samples_per_cell, tie_mode) = args
    samples = _cell_samples(master_seed, n_idx, m_idx, n, m, samples_per_cell)
    graph_seed = _spawn_seed(master_seed, 2, n_idx, m_idx, p_idx, model_idx,
                             net_idx)
    graph = generate_graph(GraphSpec(model, n, p, seed=graph_seed))
    tie_rng = np.random.default_rng(
        _spawn_seed(master_seed, 3, n_idx, m_idx, p_idx, model_idx, net_idx))
    tie_seeds = tie_rng.integers(0, 2**31, size=(len(samples), n))

    order = np.arange(n - 1, dtype=np.int64)
    no_init = np.zeros(n - 1, dtype=np.bool_)
    trials = 0
    failures = 0
    for s_idx, labels in enumerate(samples):
        for i in range(n):
            view = np.delete(labels, i, axis=1)
            members = np.array(
                sorted(j if j < i else j - 1 for j in graph.influencers[i]),
                dtype=np.int64)
            if members.size:
                agree = (view[:, members] == 1).sum(axis=1)
                preds = (members.size - 2 * agree) > 0  # majority rule
            else:
                preds = np.zeros(m, dtype=bool)
            signs = np.where(preds, -1, 1).astype(np.int8)
            entries = view * signs[:, None]
            found = _kernels.waterfall_run(
                entries, preds, 0, order, tie_mode,
                int(tie_seeds[s_idx, i]), no_init, False)[0]
            trials += 1
            if not found:
                failures += 1
    return (n, m, model, p), trials, failures


def _units(config: ExperimentConfig):
    tie_mode = _TIE_CODES[config.tie_break]
    for n_idx, n in enumerate(config.n_values):
        for m_idx, m in enumerate(config.m_values):
            for p_idx, p in enumerate(config.p_values):
                for model_idx, model in enumerate(config.models):
                    for net_idx in range(config.networks_per_model):
                        yield (config.master_seed, n_idx, m_idx, p_idx,
                               model_idx, net_idx, n, m, p, model,
                               config.samples_per_cell, tie_mode)


def run_fnr_grid(config: ExperimentConfig) -> list[FnrCell]:
    """Run every trial of the grid and aggregate per-cell failure counts."""
    workers = int(os.environ.get(WORKERS_ENV, config.workers))
    units = list(_units(config))
    totals: dict[tuple, list[int]] = {}
    errors: list[str] = []

    def consume(unit, outcome, error):
        key = (unit[6], unit[7], unit[9], unit[8])  # n, m, model, p
        if error is not None:
            errors.append(f"cell n={key[0]} m={key[1]} model={key[2]} "
                          f"p={key[3]}: {error}")
            return
        cell_key, trials, failures = outcome
        agg = totals.setdefault(cell_key, [0, 0])
        agg[0] += trials
        agg[1] += failures

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [(unit, pool.submit(_run_unit, unit)) for unit in units]
            for unit, fut in futures:
                try:
                    consume(unit, fut.result(), None)
                except (ValueError, RuntimeError, MemoryError) as exc:
                    consume(unit, None, exc)
    else:
        for unit in units:
            try:
                consume(unit, _run_unit(unit), None)
            except (ValueError, RuntimeError, MemoryError) as exc:
                consume(unit, None, exc)
    if errors:
        raise RuntimeError("failed cells:\n" + "\n".join(errors))

    cells = [FnrCell(n, m, model, p, t, f)
             for (n, m, model, p), (t, f) in totals.items()]
    cells.sort(key=lambda c: (c.n, c.m, c.model, c.p))
    return cells


def fnr_csv(cells: list[FnrCell]) -> str:
    lines = ["n,m,model,p,trials,failures,fnr"]
    for c in cells:
        lines.append(f"{c.n},{c.m},{c.model},{c.p:.10g},{c.trials},"
                     f"{c.failures},{c.fnr:.10g}")
    return "\n".join(lines) + "\n"


def overall_stats(cells: list[FnrCell]) -> dict:
    trials = sum(c.trials for c in cells)
    failures = sum(c.failures for c in cells)
    fnrs = np.array([c.fnr for c in cells])
    return {
        "trials": trials,
        "failures": failures,
        "success_rate": 1.0 - failures / trials if trials else 1.0,
        "mean_fnr": float(fnrs.mean()) if len(fnrs) else 0.0,
        "var_fnr": float(fnrs.var()) if len(fnrs) else 0.0,
    }


# ---------------------------------------------------------------------------
# exhaustive small-n verification
# ---------------------------------------------------------------------------

@dataclass
class ExhaustiveReport:
    n: int
    max_sample_size: int
    tie_break: str
    seed: int
    total_planned: int
    trials: int = 0
    failures: int = 0
    found_runs: int = 0
    pair_trials: int = 0       # trials where a feasible set of size <= 2 exists
    pair_failures: int = 0
    size_bound_violations: int = 0  # found sets larger than the true set
    failure_cases: list = field(default_factory=list)

    @property
    def coverage(self) -> float:
        return self.trials / self.total_planned if self.total_planned else 1.0

    def to_dict(self) -> dict:
        return {
            "n": self.n, "max_sample_size": self.max_sample_size,
            "tie_break": self.tie_break, "seed": self.seed,
            "trials": self.trials, "failures": self.failures,
            "coverage": self.coverage, "found_runs": self.found_runs,
            "pair_trials": self.pair_trials,
            "pair_failures": self.pair_failures,
            "size_bound_violations": self.size_bound_violations,
            "failure_cases": self.failure_cases[:20],
        }


def all_labellings(n: int) -> np.ndarray:
    """The 2^n labellings; row r gives agent j label +1 iff bit j of r is 0."""
    idx = np.arange(1 << n, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n)) & 1
    return (1 - 2 * bits).astype(np.int8)


def run_exhaustive_smalln(n: int, max_sample_size: int,
                          tie_break: str = TIE_RANDOM, seed: int = 0,
                          max_runs: int | None = None) -> ExhaustiveReport:
    """Sweep every influencer set and labelling sample under majority.

    Enumerates all 2^n influencer sets and every distinct sample of 1 to
    ``max_sample_size`` labellings, runs the greedy search on oracle output,
    and tallies false negatives.  ``max_runs`` caps the sweep; a truncated
    run reports its coverage fraction instead of failing.
    """
    if n < 1 or n > 5:
        raise ValueError("exhaustive mode supports 1 <= n <= 5")
    if max_sample_size < 1:
        raise ValueError("max_sample_size must be >= 1")
    labels_all = all_labellings(n)
    num = 1 << n
    sizes = range(1, min(max_sample_size, num) + 1)
    samples_total = sum(comb(num, k) for k in sizes)
    total = samples_total * (1 << n)
    report = ExhaustiveReport(n, max_sample_size, tie_break, seed, total)

    tie_mode = _TIE_CODES[tie_break]
    rng = np.random.default_rng(seed)
    order = np.arange(n, dtype=np.int64)
    no_init = np.zeros(n, dtype=np.bool_)
    pair_masks = np.array([msk for msk in range(1 << n)
                           if msk.bit_count() <= 2], dtype=np.int64)

    for g_mask in range(1 << n):
        members = np.array([j for j in range(n) if (g_mask >> j) & 1],
                           dtype=np.int64)
        if members.size:
            agree_all = (labels_all[:, members] == 1).sum(axis=1)
            preds_all = (members.size - 2 * agree_all) > 0
        else:
            preds_all = np.zeros(num, dtype=bool)
        signs_all = np.where(preds_all, -1, 1).astype(np.int8)
        for k in sizes:
            for rows in combinations(range(num), k):
                if max_runs is not None and report.trials >= max_runs:
                    return report
                row_idx = np.array(rows, dtype=np.int64)
                entries = labels_all[row_idx] * signs_all[row_idx][:, None]
                preds = preds_all[row_idx]
                tie_seed = int(rng.integers(0, 2**31))
                found, _, _, mask, _, _ = _kernels.waterfall_run(
                    entries, preds, 0, order, tie_mode, tie_seed, no_init,
                    False)
                flags = _kernels.brute_feasible(entries, preds, 0, 0)
                has_pair = bool(flags[pair_masks].any())

                report.trials += 1
                if has_pair:
                    report.pair_trials += 1
                if found:
                    report.found_runs += 1
                    if int(mask.sum()) > members.size:
                        report.size_bound_violations += 1
                else:
                    report.failures += 1
                    if has_pair:
                        report.pair_failures += 1
                    if len(report.failure_cases) < 20:
                        report.failure_cases.append(
                            {"influencers": members.tolist(), "rows": list(rows)})
    return report
