"""Random influence networks under a shared sparsity parameterisation.

One density knob p drives all four models: p1 = p is the ER edge
probability and the WS rewiring probability, while p2 = 2 + p*(n/2 - 1)
rounded to the nearest even integer (ties round down) sets the WS ring
degree, the RG degree and the BA attachment count.  Generated graphs are
undirected and then read as bidirectional influence: the influencer set of
an agent is its neighbourhood.

Generators are implemented natively; they match the usual constructions
(G(n,p), Watts-Strogatz rewiring, configuration-model regular graphs with
simple-graph rejection, preferential attachment) but draw-for-draw parity
with any particular library is not a goal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MODELS = ("er", "ws", "rg", "ba")

_RG_RETRIES = 500


@dataclass(frozen=True)
class GraphSpec:
    model: str
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model: {self.model!r}")
        if self.n < 3:
            raise ValueError("n must be >= 3")
        if not 0.0 < self.p < 1.0:
            raise ValueError("p must lie strictly inside (0, 1)")


@dataclass(frozen=True)
class InfluenceGraph:
    n: int
    influencers: tuple[frozenset[int], ...]

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Directed edge list (both directions of every undirected edge)."""
        out = []
        for v, nbrs in enumerate(self.influencers):
            for u in sorted(nbrs):
                out.append((u, v))
        return out


def derive_params(n: int, p: float) -> tuple[float, int]:
    """(p1, p2) for density p; p2 is even, half-between ties round down."""
    if n < 3:
        raise ValueError("n must be >= 3")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly inside (0, 1)")
    x = 2.0 + p * (n / 2.0 - 1.0)
    lo = 2 * int(np.floor(x / 2.0))
    hi = lo + 2
    p2 = lo if (x - lo) <= (hi - x) else hi
    return p, p2


def generate_graph(spec: GraphSpec) -> InfluenceGraph:
    p1, p2 = derive_params(spec.n, spec.p)
    if spec.model in ("ws", "rg", "ba") and p2 >= spec.n:
        raise ValueError(
            f"derived degree p2={p2} must be below n={spec.n} for {spec.model}")
    rng = np.random.default_rng(spec.seed)
    if spec.model == "er":
        edges = _er(spec.n, p1, rng)
    elif spec.model == "ws":
        edges = _ws(spec.n, p2, p1, rng)
    elif spec.model == "rg":
        edges = _rg(spec.n, p2, rng)
    else:
        edges = _ba(spec.n, p2, rng)
    nbrs = [set() for _ in range(spec.n)]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return InfluenceGraph(spec.n, tuple(frozenset(s) for s in nbrs))


def _er(n, p, rng):
    iu, iv = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return list(zip(iu[keep].tolist(), iv[keep].tolist()))


def _ws(n, k, p, rng):
    # ring of k nearest neighbours, then each lattice edge rewires its far
    # endpoint with probability p, avoiding loops and duplicates
    edges = set()
    for j in range(1, k // 2 + 1):
        for u in range(n):
            edges.add(frozenset((u, (u + j) % n)))
    for j in range(1, k // 2 + 1):
        for u in range(n):
            old = frozenset((u, (u + j) % n))
            if old not in edges:
                continue
            if rng.random() < p:
                candidates = [w for w in range(n)
                              if w != u and frozenset((u, w)) not in edges]
                if not candidates:
                    continue
                w = candidates[rng.integers(len(candidates))]
                edges.remove(old)
                edges.add(frozenset((u, w)))
    return [tuple(sorted(e)) for e in edges]


def _rg(n, d, rng):
    # stub-matching configuration model: pair stubs at random, keep legal
    # pairs (no loops, no duplicates), reshuffle the leftovers; restart the
    # attempt when a pass makes no progress.  Plain whole-pairing rejection
    # is hopeless for dense d (acceptance probability ~ exp(-d^2/4)).
    if (n * d) % 2 != 0:
        raise ValueError("n * degree must be even for a regular graph")
    if d >= n:
        raise ValueError("degree must be below n")
    for _ in range(_RG_RETRIES):
        stubs = np.repeat(np.arange(n), d)
        edges: set[frozenset] = set()
        stuck = False
        while stubs.size and not stuck:
            stubs = rng.permutation(stubs)
            leftovers = []
            progress = False
            for i in range(0, stubs.size, 2):
                u, v = int(stubs[i]), int(stubs[i + 1])
                e = frozenset((u, v))
                if u == v or e in edges:
                    leftovers.extend((u, v))
                else:
                    edges.add(e)
                    progress = True
            if not progress:
                stuck = True
            stubs = np.array(leftovers, dtype=np.int64)
        if not stuck:
            return [tuple(sorted(e)) for e in edges]
    raise RuntimeError(
        f"failed to build a simple {d}-regular graph on {n} nodes "
        f"after {_RG_RETRIES} attempts")


def _ba(n, m_attach, rng):
    # preferential attachment: each new node links to m_attach distinct
    # existing nodes sampled by degree (repeated-nodes urn)
    if m_attach < 1 or m_attach >= n:
        raise ValueError("attachment count must satisfy 1 <= m < n")
    edges = []
    repeated: list[int] = []
    targets = list(range(m_attach))
    for v in range(m_attach, n):
        for t in targets:
            edges.append((t, v))
        repeated.extend(targets)
        repeated.extend([v] * m_attach)
        chosen: set[int] = set()
        while len(chosen) < m_attach:
            chosen.add(repeated[rng.integers(len(repeated))])
        targets = sorted(chosen)
    return edges
