"""JSON and CSV formats shared by the CLI and the experiment harness.

Examples JSON:   {"n": int, "examples": [{"labels": [+1/-1,...],
                  "changed": bool}, ...]}
Transform CSV:   header a0..a{n-1},changed; one +/-1 row per example with a
                 trailing 0/1 prediction column.
Graph JSON:      {"n": int, "edges": [[u, v], ...]} (directed edges).
Instance JSON:   {"universe": [...], "sets": [[...], ...], "budget": int}.
All indices are 0-based.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import MatchingTransform, labelling
from .graphs import InfluenceGraph
from .reduction import HittingSetInstance, ReductionLayout


def _load(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _dump(path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def examples_to_dict(labels: np.ndarray, changed: np.ndarray) -> dict:
    labels = np.asarray(labels)
    return {
        "n": int(labels.shape[1]) if labels.ndim == 2 else 0,
        "examples": [
            {"labels": [int(v) for v in row], "changed": bool(c)}
            for row, c in zip(labels, changed)
        ],
    }


def examples_from_dict(data: dict) -> tuple[np.ndarray, np.ndarray, int]:
    try:
        n = int(data["n"])
        raw = data["examples"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed examples payload: missing {exc}") from None
    labels = np.zeros((len(raw), n), dtype=np.int8)
    changed = np.zeros(len(raw), dtype=bool)
    for k, item in enumerate(raw):
        row = labelling(item["labels"])
        if row.size != n:
            raise ValueError(
                f"example {k} has {row.size} labels, expected n={n}")
        labels[k] = row
        changed[k] = bool(item["changed"])
    return labels, changed, n


def write_examples(path, labels, changed) -> None:
    _dump(path, examples_to_dict(labels, changed))


def read_examples(path) -> tuple[np.ndarray, np.ndarray, int]:
    return examples_from_dict(_load(path))


def write_transform_csv(path, transform: MatchingTransform) -> None:
    header = ",".join([f"a{j}" for j in range(transform.n)] + ["changed"])
    lines = [header]
    for row, c in zip(transform.entries, transform.predictions):
        lines.append(",".join(str(int(v)) for v in row) + f",{int(c)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_influencers(path, n: int, agents) -> None:
    _dump(path, {"n": int(n), "feasible": agents is not None,
                 "agents": sorted(int(a) for a in agents) if agents is not None
                 else None})


def read_influencers(path) -> tuple[int, frozenset | None]:
    data = _load(path)
    agents = data.get("agents")
    return int(data["n"]), (frozenset(int(a) for a in agents)
                            if agents is not None else None)


def waterfall_result_to_dict(n: int, result) -> dict:
    return {
        "n": int(n),
        "outcome": "found" if result.found else "not_found",
        "agents": sorted(result.influencers) if result.found else None,
        "source": result.source,
        "additions": list(result.additions),
        "validation_point": result.validation_point,
        "checks": [
            {"point": rec.point, "margins": list(rec.margins),
             "feasible": rec.feasible}
            for rec in result.checks
        ],
    }


def write_graph(path, graph: InfluenceGraph) -> None:
    _dump(path, {"n": graph.n, "edges": [[u, v] for u, v in graph.edges]})


def read_graph(path) -> InfluenceGraph:
    data = _load(path)
    n = int(data["n"])
    incoming = [set() for _ in range(n)]
    for u, v in data["edges"]:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        incoming[v].add(u)
    return InfluenceGraph(n, tuple(frozenset(s) for s in incoming))


def read_instance(path) -> HittingSetInstance:
    data = _load(path)
    try:
        return HittingSetInstance.from_lists(
            data["universe"], data["sets"], data["budget"])
    except KeyError as exc:
        raise ValueError(f"malformed instance payload: missing {exc}") from None


def write_instance(path, instance: HittingSetInstance) -> None:
    _dump(path, {"universe": list(instance.universe),
                 "sets": [sorted(s, key=str) for s in instance.sets],
                 "budget": instance.budget})


def write_layout(path, layout: ReductionLayout) -> None:
    _dump(path, {"a_agents": list(layout.a_agents),
                 "b_agents": list(layout.b_agents),
                 "elements": list(layout.elements),
                 "budget": layout.budget,
                 "num_sets": layout.num_sets})


def read_layout(path) -> ReductionLayout:
    data = _load(path)
    return ReductionLayout(
        a_agents=tuple(int(a) for a in data["a_agents"]),
        b_agents=tuple(int(b) for b in data["b_agents"]),
        elements=tuple(data["elements"]),
        budget=int(data["budget"]),
        num_sets=int(data["num_sets"]),
    )
