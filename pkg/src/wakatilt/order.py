"""The relation ``T1 >= T2 iff Ext^{>0}(T1, T2) = 0`` on Wakamatsu tilting modules.

Also poset diagnostics, Hasse quivers and DOT/JSON rendering.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import TheoremViolation
from .indec import Registry


@dataclass
class RelationTable:
    modules: list[tuple[int, ...]]
    geq: np.ndarray

    def __len__(self) -> int:
        return len(self.modules)


@dataclass
class PosetDiagnostics:
    antisymmetric: bool
    transitive: bool
    antisymmetry_witness: tuple[int, int] | None = None
    transitivity_witness: tuple[int, int, int] | None = None

    @property
    def is_poset(self) -> bool:
        return self.antisymmetric and self.transitive


@dataclass
class Digraph:
    nodes: list[dict]
    edges: list[tuple[int, int]]
    is_poset: bool = True
    meta: dict = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.nodes == other.nodes
            and sorted(self.edges) == sorted(other.edges)
            and self.is_poset == other.is_poset
        )


def relation_table(ms, r: Registry) -> RelationTable:
    ms = [tuple(sorted(m)) for m in ms]
    v = r.vanish
    n = len(ms)
    geq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(ms):
        for j, b in enumerate(ms):
            geq[i, j] = all(v[x, y] for x in a for y in b)
    if n and not geq.diagonal().all():
        k = int(np.flatnonzero(~geq.diagonal())[0])
        raise TheoremViolation(f"relation is not reflexive at {r.format(ms[k])}: the module is not self-orthogonal")
    return RelationTable(ms, geq)


def poset_diagnostics(t: RelationTable) -> PosetDiagnostics:
    g = t.geq
    n = len(t)
    anti = None
    for i in range(n):
        for j in range(i + 1, n):
            if g[i, j] and g[j, i]:
                anti = (i, j)
                break
        if anti:
            break
    trans = None
    # witness (i, j, k): T_i >= T_j >= T_k but not T_i >= T_k
    for i in range(n):
        for j in range(n):
            if j == i or not g[i, j]:
                continue
            for k in range(n):
                if k != j and g[j, k] and not g[i, k]:
                    trans = (i, j, k)
                    break
            if trans:
                break
        if trans:
            break
    return PosetDiagnostics(anti is None, trans is None, anti, trans)


def strict_edges(t: RelationTable) -> list[tuple[int, int]]:
    n = len(t)
    return [(i, j) for i in range(n) for j in range(n) if i != j and t.geq[i, j] and not t.geq[j, i]]


def hasse_quiver(t: RelationTable) -> Digraph:
    """Arrows ``T1 -> T2`` for ``T1 > T2`` with nothing strictly between.

    Without transitivity the covering relation is not meaningful, so the full
    strict digraph is returned with ``is_poset`` false.
    """
    diag = poset_diagnostics(t)
    nodes = [{"id": k, "summands": list(m)} for k, m in enumerate(t.modules)]
    strict = strict_edges(t)
    if not diag.is_poset:
        return Digraph(nodes, strict, False)
    s = set(strict)
    n = len(t)
    edges = [(i, j) for i, j in strict if not any((i, k) in s and (k, j) in s for k in range(n))]
    return Digraph(nodes, edges, True)


def transitive_closure(edges, n: int) -> set[tuple[int, int]]:
    reach = np.zeros((n, n), dtype=bool)
    for i, j in edges:
        reach[i, j] = True
    for k in range(n):
        reach |= np.outer(reach[:, k], reach[k, :])
    return {(i, j) for i in range(n) for j in range(n) if reach[i, j]}


def is_total_order(t: RelationTable) -> bool:
    n = len(t)
    return poset_diagnostics(t).is_poset and all(t.geq[i, j] or t.geq[j, i] for i in range(n) for j in range(n))


def check_tilting_upward_closed(t: RelationTable, classes) -> tuple[bool, list[tuple[int, int]]]:
    """Pairs ``(i, j)`` with ``T_i >= T_j``, ``T_j`` tilting and ``T_i`` not tilting."""
    bad = [
        (i, j)
        for i in range(len(t))
        for j in range(len(t))
        if t.geq[i, j] and classes[j].tilting and not classes[i].tilting
    ]
    return not bad, bad


def decorate(g: Digraph, r: Registry, classes=None) -> Digraph:
    """Attach summand names and tilting flags to the nodes."""
    nodes = []
    for k, nd in enumerate(g.nodes):
        d = {"id": nd["id"], "summands": r.format(nd["summands"])}
        if classes is not None:
            d["flags"] = {"tilting": classes[k].tilting, "cotilting": classes[k].cotilting}
        nodes.append(d)
    return Digraph(nodes, list(g.edges), g.is_poset, dict(g.meta))


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render(g: Digraph, fmt: str = "dot", name: str = "wtilt") -> str:
    if fmt == "json":
        return json.dumps(
            {
                "nodes": g.nodes,
                "edges": [list(e) for e in sorted(g.edges)],
                "is_poset": g.is_poset,
            },
            indent=2,
            sort_keys=True,
        )
    if fmt != "dot":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=TB;"]
    for nd in g.nodes:
        summands = nd.get("summands", [])
        label = " ⊕ ".join(str(x) for x in summands)
        flags = nd.get("flags", {})
        tilt, cotilt = flags.get("tilting", False), flags.get("cotilting", False)
        if tilt:
            shape = "box"
        elif cotilt:
            shape = "ellipse"
        else:
            shape = "plaintext"
        extra = ", peripheries=2" if tilt and cotilt else ""
        lines.append(f"  n{nd['id']} [label={_dot_id(label)}, shape={shape}{extra}];")
    for i, j in sorted(g.edges):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_json(text: str) -> Digraph:
    data = json.loads(text)
    return Digraph(data["nodes"], [tuple(e) for e in data["edges"]], data.get("is_poset", True))
