"""Directly-follows graph over events, annotated with the objects involved."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CycleDetected
from .log import EventLog


@dataclass(frozen=True, eq=False)
class EventObjectGraph:
    """Events as nodes, per-object directly-follows pairs as edges.

    ``edges`` is deduplicated across objects; ``edge_objects`` keeps which
    objects contributed each pair. ``succ``/``pred`` hold the same edges as
    adjacency sets in both directions.
    """

    nodes: frozenset
    edges: frozenset
    node_objects: dict
    edge_objects: dict
    succ: dict
    pred: dict

    def successors(self, event_id: str) -> frozenset:
        return self.succ.get(event_id, frozenset())

    def predecessors(self, event_id: str) -> frozenset:
        return self.pred.get(event_id, frozenset())


def build_event_graph(log: EventLog) -> EventObjectGraph:
    node_objects: dict[str, set] = {ev.id: set() for ev in log.events}
    edge_objects: dict[tuple[str, str], set] = {}
    for oid, trace in log.traces.items():
        for eid in trace:
            node_objects[eid].add(oid)
        for a, b in zip(trace, trace[1:]):
            edge_objects.setdefault((a, b), set()).add(oid)

    succ: dict[str, set] = {}
    pred: dict[str, set] = {}
    for a, b in edge_objects:
        # traces are sorted, so this only fires on a corrupted log
        if not log.order_key(a) < log.order_key(b):
            raise CycleDetected(f"edge ({a}, {b}) goes against the global event order")
        succ.setdefault(a, set()).add(b)
        pred.setdefault(b, set()).add(a)

    return EventObjectGraph(
        nodes=frozenset(node_objects),
        edges=frozenset(edge_objects),
        node_objects={k: frozenset(v) for k, v in node_objects.items()},
        edge_objects={k: frozenset(v) for k, v in edge_objects.items()},
        succ={k: frozenset(v) for k, v in succ.items()},
        pred={k: frozenset(v) for k, v in pred.items()},
    )


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: EventObjectGraph, log: EventLog | None = None) -> str:
    """Render the graph in Graphviz DOT; node label is ``id | objects``."""
    if log is not None:
        order = sorted(graph.nodes, key=log.order_key)
    else:
        order = sorted(graph.nodes)
    lines = ["digraph event_object_graph {", "  rankdir=LR;", "  node [shape=box];"]
    for eid in order:
        objs = ", ".join(sorted(graph.node_objects[eid]))
        lines.append(f"  {_dot_quote(eid)} [label={_dot_quote(f'{eid} | {objs}')}];")
    for a, b in sorted(graph.edges):
        objs = ",".join(sorted(graph.edge_objects[(a, b)]))
        lines.append(f"  {_dot_quote(a)} -> {_dot_quote(b)} [label={_dot_quote(objs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
