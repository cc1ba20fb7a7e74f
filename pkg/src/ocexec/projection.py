"""Attribute projection of process executions into labeled graphs."""

from __future__ import annotations

from collections import Counter

from .errors import MissingAttribute
from .extraction import ProcessExecution
from .log import EventLog

# node label: (attribute value, ((type, count), ...)) with types sorted and zero counts omitted
# edge label: ((type, count), ...)


def type_counts(counter: Counter) -> tuple:
    return tuple(sorted((t, n) for t, n in counter.items() if n))


class ProjectedExecution:
    """A directed graph with node and edge labels, ready for isomorphism testing.

    ``succ[u]`` maps each successor of ``u`` to the label of the edge between
    them; ``pred`` is the mirror image.
    """

    __slots__ = ("nodes", "edges", "node_label", "edge_label", "succ", "pred", "_stable")

    def __init__(self, nodes, edges, node_label, edge_label):
        self.nodes = tuple(nodes)
        self.edges = tuple(edges)
        self.node_label = dict(node_label)
        self.edge_label = dict(edge_label)
        self.succ = {n: {} for n in self.nodes}
        self.pred = {n: {} for n in self.nodes}
        for a, b in self.edges:
            lab = self.edge_label[(a, b)]
            self.succ[a][b] = lab
            self.pred[b][a] = lab
        self._stable = None

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return f"ProjectedExecution(nodes={len(self.nodes)}, edges={len(self.edges)})"


def project(log: EventLog, execution: ProcessExecution, attribute: str) -> ProjectedExecution:
    members = execution.objects
    otype = log.otype
    nodes = sorted(execution.events, key=log.order_key)
    node_objs = {}
    node_label = {}
    for eid in nodes:
        ev = log.event(eid)
        value = ev.attribute(attribute)
        if value is None:
            raise MissingAttribute(eid, attribute)
        objs = ev.omap & members
        node_objs[eid] = objs
        node_label[eid] = (value, type_counts(Counter(otype(o) for o in objs)))
    position = {eid: i for i, eid in enumerate(nodes)}
    edges = sorted(execution.edges, key=lambda e: (position[e[0]], position[e[1]]))
    # objects present in both endpoint events, whether or not they induce the edge
    edge_label = {
        (a, b): type_counts(Counter(otype(o) for o in node_objs[a] & node_objs[b]))
        for a, b in edges
    }
    return ProjectedExecution(nodes, edges, node_label, edge_label)
