"""Undirected co-occurrence graph over objects."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import UnknownObject
from .log import EventLog


@dataclass(frozen=True, eq=False)
class ObjectGraph:
    nodes: frozenset
    adjacency: dict

    @property
    def edges(self) -> frozenset:
        """Edges as two-element frozensets."""
        return frozenset(
            frozenset((a, b)) for a, nbrs in self.adjacency.items() for b in nbrs if a < b
        )

    def neighbors(self, object_id: str) -> frozenset:
        return self.adjacency[object_id]


def build_object_graph(log: EventLog) -> ObjectGraph:
    adj: dict[str, set] = {o.id: set() for o in log.objects}
    seen_sets = set()
    for ev in log.events:
        if len(ev.omap) < 2 or ev.omap in seen_sets:
            continue
        seen_sets.add(ev.omap)
        for a, b in combinations(ev.omap, 2):
            adj[a].add(b)
            adj[b].add(a)
    return ObjectGraph(
        nodes=frozenset(adj),
        adjacency={k: frozenset(v) for k, v in adj.items()},
    )


def object_distance(g: ObjectGraph, source: str, target: str) -> int | None:
    """Shortest-path hop count between two objects, or None if unreachable."""
    for oid in (source, target):
        if oid not in g.nodes:
            raise UnknownObject(oid)
    if source == target:
        return 0
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if v not in dist:
                if v == target:
                    return dist[u] + 1
                dist[v] = dist[u] + 1
                queue.append(v)
    return None


def connected_components(g: ObjectGraph) -> list[frozenset]:
    """Maximal connected object sets, ordered by their smallest member id."""
    seen = set()
    components = []
    for start in sorted(g.nodes):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    queue.append(v)
        components.append(frozenset(comp))
    return components
