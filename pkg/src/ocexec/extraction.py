"""Process executions: the event graphs induced by connected object sets."""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .errors import DisconnectedObjectSet, EmptyExecution, UnknownObject, UnknownType
from .event_graph import EventObjectGraph, build_event_graph
from .log import EventLog
from .object_graph import ObjectGraph, build_object_graph, connected_components

COMPONENTS = "components"
LEADING = "leading"


@dataclass(frozen=True)
class ProcessExecution:
    """Object set, the events touching it, and the directly-follows edges among them.

    For leading-type executions ``levels`` records the BFS level at which each
    admitted object was reached from the lead object, as sorted pairs.
    """

    objects: frozenset
    events: frozenset
    edges: frozenset
    strategy: str = COMPONENTS
    leading_type: str | None = None
    lead_object: str | None = None
    levels: tuple = ()

    def to_dict(self) -> dict:
        d = {"strategy": self.strategy}
        if self.leading_type is not None:
            d["leading_type"] = self.leading_type
        if self.lead_object is not None:
            d["lead_object"] = self.lead_object
        d["objects"] = sorted(self.objects)
        d["events"] = sorted(self.events)
        d["edges"] = [list(e) for e in sorted(self.edges)]
        return d


def _is_connected(g: ObjectGraph, objs: frozenset) -> bool:
    start = next(iter(objs))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if v in objs and v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(objs)


def _materialize(log: EventLog, eg: EventObjectGraph, objs: frozenset, **provenance) -> ProcessExecution:
    events = set()
    for o in objs:
        events.update(log.traces[o])
    if not events:
        raise EmptyExecution(f"objects {sorted(objs)} have no events")
    # edges may come from objects outside objs, as long as both ends are in the execution
    edges = frozenset((a, b) for a in events for b in eg.successors(a) if b in events)
    return ProcessExecution(frozenset(objs), frozenset(events), edges, **provenance)


def execution_from_objects(
    log: EventLog,
    g: ObjectGraph,
    objs: Iterable[str],
    event_graph: EventObjectGraph | None = None,
) -> ProcessExecution:
    objs = frozenset(objs)
    if not objs:
        raise EmptyExecution("object set is empty")
    for o in objs:
        if o not in g.nodes:
            raise UnknownObject(o)
    if not _is_connected(g, objs):
        raise DisconnectedObjectSet(f"objects {sorted(objs)} are not connected in the object graph")
    eg = event_graph if event_graph is not None else build_event_graph(log)
    return _materialize(log, eg, objs)


def extract_components(
    log: EventLog,
    object_graph: ObjectGraph | None = None,
    event_graph: EventObjectGraph | None = None,
) -> list[ProcessExecution]:
    g = object_graph if object_graph is not None else build_object_graph(log)
    eg = event_graph if event_graph is not None else build_event_graph(log)
    result = []
    for comp in connected_components(g):
        if any(log.traces[o] for o in comp):
            result.append(_materialize(log, eg, comp, strategy=COMPONENTS))
    return result


def leading_bfs(log: EventLog, g: ObjectGraph, lead: str) -> dict[str, int]:
    """Admitted objects around ``lead`` mapped to the BFS level they were reached at.

    A neighbour reached at level k is admitted only if k is the first level at
    which its type was seen; only admitted objects are expanded further.
    """
    first_level = {log.otype(lead): 0}
    admitted = {lead: 0}
    seen = {lead}
    frontier = [lead]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for u in frontier:
            for v in sorted(g.adjacency[u]):
                if v in seen:
                    continue
                # a rejected object would be rejected again at any later level
                seen.add(v)
                if first_level.setdefault(log.otype(v), level) == level:
                    admitted[v] = level
                    nxt.append(v)
        frontier = nxt
    return admitted


def extract_leading_type(
    log: EventLog,
    leading_type: str,
    object_graph: ObjectGraph | None = None,
    event_graph: EventObjectGraph | None = None,
    threads: int = 1,
) -> list[ProcessExecution]:
    """One execution per object of ``leading_type``, in object-id order.

    Leads whose admitted objects have no events are skipped. The result is
    identical for any ``threads`` value.
    """
    if leading_type not in log.object_types:
        raise UnknownType(leading_type)
    g = object_graph if object_graph is not None else build_object_graph(log)
    eg = event_graph if event_graph is not None else build_event_graph(log)
    leads = sorted(o.id for o in log.objects if o.otype == leading_type)

    def run(lead):
        levels = leading_bfs(log, g, lead)
        try:
            return _materialize(
                log, eg, frozenset(levels),
                strategy=LEADING, leading_type=leading_type, lead_object=lead,
                levels=tuple(sorted(levels.items())),
            )
        except EmptyExecution:
            return None

    if threads > 1 and len(leads) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, leads))
    else:
        results = [run(lead) for lead in leads]
    return [r for r in results if r is not None]
