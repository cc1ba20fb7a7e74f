"""Grid layout of a variant: one lane per object, columns from the event partial order."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CyclicExecution
from .extraction import ProcessExecution
from .log import EventLog
from .projection import ProjectedExecution


def topological_order(p: ProjectedExecution) -> list:
    indeg = {n: len(p.pred[n]) for n in p.nodes}
    ready = [n for n in p.nodes if indeg[n] == 0]
    order = []
    while ready:
        u = ready.pop()
        order.append(u)
        for w in p.succ[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    if len(order) != len(p.nodes):
        raise CyclicExecution("projected execution contains a cycle")
    return order


def x_positions(p: ProjectedExecution) -> dict:
    """Column span ``(x_start, x_end)`` of every event, in O(nodes + edges).

    A source starts at column 0, any other event one column after its latest
    predecessor; an event ends one column before its earliest successor, or
    where it starts if it has none.
    """
    order = topological_order(p)
    start = {}
    for u in order:
        preds = p.pred[u]
        start[u] = max(start[w] for w in preds) + 1 if preds else 0
    spans = {}
    for u in p.nodes:
        succs = p.succ[u]
        end = min(start[w] for w in succs) - 1 if succs else start[u]
        spans[u] = (start[u], end)
    return spans


def x_start(p: ProjectedExecution, event_id: str) -> int:
    return x_positions(p)[event_id][0]


def x_end(p: ProjectedExecution, event_id: str) -> int:
    return x_positions(p)[event_id][1]


@dataclass(frozen=True)
class LayoutGrid:
    lanes: tuple            # ((object id, object type), ...) top to bottom
    cell: dict              # event id -> (x_start, x_end)
    lane_membership: dict   # event id -> frozenset of lane indices
    width: int

    def lane_events(self, lane: int) -> list:
        """Events drawn on ``lane``, left to right."""
        return sorted(
            (e for e, lanes in self.lane_membership.items() if lane in lanes),
            key=lambda e: (self.cell[e][0], e),
        )


def layout_variant(log: EventLog, p: ProjectedExecution, execution: ProcessExecution) -> LayoutGrid:
    """Lanes grouped by type name; within a type, by first event ``(timestamp, id)`` then object id."""
    spans = x_positions(p)
    members = execution.objects

    def lane_key(oid):
        trace = [e for e in log.trace(oid) if e in spans]
        first = log.order_key(trace[0]) if trace else None
        return (log.otype(oid), first is None, first or (), oid)

    lane_objs = sorted(members, key=lane_key)
    lanes = tuple((o, log.otype(o)) for o in lane_objs)
    index = {o: i for i, o in enumerate(lane_objs)}
    membership = {
        e: frozenset(index[o] for o in log.event(e).omap if o in index)
        for e in p.nodes
    }
    width = max((end for _, end in spans.values()), default=-1) + 1
    return LayoutGrid(lanes, spans, membership, width)
