"""Label-respecting isomorphism test for projected executions.

A VF2-style state-space search: nodes of the first graph are matched in a
connectivity-preserving order, candidates come from the neighbourhood of an
already matched node, and every extension is checked against the partial
mapping. Stable WL colours prune candidates; they are isomorphism invariants,
so pruning never rejects a valid mapping.
"""

from __future__ import annotations

from collections import Counter, deque

from .projection import ProjectedExecution
from .wl import stable_colors


def _match_order(p: ProjectedExecution, colors: dict, class_size: Counter):
    """BFS order over the undirected view, each component started at its rarest colour.

    Returns (order, anchors) where anchors[i] is (matched neighbour, direction)
    used to generate candidates for order[i], or None for component roots.
    """
    position = {n: i for i, n in enumerate(p.nodes)}

    def rarity(n):
        return (class_size[colors[n]], colors[n], position[n])

    remaining = sorted(p.nodes, key=rarity)
    placed = set()
    order, anchors = [], []
    for root in remaining:
        if root in placed:
            continue
        placed.add(root)
        order.append(root)
        anchors.append(None)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            nbrs = [(w, "succ") for w in p.succ[u]] + [(w, "pred") for w in p.pred[u]]
            nbrs.sort(key=lambda t: rarity(t[0]))
            for w, direction in nbrs:
                if w not in placed:
                    placed.add(w)
                    order.append(w)
                    anchors.append((u, direction))
                    queue.append(w)
    return order, anchors


def _label_multisets_equal(p: ProjectedExecution, q: ProjectedExecution) -> bool:
    return (
        Counter(p.node_label.values()) == Counter(q.node_label.values())
        and Counter(p.edge_label.values()) == Counter(q.edge_label.values())
    )


def iso_check(p: ProjectedExecution, q: ProjectedExecution) -> bool:
    """True iff a bijection of nodes preserves edges, node labels and edge labels."""
    if len(p.nodes) != len(q.nodes) or len(p.edges) != len(q.edges):
        return False
    if not _label_multisets_equal(p, q):
        return False
    rounds_p, cp = stable_colors(p)
    rounds_q, cq = stable_colors(q)
    if rounds_p != rounds_q:
        return False
    class_p = Counter(cp.values())
    if class_p != Counter(cq.values()):
        return False
    if not p.nodes:
        return True

    by_color: dict[str, list] = {}
    for n in q.nodes:
        by_color.setdefault(cq[n], []).append(n)

    order, anchors = _match_order(p, cp, class_p)
    core_p: dict = {}
    core_q: dict = {}

    def candidates(i):
        u = order[i]
        anchor = anchors[i]
        if anchor is None:
            pool = by_color[cp[u]]
        else:
            w, direction = anchor
            # u is a successor (or predecessor) of its already matched anchor w
            pool = q.succ[core_p[w]] if direction == "succ" else q.pred[core_p[w]]
        want = cp[u]
        return iter([v for v in pool if v not in core_q and cq[v] == want])

    def feasible(u, v):
        if p.node_label[u] != q.node_label[v]:
            return False
        if len(p.succ[u]) != len(q.succ[v]) or len(p.pred[u]) != len(q.pred[v]):
            return False
        qs, qp = q.succ[v], q.pred[v]
        mapped_out = 0
        for w, lab in p.succ[u].items():
            if w in core_p:
                if qs.get(core_p[w]) != lab:
                    return False
                mapped_out += 1
        mapped_in = 0
        for w, lab in p.pred[u].items():
            if w in core_p:
                if qp.get(core_p[w]) != lab:
                    return False
                mapped_in += 1
        if mapped_out != sum(1 for x in qs if x in core_q):
            return False
        return mapped_in == sum(1 for x in qp if x in core_q)

    n = len(order)
    stack = [candidates(0)]
    while stack:
        depth = len(stack) - 1
        u = order[depth]
        extended = False
        for v in stack[depth]:
            if feasible(u, v):
                core_p[u] = v
                core_q[v] = u
                if depth + 1 == n:
                    return True
                stack.append(candidates(depth + 1))
                extended = True
                break
        if not extended:
            stack.pop()
            if stack:
                prev = order[len(stack) - 1]
                del core_q[core_p.pop(prev)]
    return False
