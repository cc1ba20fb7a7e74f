"""Exhaustive isomorphism oracle for small graphs, used to check the miner.

Deliberately naive: no hashing, no colour refinement, no matching order.
"""

from __future__ import annotations

from .errors import TooLarge
from .projection import ProjectedExecution

MAX_NODES = 9


def brute_force_iso(p: ProjectedExecution, q: ProjectedExecution) -> bool:
    """Search all node bijections, extending a partial one while every assigned pair stays consistent."""
    if len(p.nodes) != len(q.nodes) or len(p.edges) != len(q.edges):
        return False
    ps, qs = list(p.nodes), list(q.nodes)
    n = len(ps)
    p_edges = {e: p.edge_label[e] for e in p.edges}
    q_edges = {e: q.edge_label[e] for e in q.edges}
    assign: list = []
    used = [False] * n

    def consistent(k):
        # pair k against every earlier pair, both directions, including non-edges
        a, b = ps[k], assign[k]
        if p.node_label[a] != q.node_label[b]:
            return False
        for j in range(k + 1):
            c, d = ps[j], assign[j]
            if p_edges.get((a, c)) != q_edges.get((b, d)):
                return False
            if p_edges.get((c, a)) != q_edges.get((d, b)):
                return False
        return True

    def extend(k):
        if k == n:
            return True
        for i in range(n):
            if used[i]:
                continue
            used[i] = True
            assign.append(qs[i])
            if consistent(k) and extend(k + 1):
                return True
            assign.pop()
            used[i] = False
        return False

    return extend(0)


def brute_force_classes(projs: list[ProjectedExecution]) -> list[list[int]]:
    """Partition indices into isomorphism classes by testing every pair.

    Classes are sorted by their smallest index.
    """
    for p in projs:
        if len(p.nodes) > MAX_NODES:
            raise TooLarge(f"oracle handles at most {MAX_NODES} nodes, got {len(p.nodes)}")
    parent = list(range(len(projs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(projs)):
        for j in range(i + 1, len(projs)):
            if brute_force_iso(projs[i], projs[j]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(len(projs)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])
