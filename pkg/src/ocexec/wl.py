"""Weisfeiler-Lehman colour refinement and graph hashing for projected executions.

Digests are 64-bit BLAKE2b over a canonical byte encoding, so hashes are
stable across processes, runs and platforms.
"""

from __future__ import annotations

import json
from functools import lru_cache
from hashlib import blake2b

from .projection import ProjectedExecution

DEFAULT_ITERATIONS = 3
# refinement rounds used by the matcher's stable colouring before it gives up on stability
STABLE_ROUND_CAP = 20


def digest(data: bytes) -> str:
    return blake2b(data, digest_size=8).hexdigest()


@lru_cache(maxsize=65536)
def node_label_digest(label: tuple) -> str:
    value, counts = label
    return digest(json.dumps([value, [list(c) for c in counts]], ensure_ascii=False,
                             separators=(",", ":")).encode("utf-8"))


@lru_cache(maxsize=65536)
def edge_label_digest(label: tuple) -> str:
    return digest(json.dumps([list(c) for c in label], ensure_ascii=False,
                             separators=(",", ":")).encode("utf-8"))


def initial_colors(p: ProjectedExecution) -> dict:
    return {n: node_label_digest(p.node_label[n]) for n in p.nodes}


def refine(p: ProjectedExecution, colors: dict) -> dict:
    """One WL round: a node's colour absorbs its neighbours' colours, edge labels and directions."""
    new = {}
    for v in p.nodes:
        parts = [edge_label_digest(lab) + ">" + colors[w] for w, lab in p.succ[v].items()]
        parts.extend(edge_label_digest(lab) + "<" + colors[w] for w, lab in p.pred[v].items())
        parts.sort()
        new[v] = digest((colors[v] + "|" + ",".join(parts)).encode("ascii"))
    return new


def wl_hash(p: ProjectedExecution, iterations: int = DEFAULT_ITERATIONS) -> str:
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    colors = initial_colors(p)
    seen = list(colors.values())
    for _ in range(iterations):
        colors = refine(p, colors)
        seen.extend(colors.values())
    seen.sort()
    return digest(",".join(seen).encode("ascii"))


def stable_colors(p: ProjectedExecution, cap: int = STABLE_ROUND_CAP) -> tuple[int, dict]:
    """Refine until the colour partition stops splitting (or ``cap`` rounds).

    Returns the number of rounds run and the final colouring. Isomorphic
    graphs stop after the same number of rounds with the same colour multiset,
    so the colours can be compared across graphs. Cached on ``p``.
    """
    if p._stable is not None and p._stable[0] == cap:
        return p._stable[1]
    colors = initial_colors(p)
    classes = len(set(colors.values()))
    rounds = 0
    while rounds < cap:
        colors = refine(p, colors)
        rounds += 1
        n = len(set(colors.values()))
        if n == classes:
            break
        classes = n
    result = (rounds, colors)
    p._stable = (cap, result)
    return result
