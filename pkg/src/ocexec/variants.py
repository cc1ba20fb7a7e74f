"""Object-centric variant mining: WL hash buckets, refined by one-to-one isomorphism tests."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .extraction import ProcessExecution
from .log import EventLog
from .matching import iso_check
from .projection import ProjectedExecution, project
from .wl import DEFAULT_ITERATIONS, wl_hash

EXACT = "exact"
APPROXIMATE = "approximate"
MODES = (EXACT, APPROXIMATE)

PROGRESS_EVERY = 10_000


@dataclass(frozen=True)
class EquivalenceClass:
    class_id: str
    members: tuple
    representative: ProjectedExecution = field(compare=False)
    frequency: Fraction

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class VariantReport:
    attribute: str
    mode: str
    total_executions: int
    classes: tuple
    executions: tuple = field(default=(), compare=False, repr=False)

    def to_dict(self) -> dict:
        classes = []
        for c in self.classes:
            entry = {
                "class_id": c.class_id,
                "size": c.size,
                "frequency": {"num": c.frequency.numerator, "den": c.frequency.denominator},
                "members": list(c.members),
            }
            if self.executions:
                entry["representative"] = self.executions[c.members[0]].to_dict()
            classes.append(entry)
        return {
            "attribute": self.attribute,
            "mode": self.mode,
            "total_executions": self.total_executions,
            "classes": classes,
        }


def _map(fn, items, threads):
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _refine_bucket(projs, members: list[int]) -> list[list[int]]:
    """Split one hash bucket into isomorphism classes, comparing only against each class's first member."""
    subclasses: list[list[int]] = []
    for i in members:
        for sub in subclasses:
            if iso_check(projs[sub[0]], projs[i]):
                sub.append(i)
                break
        else:
            subclasses.append([i])
    # stable across input order unless a split yields equally sized subclasses
    subclasses.sort(key=len, reverse=True)
    return subclasses


def classify(
    projs: Sequence[ProjectedExecution],
    mode: str = EXACT,
    wl_iterations: int = DEFAULT_ITERATIONS,
    threads: int = 1,
    progress: Callable[[str], None] | None = None,
) -> list[tuple[str, list[int]]]:
    """Group projected executions into (class_id, member indices) pairs."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    projs = list(projs)

    def hash_one(i):
        h = wl_hash(projs[i], wl_iterations)
        if progress and (i + 1) % PROGRESS_EVERY == 0:
            progress(f"hashed {i + 1}/{len(projs)} executions")
        return h

    hashes = _map(hash_one, range(len(projs)), threads)
    buckets: dict[str, list[int]] = {}
    for i, h in enumerate(hashes):
        buckets.setdefault(h, []).append(i)
    keys = sorted(buckets)
    if mode == APPROXIMATE:
        return [(h, buckets[h]) for h in keys]

    refined = _map(lambda h: _refine_bucket(projs, buckets[h]), keys, threads)
    out = []
    for h, subs in zip(keys, refined):
        if len(subs) == 1:
            out.append((h, subs[0]))
        else:
            out.extend((f"{h}-{k}", sub) for k, sub in enumerate(subs))
    return out


def build_report(
    attribute: str,
    mode: str,
    projs: Sequence[ProjectedExecution],
    groups: list[tuple[str, list[int]]],
    executions: Sequence[ProcessExecution] = (),
) -> VariantReport:
    total = len(projs)
    classes = [
        EquivalenceClass(cid, tuple(members), projs[members[0]], Fraction(len(members), total))
        for cid, members in groups
    ]
    classes.sort(key=lambda c: (-c.frequency, c.class_id))
    return VariantReport(attribute, mode, total, tuple(classes), tuple(executions))


def mine_variants(
    log: EventLog,
    executions: Sequence[ProcessExecution],
    attribute: str = "ocel:activity",
    mode: str = EXACT,
    wl_iterations: int = DEFAULT_ITERATIONS,
    threads: int = 1,
    progress: Callable[[str], None] | None = None,
) -> VariantReport:
    """Mine equivalence classes of executions under label-respecting isomorphism.

    ``approximate`` stops after hashing; ``exact`` refines every hash bucket.
    Output does not depend on ``threads``.
    """
    if not executions:
        raise ValueError("mine_variants needs at least one execution")
    projs = _map(lambda x: project(log, x, attribute), list(executions), threads)
    groups = classify(projs, mode, wl_iterations, threads, progress)
    return build_report(attribute, mode, projs, groups, executions)
