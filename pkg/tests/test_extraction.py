import json
import random
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ocexec import (
    DisconnectedObjectSet,
    EmptyExecution,
    UnknownType,
    build_event_graph,
    build_object_graph,
    execution_from_objects,
    extract_components,
    extract_leading_type,
    object_distance,
    parse_log,
)
from ocexec.extraction import leading_bfs

from generators import random_log


def _log(events, objects):
    return parse_log(json.dumps({
        "ocel:events": {
            eid: {"ocel:activity": eid, "ocel:timestamp": f"2020-01-01T00:00:{i:02d}Z", "ocel:omap": omap}
            for i, (eid, omap) in enumerate(events)
        },
        "ocel:objects": {o: {"ocel:type": t} for o, t in objects.items()},
    }))


def rederive(log, objs):
    """Events and edges of an execution straight from the traces."""
    events = {e.id for e in log.events if e.omap & objs}
    con = set()
    for trace in log.traces.values():
        con.update(zip(trace, trace[1:]))
    return events, {(a, b) for a, b in con if a in events and b in events}


def set_based_leading(log, g, lead):
    """Objects admitted by the distance-based set definition over the full object graph."""
    dist = {o: object_distance(g, lead, o) for o in g.nodes}
    best = {}
    for o, d in dist.items():
        if d is not None:
            t = log.otype(o)
            best[t] = min(best.get(t, d), d)
    return {o for o, d in dist.items() if d is not None and d == best[log.otype(o)]}


class TestExecutionFromObjects:
    def test_fixture_pair(self, fig2):
        x = execution_from_objects(fig2, build_object_graph(fig2), {"m1", "o1"})
        assert x.events == {"e1", "e3", "e4", "e5", "e6"}
        assert x.edges == {("e1", "e3"), ("e3", "e4"), ("e3", "e5"), ("e4", "e6"), ("e5", "e6")}

    def test_disconnected(self, fig2):
        with pytest.raises(DisconnectedObjectSet):
            execution_from_objects(fig2, build_object_graph(fig2), {"o1", "o2"})

    def test_single_object_is_a_case(self):
        log = _log([("a", ["x"]), ("b", ["x"])], {"x": "T"})
        x = execution_from_objects(log, build_object_graph(log), {"x"})
        assert x.events == {"a", "b"} and x.edges == {("a", "b")}

    def test_empty_trace(self):
        log = _log([("a", ["x"])], {"x": "T", "y": "T"})
        with pytest.raises(EmptyExecution):
            execution_from_objects(log, build_object_graph(log), {"y"})

    def test_edge_from_non_member_object(self):
        # a->b exists only through y, but both events belong to x's execution
        log = _log([("a", ["x", "y"]), ("b", ["x", "y"])], {"x": "T", "y": "U"})
        log2 = _log([("a", ["x", "y"]), ("m", ["y"]), ("b", ["x", "y"])], {"x": "T", "y": "U"})
        assert execution_from_objects(log, build_object_graph(log), {"x"}).edges == {("a", "b")}
        x2 = execution_from_objects(log2, build_object_graph(log2), {"x"})
        assert x2.events == {"a", "b"} and x2.edges == {("a", "b")}


class TestComponents:
    def test_fixture(self, fig2_components):
        assert [x.events for x in fig2_components] == [
            {f"e{i}" for i in range(1, 7)}, {f"e{i}" for i in range(7, 13)}]
        assert [x.objects for x in fig2_components] == [{"o1", "m1", "m2"}, {"o2", "m3", "m4"}]

    def test_empty(self):
        assert extract_components(_log([], {})) == []

    def test_object_without_events_is_skipped(self):
        log = _log([("a", ["x"])], {"x": "T", "z": "T"})
        assert [x.objects for x in extract_components(log)] == [{"x"}]

    def test_json(self, fig2_components):
        d = fig2_components[0].to_dict()
        assert d["strategy"] == "components"
        assert d["objects"] == ["m1", "m2", "o1"]
        assert d["events"] == ["e1", "e2", "e3", "e4", "e5", "e6"]
        assert d["edges"][0] == ["e1", "e3"]
        assert "lead_object" not in d


class TestLeadingType:
    def test_type1_equals_components(self, fig2, fig2_components):
        lead = extract_leading_type(fig2, "Type1")
        assert [x.objects for x in lead] == [x.objects for x in fig2_components]
        assert [x.events for x in lead] == [x.events for x in fig2_components]
        assert [x.lead_object for x in lead] == ["o1", "o2"]

    def test_type2(self, fig2):
        lead = extract_leading_type(fig2, "Type2")
        assert [x.objects for x in lead] == [{"m1", "o1"}, {"m2", "o1"}, {"m3", "o2"}, {"m4", "o2"}]
        assert lead[0].events == {"e1", "e3", "e4", "e5", "e6"}
        assert lead[0].levels == (("m1", 0), ("o1", 1))

    def test_type2_json(self, fig2):
        d = extract_leading_type(fig2, "Type2")[0].to_dict()
        assert d["strategy"] == "leading" and d["leading_type"] == "Type2" and d["lead_object"] == "m1"

    def test_matches_set_definition_on_fixture(self, fig2):
        g = build_object_graph(fig2)
        for t in ("Type1", "Type2"):
            for x in extract_leading_type(fig2, t):
                assert x.objects == set_based_leading(fig2, g, x.lead_object)

    def test_bfs_differs_from_set_definition_when_path_is_pruned(self):
        # L-b1, L-c1 at level 1; c1-b2 rejected at level 2; d1 only behind b2
        log = _log([("e1", ["L", "b1"]), ("e2", ["L", "c1"]), ("e3", ["c1", "b2"]), ("e4", ["b2", "d1"])],
                   {"L": "A", "b1": "B", "b2": "B", "c1": "C", "d1": "D"})
        g = build_object_graph(log)
        assert set(leading_bfs(log, g, "L")) == {"L", "b1", "c1"}
        assert set_based_leading(log, g, "L") == {"L", "b1", "c1", "d1"}
        with pytest.raises(DisconnectedObjectSet):
            execution_from_objects(log, g, set_based_leading(log, g, "L"))

    def test_other_leads_never_admitted(self):
        log = _log([("e1", ["a1", "b"]), ("e2", ["b", "a2"])], {"a1": "A", "a2": "A", "b": "B"})
        assert [x.objects for x in extract_leading_type(log, "A")] == [{"a1", "b"}, {"a2", "b"}]

    def test_no_objects_of_type(self):
        log = _log([("e1", ["a"])], {"a": "A"})
        log_with_type = parse_log(json.dumps({
            "ocel:global-log": {"ocel:object-types": ["A", "Z"]},
            "ocel:events": {}, "ocel:objects": {}}))
        assert extract_leading_type(log_with_type, "Z") == []
        with pytest.raises(UnknownType):
            extract_leading_type(log, "Z")

    def test_threads_match_sequential(self):
        log = random_log(random.Random(7), n_groups=40)
        for t in log.object_types:
            assert extract_leading_type(log, t, threads=4) == extract_leading_type(log, t)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_execution_invariants(seed):
    log = random_log(random.Random(seed))
    g = build_object_graph(log)
    eg = build_event_graph(log)
    comps = extract_components(log, g, eg)
    # components partition the events that have objects
    covered = [e for x in comps for e in x.events]
    assert len(covered) == len(set(covered))
    assert set(covered) == {e.id for e in log.events if e.omap}
    for t in log.object_types:
        leads = extract_leading_type(log, t, g, eg)
        expected_leads = [o.id for o in log.objects if o.otype == t
                          and any(log.trace(m) for m in leading_bfs(log, g, o.id))]
        assert [x.lead_object for x in leads] == sorted(expected_leads)
        for x in leads:
            _check_levels(log, g, x)
    for x in comps + [y for t in log.object_types for y in extract_leading_type(log, t, g, eg)]:
        events, edges = rederive(log, x.objects)
        assert x.events == events and x.edges == edges
        assert execution_from_objects(log, g, x.objects, eg).edges == x.edges


def _check_levels(log, g, x):
    levels = dict(x.levels)
    assert set(levels) == x.objects
    assert levels[x.lead_object] == 0
    by_type = {}
    for o, lvl in levels.items():
        by_type.setdefault(log.otype(o), set()).add(lvl)
    # every admitted object of a type sits on that type's single, earliest level
    assert all(len(v) == 1 for v in by_type.values())
    # recorded level is the BFS distance from the lead through admitted objects only
    dist = {x.lead_object: 0}
    q = deque([x.lead_object])
    while q:
        u = q.popleft()
        for v in g.adjacency[u]:
            if v in x.objects and v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    assert dist == levels
