"""Object-centric event log model and the OCEL JSON reader/writer."""

from __future__ import annotations

import json
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from typing import Iterable, Mapping

from .errors import DuplicateId, InvalidField, MalformedJson, MissingField, UnknownObjectRef

logger = logging.getLogger(__name__)

GLOBAL_LOG = "ocel:global-log"
EVENTS = "ocel:events"
OBJECTS = "ocel:objects"
ACTIVITY = "ocel:activity"
TIMESTAMP = "ocel:timestamp"
OMAP = "ocel:omap"
VMAP = "ocel:vmap"
OTYPE = "ocel:type"
OVMAP = "ocel:ovmap"
OBJECT_TYPES = "ocel:object-types"

_EVENT_KEYS = {ACTIVITY, TIMESTAMP, OMAP, VMAP}
_OBJECT_KEYS = {OTYPE, OVMAP}
_TOP_KEYS = {GLOBAL_LOG, EVENTS, OBJECTS}

# attribute names that resolve to the event's fixed fields instead of its vmap
ACTIVITY_NAMES = frozenset({ACTIVITY, "activity"})
TIMESTAMP_NAMES = frozenset({TIMESTAMP, "timestamp"})

_RFC3339 = re.compile(
    r"(\d{4})-(\d{2})-(\d{2})[Tt ](\d{2}):(\d{2}):(\d{2})(?:\.(\d+))?"
    r"(?:([Zz])|([+-])(\d{2}):?(\d{2}))?$"
)


def parse_timestamp(text: str, path: str = TIMESTAMP) -> datetime:
    """Parse an RFC 3339 timestamp into an aware UTC datetime truncated to milliseconds.

    A missing UTC offset is rejected: naive times cannot be ordered against
    each other reliably.
    """
    if not isinstance(text, str):
        raise InvalidField(path, "timestamp must be a string")
    m = _RFC3339.match(text.strip())
    if m is None:
        raise InvalidField(path, f"not an RFC 3339 timestamp: {text!r}")
    year, month, day, hour, minute, second, frac, zulu, sign, off_h, off_m = m.groups()
    if not zulu and not sign:
        raise InvalidField(path, f"timestamp without timezone: {text!r}")
    micros = int((frac or "0")[:6].ljust(6, "0"))
    if sign:
        delta = timedelta(hours=int(off_h), minutes=int(off_m))
        tz = timezone(-delta if sign == "-" else delta)
    else:
        tz = timezone.utc
    try:
        ts = datetime(int(year), int(month), int(day), int(hour), int(minute), int(second),
                      micros // 1000 * 1000, tzinfo=tz)
    except ValueError as exc:
        raise InvalidField(path, str(exc)) from None
    return ts.astimezone(timezone.utc)


def format_timestamp(ts: datetime) -> str:
    ts = ts.astimezone(timezone.utc)
    return ts.strftime("%Y-%m-%dT%H:%M:%S") + f".{ts.microsecond // 1000:03d}Z"


def _as_attr_value(value) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, ensure_ascii=False)


@dataclass(frozen=True)
class Object:
    id: str
    otype: str
    ovmap: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Event:
    id: str
    activity: str
    timestamp: datetime
    omap: frozenset
    vmap: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def order_key(self) -> tuple[datetime, str]:
        """Global total order on events: timestamp, then id."""
        return (self.timestamp, self.id)

    def attribute(self, name: str) -> str | None:
        """Value of ``name`` as a string, or None when undefined for this event."""
        if name in ACTIVITY_NAMES:
            return self.activity
        if name in TIMESTAMP_NAMES:
            return format_timestamp(self.timestamp)
        return self.vmap.get(name)


class EventLog:
    """A validated, immutable object-centric event log.

    Per-object traces are derived from the events' object maps and sorted by
    ``(timestamp, event id)``.
    """

    def __init__(
        self,
        events: Iterable[Event],
        objects: Iterable[Object],
        object_types: Iterable[str] = (),
        global_log: Mapping | None = None,
        extra: Mapping | None = None,
    ):
        self.events: tuple[Event, ...] = tuple(events)
        self.objects: tuple[Object, ...] = tuple(objects)
        self.global_log = dict(global_log or {})
        self.extra = dict(extra or {})

        self._events: dict[str, Event] = {}
        for ev in self.events:
            if ev.id in self._events:
                raise DuplicateId("event", ev.id)
            self._events[ev.id] = ev
        self._objects: dict[str, Object] = {}
        for obj in self.objects:
            if obj.id in self._objects:
                raise DuplicateId("object", obj.id)
            self._objects[obj.id] = obj

        self.object_types: tuple[str, ...] = tuple(
            sorted(set(object_types) | {o.otype for o in self.objects})
        )

        traces: dict[str, list[str]] = {o.id: [] for o in self.objects}
        warnings = []
        for ev in sorted(self.events, key=lambda e: e.order_key):
            if not ev.omap:
                warnings.append(f"event {ev.id!r} has no objects and belongs to no execution")
            for oid in sorted(ev.omap):
                if oid not in traces:
                    raise UnknownObjectRef(ev.id, oid)
                traces[oid].append(ev.id)
        for oid, tr in traces.items():
            if not tr:
                warnings.append(f"object {oid!r} has no events and produces no execution")
        self.traces: dict[str, tuple[str, ...]] = {k: tuple(v) for k, v in traces.items()}
        self.warnings: tuple[str, ...] = tuple(warnings)
        if warnings:
            logger.debug("%d warnings while building the log", len(warnings))

    def event(self, event_id: str) -> Event:
        return self._events[event_id]

    def object(self, object_id: str) -> Object:
        return self._objects[object_id]

    def otype(self, object_id: str) -> str:
        return self._objects[object_id].otype

    def trace(self, object_id: str) -> tuple[str, ...]:
        return self.traces[object_id]

    def has_object(self, object_id: str) -> bool:
        return object_id in self._objects

    def order_key(self, event_id: str) -> tuple[datetime, str]:
        return self._events[event_id].order_key

    def __eq__(self, other):
        if not isinstance(other, EventLog):
            return NotImplemented
        return (
            self.events == other.events
            and self.objects == other.objects
            and self.object_types == other.object_types
            and self.global_log == other.global_log
            and self.extra == other.extra
        )

    __hash__ = None

    def __repr__(self):
        return f"EventLog(events={len(self.events)}, objects={len(self.objects)}, types={len(self.object_types)})"


class _Pairs(dict):
    """dict built from JSON pairs that remembers keys seen more than once."""

    duplicates: tuple = ()


def _pairs_hook(pairs):
    d = _Pairs()
    dups = []
    for k, v in pairs:
        if k in d:
            dups.append(k)
        d[k] = v
    if dups:
        d.duplicates = tuple(dups)
    return d


def _require(mapping, key, path):
    if key not in mapping:
        raise MissingField(f"{path}.{key}" if path else key)
    return mapping[key]


def _require_mapping(value, path):
    if not isinstance(value, dict):
        raise InvalidField(path, "expected a JSON object")
    return value


def parse_log(data: bytes | str) -> EventLog:
    """Parse an OCEL JSON document into a validated :class:`EventLog`."""
    try:
        doc = json.loads(data, object_pairs_hook=_pairs_hook)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedJson(str(exc)) from None
    _require_mapping(doc, "$")

    global_log = _require_mapping(doc.get(GLOBAL_LOG, {}), GLOBAL_LOG)
    raw_events = _require_mapping(_require(doc, EVENTS, ""), EVENTS)
    raw_objects = _require_mapping(_require(doc, OBJECTS, ""), OBJECTS)
    for dup in getattr(raw_events, "duplicates", ()):
        raise DuplicateId("event", dup)
    for dup in getattr(raw_objects, "duplicates", ()):
        raise DuplicateId("object", dup)

    declared = global_log.get(OBJECT_TYPES, [])
    if not isinstance(declared, list) or not all(isinstance(t, str) and t for t in declared):
        raise InvalidField(f"{GLOBAL_LOG}.{OBJECT_TYPES}", "expected a list of non-empty strings")

    objects = []
    for oid, raw in raw_objects.items():
        path = f"{OBJECTS}.{oid}"
        if not oid:
            raise InvalidField(path, "object id must be non-empty")
        _require_mapping(raw, path)
        otype = _require(raw, OTYPE, path)
        if not isinstance(otype, str) or not otype:
            raise InvalidField(f"{path}.{OTYPE}", "expected a non-empty string")
        ovmap = _require_mapping(raw.get(OVMAP, {}), f"{path}.{OVMAP}")
        extra = {k: v for k, v in raw.items() if k not in _OBJECT_KEYS}
        objects.append(Object(oid, otype, dict(ovmap), extra))

    events = []
    for eid, raw in raw_events.items():
        path = f"{EVENTS}.{eid}"
        if not eid:
            raise InvalidField(path, "event id must be non-empty")
        _require_mapping(raw, path)
        activity = _require(raw, ACTIVITY, path)
        if not isinstance(activity, str):
            raise InvalidField(f"{path}.{ACTIVITY}", "expected a string")
        ts = parse_timestamp(_require(raw, TIMESTAMP, path), f"{path}.{TIMESTAMP}")
        omap = _require(raw, OMAP, path)
        if not isinstance(omap, list) or not all(isinstance(o, str) for o in omap):
            raise InvalidField(f"{path}.{OMAP}", "expected a list of object ids")
        vmap = _require_mapping(raw.get(VMAP, {}), f"{path}.{VMAP}")
        extra = {k: v for k, v in raw.items() if k not in _EVENT_KEYS}
        events.append(Event(
            eid, activity, ts, frozenset(omap),
            {k: _as_attr_value(v) for k, v in vmap.items()},
            extra,
        ))

    extra = {k: v for k, v in doc.items() if k not in _TOP_KEYS}
    return EventLog(events, objects, declared, dict(global_log), extra)


def log_to_dict(log: EventLog) -> dict:
    doc = {
        GLOBAL_LOG: log.global_log,
        EVENTS: {
            ev.id: {
                ACTIVITY: ev.activity,
                TIMESTAMP: format_timestamp(ev.timestamp),
                OMAP: sorted(ev.omap),
                VMAP: ev.vmap,
                **ev.extra,
            }
            for ev in log.events
        },
        OBJECTS: {
            obj.id: {OTYPE: obj.otype, OVMAP: obj.ovmap, **obj.extra}
            for obj in log.objects
        },
    }
    doc.update(log.extra)
    return doc


def serialize_log(log: EventLog) -> bytes:
    return json.dumps(log_to_dict(log), ensure_ascii=False, indent=1).encode("utf-8")


@dataclass(frozen=True)
class LogStats:
    events: int
    types: int
    objects: int
    objects_per_type: dict

    def to_dict(self) -> dict:
        return {
            "events": self.events,
            "types": self.types,
            "objects": self.objects,
            "objects_per_type": dict(self.objects_per_type),
        }


def log_stats(log: EventLog) -> LogStats:
    per_type = Counter(o.otype for o in log.objects)
    return LogStats(
        events=len(log.events),
        types=len(log.object_types),
        objects=len(log.objects),
        objects_per_type={t: per_type.get(t, 0) for t in log.object_types},
    )
