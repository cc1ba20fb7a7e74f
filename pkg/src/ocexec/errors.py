"""Exception hierarchy.

Parse problems derive from :class:`InputError`, misuse of the library from
:class:`ConfigError`. The CLI maps these onto exit codes 2 and 3.
"""


class OcexecError(Exception):
    """Base class for every error raised by this package."""

    kind = "error"

    def details(self) -> dict:
        return {}


class InputError(OcexecError):
    kind = "input_error"


class MalformedJson(InputError):
    kind = "malformed_json"


class MissingField(InputError):
    kind = "missing_field"

    def __init__(self, path: str):
        super().__init__(f"missing field {path!r}")
        self.path = path

    def details(self):
        return {"path": self.path}


class InvalidField(InputError):
    kind = "invalid_field"

    def __init__(self, path: str, reason: str):
        super().__init__(f"invalid field {path!r}: {reason}")
        self.path = path
        self.reason = reason

    def details(self):
        return {"path": self.path, "reason": self.reason}


class UnknownObjectRef(InputError):
    kind = "unknown_object_ref"

    def __init__(self, event_id: str, object_id: str):
        super().__init__(f"event {event_id!r} references undeclared object {object_id!r}")
        self.event_id = event_id
        self.object_id = object_id

    def details(self):
        return {"event": self.event_id, "object": self.object_id}


class DuplicateId(InputError):
    kind = "duplicate_id"

    def __init__(self, id_kind: str, id_: str):
        super().__init__(f"duplicate {id_kind} id {id_!r}")
        self.id_kind = id_kind
        self.id = id_

    def details(self):
        return {"id_kind": self.id_kind, "id": self.id}


class ConfigError(OcexecError):
    kind = "config_error"


class UnknownObject(ConfigError):
    kind = "unknown_object"

    def __init__(self, object_id: str):
        super().__init__(f"object {object_id!r} is not in the graph")
        self.object_id = object_id


class UnknownType(ConfigError):
    kind = "unknown_type"

    def __init__(self, type_name: str):
        super().__init__(f"object type {type_name!r} is not declared in the log")
        self.type_name = type_name


class DisconnectedObjectSet(ConfigError):
    kind = "disconnected_object_set"


class EmptyExecution(ConfigError):
    kind = "empty_execution"


class MissingAttribute(ConfigError):
    kind = "missing_attribute"

    def __init__(self, event_id: str, attribute: str):
        super().__init__(f"event {event_id!r} has no attribute {attribute!r}")
        self.event_id = event_id
        self.attribute = attribute

    def details(self):
        return {"event": self.event_id, "attribute": self.attribute}


class TooLarge(ConfigError):
    kind = "too_large"


class InvariantViolation(OcexecError):
    """An internal consistency check failed; indicates corrupted input or a bug."""

    kind = "invariant_violation"


class CycleDetected(InvariantViolation):
    kind = "cycle_detected"


class CyclicExecution(InvariantViolation):
    kind = "cyclic_execution"
