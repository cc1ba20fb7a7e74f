"""Process executions and object-centric variants for object-centric event logs."""

from importlib import resources

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    CycleDetected,
    CyclicExecution,
    DisconnectedObjectSet,
    DuplicateId,
    EmptyExecution,
    InputError,
    InvalidField,
    InvariantViolation,
    MalformedJson,
    MissingAttribute,
    MissingField,
    OcexecError,
    TooLarge,
    UnknownObject,
    UnknownObjectRef,
    UnknownType,
)
from .event_graph import EventObjectGraph, build_event_graph, to_dot  # noqa: E402
from .extraction import (  # noqa: E402
    ProcessExecution,
    execution_from_objects,
    extract_components,
    extract_leading_type,
)
from .layout import LayoutGrid, layout_variant, x_end, x_positions, x_start  # noqa: E402
from .log import Event, EventLog, LogStats, Object, log_stats, parse_log, serialize_log  # noqa: E402
from .matching import iso_check  # noqa: E402
from .object_graph import ObjectGraph, build_object_graph, connected_components, object_distance  # noqa: E402
from .oracle import brute_force_classes  # noqa: E402
from .projection import ProjectedExecution, project  # noqa: E402
from .render import Geometry, Palette, build_palette, render_svg  # noqa: E402
from .variants import EquivalenceClass, VariantReport, classify, mine_variants  # noqa: E402
from .wl import wl_hash  # noqa: E402


def fixture_bytes() -> bytes:
    """The bundled 12-event example log (two order/machine executions)."""
    return resources.files(__name__).joinpath("data/fig2.json").read_bytes()
