"""
Optional OpenTelemetry spans around CLI commands.

When the opentelemetry packages are missing every helper degrades to a
no-op, so the CLI never depends on them.
"""

import logging
from contextlib import contextmanager
from typing import Iterator

from convopoly import __version__

logger = logging.getLogger(__name__)

# OpenTelemetry imports - graceful degradation if not available
try:
    from opentelemetry import trace
    from opentelemetry.trace import Status, StatusCode

    OTEL_AVAILABLE = True
except ImportError:
    OTEL_AVAILABLE = False
    trace = None

TRACER_NAME = "convopoly.cli"


def create_command_span_attributes(command: str, cfg) -> dict:
    """Span attributes describing one CLI invocation."""
    attributes = {
        "convopoly.command": command,
        "convopoly.kind": cfg.kind,
        "convopoly.version": __version__,
        "convopoly.format": cfg.fmt,
    }
    if cfg.d is not None:
        attributes["convopoly.d"] = cfg.d
    if cfg.n_values:
        attributes["convopoly.n_min"] = min(cfg.n_values)
        attributes["convopoly.n_max"] = max(cfg.n_values)
    if cfg.points:
        attributes["convopoly.points"] = ",".join(map(str, cfg.points))
    return attributes


@contextmanager
def command_span(command: str, attributes: dict) -> Iterator[object | None]:
    """
    Run a block inside a span named after the command.

    Yields the span, or None when OpenTelemetry is unavailable. Errors are
    recorded on the span and re-raised.
    """
    if not OTEL_AVAILABLE:
        yield None
        return

    tracer = trace.get_tracer(TRACER_NAME, __version__)
    with tracer.start_as_current_span(f"convopoly.{command}") as span:
        for key, value in attributes.items():
            span.set_attribute(key, value)
        try:
            yield span
        except Exception as e:
            span.set_attribute("error.type", type(e).__name__)
            span.set_attribute("error.message", str(e))
            span.set_status(Status(StatusCode.ERROR, str(e)))
            raise
        span.set_status(Status(StatusCode.OK))
        logger.debug(f"[Observability] Closed span for {command}")
