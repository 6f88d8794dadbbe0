from typing import Any

from opentelemetry import trace
from opentelemetry.exporter.otlp.proto.http.trace_exporter import OTLPSpanExporter
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor


def setup_tracing(endpoint: str) -> None:
    """Install an SDK tracer provider that exports spans to an OTLP/HTTP collector."""
    tracer_provider = TracerProvider(resource=Resource.create({"service.name": "quadratic-moduli"}))
    trace.set_tracer_provider(tracer_provider)

    exporter = OTLPSpanExporter(endpoint=f"{endpoint.rstrip('/')}/v1/traces")
    tracer_provider.add_span_processor(BatchSpanProcessor(exporter))


def get_tracer(name: str) -> trace.Tracer:
    """Get a tracer instance for creating spans; a no-op tracer until setup_tracing runs."""
    return trace.get_tracer(name)


def _flatten(prefix: str, value: Any, out: dict[str, Any]) -> None:
    if isinstance(value, dict):
        for key, item in value.items():
            _flatten(f"{prefix}.{key}", item, out)
    elif isinstance(value, (list, tuple)):
        if all(isinstance(item, (str, int, bool)) for item in value):
            out[prefix] = [str(item) for item in value]
        else:
            for index, item in enumerate(value):
                _flatten(f"{prefix}.{index}", item, out)
    elif isinstance(value, (str, int, float, bool)):
        out[prefix] = value
    else:
        out[prefix] = str(value)


def add_report_to_span(span: trace.Span, prefix: str, payload: dict[str, Any]) -> None:
    """
    Flatten a JSON report onto span attributes, e.g. {"rows": [{"n": 0}]} becomes
    `{prefix}.rows.0.n`. Scalar lists become string arrays.
    """
    try:
        attributes: dict[str, Any] = {}
        _flatten(prefix, payload, attributes)
        span.set_attributes(attributes)
    except Exception:
        # span attributes are best effort
        pass
