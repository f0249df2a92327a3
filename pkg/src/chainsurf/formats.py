"""JSON documents for graphs, surfaces, certificates and bound reports.

Serialization is canonical (sorted keys, fixed separators, trailing newline)
so identical inputs give byte-identical files.
"""
from __future__ import annotations

import hashlib
import json
import math

from .errors import DomainError
from .graphs import MultiGraph
from .surface import FNSurface


def dumps(doc) -> str:
    return json.dumps(_clean(doc), sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def _clean(x):
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    if hasattr(x, "item"):  # numpy scalar
        return _clean(x.item())
    return x


def graph_document(graph: MultiGraph, meta: dict | None = None) -> dict:
    doc = {"vertices": graph.vertex_count, "edges": [list(e) for e in graph.edges]}
    if meta:
        doc["meta"] = dict(meta)
    return doc


def graph_from_document(doc: dict) -> MultiGraph:
    try:
        n = doc["vertices"]
        edges = [tuple(e) for e in doc["edges"]]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed graph document: {exc}") from None
    if not isinstance(n, int) or any(len(e) != 2 or not all(isinstance(x, int) for x in e) for e in edges):
        raise DomainError("graph document needs an integer 'vertices' and integer pairs in 'edges'")
    return MultiGraph(n, edges)


def write_graph(path, graph: MultiGraph, meta: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(graph_document(graph, meta)))


def read_graph(path):
    """Return ``(graph, meta)``."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: not a JSON graph document ({exc})") from None
    return graph_from_document(doc), doc.get("meta", {})


def graph_fingerprint(graph: MultiGraph) -> str:
    return hashlib.sha256(dumps(graph_document(graph)).encode()).hexdigest()


def surface_document(surface: FNSurface, meta: dict | None = None) -> dict:
    doc = graph_document(surface.graph, meta)
    eps = surface.uniform_length
    doc["epsilon"] = eps if eps is not None else None
    doc["cuff_lengths"] = list(surface.cuff_lengths)
    doc["twists"] = list(surface.twists)
    return doc


def certificate_document(cert_fields: dict, graph: MultiGraph) -> dict:
    doc = dict(cert_fields)
    doc["fingerprint"] = {"graph_sha256": graph_fingerprint(graph), "epsilon": cert_fields["epsilon"]}
    return doc
