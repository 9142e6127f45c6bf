import json
from typing import Any, Iterable, Mapping, Optional, Tuple

import graphviz


def canonical_json(data: Any) -> str:
    """Serialize ``data`` with sorted keys so re-serializing a parsed document is byte-identical."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def render_dot(
    name: str,
    nodes: Iterable[Tuple[str, str]],
    edges: Iterable[Tuple[str, str]],
    graph_attrs: Optional[Mapping[str, str]] = None,
) -> str:
    """Render a Hasse diagram as a Graphviz digraph.

    Args:
        name: graph identifier
        nodes: (node id, label) pairs, emitted in the given order; newlines in a
            label become DOT line breaks
        edges: (lower, upper) cover pairs
        graph_attrs: graph attributes, ``{"rankdir": "BT"}`` when omitted

    Returns:
        The DOT source, ending in a newline.
    """
    dot = graphviz.Digraph(name=name, graph_attr=dict(graph_attrs or {"rankdir": "BT"}))
    for node_id, label in nodes:
        dot.node(node_id, label=label.replace("\n", "\\n"))
    for lower, upper in edges:
        dot.edge(lower, upper)
    return dot.source
