"""DOT rendering of trace graphs for documentation and debugging.

Output is deterministic: nodes in timestamp order, edges in recorded
order, one line each. Node shape encodes the node kind, edge style the
edge kind.
"""

from __future__ import annotations

from typing import Sequence

from .graph import ConcreteNode, Edge, ObservationModel, UseModel
from .kinds import EdgeKind, NodeKind
from .trace import GrossTrace

NODE_SHAPE: dict[NodeKind, str] = {
    NodeKind.USER: "diamond",
    NodeKind.PROCESS: "box",
    NodeKind.OBJECT: "ellipse",
}

EDGE_STYLE: dict[EdgeKind, str] = {
    EdgeKind.MANIPULATION: "solid",
    EdgeKind.TEMPORAL_NEXT: "dashed",
    EdgeKind.CONTEXTUALIZATION: "dotted",
    EdgeKind.COMPOSITION: "bold",
    EdgeKind.INSTANTIATION: "dashed",
}

_PREFIX = {NodeKind.USER: "U", NodeKind.PROCESS: "P", NodeKind.OBJECT: "O"}


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _node_label(node: ConcreteNode) -> str:
    kind = node.abstract.kind
    if kind is NodeKind.PROCESS:
        assert node.abstract.process is not None
        text = node.abstract.process.value.replace("_", " ")
    else:
        text = node.label
    return f"{_PREFIX[kind]}: {text}"


def render_graph(
    nodes: Sequence[ConcreteNode], edges: Sequence[Edge], name: str = "trace"
) -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for node in nodes:
        shape = NODE_SHAPE[node.abstract.kind]
        lines.append(
            f'  "{_escape(node.id)}" [shape={shape}, label="{_escape(_node_label(node))}"];'
        )
    for edge in edges:
        style = EDGE_STYLE[edge.kind]
        lines.append(
            f'  "{_escape(edge.source)}" -> "{_escape(edge.target)}" [style={style}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def trace_to_dot(trace: GrossTrace) -> str:
    return render_graph(trace.nodes, trace.edges, "trace")


def use_model_to_dot(model: UseModel) -> str:
    return render_graph(model.nodes, model.edges, "use_model")


def observation_to_dot(model: ObservationModel) -> str:
    return render_graph(model.nodes, model.edges, "observation_model")
