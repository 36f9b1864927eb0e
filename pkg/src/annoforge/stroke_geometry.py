"""Stroke-over-edges editing: one cut means delete, several mean group.

A worker draws a polyline over the rendered tree. Every parent-child edge
the stroke crosses is collected; crossing exactly one edge asks to delete
the node below it (unless it is an undeletable leaf), crossing several asks
to group the nodes below them. The intersection primitive uses exact
orientation tests on the given coordinates, no epsilons.

The rendering convention shared with the UI: visible leaves sit at x=0,
stacked vertically in token order; a parent sits at the mean y of its
children, with x growing by a fixed spacing per level of height. Folded
subtrees render as a single leaf-like node. This fixes edge endpoints
deterministically from a TreeDoc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import StaleEdges
from .tree_editor import TreeDoc

ROW_SPACING = 40.0
DEPTH_SPACING = 120.0

Point = tuple[float, float]


@dataclass(frozen=True)
class Stroke:
    """A drawn polyline; consecutive duplicate points are dropped."""

    points: tuple[Point, ...]

    def __post_init__(self):
        cleaned: list[Point] = []
        for x, y in self.points:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError("stroke points must be finite")
            point = (float(x), float(y))
            if not cleaned or cleaned[-1] != point:
                cleaned.append(point)
        if len(cleaned) < 2:
            raise ValueError("a stroke needs at least two distinct points")
        object.__setattr__(self, "points", tuple(cleaned))

    def segments(self) -> list[tuple[Point, Point]]:
        return list(zip(self.points, self.points[1:]))


@dataclass(frozen=True)
class RenderedEdge:
    """A parent-child edge as drawn, tagged with the child's leftmost token.

    child_min_token orders hits left-to-right in sentence order without
    consulting the document again.
    """

    child: int
    parent: int
    p_child: Point
    p_parent: Point
    child_min_token: int


@dataclass(frozen=True)
class EditIntent:
    """What a stroke asks for: noop, delete one node, or group several."""

    kind: str  # "noop" | "delete" | "group"
    node: Optional[int] = None
    children: tuple[int, ...] = ()
    reason: Optional[str] = None


def _orientation(p: Point, q: Point, r: Point) -> int:
    cross = ((q[0] - p[0]) * (r[1] - p[1])
             - (q[1] - p[1]) * (r[0] - p[0]))
    if cross > 0:
        return 1
    if cross < 0:
        return -1
    return 0


def _within_bbox(p: Point, q: Point, r: Point) -> bool:
    # q is known collinear with segment p-r
    return (min(p[0], r[0]) <= q[0] <= max(p[0], r[0])
            and min(p[1], r[1]) <= q[1] <= max(p[1], r[1]))


def segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Closed-segment intersection; collinear overlap counts as a hit."""
    o1 = _orientation(p1, p2, q1)
    o2 = _orientation(p1, p2, q2)
    o3 = _orientation(q1, q2, p1)
    o4 = _orientation(q1, q2, p2)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _within_bbox(p1, q1, p2):
        return True
    if o2 == 0 and _within_bbox(p1, q2, p2):
        return True
    if o3 == 0 and _within_bbox(q1, p1, q2):
        return True
    if o4 == 0 and _within_bbox(q1, p2, q2):
        return True
    return False


def edges_hit(stroke: Stroke,
              edges: Sequence[RenderedEdge]) -> list[RenderedEdge]:
    """Edges crossed by any stroke segment, each once, in sentence order."""
    hits = []
    for edge in edges:
        for a, b in stroke.segments():
            if segments_intersect(a, b, edge.p_child, edge.p_parent):
                hits.append(edge)
                break
    hits.sort(key=lambda e: (e.child_min_token, e.child))
    return hits


def interpret_stroke(doc: TreeDoc, edges: Sequence[RenderedEdge],
                     stroke: Stroke) -> EditIntent:
    """Turn a stroke over the rendered edges into an edit intent.

    The intent is geometry only; group preconditions (contiguity, shared
    parent) are still enforced by the tree editor when the intent is
    applied.
    """
    for edge in edges:
        node = doc.nodes.get(edge.child)
        if node is None or node.parent != edge.parent:
            raise StaleEdges("edge list does not match the document",
                             child=edge.child, parent=edge.parent)
        if min(doc.subtree_token_indices(edge.child)) != edge.child_min_token:
            raise StaleEdges("edge token tag does not match the document",
                             child=edge.child)
    hits = edges_hit(stroke, edges)
    if not hits:
        return EditIntent("noop", reason="NothingHit")
    if len(hits) == 1:
        child = doc.nodes[hits[0].child]
        if child.is_leaf:
            return EditIntent("noop", reason="LeafUndeletable",
                              node=child.id)
        return EditIntent("delete", node=child.id)
    return EditIntent("group", children=tuple(e.child for e in hits))


@dataclass(frozen=True)
class TreeLayout:
    """Node positions plus drawable edges under the rendering convention."""

    positions: dict[int, Point]
    edges: tuple[RenderedEdge, ...]


def tree_layout(doc: TreeDoc, row_spacing: float = ROW_SPACING,
                depth_spacing: float = DEPTH_SPACING,
                respect_folds: bool = True) -> TreeLayout:
    """Deterministic positions and edges for a TreeDoc.

    Folded subtrees (when respected) collapse to a single node: their inner
    edges disappear and they count as height-0 leaves.
    """

    def collapsed(node_id: int) -> bool:
        node = doc.nodes[node_id]
        return node.is_leaf or (respect_folds and node.folded)

    positions: dict[int, Point] = {}
    heights: dict[int, int] = {}

    def measure(node_id: int) -> tuple[int, float]:
        """Height and y of a visible node; fills positions on the way up."""
        node = doc.nodes[node_id]
        if collapsed(node_id):
            if node.is_leaf:
                y = node.token_index * row_spacing
            else:
                indices = doc.subtree_token_indices(node_id)
                y = sum(indices) / len(indices) * row_spacing
            heights[node_id] = 0
            positions[node_id] = (0.0, y)
            return 0, y
        child_info = [measure(c) for c in node.children]
        height = 1 + max(h for h, _ in child_info)
        y = sum(y for _, y in child_info) / len(child_info)
        heights[node_id] = height
        positions[node_id] = (height * depth_spacing, y)
        return height, y

    measure(doc.virtual_root)

    edges = []
    stack = [doc.virtual_root]
    while stack:
        node_id = stack.pop()
        if collapsed(node_id):
            continue
        for child_id in doc.nodes[node_id].children:
            edges.append(RenderedEdge(
                child=child_id, parent=node_id,
                p_child=positions[child_id], p_parent=positions[node_id],
                child_min_token=min(doc.subtree_token_indices(child_id))))
            stack.append(child_id)
    edges.sort(key=lambda e: (e.child_min_token, e.child))
    return TreeLayout(positions, tuple(edges))
