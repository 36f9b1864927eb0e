"""Mention clustering as an undirected link graph.

Workers never name clusters: they drag one mention node onto another, which
adds a link, and every connected component of the link relation is a group
sharing one color. The color lifecycle is part of the model:

* singletons are always the DEFAULT grey;
* merging two groups keeps the color of the group being merged *to* (the
  drop target's group), unless the target is a bare singleton, in which case
  the dragged group's color survives (or a fresh one is issued when both
  sides were singletons);
* removing a link that disconnects a group leaves the old color on the
  majority component and issues a fresh color to the minority; components
  reduced to a single node fall back to grey.

Groups are tracked with a union-find structure; link removal triggers a full
component recompute, which is cheap at document scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .colors import BASE_PALETTE, DEFAULT_COLOR, color_for_index
from .errors import NoSuchLink, SchemaViolation, SelfLink, UnknownNode


@dataclass(frozen=True)
class MentionNode:
    """A pre-identified mention span rendered as a draggable node."""

    id: int
    token_index: int
    surface: str
    abbreviation: str = ""

    def __post_init__(self):
        if self.token_index < 0:
            raise SchemaViolation("token_index must be non-negative",
                                  node=self.id)
        if not self.abbreviation:
            object.__setattr__(self, "abbreviation", self.surface[:12])


def make_mention(id: int, token_index: int, surface: str,
                 abbreviation_length: int = 12) -> MentionNode:
    """Build a mention whose abbreviation is the first k surface characters."""
    return MentionNode(id, token_index, surface,
                       surface[:abbreviation_length])


@dataclass(frozen=True)
class Group:
    """One connected component and its display color."""

    members: frozenset[int]
    color: str


@dataclass(frozen=True)
class MergeReport:
    """Outcome of add_link: whether two groups merged and who got recolored."""

    merged: bool
    kept_color: str
    recolored_nodes: frozenset[int]


@dataclass(frozen=True)
class SplitReport:
    """Outcome of remove_link.

    kept_color_component is the member set that kept the pre-split color
    (None when nobody did, e.g. a two-node group dissolving into singletons);
    new_color is the fresh color issued to a multi-member minority, if any.
    """

    split: bool
    kept_color_component: Optional[frozenset[int]]
    new_color: Optional[str]


class ClusterGraph:
    """Mention nodes, undirected links, and derived color groups."""

    def __init__(self, mentions: Iterable[MentionNode],
                 palette: tuple[str, ...] = BASE_PALETTE):
        self.nodes: dict[int, MentionNode] = {}
        token_indices: set[int] = set()
        for m in mentions:
            if m.id in self.nodes:
                raise SchemaViolation("duplicate mention id", node=m.id)
            if m.token_index in token_indices:
                raise SchemaViolation("duplicate token_index",
                                      token_index=m.token_index)
            token_indices.add(m.token_index)
            self.nodes[m.id] = m
        self.links: set[tuple[int, int]] = set()
        self.palette = tuple(palette)
        self.palette_cursor = 0
        self._color: dict[int, str] = {i: DEFAULT_COLOR for i in self.nodes}
        self._parent: dict[int, int] = {i: i for i in self.nodes}
        self._rank: dict[int, int] = {i: 0 for i in self.nodes}

    # -- union-find internals -------------------------------------------------

    def _find(self, x: int) -> int:
        parent = self._parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def _union(self, a: int, b: int) -> None:
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            return
        if self._rank[ra] < self._rank[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        if self._rank[ra] == self._rank[rb]:
            self._rank[ra] += 1

    def _rebuild_components(self) -> None:
        self._parent = {i: i for i in self.nodes}
        self._rank = {i: 0 for i in self.nodes}
        for a, b in self.links:
            self._union(a, b)

    def _component_members(self, node_id: int) -> set[int]:
        root = self._find(node_id)
        return {i for i in self.nodes if self._find(i) == root}

    def _fresh_color(self) -> str:
        """Issue a color never shown by any current group."""
        in_use = set(self._color.values())
        while True:
            candidate = color_for_index(self.palette_cursor, self.palette)
            self.palette_cursor += 1
            if candidate not in in_use and candidate != DEFAULT_COLOR:
                return candidate

    def _require(self, node_id: int) -> None:
        if node_id not in self.nodes:
            raise UnknownNode("no such mention", node=node_id)

    # -- queries ---------------------------------------------------------------

    def components(self) -> list[set[int]]:
        """Connected-component partition, ordered by smallest member id."""
        by_root: dict[int, set[int]] = {}
        for i in self.nodes:
            by_root.setdefault(self._find(i), set()).add(i)
        return sorted(by_root.values(), key=min)

    def groups(self) -> list[Group]:
        return [Group(frozenset(c), self._color[min(c)])
                for c in self.components()]

    def group_of(self, node_id: int) -> frozenset[int]:
        self._require(node_id)
        return frozenset(self._component_members(node_id))

    def color_of(self, node_id: int) -> str:
        self._require(node_id)
        return self._color[node_id]

    def node_colors(self) -> dict[int, str]:
        return dict(self._color)

    def copy(self) -> "ClusterGraph":
        dup = ClusterGraph(self.nodes.values(), self.palette)
        dup.links = set(self.links)
        dup.palette_cursor = self.palette_cursor
        dup._color = dict(self._color)
        dup._rebuild_components()
        return dup

    # -- operations --------------------------------------------------------------

    def add_link(self, dragged: int, target: int) -> MergeReport:
        """Link the dragged node to the drop target, merging groups if needed.

        Already-connected pairs just gain (or deduplicate) the link with no
        color change. On a real merge the target group's color wins unless
        the target was a grey singleton, in which case the dragged group's
        color is kept or, failing that, a fresh color is issued.
        """
        self._require(dragged)
        self._require(target)
        if dragged == target:
            raise SelfLink("cannot link a node to itself", node=dragged)
        pair = (min(dragged, target), max(dragged, target))
        already_connected = self._find(dragged) == self._find(target)
        self.links.add(pair)
        if already_connected:
            return MergeReport(False, self._color[target], frozenset())

        dragged_members = self._component_members(dragged)
        target_members = self._component_members(target)
        target_color = self._color[target]
        dragged_color = self._color[dragged]
        if len(target_members) > 1:
            new_color = target_color
        elif dragged_color != DEFAULT_COLOR:
            new_color = dragged_color
        else:
            new_color = self._fresh_color()

        self._union(dragged, target)
        recolored = set()
        for member in dragged_members | target_members:
            if self._color[member] != new_color:
                self._color[member] = new_color
                recolored.add(member)
        return MergeReport(True, new_color, frozenset(recolored))

    def remove_link(self, a: int, b: int) -> SplitReport:
        """Remove the link {a, b}, splitting the group when it disconnects.

        The larger surviving component keeps the old color (size ties go to
        the component holding the smallest node id); a multi-member minority
        gets a fresh color; singletons drop to grey.
        """
        pair = (min(a, b), max(a, b))
        if pair not in self.links:
            raise NoSuchLink("link does not exist", a=a, b=b)
        old_color = self._color[a]
        self.links.discard(pair)
        self._rebuild_components()

        comp_a = self._component_members(a)
        if b in comp_a:
            return SplitReport(False, frozenset(comp_a), None)
        comp_b = self._component_members(b)

        if len(comp_a) > len(comp_b):
            majority, minority = comp_a, comp_b
        elif len(comp_b) > len(comp_a):
            majority, minority = comp_b, comp_a
        elif min(comp_a) < min(comp_b):
            majority, minority = comp_a, comp_b
        else:
            majority, minority = comp_b, comp_a

        kept: Optional[frozenset[int]] = None
        if len(majority) > 1:
            kept = frozenset(majority)
            for member in majority:
                self._color[member] = old_color
        else:
            for member in majority:
                self._color[member] = DEFAULT_COLOR

        new_color: Optional[str] = None
        if len(minority) > 1:
            new_color = self._fresh_color()
            for member in minority:
                self._color[member] = new_color
        else:
            for member in minority:
                self._color[member] = DEFAULT_COLOR
        return SplitReport(True, kept, new_color)


def proximity_target(positions: dict[int, tuple[float, float]],
                     dragged: int, radius: float) -> Optional[int]:
    """Nearest node whose center lies within radius of the dragged node.

    Returns None when nothing is in range; distance ties break toward the
    smaller node id.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if dragged not in positions:
        raise UnknownNode("dragged node has no position", node=dragged)
    dx0, dy0 = positions[dragged]
    best: Optional[tuple[float, int]] = None
    for node_id in sorted(positions):
        if node_id == dragged:
            continue
        x, y = positions[node_id]
        dist = math.hypot(x - dx0, y - dy0)
        if dist <= radius and (best is None or dist < best[0]):
            best = (dist, node_id)
    return None if best is None else best[1]
