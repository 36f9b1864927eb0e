"""Ordered constituency-tree document and its three edit operations.

A sentence starts as a forest of word leaves hanging off a hidden virtual
root, in token order. Workers only ever group contiguous siblings under a
fresh internal node, delete an internal node (splicing its children into its
parent), or toggle a fold flag that changes the view but never the
structure. The master invariant is that the left-to-right leaf sequence
always equals the input token sequence; every operation here preserves it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import (CannotDeleteLeaf, CannotDeleteRoot, CannotFoldLeaf,
                     CannotFoldRoot, EmptySentence, MixedParents,
                     NonContiguousSiblings, TooFewChildren, UnknownNode)

VIRTUAL_ROOT = 0


@dataclass
class TreeNode:
    """A leaf (token_index set) or an internal node (children set).

    folded is pure view state and only meaningful on internal nodes.
    """

    id: int
    token_index: Optional[int] = None
    children: list[int] = field(default_factory=list)
    folded: bool = False
    parent: Optional[int] = None

    @property
    def is_leaf(self) -> bool:
        return self.token_index is not None


class TreeDoc:
    """A single-sentence tree document rooted at a hidden virtual root."""

    def __init__(self, tokens: Sequence[str]):
        if not tokens:
            raise EmptySentence("cannot build a tree over zero tokens")
        self.tokens: list[str] = list(tokens)
        self.virtual_root = VIRTUAL_ROOT
        root = TreeNode(self.virtual_root)
        self.nodes: dict[int, TreeNode] = {self.virtual_root: root}
        for index in range(len(self.tokens)):
            leaf_id = index + 1
            self.nodes[leaf_id] = TreeNode(leaf_id, token_index=index,
                                           parent=self.virtual_root)
            root.children.append(leaf_id)
        self.next_id = len(self.tokens) + 1

    # -- traversal ------------------------------------------------------------

    def _require(self, node_id: int) -> TreeNode:
        node = self.nodes.get(node_id)
        if node is None:
            raise UnknownNode("no such tree node", node=node_id)
        return node

    def iter_subtree(self, node_id: int) -> Iterator[TreeNode]:
        """Depth-first, children in order; yields the node itself first."""
        node = self._require(node_id)
        stack = [node]
        while stack:
            current = stack.pop()
            yield current
            for child_id in reversed(current.children):
                stack.append(self.nodes[child_id])

    def subtree_token_indices(self, node_id: int) -> list[int]:
        return [n.token_index for n in self.iter_subtree(node_id)
                if n.is_leaf]

    def leaf_order(self) -> list[str]:
        """Tokens of the leaves in left-to-right tree order."""
        return [self.tokens[i]
                for i in self.subtree_token_indices(self.virtual_root)]

    def folded_label(self, node_id: int) -> str:
        """All tokens under the node, space-joined, for the folded view."""
        return " ".join(self.tokens[i]
                        for i in self.subtree_token_indices(node_id))

    def internal_ids(self) -> list[int]:
        return sorted(i for i, n in self.nodes.items()
                      if not n.is_leaf and i != self.virtual_root)

    # -- editing ----------------------------------------------------------------

    def group_nodes(self, children: Sequence[int]) -> int:
        """Insert a fresh node above a contiguous run of siblings.

        The run must be given exactly as it appears in the shared parent's
        child order; the new node takes the run's place and id of the new
        node is returned.
        """
        ids = list(children)
        for node_id in ids:
            self._require(node_id)
        if len(ids) < 2:
            raise TooFewChildren("grouping needs at least two nodes",
                                 selected=ids)
        if self.virtual_root in ids:
            # the root has no parent to share with the rest of the selection
            raise MixedParents("the root cannot be grouped", selected=ids)
        if len(set(ids)) != len(ids):
            raise NonContiguousSiblings("selection repeats a node",
                                        selected=ids)
        parents = {self.nodes[i].parent for i in ids}
        if len(parents) > 1:
            raise MixedParents("selected nodes have different parents",
                               selected=ids)
        parent = self.nodes[parents.pop()]
        start = parent.children.index(ids[0])
        if parent.children[start:start + len(ids)] != ids:
            raise NonContiguousSiblings(
                "selection is not a contiguous sibling run in order",
                selected=ids)

        new_id = self.next_id
        self.next_id += 1
        self.nodes[new_id] = TreeNode(new_id, children=ids, parent=parent.id)
        parent.children[start:start + len(ids)] = [new_id]
        for child_id in ids:
            self.nodes[child_id].parent = new_id
        return new_id

    def delete_node(self, node_id: int) -> None:
        """Remove an internal node, splicing its children into its parent."""
        node = self._require(node_id)
        if node_id == self.virtual_root:
            raise CannotDeleteRoot("the virtual root cannot be deleted")
        if node.is_leaf:
            raise CannotDeleteLeaf("leaves cannot be deleted", node=node_id)
        parent = self.nodes[node.parent]
        position = parent.children.index(node_id)
        parent.children[position:position + 1] = node.children
        for child_id in node.children:
            self.nodes[child_id].parent = parent.id
        del self.nodes[node_id]

    def toggle_fold(self, node_id: int) -> bool:
        """Flip the view-only fold flag; returns the new flag value."""
        node = self._require(node_id)
        if node_id == self.virtual_root:
            raise CannotFoldRoot("the virtual root cannot be folded")
        if node.is_leaf:
            raise CannotFoldLeaf("leaves cannot be folded", node=node_id)
        node.folded = not node.folded
        return node.folded

    # -- comparison and copying ---------------------------------------------------

    def shape(self) -> tuple:
        """Id-free structural fingerprint (token indices at the leaves)."""

        def build(node_id: int):
            node = self.nodes[node_id]
            if node.is_leaf:
                return node.token_index
            return tuple(build(c) for c in node.children)

        return build(self.virtual_root)

    def snapshot(self) -> dict:
        """JSON-ready full description, deterministic field and node order."""
        nodes = []
        for node_id in sorted(self.nodes):
            node = self.nodes[node_id]
            if node.is_leaf:
                nodes.append({"id": node_id, "token_index": node.token_index})
            else:
                nodes.append({"id": node_id,
                              "children": list(node.children),
                              "folded": node.folded})
        return {"tokens": list(self.tokens),
                "virtual_root": self.virtual_root,
                "next_id": self.next_id,
                "nodes": nodes}

    def copy(self) -> "TreeDoc":
        dup = TreeDoc.__new__(TreeDoc)
        dup.tokens = list(self.tokens)
        dup.virtual_root = self.virtual_root
        dup.next_id = self.next_id
        dup.nodes = {i: TreeNode(n.id, n.token_index, list(n.children),
                                 n.folded, n.parent)
                     for i, n in self.nodes.items()}
        return dup


def init_forest(tokens: Sequence[str]) -> TreeDoc:
    """One leaf per token under the virtual root, in token order."""
    return TreeDoc(tokens)


def build_doc(tokens: Sequence[str], forest: Sequence) -> TreeDoc:
    """Construct a TreeDoc from a nested structure over token indices.

    ``forest`` is a sequence of items, each either a token index or a nested
    sequence; flattened left to right it must enumerate 0..len(tokens)-1.
    Unlike group_nodes this accepts single-child constituents, which can
    legitimately appear in serialized documents.
    """
    doc = init_forest(tokens)

    def flatten(items) -> list[int]:
        out = []
        for item in items:
            if isinstance(item, int):
                out.append(item)
            else:
                out.extend(flatten(item))
        return out

    if flatten(forest) != list(range(len(tokens))):
        raise ValueError("forest must cover token indices in order")

    def build(items, parent_id: int) -> list[int]:
        child_ids = []
        for item in items:
            if isinstance(item, int):
                child_ids.append(item + 1)
                doc.nodes[item + 1].parent = parent_id
            else:
                new_id = doc.next_id
                doc.next_id += 1
                node = TreeNode(new_id, parent=parent_id)
                doc.nodes[new_id] = node
                node.children = build(item, new_id)
                child_ids.append(new_id)
        return child_ids

    root = doc.nodes[doc.virtual_root]
    root.children = build(forest, doc.virtual_root)
    return doc
