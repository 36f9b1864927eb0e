"""Worker edit operations as logged, replayable records."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import SchemaViolation

CLUSTER_KINDS = ("add_link", "remove_link")
TREE_KINDS = ("group_nodes", "delete_node", "toggle_fold")


@dataclass(frozen=True)
class EditOp:
    """One worker action; the op log is the source of truth for state."""

    kind: str
    a: Optional[int] = None
    b: Optional[int] = None
    node: Optional[int] = None
    children: Optional[tuple[int, ...]] = None
    timestamp: float = 0.0

    def to_json(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.kind in CLUSTER_KINDS:
            doc["a"] = self.a
            doc["b"] = self.b
        elif self.kind == "group_nodes":
            doc["children"] = list(self.children)
        else:
            doc["node"] = self.node
        doc["timestamp"] = self.timestamp
        return doc

    @classmethod
    def from_json(cls, raw: dict) -> "EditOp":
        if not isinstance(raw, dict):
            raise SchemaViolation("op must be an object")
        kind = raw.get("kind")
        timestamp = raw.get("timestamp", 0.0)
        if not isinstance(timestamp, (int, float)) \
                or isinstance(timestamp, bool):
            raise SchemaViolation("timestamp must be a number", kind=kind)
        timestamp = float(timestamp)
        if kind in CLUSTER_KINDS:
            a, b = raw.get("a"), raw.get("b")
            if not isinstance(a, int) or not isinstance(b, int):
                raise SchemaViolation("link ops need integer ids 'a' and 'b'",
                                      kind=kind)
            return cls(kind, a=a, b=b, timestamp=timestamp)
        if kind == "group_nodes":
            children = raw.get("children")
            if (not isinstance(children, list) or len(children) < 1
                    or not all(isinstance(c, int) for c in children)):
                raise SchemaViolation("group_nodes needs a list of integer "
                                      "node ids", kind=kind)
            return cls(kind, children=tuple(children), timestamp=timestamp)
        if kind in ("delete_node", "toggle_fold"):
            node = raw.get("node")
            if not isinstance(node, int):
                raise SchemaViolation("op needs an integer 'node' id",
                                      kind=kind)
            return cls(kind, node=node, timestamp=timestamp)
        raise SchemaViolation("unknown op kind", kind=kind)

    @property
    def is_cluster_op(self) -> bool:
        return self.kind in CLUSTER_KINDS
