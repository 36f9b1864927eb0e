"""Task and session store with an append-only op journal per session.

Every worker action is appended to the session's journal (op, undo, or redo
record) before the caller sees a response, so killing the process at any
point loses at most an unacknowledged action. On startup the store replays
every journal and rebuilds each session exactly: materialized state is
always the replay of the live op-log prefix onto the task's initial state.

Undo is prefix replay rather than inverse ops: color reassignment on merge
and split is not locally invertible, and documents are small enough that
replay is cheap. Layout positions are view state, never persisted, and are
recomputed deterministically from (graph, seed, params) on demand.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
import zlib
from pathlib import Path
from typing import Optional

from ..cluster_graph import ClusterGraph
from ..errors import (NothingToRedo, NothingToUndo, SchemaViolation,
                      StaleSession, TaskConflict, UnknownSession, UnknownTask,
                      WrongKind)
from ..force_layout import LayoutState, init_layout, run_until_stable
from ..formats import (KIND_CLUSTERING, KIND_PARSING, TaskDescriptor,
                       parse_task, serialize_clusters, serialize_tree,
                       task_mentions)
from ..stroke_geometry import Stroke, interpret_stroke, tree_layout
from ..tree_editor import TreeDoc, init_forest
from .config import ServerConfig
from .ops import EditOp


def _apply_edit(state, op: EditOp) -> dict:
    """Apply one op to a ClusterGraph or TreeDoc; returns a UI delta."""
    if op.kind == "add_link":
        report = state.add_link(op.a, op.b)
        return {"kind": op.kind,
                "link": sorted([op.a, op.b]),
                "merged": report.merged,
                "color": report.kept_color,
                "recolored": sorted(report.recolored_nodes)}
    if op.kind == "remove_link":
        before = state.node_colors()
        report = state.remove_link(op.a, op.b)
        changed = {str(i): c for i, c in state.node_colors().items()
                   if before[i] != c}
        return {"kind": op.kind,
                "link": sorted([op.a, op.b]),
                "split": report.split,
                "kept_members": sorted(report.kept_color_component)
                if report.kept_color_component else None,
                "new_color": report.new_color,
                "colors": changed}
    if op.kind == "group_nodes":
        new_id = state.group_nodes(list(op.children))
        return {"kind": op.kind,
                "new_node": new_id,
                "children": list(op.children),
                "parent": state.nodes[new_id].parent}
    if op.kind == "delete_node":
        node = state.nodes.get(op.node)
        promoted = list(node.children) if node else []
        state.delete_node(op.node)
        return {"kind": op.kind,
                "deleted": op.node,
                "promoted": promoted}
    if op.kind == "toggle_fold":
        folded = state.toggle_fold(op.node)
        return {"kind": op.kind, "node": op.node, "folded": folded}
    raise SchemaViolation("unknown op kind", kind=op.kind)


class Session:
    """A worker's live editing state over one task."""

    def __init__(self, session_id: str, task: TaskDescriptor,
                 sentence_index: int, seed: int, config: ServerConfig):
        self.session_id = session_id
        self.task = task
        self.sentence_index = sentence_index
        self.seed = seed
        self.config = config
        self.op_log: list[EditOp] = []
        self.cursor = 0
        self.state = self.initial_state()
        self._layout: Optional[LayoutState] = None
        self.lock = threading.RLock()

    @property
    def kind(self) -> str:
        return self.task.kind

    def initial_state(self):
        if self.kind == KIND_CLUSTERING:
            return ClusterGraph(
                task_mentions(self.task, self.config.abbreviation_length),
                palette=self.config.palette)
        sentences = self.task.payload["sentences"]
        return init_forest(sentences[self.sentence_index])

    def replay(self, prefix: int):
        state = self.initial_state()
        for op in self.op_log[:prefix]:
            _apply_edit(state, op)
        return state

    def apply(self, op: EditOp) -> dict:
        if op.is_cluster_op != (self.kind == KIND_CLUSTERING):
            raise WrongKind("op does not match the session's task kind",
                            op=op.kind, task_kind=self.kind)
        delta = _apply_edit(self.state, op)
        del self.op_log[self.cursor:]
        self.op_log.append(op)
        self.cursor += 1
        self._layout = None
        return delta

    def undo(self) -> None:
        if self.cursor <= 0:
            raise NothingToUndo("already at the initial state")
        self.cursor -= 1
        self.state = self.replay(self.cursor)
        self._layout = None

    def redo(self) -> None:
        if self.cursor >= len(self.op_log):
            raise NothingToRedo("no undone op to redo")
        self.cursor += 1
        self.state = self.replay(self.cursor)
        self._layout = None

    def layout(self) -> LayoutState:
        """Settled positions for the current graph, cached until it changes."""
        if self.kind != KIND_CLUSTERING:
            raise WrongKind("layout exists for clustering sessions only",
                            task_kind=self.kind)
        if self._layout is None:
            state = init_layout(self.state, self.config.canvas, self.seed)
            state, _ = run_until_stable(state, self.state, self.config.layout,
                                        self.config.settle_eps,
                                        self.config.settle_max_steps)
            self._layout = state
        return self._layout

    def snapshot(self) -> dict:
        if self.kind == KIND_CLUSTERING:
            graph: ClusterGraph = self.state
            colors = graph.node_colors()
            state = {"kind": self.kind,
                     "mentions": [{"id": m.id,
                                   "token_index": m.token_index,
                                   "surface": m.surface,
                                   "abbreviation": m.abbreviation,
                                   "color": colors[m.id]}
                                  for m in sorted(graph.nodes.values(),
                                                  key=lambda m: m.id)],
                     "links": [[a, b] for a, b in sorted(graph.links)],
                     "groups": [{"color": g.color,
                                 "members": sorted(g.members)}
                                for g in graph.groups()]}
        else:
            doc: TreeDoc = self.state
            state = {"kind": self.kind, **doc.snapshot()}
        return {"session_id": self.session_id,
                "task_id": self.task.task_id,
                "kind": self.kind,
                "sentence_index": self.sentence_index,
                "cursor": self.cursor,
                "op_count": len(self.op_log),
                "can_undo": self.cursor > 0,
                "can_redo": self.cursor < len(self.op_log),
                "state": state}


class TaskStore:
    """All tasks and sessions, persisted under one data directory."""

    def __init__(self, root: str | Path,
                 config: Optional[ServerConfig] = None):
        self.root = Path(root)
        self.config = config or ServerConfig()
        self.tasks: dict[str, TaskDescriptor] = {}
        self.sessions: dict[str, Session] = {}
        self._journals: dict[str, object] = {}
        self._lock = threading.RLock()
        (self.root / "tasks").mkdir(parents=True, exist_ok=True)
        (self.root / "sessions").mkdir(parents=True, exist_ok=True)
        self._load()

    # -- persistence ------------------------------------------------------------

    def _task_path(self, task_id: str) -> Path:
        return self.root / "tasks" / f"{task_id}.json"

    def _journal_path(self, session_id: str) -> Path:
        return self.root / "sessions" / f"{session_id}.log"

    def _load(self) -> None:
        for path in sorted((self.root / "tasks").glob("*.json")):
            raw = json.loads(path.read_text(encoding="utf-8"))
            descriptor = parse_task(raw)
            self.tasks[descriptor.task_id] = descriptor
        for path in sorted((self.root / "sessions").glob("*.log")):
            self._replay_journal(path)

    def _replay_journal(self, path: Path) -> None:
        lines = path.read_text(encoding="utf-8").splitlines()
        if not lines:
            return
        header = json.loads(lines[0])
        if header.get("record") != "open":
            raise SchemaViolation("journal does not start with an open "
                                  "record", path=str(path))
        task = self.tasks.get(header["task_id"])
        if task is None:
            raise SchemaViolation("journal references an unknown task",
                                  task_id=header["task_id"])
        session = Session(header["session_id"], task,
                          header["sentence_index"], header["seed"],
                          self.config)
        for line in lines[1:]:
            if not line.strip():
                continue
            record = json.loads(line)
            kind = record.get("record")
            if kind == "op":
                op = EditOp.from_json(record["op"])
                del session.op_log[session.cursor:]
                session.op_log.append(op)
                session.cursor += 1
            elif kind == "undo":
                session.cursor -= 1
            elif kind == "redo":
                session.cursor += 1
            else:
                raise SchemaViolation("unknown journal record", record=kind)
            if not 0 <= session.cursor <= len(session.op_log):
                raise SchemaViolation("journal cursor out of range",
                                      path=str(path))
        session.state = session.replay(session.cursor)
        self.sessions[session.session_id] = session

    def _journal(self, session_id: str):
        handle = self._journals.get(session_id)
        if handle is None:
            handle = open(self._journal_path(session_id), "a",
                          encoding="utf-8")
            self._journals[session_id] = handle
        return handle

    def _append(self, session_id: str, record: dict) -> None:
        handle = self._journal(session_id)
        handle.write(json.dumps(record, separators=(",", ":")) + "\n")
        handle.flush()
        os.fsync(handle.fileno())

    def close(self) -> None:
        for handle in self._journals.values():
            handle.close()
        self._journals.clear()

    # -- tasks ---------------------------------------------------------------------

    def create_task(self, raw: dict) -> str:
        descriptor = parse_task(raw)
        with self._lock:
            if descriptor.task_id is not None:
                existing = self.tasks.get(descriptor.task_id)
                if existing is not None:
                    if (existing.kind, existing.payload,
                            existing.display_html) == \
                            (descriptor.kind, descriptor.payload,
                             descriptor.display_html):
                        return descriptor.task_id
                    raise TaskConflict("task id already exists with a "
                                       "different payload",
                                       task_id=descriptor.task_id)
                task_id = descriptor.task_id
            else:
                task_id = uuid.uuid4().hex[:12]
                descriptor = TaskDescriptor(task_id, descriptor.kind,
                                            descriptor.payload,
                                            descriptor.display_html)
            path = self._task_path(task_id)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(descriptor.to_json(), indent=2),
                           encoding="utf-8")
            tmp.replace(path)
            self.tasks[task_id] = descriptor
            return task_id

    def get_task(self, task_id: str) -> TaskDescriptor:
        task = self.tasks.get(task_id)
        if task is None:
            raise UnknownTask("no such task", task_id=task_id)
        return task

    def list_tasks(self) -> list[TaskDescriptor]:
        return [self.tasks[k] for k in sorted(self.tasks)]

    # -- sessions --------------------------------------------------------------------

    def open_session(self, task_id: str, sentence_index: int = 0,
                     seed: Optional[int] = None) -> Session:
        task = self.get_task(task_id)
        if task.kind == KIND_PARSING:
            count = len(task.payload["sentences"])
            if not 0 <= sentence_index < count:
                raise SchemaViolation("sentence_index out of range",
                                      sentence_index=sentence_index,
                                      sentences=count)
        session_id = uuid.uuid4().hex[:12]
        if seed is None:
            seed = zlib.crc32(session_id.encode())
        with self._lock:
            session = Session(session_id, task, sentence_index, seed,
                              self.config)
            self.sessions[session_id] = session
            self._append(session_id, {"record": "open",
                                      "session_id": session_id,
                                      "task_id": task_id,
                                      "sentence_index": sentence_index,
                                      "seed": seed})
        return session

    def get_session(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise UnknownSession("no such session", session_id=session_id)
        return session

    def apply_op(self, session_id: str, raw_op: dict,
                 expected_version: Optional[int] = None) -> tuple[dict, dict]:
        session = self.get_session(session_id)
        op = EditOp.from_json(raw_op)
        with session.lock:
            if expected_version is not None \
                    and expected_version != session.cursor:
                raise StaleSession("session has moved past the client's "
                                   "view", expected=expected_version,
                                   cursor=session.cursor)
            delta = session.apply(op)
            self._append(session_id, {"record": "op", "op": op.to_json()})
            return delta, session.snapshot()

    def undo(self, session_id: str) -> dict:
        session = self.get_session(session_id)
        with session.lock:
            if session.cursor <= 0:
                raise NothingToUndo("already at the initial state")
            self._append(session_id, {"record": "undo"})
            session.undo()
            return session.snapshot()

    def redo(self, session_id: str) -> dict:
        session = self.get_session(session_id)
        with session.lock:
            if session.cursor >= len(session.op_log):
                raise NothingToRedo("no undone op to redo")
            self._append(session_id, {"record": "redo"})
            session.redo()
            return session.snapshot()

    # -- derived views ------------------------------------------------------------------

    def result_document(self, session_id: str) -> tuple[str, str]:
        """Serialized annotation plus its MIME type."""
        session = self.get_session(session_id)
        with session.lock:
            if session.kind == KIND_CLUSTERING:
                document = serialize_clusters(session.state)
                return (json.dumps(document, separators=(",", ":")),
                        "application/json")
            return serialize_tree(session.state), "text/plain"

    def layout_positions(self, session_id: str) -> dict:
        session = self.get_session(session_id)
        with session.lock:
            layout = session.layout()
            return {"positions": {str(i): [x, y]
                                  for i, (x, y)
                                  in sorted(layout.positions.items())},
                    "canvas": list(layout.canvas),
                    "radius": session.config.layout.radius}

    def tree_geometry(self, session_id: str) -> dict:
        session = self.get_session(session_id)
        with session.lock:
            if session.kind != KIND_PARSING:
                raise WrongKind("tree layout exists for parsing sessions "
                                "only", task_kind=session.kind)
            layout = tree_layout(session.state)
            return {"positions": {str(i): [x, y]
                                  for i, (x, y)
                                  in sorted(layout.positions.items())},
                    "edges": [{"child": e.child, "parent": e.parent,
                               "p_child": list(e.p_child),
                               "p_parent": list(e.p_parent),
                               "child_min_token": e.child_min_token}
                              for e in layout.edges]}

    def apply_stroke(self, session_id: str, points: list,
                     timestamp: float = 0.0) -> dict:
        """Interpret a drawn stroke server-side and apply what it asks for."""
        session = self.get_session(session_id)
        with session.lock:
            if session.kind != KIND_PARSING:
                raise WrongKind("strokes apply to parsing sessions only",
                                task_kind=session.kind)
            try:
                stroke = Stroke(tuple((float(x), float(y))
                                      for x, y in points))
            except (TypeError, ValueError) as exc:
                raise SchemaViolation(f"bad stroke points: {exc}")
            layout = tree_layout(session.state)
            intent = interpret_stroke(session.state, layout.edges, stroke)
            response: dict = {"intent": {"kind": intent.kind,
                                         "node": intent.node,
                                         "children": list(intent.children),
                                         "reason": intent.reason}}
            if intent.kind == "delete":
                raw_op = {"kind": "delete_node", "node": intent.node,
                          "timestamp": timestamp}
            elif intent.kind == "group":
                raw_op = {"kind": "group_nodes",
                          "children": list(intent.children),
                          "timestamp": timestamp}
            else:
                response["delta"] = None
                response["snapshot"] = session.snapshot()
                return response
            delta, snapshot = self.apply_op(session_id, raw_op)
            response["delta"] = delta
            response["snapshot"] = snapshot
            return response
