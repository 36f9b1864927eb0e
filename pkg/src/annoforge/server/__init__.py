"""Annotation service: task store, sessions, op log, and the HTTP API."""

from .app import create_app
from .config import ServerConfig
from .ops import EditOp
from .store import Session, TaskStore

__all__ = ["EditOp", "ServerConfig", "Session", "TaskStore", "create_app"]
