"""Structured errors shared across the toolkit.

Every error carries a machine-readable ``code`` (its class name) and an
optional ``detail`` dict; the HTTP layer maps them onto JSON error bodies
with the class's ``http_status``.
"""

from __future__ import annotations


class AnnoforgeError(Exception):
    """Base class for all structured toolkit errors."""

    http_status = 400

    def __init__(self, message: str = "", **detail):
        super().__init__(message or type(self).__name__)
        self.message = message or type(self).__name__
        self.detail = detail

    @property
    def code(self) -> str:
        return type(self).__name__


# cluster graph
class UnknownNode(AnnoforgeError):
    pass


class SelfLink(AnnoforgeError):
    pass


class NoSuchLink(AnnoforgeError):
    pass


# force layout
class EmptyCanvas(AnnoforgeError):
    pass


class MissingPosition(AnnoforgeError):
    pass


# tree editing
class EmptySentence(AnnoforgeError):
    pass


class TooFewChildren(AnnoforgeError):
    pass


class MixedParents(AnnoforgeError):
    pass


class NonContiguousSiblings(AnnoforgeError):
    pass


class CannotDeleteLeaf(AnnoforgeError):
    pass


class CannotDeleteRoot(AnnoforgeError):
    pass


class CannotFoldLeaf(AnnoforgeError):
    pass


class CannotFoldRoot(AnnoforgeError):
    pass


# stroke interpretation
class StaleEdges(AnnoforgeError):
    pass


# file and wire formats
class NoSentences(AnnoforgeError):
    pass


class InvalidToken(AnnoforgeError):
    pass


class UnbalancedBrackets(AnnoforgeError):
    pass


class EmptyConstituent(AnnoforgeError):
    pass


class TokenMismatch(AnnoforgeError):
    pass


class SchemaViolation(AnnoforgeError):
    pass


class DanglingReference(AnnoforgeError):
    pass


# metrics
class EmptyPartition(AnnoforgeError):
    pass


class TooFewMentions(AnnoforgeError):
    pass


class NoCorrectClusters(AnnoforgeError):
    pass


class WrongKind(AnnoforgeError):
    pass


# annotation service
class UnknownTask(AnnoforgeError):
    http_status = 404


class UnknownSession(AnnoforgeError):
    http_status = 404


class NothingToUndo(AnnoforgeError):
    pass


class NothingToRedo(AnnoforgeError):
    pass


class StaleSession(AnnoforgeError):
    http_status = 409


class TaskConflict(AnnoforgeError):
    http_status = 409
