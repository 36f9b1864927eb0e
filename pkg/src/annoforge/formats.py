"""File and wire formats.

Sentence files are plain UTF-8 text, one sentence per line, tokens separated
by whitespace (LF or CRLF accepted, LF emitted). Trees serialize to
unlabeled bracket notation: a leaf prints its token, an internal node prints
"(" children ")" and the virtual root prints its children flat with no
enclosing bracket, so a partially annotated sentence like
"(My dog) (also likes) (eating sausage)" round-trips. Cluster state and
task descriptors are JSON with fixed key order.

Tokens containing parentheses are rejected at ingestion; they cannot be
represented safely in bracket output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .cluster_graph import ClusterGraph, MentionNode, make_mention
from .colors import DEFAULT_COLOR
from .errors import (DanglingReference, EmptyConstituent, InvalidToken,
                     NoSentences, SchemaViolation, TokenMismatch,
                     UnbalancedBrackets)
from .tree_editor import TreeDoc, build_doc

KIND_CLUSTERING = "clustering"
KIND_PARSING = "parsing"


@dataclass(frozen=True)
class SentenceFile:
    """Tokenized sentences from a plain-text input file."""

    sentences: tuple[tuple[str, ...], ...]

    def to_text(self) -> str:
        return "\n".join(" ".join(s) for s in self.sentences) + "\n"


def _check_token(token: str) -> str:
    if "(" in token or ")" in token:
        raise InvalidToken("tokens may not contain parentheses", token=token)
    return token


def parse_sentence_file(text: str) -> SentenceFile:
    """Split text into sentences by line and tokens by whitespace runs."""
    sentences = []
    for line in text.splitlines():
        tokens = line.split()
        if tokens:
            sentences.append(tuple(_check_token(t) for t in tokens))
    if not sentences:
        raise NoSentences("input contains no sentences")
    return SentenceFile(tuple(sentences))


# -- bracketed trees ----------------------------------------------------------

def serialize_tree(doc: TreeDoc) -> str:
    """Unlabeled bracket text for the document; fold flags are ignored."""

    def render(node_id: int) -> str:
        node = doc.nodes[node_id]
        if node.is_leaf:
            return doc.tokens[node.token_index]
        inner = " ".join(render(c) for c in node.children)
        if node_id == doc.virtual_root:
            return inner
        return "(" + inner + ")"

    return render(doc.virtual_root)


def parse_bracketed(text: str,
                    tokens_expected: Optional[Sequence[str]] = None
                    ) -> TreeDoc:
    """Rebuild a TreeDoc from bracket text.

    With tokens_expected given, the parsed leaf sequence must match it
    exactly.
    """
    stack: list[list] = [[]]
    tokens: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            stack.append([])
            i += 1
        elif ch == ")":
            if len(stack) == 1:
                raise UnbalancedBrackets("unmatched closing bracket",
                                         position=i)
            done = stack.pop()
            if not done:
                raise EmptyConstituent("empty bracket pair", position=i)
            stack[-1].append(done)
            i += 1
        elif ch.isspace():
            i += 1
        else:
            j = i
            while j < len(text) and text[j] not in "()" \
                    and not text[j].isspace():
                j += 1
            stack[-1].append(len(tokens))
            tokens.append(text[i:j])
            i = j
    if len(stack) > 1:
        raise UnbalancedBrackets("unclosed bracket",
                                 open_brackets=len(stack) - 1)
    forest = stack[0]
    if not forest:
        raise EmptyConstituent("document contains no tokens")
    if tokens_expected is not None and list(tokens_expected) != tokens:
        raise TokenMismatch("leaf sequence differs from the expected tokens",
                            expected=list(tokens_expected), found=tokens)
    return build_doc(tokens, forest)


# -- cluster documents -----------------------------------------------------------

def serialize_clusters(graph: ClusterGraph) -> dict:
    """JSON-ready cluster document: mentions, links, groups, in that order."""
    mentions = [{"id": m.id,
                 "token_index": m.token_index,
                 "surface": m.surface}
                for m in sorted(graph.nodes.values(), key=lambda m: m.id)]
    links = [[a, b] for a, b in sorted(graph.links)]
    groups = [{"color": g.color, "members": sorted(g.members)}
              for g in graph.groups()]
    return {"mentions": mentions, "links": links, "groups": groups}


def parse_clusters(document: dict) -> ClusterGraph:
    """Rebuild a ClusterGraph, validating references and color laws."""
    if not isinstance(document, dict):
        raise SchemaViolation("cluster document must be an object")
    for key in ("mentions", "links", "groups"):
        if not isinstance(document.get(key), list):
            raise SchemaViolation(f"missing or invalid '{key}' array")
    mentions = []
    for raw in document["mentions"]:
        if not isinstance(raw, dict):
            raise SchemaViolation("mention entries must be objects")
        try:
            mentions.append(MentionNode(int(raw["id"]),
                                        int(raw["token_index"]),
                                        str(raw["surface"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation(f"malformed mention entry: {exc}")
    graph = ClusterGraph(mentions)
    known = set(graph.nodes)

    for raw in document["links"]:
        if (not isinstance(raw, (list, tuple)) or len(raw) != 2
                or not all(isinstance(v, int) for v in raw)):
            raise SchemaViolation("links must be [a, b] id pairs", link=raw)
        a, b = raw
        if a not in known or b not in known:
            raise DanglingReference("link references an unknown mention",
                                    link=[a, b])
        if a == b:
            raise SchemaViolation("links may not be self loops", link=raw)
        graph.links.add((min(a, b), max(a, b)))
    graph._rebuild_components()

    seen: set[int] = set()
    colors_in_use: set[str] = set()
    for raw in document["groups"]:
        if not isinstance(raw, dict) or "color" not in raw \
                or "members" not in raw:
            raise SchemaViolation("group entries need color and members")
        members = raw["members"]
        if not isinstance(members, list) or not members:
            raise SchemaViolation("group members must be a non-empty list")
        for member in members:
            if not isinstance(member, int):
                raise SchemaViolation("group members must be mention ids",
                                      member=member)
            if member not in known:
                raise DanglingReference("group references an unknown mention",
                                        member=member)
            if member in seen:
                raise SchemaViolation("groups must be disjoint", member=member)
            seen.add(member)
        color = raw["color"]
        member_set = set(members)
        if graph.group_of(members[0]) != member_set:
            raise SchemaViolation("group is not a connected component",
                                  members=sorted(member_set))
        if len(member_set) == 1:
            if color != DEFAULT_COLOR:
                raise SchemaViolation("singleton groups must use the default "
                                      "color", members=members)
        else:
            if color == DEFAULT_COLOR:
                raise SchemaViolation("multi-member groups need a real color",
                                      members=sorted(member_set))
            if color in colors_in_use:
                raise SchemaViolation("two groups share a color", color=color)
            colors_in_use.add(color)
        for member in member_set:
            graph._color[member] = color
    if seen != known:
        raise SchemaViolation("groups do not partition the mentions",
                              missing=sorted(known - seen))
    return graph


# -- task descriptors --------------------------------------------------------------

@dataclass(frozen=True)
class TaskDescriptor:
    """A gatherer-supplied annotation task."""

    task_id: Optional[str]
    kind: str
    payload: dict
    display_html: str

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "payload": self.payload,
               "display_html": self.display_html}
        if self.task_id is not None:
            doc = {"task_id": self.task_id, **doc}
        return doc


def _validate_parsing_payload(payload: dict) -> dict:
    sentences = payload.get("sentences")
    if not isinstance(sentences, list) or not sentences:
        raise SchemaViolation("parsing payload needs a non-empty 'sentences' "
                              "list")
    cleaned = []
    for sentence in sentences:
        if not isinstance(sentence, list) or not sentence:
            raise SchemaViolation("each sentence must be a non-empty token "
                                  "list")
        tokens = []
        for token in sentence:
            if not isinstance(token, str) or not token or token.split() != [token]:
                raise SchemaViolation("tokens must be non-empty and contain "
                                      "no whitespace", token=token)
            tokens.append(_check_token(token))
        cleaned.append(tokens)
    return {"sentences": cleaned}


def _validate_clustering_payload(payload: dict) -> dict:
    text = payload.get("text")
    if not isinstance(text, str):
        raise SchemaViolation("clustering payload needs a 'text' string")
    raw_mentions = payload.get("mentions")
    if not isinstance(raw_mentions, list) or not raw_mentions:
        raise SchemaViolation("clustering payload needs a non-empty "
                              "'mentions' list")
    ids = set()
    token_indices = set()
    mentions = []
    for raw in raw_mentions:
        if not isinstance(raw, dict):
            raise SchemaViolation("mention entries must be objects")
        try:
            mid = int(raw["id"])
            token_index = int(raw["token_index"])
            surface = str(raw["surface"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation(f"malformed mention entry: {exc}")
        if mid in ids:
            raise SchemaViolation("duplicate mention id", id=mid)
        if token_index < 0 or token_index in token_indices:
            raise SchemaViolation("token_index must be unique and "
                                  "non-negative", id=mid)
        ids.add(mid)
        token_indices.add(token_index)
        mentions.append({"id": mid, "token_index": token_index,
                         "surface": surface})
    cleaned = {"text": text, "mentions": mentions}
    if "links" in payload:
        links = payload["links"]
        if not isinstance(links, list):
            raise SchemaViolation("'links' must be a list of id pairs")
        for link in links:
            if (not isinstance(link, (list, tuple)) or len(link) != 2
                    or not all(isinstance(v, int) for v in link)):
                raise SchemaViolation("links must be [a, b] id pairs",
                                      link=link)
            if link[0] not in ids or link[1] not in ids:
                raise SchemaViolation("link references an unknown mention",
                                      link=list(link))
            if link[0] == link[1]:
                raise SchemaViolation("links may not be self loops",
                                      link=list(link))
        cleaned["links"] = [list(link) for link in links]
    return cleaned


def parse_task(document: dict) -> TaskDescriptor:
    """Validate a raw task descriptor, normalizing its payload."""
    if not isinstance(document, dict):
        raise SchemaViolation("task descriptor must be an object")
    kind = document.get("kind")
    if kind not in (KIND_CLUSTERING, KIND_PARSING):
        raise SchemaViolation("kind must be 'clustering' or 'parsing'",
                              kind=kind)
    payload = document.get("payload")
    if not isinstance(payload, dict):
        raise SchemaViolation("task payload must be an object")
    if kind == KIND_PARSING:
        payload = _validate_parsing_payload(payload)
    else:
        payload = _validate_clustering_payload(payload)
    task_id = document.get("task_id")
    if task_id is not None and (not isinstance(task_id, str) or not task_id):
        raise SchemaViolation("task_id must be a non-empty string")
    display_html = document.get("display_html", "")
    if not isinstance(display_html, str):
        raise SchemaViolation("display_html must be a string")
    return TaskDescriptor(task_id, kind, payload, display_html)


def task_mentions(descriptor: TaskDescriptor,
                  abbreviation_length: int = 12) -> list[MentionNode]:
    """Mention nodes for a clustering task's payload."""
    return [make_mention(m["id"], m["token_index"], m["surface"],
                         abbreviation_length)
            for m in descriptor.payload["mentions"]]
