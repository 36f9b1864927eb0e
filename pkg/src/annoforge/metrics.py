"""Annotation quality and efficiency metrics.

Purity: with N_ij the number of mentions in cluster i labeled entity j and
N_i the cluster size, each cluster scores p_i = max_j N_ij / N_i and the
overall purity is sum_i (N_i / N) * p_i, in [0, 1].

Rand index: the fraction of mention pairs on which the system and gold
partitions agree (co-clustered in both, or separated in both).

Timing: clustering sessions are scored in seconds per correct cluster,
parsing sessions in seconds per token to stay comparable across sentence
lengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Sequence

from .errors import (EmptyPartition, NoCorrectClusters, SchemaViolation,
                     TooFewMentions, WrongKind)


@dataclass(frozen=True)
class LabeledPartition:
    """System clusters over mentions plus the gold entity label per mention."""

    clusters: tuple[frozenset, ...]
    gold: dict

    def __post_init__(self):
        object.__setattr__(self, "clusters",
                           tuple(frozenset(c) for c in self.clusters))
        seen: set = set()
        for cluster in self.clusters:
            if not cluster:
                raise SchemaViolation("clusters may not be empty")
            if cluster & seen:
                raise SchemaViolation("clusters must be disjoint",
                                      shared=sorted(cluster & seen))
            seen |= cluster
        missing = [m for m in seen if m not in self.gold]
        if missing:
            raise SchemaViolation("clustered mentions lack gold labels",
                                  missing=sorted(missing))

    @classmethod
    def from_documents(cls, system_doc: dict,
                       gold: dict) -> "LabeledPartition":
        """Build from a cluster document, adding singletons for any gold
        mention the system never touched."""
        groups = system_doc.get("groups")
        if not isinstance(groups, list):
            raise SchemaViolation("system document needs a 'groups' array")
        clusters = []
        covered: set = set()
        for group in groups:
            if not isinstance(group, dict) or "members" not in group:
                raise SchemaViolation("group entries need a members list")
            members = frozenset(group["members"])
            clusters.append(members)
            covered |= members
        for mention in gold:
            if mention not in covered:
                clusters.append(frozenset([mention]))
        return cls(tuple(clusters), dict(gold))


def _clustered_ids(partition: LabeledPartition) -> list:
    return [m for cluster in partition.clusters for m in cluster]


def purity(partition: LabeledPartition) -> float:
    """Weighted best-entity overlap, sum_i (N_i/N) * max_j (N_ij/N_i)."""
    total = sum(len(c) for c in partition.clusters)
    if total == 0:
        raise EmptyPartition("no clustered mentions")
    majority_sum = 0
    for cluster in partition.clusters:
        counts: dict = {}
        for mention in cluster:
            label = partition.gold[mention]
            counts[label] = counts.get(label, 0) + 1
        majority_sum += max(counts.values())
    return majority_sum / total


def rand_index(partition: LabeledPartition) -> float:
    """Pairwise agreement between system and gold partitions."""
    ids = sorted(_clustered_ids(partition), key=repr)
    if len(ids) < 2:
        raise TooFewMentions("rand index needs at least two mentions")
    cluster_of = {}
    for index, cluster in enumerate(partition.clusters):
        for mention in cluster:
            cluster_of[mention] = index
    agree = 0
    total = 0
    for a, b in combinations(ids, 2):
        total += 1
        same_system = cluster_of[a] == cluster_of[b]
        same_gold = partition.gold[a] == partition.gold[b]
        if same_system == same_gold:
            agree += 1
    return agree / total


@dataclass(frozen=True)
class TimingLog:
    """Timestamped ops from one worker session plus scoring denominators."""

    events: tuple  # (timestamp_seconds, op) pairs, timestamps non-decreasing
    task_kind: str
    token_count: int = 0
    correct_cluster_count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        stamps = [t for t, _ in self.events]
        if any(b < a for a, b in zip(stamps, stamps[1:])):
            raise SchemaViolation("timestamps must be non-decreasing")

    def elapsed(self) -> float:
        if len(self.events) < 2:
            return 0.0
        return self.events[-1][0] - self.events[0][0]


def time_per_entity(log: TimingLog) -> float:
    """Seconds of session time per correct cluster (clustering tasks)."""
    if log.task_kind != "clustering":
        raise WrongKind("time_per_entity applies to clustering sessions",
                        kind=log.task_kind)
    if log.correct_cluster_count <= 0:
        raise NoCorrectClusters("no correct clusters to divide by")
    return log.elapsed() / log.correct_cluster_count


def time_per_token(log: TimingLog) -> float:
    """Seconds of session time per sentence token (parsing tasks)."""
    if log.task_kind != "parsing":
        raise WrongKind("time_per_token applies to parsing sessions",
                        kind=log.task_kind)
    if log.token_count <= 0:
        raise ValueError("token_count must be positive")
    return log.elapsed() / log.token_count


def correct_clusters(system: Sequence[frozenset], gold: dict) -> int:
    """Count system clusters that exactly equal one full gold entity.

    This is the strict reading used for time_per_entity denominators: the
    cluster must be pure and must cover every mention of its entity.
    """
    entity_members: dict[Hashable, set] = {}
    for mention, label in gold.items():
        entity_members.setdefault(label, set()).add(mention)
    count = 0
    for cluster in system:
        labels = {gold.get(m) for m in cluster}
        if len(labels) == 1:
            label = labels.pop()
            if label is not None and entity_members[label] == set(cluster):
                count += 1
    return count
