"""The conversation graph: a weighted directed user graph built from tweets.

Every tweet authored by ``u`` that addresses ``v`` contributes one unit to
the weight of the edge ``u -> v``. Authors of tweets with no recipients are
kept as isolated vertices. Graphs are immutable once built; time slices,
induced subgraphs and cut flows all return fresh graphs or tweet sets.
"""

from __future__ import annotations

import csv
import dataclasses
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .ingest import TweetRecord


@dataclass(frozen=True)
class TimeWindow:
    """Half-open interval of epoch seconds: start inclusive, end exclusive."""

    start: int
    end: int

    def __post_init__(self):
        if self.start >= self.end:
            raise ValueError(f"empty time window: [{self.start}, {self.end})")

    def contains(self, timestamp: int) -> bool:
        return self.start <= timestamp < self.end

    def intersect(self, other: "TimeWindow") -> "TimeWindow | None":
        start = max(self.start, other.start)
        end = min(self.end, other.end)
        return TimeWindow(start, end) if start < end else None


@dataclass(frozen=True)
class FlowSet:
    """The tweets crossing a cut: authored in the source set, addressing the
    target set. Each tweet appears once regardless of recipient multiplicity."""

    source_label: str
    target_label: str
    tweet_ids: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.tweet_ids)


class ConversationGraph:
    """Weighted directed user graph plus the tweet multiset that induced it.

    Attributes:
        users: all user ids appearing as author or recipient.
        tweets: the inducing records, in construction order.
        edges: mapping (author, recipient) -> tweet count. No self edges.
        tweet_index: tweet_id -> record.

    Users are also interned to dense integer indices (``user_ids`` holds the
    sorted id list, ``index_of`` the reverse map) so traversals run on ints;
    external interfaces only ever see the original string ids.
    """

    __slots__ = ("users", "tweets", "edges", "tweet_index",
                 "user_ids", "index_of", "_out_adj", "_in_adj")

    def __init__(self, tweets: Sequence[TweetRecord], extra_users: Iterable[str] = ()):
        users: set[str] = set(extra_users)
        weights: Counter[tuple[str, str]] = Counter()
        index: dict[str, TweetRecord] = {}
        for t in tweets:
            users.add(t.author)
            users.update(t.recipients)
            index[t.tweet_id] = t
            for r in t.recipients:
                if r != t.author:
                    weights[(t.author, r)] += 1
        self.users = frozenset(users)
        self.tweets = tuple(tweets)
        self.edges = dict(weights)
        self.tweet_index = index
        self.user_ids = tuple(sorted(users))
        self.index_of = {u: i for i, u in enumerate(self.user_ids)}
        self._out_adj: list[list[int]] | None = None
        self._in_adj: list[list[int]] | None = None

    def out_adj(self) -> list[list[int]]:
        """Out-neighbour index lists, one per interned user (cached)."""
        if self._out_adj is None:
            adj: list[list[int]] = [[] for _ in self.user_ids]
            idx = self.index_of
            for (u, v) in self.edges:
                adj[idx[u]].append(idx[v])
            self._out_adj = adj
        return self._out_adj

    def in_adj(self) -> list[list[int]]:
        """In-neighbour index lists, one per interned user (cached)."""
        if self._in_adj is None:
            adj: list[list[int]] = [[] for _ in self.user_ids]
            idx = self.index_of
            for (u, v) in self.edges:
                adj[idx[v]].append(idx[u])
            self._in_adj = adj
        return self._in_adj

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConversationGraph):
            return NotImplemented
        return (self.users == other.users and self.tweets == other.tweets
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.users, self.tweets))

    def __repr__(self) -> str:
        return (f"ConversationGraph(users={len(self.users)}, "
                f"edges={len(self.edges)}, tweets={len(self.tweets)})")


def build_graph(tweets: Sequence[TweetRecord]) -> ConversationGraph:
    """Build the conversation graph over all authors and recipients."""
    return ConversationGraph(tweets)


def time_slice(g: ConversationGraph, window: TimeWindow) -> ConversationGraph:
    """Subgraph induced by the tweets created inside the window."""
    return build_graph([t for t in g.tweets if window.contains(t.timestamp)])


def induced_subgraph(g: ConversationGraph, users: Iterable[str]) -> ConversationGraph:
    """Subgraph induced by a vertex set; ids not in the graph are ignored.

    A tweet survives when its author is kept and either it never had
    recipients or at least one recipient is kept; surviving recipient sets
    are restricted to the kept users and weights recomputed.
    """
    kept = frozenset(users) & g.users
    tweets = []
    for t in g.tweets:
        if t.author not in kept:
            continue
        if not t.recipients:
            tweets.append(t)
            continue
        recipients = t.recipients & kept
        if recipients:
            tweets.append(t if recipients == t.recipients
                          else dataclasses.replace(t, recipients=recipients))
    return ConversationGraph(tweets, extra_users=kept)


def cut_flow(g: ConversationGraph, src: Iterable[str], dst: Iterable[str],
             source_label: str = "", target_label: str = "") -> FlowSet:
    """Tweets authored inside ``src`` with at least one recipient in ``dst``,
    ordered by (timestamp, tweet_id). Source and target may overlap."""
    src = frozenset(src)
    dst = frozenset(dst)
    hits = [t for t in g.tweets if t.author in src and t.recipients & dst]
    hits.sort(key=lambda t: (t.timestamp, t.tweet_id))
    return FlowSet(source_label=source_label, target_label=target_label,
                   tweet_ids=tuple(t.tweet_id for t in hits))


def flow_tweets(flow: FlowSet, g: ConversationGraph) -> list[TweetRecord]:
    """Resolve a flow's tweet ids against the graph's tweet index."""
    return [g.tweet_index[tid] for tid in flow.tweet_ids]


def write_vertices_csv(g: ConversationGraph, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["user"])
        for user in g.user_ids:
            writer.writerow([user])


def write_edges_csv(g: ConversationGraph, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["src", "dst", "weight"])
        for (u, v) in sorted(g.edges):
            writer.writerow([u, v, g.edges[(u, v)]])


def read_graph_csv(edges_path: str | Path, vertices_path: str | Path) -> tuple[set[str], dict[tuple[str, str], int]]:
    """Read back a graph export; tweet-level detail is not recoverable."""
    users: set[str] = set()
    with open(vertices_path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            users.add(row["user"])
    edges: dict[tuple[str, str], int] = {}
    with open(edges_path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            edges[(row["src"], row["dst"])] = int(row["weight"])
    return users, edges
