"""Deterministic synthetic corpus generator with planted bow-tie masses.

The generator partitions users into the five components up front (largest
remainder rounding, so counts hit the requested fractions as closely as
integers allow) and only ever adds edges that provably preserve those
labels:

* LSCC: one covering cycle plus random chords inside the core.
* IN: each user points at the core or an earlier IN user (acyclic).
* OUT: each user is pointed at from the core or an earlier OUT user.
* TENDRILS: anchored by an IN user pointing at them or by them pointing
  at an OUT user; tendril-to-tendril edges run strictly forward in index
  so no cycle forms. Tubes (IN -> tendril -> OUT chains) stay TENDRILS.
* DISC: short chains and singletons in their own weak components;
  singletons author recipient-less tweets so they still exist as vertices.

Extra volume beyond the structural edges comes from tweets that duplicate
an existing edge or carry no recipients at all, so the decomposition of
the generated corpus is exactly the planted one.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .bowtie import Component, COMPONENT_ORDER
from .ingest import LexiconKind, TweetKind, TweetRecord

# 2023-11-14T00:00:00Z; any multiple of 86400 keeps day boundaries clean.
DEFAULT_START_EPOCH = 1_699_920_000

_POSITIVE_WORDS = ("great", "love", "awesome", "happy", "smooth", "fast")
_NEGATIVE_WORDS = ("terrible", "hate", "broken", "angry", "slow", "darn")
_FILLER_WORDS = ("the", "phone", "sale", "order", "today", "deal", "price",
                 "shipping", "app", "site")

_SENTIMENT_TABLE = {
    "great": 0.8, "love": 0.9, "awesome": 1.0, "happy": 0.7,
    "smooth": 0.5, "fast": 0.4,
    "terrible": -0.9, "hate": -1.0, "broken": -0.7, "angry": -0.8,
    "slow": -0.4, "darn": -0.5,
}
_POS_TABLE = {
    "phone": "noun", "sale": "noun", "order": "noun", "deal": "noun",
    "price": "noun", "shipping": "noun", "app": "noun", "site": "noun",
    "today": "noun",
    "love": "verb", "hate": "verb",
    "great": "adj", "awesome": "adj", "happy": "adj", "broken": "adj",
    "angry": "adj", "slow": "adj", "smooth": "adj", "terrible": "adj",
    "fast": "adv",
    "the": "other",
    "he": "pronoun3", "she": "pronoun3", "they": "pronoun3",
}
_CURSE_TABLE = ("darn", "heck")
_FREQUENCY_TABLE = {
    "the": 56271872.0, "today": 1210774.0, "phone": 341694.0,
    "order": 292003.0, "price": 250964.0, "deal": 168412.0,
    "sale": 134218.0, "site": 128094.0, "app": 96710.0,
    "shipping": 47616.0,
    "great": 1425537.0, "love": 1037948.0, "happy": 462587.0,
    "fast": 313126.0, "smooth": 71636.0, "awesome": 60911.0,
    "slow": 102711.0, "angry": 69029.0, "broken": 64908.0,
    "hate": 188655.0, "terrible": 54125.0, "darn": 4178.0,
    "heck": 12359.0,
    "he": 13151111.0, "she": 7516791.0, "they": 9644648.0,
}


@dataclass(frozen=True)
class SynthSpec:
    """Targets for one generated corpus.

    ``masses`` maps components to user-mass fractions summing to 1 (missing
    components mean zero). ``sentiment_bias`` gives the probability that a
    tweet authored inside a component draws positive wording; unlisted
    components default to 0.5.
    """

    masses: Mapping[Component, float]
    user_count: int
    days: int = 3
    tweets_per_user: float = 3.0
    sentiment_bias: Mapping[Component, float] = field(default_factory=dict)
    start_epoch: int = DEFAULT_START_EPOCH

    def __post_init__(self):
        if self.user_count < 10:
            raise ValueError("user_count must be at least 10")
        if self.days < 1:
            raise ValueError("days must be positive")
        if self.tweets_per_user <= 0:
            raise ValueError("tweets_per_user must be positive")
        for c, frac in self.masses.items():
            if c not in COMPONENT_ORDER:
                raise ValueError(f"unknown component {c!r} in masses")
            if frac < 0:
                raise ValueError(f"negative mass for {c.value}")
        total = sum(self.masses.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"masses sum to {total}, expected 1")
        for c, bias in self.sentiment_bias.items():
            if c not in COMPONENT_ORDER:
                raise ValueError(f"unknown component {c!r} in sentiment_bias")
            if not 0.0 <= bias <= 1.0:
                raise ValueError(f"sentiment bias for {c.value} outside [0, 1]")


def component_user_counts(spec: SynthSpec) -> dict[Component, int]:
    """Integer user counts per component by largest-remainder rounding.

    Counts always sum to spec.user_count. Raises on infeasible targets:
    a nonzero LSCC needs at least 2 users to form a cycle, and TENDRILS
    need at least one IN or OUT user to hang from.
    """
    exact = {c: spec.masses.get(c, 0.0) * spec.user_count for c in COMPONENT_ORDER}
    counts = {c: math.floor(x) for c, x in exact.items()}
    shortfall = spec.user_count - sum(counts.values())
    # Hand leftover users to the largest fractional parts, ties by order.
    order = sorted(COMPONENT_ORDER,
                   key=lambda c: (-(exact[c] - counts[c]), COMPONENT_ORDER.index(c)))
    for c in order[:shortfall]:
        counts[c] += 1
    if counts[Component.LSCC] < 2:
        raise ValueError("LSCC mass rounds below 2 users; no core cycle can be planted")
    if counts[Component.TENDRILS] > 0 and counts[Component.IN] + counts[Component.OUT] == 0:
        raise ValueError("TENDRILS users need at least one IN or OUT user to attach to")
    return counts


def partition_users(spec: SynthSpec) -> dict[Component, list[str]]:
    """Assign user names to components, deterministically from the spec."""
    counts = component_user_counts(spec)
    width = max(5, len(str(spec.user_count - 1)))
    users = [f"u{i:0{width}d}" for i in range(spec.user_count)]
    partition: dict[Component, list[str]] = {}
    pos = 0
    for c in COMPONENT_ORDER:
        partition[c] = users[pos:pos + counts[c]]
        pos += counts[c]
    return partition


def _tweet_text(rng: random.Random, bias: float) -> str:
    words = rng.sample(_FILLER_WORDS, rng.randint(2, 4))
    pool = _POSITIVE_WORDS if rng.random() < bias else _NEGATIVE_WORDS
    for _ in range(rng.randint(1, 2)):
        words.append(rng.choice(pool))
    rng.shuffle(words)
    return " ".join(words)


def generate_corpus(spec: SynthSpec, seed: int = 42) -> list[TweetRecord]:
    """Build the corpus: structural edges first, then volume padding.

    The result is sorted by (timestamp, tweet id) and identical for
    identical (spec, seed) pairs.
    """
    rng = random.Random(seed)
    partition = partition_users(spec)
    lscc = partition[Component.LSCC]
    in_users = partition[Component.IN]
    out_users = partition[Component.OUT]
    tendrils = partition[Component.TENDRILS]
    disc = partition[Component.DISC]

    edges: list[tuple[str, str]] = []
    # Core cycle plus chords for internal weight.
    for i, u in enumerate(lscc):
        edges.append((u, lscc[(i + 1) % len(lscc)]))
    for _ in range(len(lscc) // 2):
        a, b = rng.sample(lscc, 2)
        edges.append((a, b))
    # IN points toward the core, possibly through earlier IN users.
    for j, u in enumerate(in_users):
        edges.append((u, rng.choice(lscc + in_users[:j])))
    # OUT is pointed at from the core or earlier OUT users.
    for j, u in enumerate(out_users):
        edges.append((rng.choice(lscc + out_users[:j]), u))
    # Tendrils hang off IN (incoming) or point at OUT, never at the core.
    for j, t in enumerate(tendrils):
        if in_users and (not out_users or rng.random() < 0.5):
            edges.append((rng.choice(in_users), t))
        else:
            edges.append((t, rng.choice(out_users)))
        if j > 0 and rng.random() < 0.2:
            edges.append((rng.choice(tendrils[:j]), t))
    # DISC: chains of 1..3 users per weak component, singletons tweet into
    # the void so they still show up as vertices.
    recipientless_authors: list[str] = []
    i = 0
    while i < len(disc):
        size = min(rng.randint(1, 3), len(disc) - i)
        cluster = disc[i:i + size]
        if size == 1:
            recipientless_authors.append(cluster[0])
        else:
            for a, b in zip(cluster, cluster[1:]):
                edges.append((a, b))
        i += size

    component_of: dict[str, Component] = {}
    for c, members in partition.items():
        for u in members:
            component_of[u] = c

    horizon = spec.days * 86400
    bias_of = {c: spec.sentiment_bias.get(c, 0.5) for c in COMPONENT_ORDER}
    kinds = (TweetKind.REPLY, TweetKind.MENTION, TweetKind.RETWEET)

    def make_tweet(idx: int, author: str, recipients: tuple[str, ...]) -> TweetRecord:
        return TweetRecord(
            tweet_id=f"t{idx:06d}",
            author=author,
            recipients=frozenset(recipients),
            timestamp=spec.start_epoch + rng.randrange(horizon),
            text=_tweet_text(rng, bias_of[component_of[author]]),
            kind=rng.choice(kinds),
        )

    tweets = []
    for a, b in edges:
        tweets.append(make_tweet(len(tweets), a, (b,)))
    for a in recipientless_authors:
        tweets.append(make_tweet(len(tweets), a, ()))

    target = round(spec.tweets_per_user * spec.user_count)
    all_users = [u for c in COMPONENT_ORDER for u in partition[c]]
    while len(tweets) < target:
        if edges and rng.random() < 0.85:
            a, b = rng.choice(edges)
            tweets.append(make_tweet(len(tweets), a, (b,)))
        else:
            tweets.append(make_tweet(len(tweets), rng.choice(all_users), ()))

    tweets.sort(key=lambda t: (t.timestamp, t.tweet_id))
    return tweets


def normalize_masses(masses: Mapping[Component, float],
                     tolerance: float = 0.05) -> dict[Component, float]:
    """Rescale fractions to sum exactly 1.

    Published component tables are rounded and rarely sum to 1 on the nose
    (63 + 12 + 1.5 + 21 + 2.8 = 100.3, for instance), so the CLI accepts
    anything within ``tolerance`` of 1 and rescales. Larger drift is almost
    certainly a typo and raises instead.
    """
    total = sum(masses.values())
    if any(v < 0 for v in masses.values()) or abs(total - 1.0) > tolerance:
        raise ValueError(f"masses sum to {total}; expected 1 within {tolerance}")
    return {c: v / total for c, v in masses.items()}


def parse_masses(text: str) -> dict[Component, float]:
    """Parse ``IN=0.63,LSCC=0.12,...`` into a mass mapping."""
    masses: dict[Component, float] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, value = part.partition("=")
        try:
            component = Component(name.strip().upper())
        except ValueError:
            raise ValueError(f"unknown component {name.strip()!r} in masses") from None
        masses[component] = float(value)
    return masses


def write_demo_lexicons(directory: str | Path) -> dict[LexiconKind, Path]:
    """Emit the four lexicon TSVs covering the generator's word pools."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {}

    def _write(kind: LexiconKind, rows: list[tuple[str, object]]) -> None:
        path = directory / f"{kind.value}.tsv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(f"# demo {kind.value} lexicon\n")
            for token, payload in rows:
                fh.write(f"{token}\t{payload}\n")
        paths[kind] = path

    _write(LexiconKind.SENTIMENT, sorted(_SENTIMENT_TABLE.items()))
    _write(LexiconKind.POS_TAGS, sorted(_POS_TABLE.items()))
    _write(LexiconKind.CURSE_WORDS, [(w, 1) for w in sorted(_CURSE_TABLE)])
    _write(LexiconKind.WORD_FREQUENCY, sorted(_FREQUENCY_TABLE.items()))
    return paths


def write_demo_meta(spec: SynthSpec, path: str | Path, seed: int = 42) -> None:
    """Emit a user-meta TSV with klout scores skewed high for the core."""
    rng = random.Random(seed ^ 0x5EED)
    centers = {
        Component.LSCC: 68.0, Component.OUT: 64.0, Component.IN: 42.0,
        Component.TENDRILS: 36.0, Component.DISC: 30.0,
    }
    partition = partition_users(spec)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("user\tklout_score\tfollowers\n")
        for c in COMPONENT_ORDER:
            for u in partition[c]:
                klout = min(100.0, max(0.0, rng.gauss(centers[c], 9.0)))
                fh.write(f"{u}\t{klout:.2f}\t{rng.randrange(10, 50000)}\n")
