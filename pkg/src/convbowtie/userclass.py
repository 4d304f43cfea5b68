"""Per-user sentiment profiles, the four-way user classifier, and
influence roll-ups over bow-tie components.

A profile exists only for users who authored at least one tweet; pure
recipients have no sentiment history to average and surface downstream
under the reserved UNSCORED bucket.
"""

from __future__ import annotations

import csv
import math
import statistics
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping

from .bowtie import BowTieDecomposition, Component, COMPONENT_ORDER
from .graph import ConversationGraph
from .ingest import UserMeta
from .textmetrics import SentimentScore


@dataclass(frozen=True)
class UserProfile:
    user: str
    tweet_count: int
    mean_sentiment: float
    klout: float | None = None
    meta: UserMeta | None = None

    def __post_init__(self):
        if self.tweet_count < 1:
            raise ValueError("a profile needs at least one authored tweet")
        if not 0.0 <= self.mean_sentiment <= 1.0:
            raise ValueError(f"mean sentiment {self.mean_sentiment} outside [0, 1]")


class UserType(str, Enum):
    HAPPY = "HAPPY"
    UNHAPPY = "UNHAPPY"
    ADVERSARIAL = "ADVERSARIAL"
    PROMOTER = "PROMOTER"
    # Reserved for users without a profile (pure recipients). classify_user
    # never returns it; it only appears in distributions and CSV exports.
    UNSCORED = "UNSCORED"


@dataclass(frozen=True)
class ClassifierRules:
    """Thresholds for the sentiment-extremity x posting-volume rule set."""

    pos_threshold: float = 0.6
    neg_threshold: float = 0.4
    volume_quantile: float = 0.9

    def __post_init__(self):
        if not self.neg_threshold < self.pos_threshold:
            raise ValueError("neg_threshold must be below pos_threshold")
        if not 0.0 < self.volume_quantile < 1.0:
            raise ValueError("volume_quantile must sit strictly inside (0, 1)")


def build_profiles(g: ConversationGraph,
                   scores: Mapping[str, SentimentScore],
                   meta: Mapping[str, UserMeta] | None = None,
                   ) -> dict[str, UserProfile]:
    """Average each author's tweet scores into a profile.

    Every authored tweet must have a score; a gap is a consistency error,
    not something to paper over. Pure recipients get no profile.
    """
    by_user: dict[str, list[float]] = {}
    for t in g.tweets:
        score = scores.get(t.tweet_id)
        if score is None:
            raise ValueError(f"no sentiment score for authored tweet {t.tweet_id!r}")
        by_user.setdefault(t.author, []).append(score.value)

    meta = meta or {}
    profiles = {}
    for user, values in by_user.items():
        m = meta.get(user)
        profiles[user] = UserProfile(
            user=user,
            tweet_count=len(values),
            mean_sentiment=sum(values) / len(values),
            klout=m.klout_score if m is not None else None,
            meta=m,
        )
    return profiles


def volume_cutoff(profiles: Mapping[str, UserProfile], quantile: float) -> int:
    """The tweet-count quantile used as the high-volume bar.

    Computed once per corpus over all profiled users; an empty profile set
    yields 0 so nothing can pass the volume test.
    """
    counts = sorted(p.tweet_count for p in profiles.values())
    if not counts:
        return 0
    idx = max(0, math.ceil(quantile * len(counts)) - 1)
    return counts[idx]


def classify_user(p: UserProfile, rules: ClassifierRules, volume_cutoff: int) -> UserType:
    """Apply the rule table: extremity plus volume first, polarity second."""
    if p.mean_sentiment >= rules.pos_threshold and p.tweet_count >= volume_cutoff:
        return UserType.PROMOTER
    if p.mean_sentiment <= rules.neg_threshold and p.tweet_count >= volume_cutoff:
        return UserType.ADVERSARIAL
    return UserType.HAPPY if p.mean_sentiment >= 0.5 else UserType.UNHAPPY


def classify_users(profiles: Mapping[str, UserProfile],
                   rules: ClassifierRules | None = None,
                   ) -> dict[str, UserType]:
    rules = rules or ClassifierRules()
    cutoff = volume_cutoff(profiles, rules.volume_quantile)
    return {user: classify_user(p, rules, cutoff) for user, p in profiles.items()}


def influence_by_component(d: BowTieDecomposition,
                           profiles: Mapping[str, UserProfile],
                           ) -> dict[Component, float]:
    """Median klout per component, skipping users without a score.

    Components where nobody has klout simply have no entry.
    """
    pools: dict[Component, list[float]] = {}
    for user, component in d.label_of.items():
        p = profiles.get(user)
        if p is None or p.klout is None:
            continue
        pools.setdefault(component, []).append(p.klout)
    return {c: statistics.median(v) for c, v in pools.items()}


def type_distribution(d: BowTieDecomposition,
                      types: Mapping[str, UserType],
                      ) -> dict[tuple[Component, UserType], int]:
    """Contingency counts over (component, type); unprofiled users land in
    UNSCORED. Only nonzero cells appear."""
    counts: dict[tuple[Component, UserType], int] = {}
    for user, component in d.label_of.items():
        utype = types.get(user, UserType.UNSCORED)
        key = (component, utype)
        counts[key] = counts.get(key, 0) + 1
    return counts


def summarize_users(d: BowTieDecomposition,
                    profiles: Mapping[str, UserProfile],
                    types: Mapping[str, UserType]) -> dict:
    """JSON-ready roll-up of the type distribution and influence medians."""
    dist = type_distribution(d, types)
    medians = influence_by_component(d, profiles)
    return {
        "type_distribution": {
            f"{c.value}/{t.value}": n
            for (c, t), n in sorted(dist.items(),
                                    key=lambda kv: (kv[0][0].value, kv[0][1].value))
        },
        "influence_median_klout": {
            c.value: medians[c] for c in COMPONENT_ORDER if c in medians
        },
        "user_count": len(d.label_of),
        "profiled_count": len(profiles),
    }


def write_users_csv(d: BowTieDecomposition,
                    profiles: Mapping[str, UserProfile],
                    types: Mapping[str, UserType],
                    path: str | Path,
                    meta: Mapping[str, UserMeta] | None = None) -> None:
    """One row per graph user: component, type, sentiment, volume, klout.

    Unprofiled users are written as UNSCORED with empty sentiment, a zero
    tweet count, and whatever klout the meta table offers.
    """
    meta = meta or {}
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["user", "component", "type", "mean_sentiment",
                         "tweet_count", "klout"])
        for user in sorted(d.label_of):
            component = d.label_of[user]
            p = profiles.get(user)
            if p is not None:
                utype = types[user]
                mean = p.mean_sentiment
                count = p.tweet_count
                klout = p.klout
            else:
                utype = UserType.UNSCORED
                mean = None
                count = 0
                m = meta.get(user)
                klout = m.klout_score if m is not None else None
            writer.writerow([
                user,
                component.value,
                utype.value,
                "" if mean is None else mean,
                count,
                "" if klout is None else klout,
            ])
