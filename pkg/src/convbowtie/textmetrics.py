"""Sentiment scoring, flow-level sentiment CDFs, and formality metrics.

The sentiment scorer is deliberately simple and deterministic: the mean
polarity of the tokens found in a sentiment lexicon, rescaled to [0, 1]
where 0 is extreme negative and 1 extreme positive. Anything exposing the
same text -> score contract can stand in for it downstream.

Formality is measured over a tweet set with four features:

* WF: mean reference-corpus frequency of the matched tokens (higher means
  more common wording, i.e. less formal).
* LD: lexical density, the fraction of tokens tagged noun/verb/adj/adv.
* PP: third-person pronouns per tweet.
* CW: curse words per token.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .errors import ConfigError
from .graph import ConversationGraph, FlowSet
from .ingest import Lexicon, LexiconKind, TweetRecord

_URL_RE = re.compile(r"(?:https?://|www\.)\S+")
_MENTION_RE = re.compile(r"@\w+")
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

CONTENT_TAGS = frozenset({"noun", "verb", "adj", "adv"})
PRONOUN3_TAG = "pronoun3"


def tokenize(text: str) -> list[str]:
    """Lowercase tokens with URLs and @-mentions removed entirely and the
    ``#`` of hashtags stripped (body kept); splits on non-alphanumerics."""
    text = text.lower()
    text = _URL_RE.sub(" ", text)
    text = _MENTION_RE.sub(" ", text)
    return _TOKEN_RE.findall(text)


@dataclass(frozen=True)
class SentimentScore:
    """Tweet sentiment in [0, 1]; 0 extreme negative, 1 extreme positive."""

    value: float

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"sentiment score {self.value} outside [0, 1]")


class Sentiment(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


def sentiment_score(text: str, lex: Lexicon) -> SentimentScore:
    """Mean lexicon polarity of the tokens, rescaled to [0, 1].

    Tweets with no lexicon matches score a neutral 0.5.
    """
    if lex.kind is not LexiconKind.SENTIMENT:
        raise ValueError(f"expected a sentiment lexicon, got {lex.kind.value}")
    entries = lex.entries
    polarities = [entries[tok] for tok in tokenize(text) if tok in entries]
    mean = sum(polarities) / len(polarities) if polarities else 0.0
    return SentimentScore((mean + 1.0) / 2.0)


def lexicon_scorer(lex: Lexicon) -> Callable[[str], SentimentScore]:
    """The baseline pluggable scorer: text -> SentimentScore."""
    return lambda text: sentiment_score(text, lex)


def classify_sentiment(score: SentimentScore, threshold: float = 0.5) -> Sentiment:
    """Binary polarity: positive at or above the threshold."""
    return Sentiment.POSITIVE if score.value >= threshold else Sentiment.NEGATIVE


def score_tweets(tweets: Iterable[TweetRecord], lex: Lexicon) -> dict[str, SentimentScore]:
    """Score a whole corpus, keyed by tweet id."""
    return {t.tweet_id: sentiment_score(t.text, lex) for t in tweets}


@dataclass(frozen=True)
class FormalityReport:
    """The four formality features over one tweet set, with the counts the
    normalizations used: LD and CW are per token, PP is per tweet, WF is a
    mean over frequency-table hits."""

    wf: float
    ld: float
    pp: float
    cw: float
    token_count: int
    tweet_count: int


_FORMALITY_KINDS = (LexiconKind.POS_TAGS, LexiconKind.CURSE_WORDS,
                    LexiconKind.WORD_FREQUENCY)


def formality_report(tweets: Sequence[TweetRecord],
                     lexicons: Mapping[LexiconKind, Lexicon]) -> FormalityReport:
    """Compute WF/LD/PP/CW over the tokenized tweet set.

    All three of the pos_tags, curse_words and word_frequency lexicons must
    be supplied. A corpus with no tokens reports zero for every metric.
    """
    for kind in _FORMALITY_KINDS:
        if kind not in lexicons:
            raise ConfigError(f"formality metrics need a {kind.value} lexicon")
        if lexicons[kind].kind is not kind:
            raise ConfigError(f"lexicon supplied under {kind.value} has kind "
                              f"{lexicons[kind].kind.value}")
    pos = lexicons[LexiconKind.POS_TAGS].entries
    curse = lexicons[LexiconKind.CURSE_WORDS].entries
    freq = lexicons[LexiconKind.WORD_FREQUENCY].entries

    tokens: list[str] = []
    for t in tweets:
        tokens.extend(tokenize(t.text))
    tweet_count = len(tweets)
    token_count = len(tokens)
    if token_count == 0:
        return FormalityReport(wf=0.0, ld=0.0, pp=0.0, cw=0.0,
                               token_count=0, tweet_count=tweet_count)

    freq_hits = [freq[tok] for tok in tokens if tok in freq]
    wf = sum(freq_hits) / len(freq_hits) if freq_hits else 0.0
    content = sum(1 for tok in tokens if pos.get(tok) in CONTENT_TAGS)
    pronouns = sum(1 for tok in tokens if pos.get(tok) == PRONOUN3_TAG)
    curses = sum(1 for tok in tokens if tok in curse)
    return FormalityReport(
        wf=wf,
        ld=content / token_count,
        pp=pronouns / tweet_count,
        cw=curses / token_count,
        token_count=token_count,
        tweet_count=tweet_count,
    )


@dataclass(frozen=True)
class CdfSeries:
    """Empirical CDF points (score, cumulative fraction), scores ascending."""

    points: tuple[tuple[float, float], ...]

    def __len__(self) -> int:
        return len(self.points)

    def at(self, x: float) -> float:
        """CDF value at x: fraction of mass at or below x (0.0 below support)."""
        value = 0.0
        for score, cum in self.points:
            if score <= x:
                value = cum
            else:
                break
        return value


def empirical_cdf(values: Iterable[float]) -> CdfSeries:
    """One point per distinct value; empty input gives an empty series."""
    ordered = sorted(values)
    n = len(ordered)
    points = []
    for i, v in enumerate(ordered):
        if i + 1 < n and ordered[i + 1] == v:
            continue
        points.append((v, (i + 1) / n))
    return CdfSeries(points=tuple(points))


def sentiment_cdf(flow: FlowSet, g: ConversationGraph, lex: Lexicon) -> CdfSeries:
    """Empirical CDF of per-tweet sentiment scores over one flow."""
    scores = [sentiment_score(g.tweet_index[tid].text, lex).value
              for tid in flow.tweet_ids]
    return empirical_cdf(scores)


def dominates(cdf_a: CdfSeries, cdf_b: CdfSeries) -> bool:
    """True iff cdf_a(x) >= cdf_b(x) everywhere, i.e. A's mass sits at lower
    scores (more negative) than B's at every level."""
    xs = sorted({x for x, _ in cdf_a.points} | {x for x, _ in cdf_b.points})
    return all(cdf_a.at(x) >= cdf_b.at(x) for x in xs)


def write_cdf_csv(cdf: CdfSeries, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["score", "cumulative_fraction"])
        for score, cum in cdf.points:
            writer.writerow([score, cum])


def formality_to_dict(flow_name: str, report: FormalityReport) -> dict:
    return {
        "flow": flow_name,
        "wf": report.wf,
        "ld": report.ld,
        "pp": report.pp,
        "cw": report.cw,
        "token_count": report.token_count,
        "tweet_count": report.tweet_count,
    }
