"""Parse message records, user metadata, and lexicon resources.

File formats:

* Tweets: JSONL, one record per line with fields ``tweet_id`` (string),
  ``author`` (string), ``recipients`` (array of strings), ``timestamp``
  (integer epoch seconds, UTC), ``text`` (string), ``kind`` (one of
  ``reply``/``mention``/``retweet``). Unknown fields are ignored.
* Lexicons: TSV ``token<TAB>payload``, UTF-8, ``#``-prefixed comment lines
  skipped. Payload type depends on the lexicon kind; curse-word lexicons
  may omit the payload column.
* User metadata: TSV with a header row naming at least ``user``; the
  columns ``klout_score``, ``account_created``, ``total_tweets`` and
  ``followers`` are picked up when present, anything else is ignored.
"""

from __future__ import annotations

import json
import logging
from csv import DictReader
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Union

logger = logging.getLogger(__name__)


class TweetKind(str, Enum):
    REPLY = "reply"
    MENTION = "mention"
    RETWEET = "retweet"


@dataclass(frozen=True, slots=True)
class TweetRecord:
    """One message event: who wrote what, to whom, and when."""

    tweet_id: str
    author: str
    recipients: frozenset[str]
    timestamp: int
    text: str
    kind: TweetKind


@dataclass(frozen=True)
class UserMeta:
    """Optional public profile attributes for one user."""

    user: str
    klout_score: float | None = None
    account_created: int | None = None
    total_tweets: int | None = None
    followers: int | None = None


class LexiconKind(str, Enum):
    SENTIMENT = "sentiment"
    POS_TAGS = "pos_tags"
    CURSE_WORDS = "curse_words"
    WORD_FREQUENCY = "word_frequency"


POS_TAGS = frozenset({"noun", "verb", "adj", "adv", "pronoun3", "other"})

LexiconPayload = Union[float, str, bool]


@dataclass(frozen=True)
class Lexicon:
    """Token table of one kind; tokens are lowercase and whitespace-free.

    ``duplicates`` counts tokens that appeared more than once in the source
    (last entry wins), ``skipped`` counts lines rejected for a bad token or
    out-of-range payload.
    """

    kind: LexiconKind
    entries: Mapping[str, LexiconPayload]
    duplicates: int = 0
    skipped: int = 0

    def __contains__(self, token: str) -> bool:
        return token in self.entries


@dataclass
class IngestReport:
    """Per-reason tallies for lines dropped while parsing tweets."""

    malformed: int = 0
    missing_field: int = 0
    self_edge_only: int = 0
    bad_timestamp: int = 0
    duplicate_id: int = 0
    # Recipient entries equal to the author, removed from otherwise valid
    # records (the record itself is kept).
    self_edges_removed: int = 0

    @property
    def dropped(self) -> int:
        return (self.malformed + self.missing_field + self.self_edge_only
                + self.bad_timestamp + self.duplicate_id)


_REQUIRED_FIELDS = ("tweet_id", "author", "recipients", "timestamp", "text", "kind")
_KIND_VALUES = {k.value for k in TweetKind}


def _is_int(value) -> bool:
    # bool is an int subclass; a boolean timestamp is not a timestamp
    return isinstance(value, int) and not isinstance(value, bool)


def parse_tweets(lines: Iterable[str], format: str = "jsonl") -> tuple[list[TweetRecord], IngestReport]:
    """Parse tweet records from ``lines``, keeping valid ones in input order.

    Invalid lines never abort the parse; they are counted in the returned
    :class:`IngestReport` under the first failing check. A record whose only
    recipient is its own author is dropped; a record whose recipient set
    merely contains the author has that entry removed.
    """
    if format != "jsonl":
        raise ValueError(f"unsupported tweet format: {format!r}")
    records: list[TweetRecord] = []
    report = IngestReport()
    seen_ids: set[str] = set()
    for line in lines:
        try:
            raw = json.loads(line)
        except (json.JSONDecodeError, TypeError):
            report.malformed += 1
            continue
        if not isinstance(raw, dict):
            report.malformed += 1
            continue
        if any(name not in raw for name in _REQUIRED_FIELDS):
            report.missing_field += 1
            continue
        tweet_id, author, recipients = raw["tweet_id"], raw["author"], raw["recipients"]
        text, kind = raw["text"], raw["kind"]
        if (not isinstance(tweet_id, str) or not tweet_id
                or not isinstance(author, str) or not author
                or not isinstance(text, str)
                or not isinstance(recipients, list)
                or not all(isinstance(r, str) and r for r in recipients)
                or kind not in _KIND_VALUES):
            report.malformed += 1
            continue
        timestamp = raw["timestamp"]
        if not _is_int(timestamp) or timestamp < 0:
            report.bad_timestamp += 1
            continue
        recipient_set = frozenset(recipients)
        if author in recipient_set:
            recipient_set = recipient_set - {author}
            if not recipient_set:
                report.self_edge_only += 1
                continue
            report.self_edges_removed += 1
        if tweet_id in seen_ids:
            report.duplicate_id += 1
            continue
        seen_ids.add(tweet_id)
        records.append(TweetRecord(tweet_id, author, recipient_set, timestamp,
                                   text, TweetKind(kind)))
    return records, report


def tweet_to_json(record: TweetRecord) -> str:
    """Serialize one record to its JSONL line (recipients sorted)."""
    return json.dumps({
        "tweet_id": record.tweet_id,
        "author": record.author,
        "recipients": sorted(record.recipients),
        "timestamp": record.timestamp,
        "text": record.text,
        "kind": record.kind.value,
    }, ensure_ascii=False)


def read_tweets_file(path: str | Path) -> tuple[list[TweetRecord], IngestReport]:
    """Parse a tweets JSONL file; a missing or unreadable file is fatal."""
    with open(path, encoding="utf-8") as fh:
        return parse_tweets(fh)


def write_tweets_file(records: Iterable[TweetRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(tweet_to_json(record) + "\n")


def _valid_token(token: str) -> bool:
    return bool(token) and not any(ch.isspace() for ch in token)


def _parse_payload(kind: LexiconKind, payload: str):
    """Return the typed payload, or None when out of range or unparsable."""
    if kind is LexiconKind.SENTIMENT:
        try:
            value = float(payload)
        except ValueError:
            return None
        return value if -1.0 <= value <= 1.0 else None
    if kind is LexiconKind.POS_TAGS:
        tag = payload.strip().lower()
        return tag if tag in POS_TAGS else None
    if kind is LexiconKind.CURSE_WORDS:
        return True
    if kind is LexiconKind.WORD_FREQUENCY:
        try:
            value = float(payload)
        except ValueError:
            return None
        return value if value >= 0.0 else None
    raise ValueError(f"unknown lexicon kind: {kind!r}")


def load_lexicon(path: str | Path, kind: LexiconKind | str) -> Lexicon:
    """Load a TSV lexicon of the given kind. Missing file is fatal.

    Tokens are lowercased; duplicates keep the last payload and are tallied.
    Lines with an empty or whitespace-containing token, or a payload outside
    the kind's range, are skipped with a warning.
    """
    kind = LexiconKind(kind)
    entries: dict[str, LexiconPayload] = {}
    duplicates = 0
    skipped = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            token, _, payload = line.partition("\t")
            token = token.strip().lower()
            if not _valid_token(token):
                logger.warning("%s:%d: bad token, line skipped", path, lineno)
                skipped += 1
                continue
            if not payload and kind is not LexiconKind.CURSE_WORDS:
                logger.warning("%s:%d: missing payload, line skipped", path, lineno)
                skipped += 1
                continue
            value = _parse_payload(kind, payload)
            if value is None:
                logger.warning("%s:%d: payload %r out of range for %s, line skipped",
                               path, lineno, payload, kind.value)
                skipped += 1
                continue
            if token in entries:
                duplicates += 1
            entries[token] = value
    return Lexicon(kind=kind, entries=entries, duplicates=duplicates, skipped=skipped)


def _opt_float(cell: str | None, lo: float, hi: float, what: str, user: str) -> float | None:
    if cell is None or cell.strip() == "":
        return None
    try:
        value = float(cell)
    except ValueError:
        logger.warning("user %s: unparsable %s %r, field dropped", user, what, cell)
        return None
    if not (lo <= value <= hi):
        logger.warning("user %s: %s %r outside [%g, %g], field dropped",
                       user, what, cell, lo, hi)
        return None
    return value


def _opt_nonneg_int(cell: str | None, what: str, user: str) -> int | None:
    if cell is None or cell.strip() == "":
        return None
    try:
        value = int(cell)
    except ValueError:
        logger.warning("user %s: unparsable %s %r, field dropped", user, what, cell)
        return None
    if value < 0:
        logger.warning("user %s: negative %s %r, field dropped", user, what, cell)
        return None
    return value


def load_user_meta(path: str | Path) -> dict[str, UserMeta]:
    """Load per-user metadata from a headered TSV; later rows overwrite earlier."""
    result: dict[str, UserMeta] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = DictReader(fh, delimiter="\t")
        if reader.fieldnames is None or "user" not in reader.fieldnames:
            raise ValueError(f"{path}: user-meta TSV needs a header row with a 'user' column")
        for row in reader:
            user = (row.get("user") or "").strip()
            if not user:
                logger.warning("%s: row with empty user id skipped", path)
                continue
            result[user] = UserMeta(
                user=user,
                klout_score=_opt_float(row.get("klout_score"), 0.0, 100.0, "klout_score", user),
                account_created=_opt_nonneg_int(row.get("account_created"), "account_created", user),
                total_tweets=_opt_nonneg_int(row.get("total_tweets"), "total_tweets", user),
                followers=_opt_nonneg_int(row.get("followers"), "followers", user),
            )
    return result
