"""Command-line driver: ingest -> decompose -> temporal/flow/user reports.

Subcommands are deliberately small and independently invokable:

* generate   synthesize a corpus with planted component masses
* decompose  graph export, component assignment, component stats
* migrate    cumulative daily slices and the alluvial migration CSV
* flows      formality and sentiment-CDF reports for IN->LSCC and LSCC->OUT
* classify   per-user sentiment profiles and the four-way classifier
* analyze    all of the above in one pass

Every output file is byte-deterministic for a fixed input and config: all
iteration orders are sorted, JSON is emitted with sorted keys, and the only
randomness (the generator) flows from an explicit seed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .bowtie import (BowTieDecomposition, Component, bowtie_decompose,
                     component_stats, stats_to_dict, write_components_csv)
from .errors import ConfigError
from .graph import (ConversationGraph, build_graph, cut_flow, flow_tweets,
                    write_edges_csv, write_vertices_csv)
from .ingest import (Lexicon, LexiconKind, load_lexicon, load_user_meta,
                     parse_tweets, write_tweets_file)
from .synth import (SynthSpec, generate_corpus, normalize_masses, parse_masses,
                    write_demo_lexicons, write_demo_meta)
from .temporal import (cumulative_slices, day_boundaries, write_alluvial_csv,
                       write_empty_alluvial_csv)
from .textmetrics import (formality_report, formality_to_dict, score_tweets,
                          sentiment_cdf, write_cdf_csv)
from .userclass import (ClassifierRules, build_profiles, classify_users,
                        summarize_users, write_users_csv)

logger = logging.getLogger(__name__)

_LEXICON_FILES = {
    LexiconKind.SENTIMENT: "sentiment.tsv",
    LexiconKind.POS_TAGS: "pos_tags.tsv",
    LexiconKind.CURSE_WORDS: "curse_words.tsv",
    LexiconKind.WORD_FREQUENCY: "word_frequency.tsv",
}


@dataclass(frozen=True)
class RunConfig:
    """Resolved inputs for one invocation; no path is touched before this
    exists, so failures happen up front with a clear message."""

    tweets: Path | None
    meta: Path | None
    lexicon_dir: Path | None
    days: str
    out: Path
    seed: int = 42
    pos_threshold: float = 0.6
    neg_threshold: float = 0.4
    volume_quantile: float = 0.9

    def rules(self) -> ClassifierRules:
        return ClassifierRules(pos_threshold=self.pos_threshold,
                               neg_threshold=self.neg_threshold,
                               volume_quantile=self.volume_quantile)


def _add_input_args(p: argparse.ArgumentParser, *, lexicons: bool) -> None:
    p.add_argument("--tweets", required=True, help="tweet JSONL file")
    p.add_argument("--meta", default=None, help="optional user-meta TSV")
    if lexicons:
        p.add_argument("--lexicon-dir", required=True,
                       help="directory holding sentiment.tsv, pos_tags.tsv, "
                            "curse_words.tsv, word_frequency.tsv")
    p.add_argument("--days", default="AUTO",
                   help="AUTO for UTC midnights spanning the corpus, or a "
                        "comma-separated ascending list of epoch seconds")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--pos-threshold", type=float, default=0.6)
    p.add_argument("--neg-threshold", type=float, default=0.4)
    p.add_argument("--volume-quantile", type=float, default=0.9)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convbowtie",
        description="Conversation-graph bow-tie analysis over tweet corpora.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="synthesize a corpus with planted "
                                          "bow-tie component masses")
    gen.add_argument("--users", type=int, default=200)
    gen.add_argument("--days", type=int, default=3)
    gen.add_argument("--masses",
                     default="IN=0.63,LSCC=0.12,OUT=0.015,TENDRILS=0.21,DISC=0.028",
                     help="component=fraction pairs summing to 1")
    gen.add_argument("--tweets-per-user", type=float, default=3.0)
    gen.add_argument("--sentiment-bias", default="",
                     help="component=probability pairs, e.g. IN=0.3,LSCC=0.7")
    gen.add_argument("--seed", type=int, default=42)
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--emit-lexicons", action="store_true",
                     help="also write demo lexicons under <out>/lexicons/")
    gen.add_argument("--emit-meta", action="store_true",
                     help="also write a klout user-meta TSV to <out>/user_meta.tsv")

    for name, with_lex in (("analyze", True), ("decompose", False),
                           ("migrate", False), ("flows", True),
                           ("classify", True)):
        p = sub.add_parser(name)
        _add_input_args(p, lexicons=with_lex)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    lex_dir = getattr(args, "lexicon_dir", None)
    return RunConfig(
        tweets=Path(args.tweets).resolve(),
        meta=Path(args.meta).resolve() if args.meta else None,
        lexicon_dir=Path(lex_dir).resolve() if lex_dir else None,
        days=args.days,
        out=Path(args.out).resolve(),
        seed=args.seed,
        pos_threshold=args.pos_threshold,
        neg_threshold=args.neg_threshold,
        volume_quantile=args.volume_quantile,
    )


def _load_lexicons(cfg: RunConfig,
                   kinds: tuple[LexiconKind, ...]) -> dict[LexiconKind, Lexicon]:
    if cfg.lexicon_dir is None:
        raise ConfigError("this command needs --lexicon-dir")
    lexicons = {}
    for kind in kinds:
        path = cfg.lexicon_dir / _LEXICON_FILES[kind]
        if not path.is_file():
            raise ConfigError(
                f"no {kind.value} lexicon at {path}; --lexicon-dir must point "
                f"at a directory containing {_LEXICON_FILES[kind]}")
        lexicons[kind] = load_lexicon(path, kind)
    return lexicons


def _load_graph(cfg: RunConfig) -> ConversationGraph:
    with open(cfg.tweets, "r", encoding="utf-8") as fh:
        tweets, report = parse_tweets(fh)
    if report.dropped or report.self_edges_removed:
        logger.info("ingest: kept %d tweets, dropped %d (malformed=%d, "
                    "missing_field=%d, self_edge_only=%d, bad_timestamp=%d, "
                    "duplicate_id=%d), self-edges removed from %d",
                    len(tweets), report.dropped, report.malformed,
                    report.missing_field, report.self_edge_only,
                    report.bad_timestamp, report.duplicate_id,
                    report.self_edges_removed)
    return build_graph(tweets)


def _boundaries(cfg: RunConfig, g: ConversationGraph) -> list[int]:
    if cfg.days.strip().upper() == "AUTO":
        return day_boundaries(g)
    values = [int(part) for part in cfg.days.split(",") if part.strip()]
    if len(values) < 2:
        raise ValueError("--days needs AUTO or at least two epoch boundaries")
    return values


def _write_json(path: Path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(json.dumps(obj, indent=2, sort_keys=True))
        fh.write("\n")


def _stage_decompose(g: ConversationGraph,
                     out: Path) -> BowTieDecomposition:
    decomp = bowtie_decompose(g)
    stats = component_stats(g, decomp)
    write_vertices_csv(g, out / "vertices.csv")
    write_edges_csv(g, out / "edges.csv")
    write_components_csv(decomp, out / "components.csv")
    _write_json(out / "component_stats.json", stats_to_dict(stats))
    return decomp


def _stage_migrate(g: ConversationGraph, cfg: RunConfig, out: Path) -> None:
    if not g.tweets:
        write_empty_alluvial_csv(out / "alluvial.csv")
        return
    series = cumulative_slices(g, _boundaries(cfg, g))
    write_alluvial_csv(series, out / "alluvial.csv")


def _stage_flows(g: ConversationGraph, decomp: BowTieDecomposition,
                 lexicons: dict[LexiconKind, Lexicon], out: Path) -> None:
    sent = lexicons[LexiconKind.SENTIMENT]
    formality_lexicons = {k: v for k, v in lexicons.items()
                          if k is not LexiconKind.SENTIMENT}
    pairs = (
        ("in_lscc", "IN->LSCC", decomp.members(Component.IN), decomp.lscc),
        ("lscc_out", "LSCC->OUT", decomp.lscc, decomp.members(Component.OUT)),
    )
    for stem, label, src, dst in pairs:
        flow = cut_flow(g, src, dst, *label.split("->"))
        report = formality_report(flow_tweets(flow, g), formality_lexicons)
        _write_json(out / f"formality_{stem}.json", formality_to_dict(label, report))
        write_cdf_csv(sentiment_cdf(flow, g, sent), out / f"cdf_{stem}.csv")


def _stage_classify(g: ConversationGraph, decomp: BowTieDecomposition,
                    lexicons: dict[LexiconKind, Lexicon], cfg: RunConfig,
                    out: Path) -> None:
    meta = load_user_meta(cfg.meta) if cfg.meta else {}
    scores = score_tweets(g.tweets, lexicons[LexiconKind.SENTIMENT])
    profiles = build_profiles(g, scores, meta)
    types = classify_users(profiles, cfg.rules())
    write_users_csv(decomp, profiles, types, out / "users.csv", meta)
    _write_json(out / "user_types.json", summarize_users(decomp, profiles, types))


def cmd_generate(args: argparse.Namespace) -> int:
    spec = SynthSpec(
        masses=normalize_masses(parse_masses(args.masses)),
        user_count=args.users,
        days=args.days,
        tweets_per_user=args.tweets_per_user,
        sentiment_bias=parse_masses(args.sentiment_bias) if args.sentiment_bias else {},
    )
    out = Path(args.out).resolve()
    out.mkdir(parents=True, exist_ok=True)
    tweets = generate_corpus(spec, seed=args.seed)
    write_tweets_file(tweets, out / "tweets.jsonl")
    if args.emit_lexicons:
        write_demo_lexicons(out / "lexicons")
    if args.emit_meta:
        write_demo_meta(spec, out / "user_meta.tsv", seed=args.seed)
    print(f"wrote {len(tweets)} tweets for {spec.user_count} users to "
          f"{out / 'tweets.jsonl'}")
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    lexicons = _load_lexicons(cfg, (LexiconKind.SENTIMENT, LexiconKind.POS_TAGS,
                                    LexiconKind.CURSE_WORDS,
                                    LexiconKind.WORD_FREQUENCY))
    cfg.out.mkdir(parents=True, exist_ok=True)
    g = _load_graph(cfg)
    decomp = _stage_decompose(g, cfg.out)
    _stage_migrate(g, cfg, cfg.out)
    _stage_flows(g, decomp, lexicons, cfg.out)
    _stage_classify(g, decomp, lexicons, cfg, cfg.out)
    print(f"analyzed {len(g.users)} users / {len(g.tweets)} tweets -> {cfg.out}")
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    cfg.out.mkdir(parents=True, exist_ok=True)
    g = _load_graph(cfg)
    decomp = _stage_decompose(g, cfg.out)
    sizes = {c.value: len(decomp.members(c)) for c in Component}
    print(f"decomposed {len(g.users)} users: " +
          ", ".join(f"{k}={v}" for k, v in sizes.items()))
    return 0


def cmd_migrate(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    cfg.out.mkdir(parents=True, exist_ok=True)
    g = _load_graph(cfg)
    _stage_migrate(g, cfg, cfg.out)
    print(f"wrote migration counts to {cfg.out / 'alluvial.csv'}")
    return 0


def cmd_flows(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    lexicons = _load_lexicons(cfg, (LexiconKind.SENTIMENT, LexiconKind.POS_TAGS,
                                    LexiconKind.CURSE_WORDS,
                                    LexiconKind.WORD_FREQUENCY))
    cfg.out.mkdir(parents=True, exist_ok=True)
    g = _load_graph(cfg)
    decomp = bowtie_decompose(g)
    _stage_flows(g, decomp, lexicons, cfg.out)
    print(f"wrote flow reports to {cfg.out}")
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    lexicons = _load_lexicons(cfg, (LexiconKind.SENTIMENT,))
    cfg.out.mkdir(parents=True, exist_ok=True)
    g = _load_graph(cfg)
    decomp = bowtie_decompose(g)
    _stage_classify(g, decomp, lexicons, cfg, cfg.out)
    print(f"wrote user classification to {cfg.out}")
    return 0


_COMMANDS = {
    "generate": cmd_generate,
    "analyze": cmd_analyze,
    "decompose": cmd_decompose,
    "migrate": cmd_migrate,
    "flows": cmd_flows,
    "classify": cmd_classify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    logging.basicConfig(level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
