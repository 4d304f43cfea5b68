"""Conversation-graph construction and bow-tie structure analysis."""

from .bowtie import (BowTieDecomposition, Component, ComponentStats,
                     SccDecomposition, bowtie_decompose, component_stats,
                     scc_decompose)
from .errors import ConfigError
from .graph import (ConversationGraph, FlowSet, TimeWindow, build_graph,
                    cut_flow, flow_tweets, induced_subgraph, time_slice)
from .ingest import (IngestReport, Lexicon, LexiconKind, TweetKind,
                     TweetRecord, UserMeta, load_lexicon, load_user_meta,
                     parse_tweets, read_tweets_file, write_tweets_file)
from .synth import SynthSpec, generate_corpus
from .temporal import (MigrationMatrix, SliceSeries, cumulative_slices,
                       day_boundaries, instability, migration_matrix)
from .textmetrics import (CdfSeries, FormalityReport, Sentiment,
                          SentimentScore, classify_sentiment, dominates,
                          empirical_cdf, formality_report, sentiment_cdf,
                          sentiment_score, tokenize)
from .userclass import (ClassifierRules, UserProfile, UserType,
                        build_profiles, classify_user, classify_users,
                        influence_by_component, type_distribution)

__version__ = "0.1.0"
