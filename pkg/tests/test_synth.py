import random

import pytest

from convbowtie.bowtie import Component, bowtie_decompose
from convbowtie.graph import build_graph
from convbowtie.ingest import LexiconKind, load_lexicon, load_user_meta
from convbowtie.synth import (DEFAULT_START_EPOCH, SynthSpec,
                              component_user_counts, generate_corpus,
                              normalize_masses, parse_masses, partition_users,
                              write_demo_lexicons, write_demo_meta)

BALANCED = {Component.IN: 0.25, Component.LSCC: 0.3, Component.OUT: 0.2,
            Component.TENDRILS: 0.15, Component.DISC: 0.1}


def test_spec_validation():
    with pytest.raises(ValueError):
        SynthSpec(masses=BALANCED, user_count=5)
    with pytest.raises(ValueError):
        SynthSpec(masses=BALANCED, user_count=50, days=0)
    with pytest.raises(ValueError):
        SynthSpec(masses=BALANCED, user_count=50, tweets_per_user=0.0)
    with pytest.raises(ValueError):
        SynthSpec(masses={Component.LSCC: 0.9}, user_count=50)
    with pytest.raises(ValueError):
        SynthSpec(masses=BALANCED, user_count=50,
                  sentiment_bias={Component.IN: 1.5})


def test_counts_sum_and_rounding():
    spec = SynthSpec(masses=BALANCED, user_count=97)
    counts = component_user_counts(spec)
    assert sum(counts.values()) == 97
    # largest-remainder keeps every count within one of the exact target
    for c, frac in BALANCED.items():
        assert abs(counts[c] - frac * 97) < 1.0


def test_counts_infeasible_core():
    spec = SynthSpec(masses={Component.IN: 0.9, Component.LSCC: 0.1},
                     user_count=10)
    with pytest.raises(ValueError):
        component_user_counts(spec)


def test_counts_tendrils_need_anchor():
    spec = SynthSpec(masses={Component.LSCC: 0.5, Component.TENDRILS: 0.5},
                     user_count=20)
    with pytest.raises(ValueError):
        component_user_counts(spec)


def test_all_core_is_fine():
    spec = SynthSpec(masses={Component.LSCC: 1.0}, user_count=12)
    assert component_user_counts(spec)[Component.LSCC] == 12
    labels = bowtie_decompose(build_graph(generate_corpus(spec))).label_of
    assert set(labels.values()) == {Component.LSCC}
    assert len(labels) == 12


def test_partition_covers_everyone_once():
    spec = SynthSpec(masses=BALANCED, user_count=60)
    partition = partition_users(spec)
    names = [u for users in partition.values() for u in users]
    assert len(names) == 60
    assert len(set(names)) == 60


def test_same_seed_same_corpus():
    spec = SynthSpec(masses=BALANCED, user_count=80)
    a = generate_corpus(spec, seed=7)
    b = generate_corpus(spec, seed=7)
    assert a == b
    c = generate_corpus(spec, seed=8)
    assert a != c


def test_corpus_sorted_and_clocked():
    spec = SynthSpec(masses=BALANCED, user_count=80, days=2)
    tweets = generate_corpus(spec, seed=5)
    keys = [(t.timestamp, t.tweet_id) for t in tweets]
    assert keys == sorted(keys)
    horizon = DEFAULT_START_EPOCH + 2 * 86400
    assert all(DEFAULT_START_EPOCH <= t.timestamp < horizon for t in tweets)


def test_volume_target():
    spec = SynthSpec(masses=BALANCED, user_count=80, tweets_per_user=4.0)
    tweets = generate_corpus(spec, seed=5)
    assert len(tweets) >= round(4.0 * 80)


def test_planted_labels_survive_decomposition():
    spec = SynthSpec(masses=BALANCED, user_count=400)
    planted = partition_users(spec)
    for seed in (1, 2, 3):
        d = bowtie_decompose(build_graph(generate_corpus(spec, seed=seed)))
        for component, users in planted.items():
            for u in users:
                assert d.label_of[u] is component, (seed, u)


def test_normalize_masses_rescales():
    rough = {Component.IN: 0.63, Component.LSCC: 0.12, Component.OUT: 0.015,
             Component.TENDRILS: 0.21, Component.DISC: 0.028}
    assert sum(rough.values()) != 1.0
    fixed = normalize_masses(rough)
    assert sum(fixed.values()) == pytest.approx(1.0, abs=1e-12)
    # proportions preserved
    assert fixed[Component.IN] / fixed[Component.LSCC] == pytest.approx(0.63 / 0.12)


def test_normalize_masses_rejects_wild_input():
    with pytest.raises(ValueError):
        normalize_masses({Component.IN: 0.5, Component.LSCC: 0.3})
    with pytest.raises(ValueError):
        normalize_masses({Component.IN: 1.1, Component.LSCC: -0.1})


def test_parse_masses_roundtrip():
    masses = parse_masses("IN=0.63,LSCC=0.12,OUT=0.015,TENDRILS=0.21,DISC=0.028")
    assert masses[Component.OUT] == 0.015
    assert len(masses) == 5
    with pytest.raises(ValueError):
        parse_masses("CORE=0.5,IN=0.5")
    with pytest.raises(ValueError):
        parse_masses("IN0.5")


def test_demo_lexicons_load(tmp_path):
    paths = write_demo_lexicons(tmp_path)
    assert set(paths) == set(LexiconKind)
    for kind, path in paths.items():
        lex = load_lexicon(path, kind)
        assert lex.kind is kind
        assert len(lex.entries) > 0
        assert lex.skipped == 0
    sentiment = load_lexicon(paths[LexiconKind.SENTIMENT], LexiconKind.SENTIMENT)
    assert sentiment.entries["love"] == pytest.approx(0.9)


def test_demo_meta_loads(tmp_path):
    spec = SynthSpec(masses=BALANCED, user_count=60)
    path = tmp_path / "meta.tsv"
    write_demo_meta(spec, path, seed=11)
    meta = load_user_meta(path)
    assert len(meta) == 60
    assert all(0.0 <= m.klout_score <= 100.0 for m in meta.values())


def test_skewed_shape_reproduces_target():
    masses = normalize_masses(
        parse_masses("IN=0.63,LSCC=0.12,OUT=0.015,TENDRILS=0.21,DISC=0.028"))
    spec = SynthSpec(masses=masses, user_count=1000)
    rng = random.Random(99)
    d = bowtie_decompose(build_graph(generate_corpus(spec, seed=rng.randrange(1000))))
    sizes = d.sizes()
    total = sum(sizes.values())
    for component, frac in masses.items():
        assert abs(sizes[component] / total - frac) < 0.02
    assert d.is_askew
