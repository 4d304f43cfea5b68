import random

from convbowtie.bowtie import (Component, TENDRIL_IN, TENDRIL_OUT, TUBE,
                               bowtie_decompose, component_stats,
                               read_components_csv, scc_decompose,
                               stats_to_dict, write_components_csv)
from convbowtie.graph import build_graph
from convbowtie.ingest import TweetKind, TweetRecord, read_tweets_file

import oracles


def _graph(edges, isolated=()):
    tweets = [TweetRecord(f"t{i}", a, frozenset({b}), i, "", TweetKind.REPLY)
              for i, (a, b) in enumerate(edges)]
    for j, u in enumerate(isolated):
        tweets.append(TweetRecord(f"s{j}", u, frozenset(), 0, "", TweetKind.MENTION))
    return build_graph(tweets)


def test_scc_cycle_plus_tail():
    g = _graph([("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")])
    scc = scc_decompose(g)
    assert scc.lscc == {"a", "b", "c"}
    assert scc.component_of["d"] != scc.lscc_id


def test_scc_two_cycles_tie_break():
    # two 2-cycles; the one holding the smallest user id wins
    g = _graph([("b", "d"), ("d", "b"), ("a", "c"), ("c", "a")])
    scc = scc_decompose(g)
    assert scc.lscc == {"a", "c"}


def test_scc_edgeless():
    g = _graph([], isolated=["x", "a", "m"])
    scc = scc_decompose(g)
    assert scc.lscc == {"a"}
    assert len(scc.members) == 3


def test_scc_empty_graph():
    scc = scc_decompose(build_graph([]))
    assert scc.lscc_id is None
    assert scc.lscc == frozenset()


def test_worked_example_labels(worked_example_path):
    tweets, _ = read_tweets_file(worked_example_path)
    d = bowtie_decompose(build_graph(tweets))
    assert d.members(Component.LSCC) == {"u1", "u2", "u3"}
    assert d.members(Component.IN) == {"u0"}
    assert d.members(Component.OUT) == {"u4"}
    assert d.members(Component.TENDRILS) == {"u7"}
    assert d.members(Component.DISC) == {"u5", "u6", "u8"}


def test_worked_example_stats(worked_example_path):
    tweets, _ = read_tweets_file(worked_example_path)
    g = build_graph(tweets)
    stats = component_stats(g, bowtie_decompose(g))
    assert abs(stats.mass_pct[Component.LSCC] - 100 * 3 / 9) < 1e-9
    assert abs(stats.mass_pct[Component.IN] - 100 / 9) < 1e-9
    assert abs(stats.mass_pct[Component.DISC] - 100 * 3 / 9) < 1e-9
    # the 3-cycle is the only SCC of size >= 2
    assert stats.lscc_scc_mass_pct == 100.0
    # 7 conversational tweets; t1-t5 touch the core, t6 and t7 do not
    assert abs(stats.lscc_flow_pct - 100 * 5 / 7) < 1e-9
    assert stats.user_count == 9 and stats.tweet_count == 8
    assert not stats.is_askew


def test_single_cycle_is_all_core():
    users = [f"u{i}" for i in range(6)]
    g = _graph([(users[i], users[(i + 1) % 6]) for i in range(6)])
    d = bowtie_decompose(g)
    assert d.members(Component.LSCC) == set(users)
    stats = component_stats(g, d)
    assert stats.mass_pct[Component.LSCC] == 100.0
    assert stats.lscc_flow_pct == 100.0


def test_edgeless_graph_degenerate_rule():
    g = _graph([], isolated=["c", "a", "b"])
    d = bowtie_decompose(g)
    assert d.members(Component.LSCC) == {"a"}
    assert d.members(Component.DISC) == {"b", "c"}


def test_empty_graph_decomposition():
    g = build_graph([])
    d = bowtie_decompose(g)
    assert d.label_of == {}
    assert d.lscc == frozenset()
    stats = component_stats(g, d)
    assert stats.lscc_scc_mass_pct is None
    assert stats.lscc_flow_pct is None
    assert all(v == 0.0 for v in stats.mass_pct.values())


def test_tendril_sub_roles():
    edges = [("a", "b"), ("b", "a"),      # core
             ("i", "a"),                  # IN
             ("b", "o"),                  # OUT
             ("i", "t1"),                 # tendril hanging off IN
             ("t2", "o"),                 # tendril pointing at OUT
             ("i", "t3"), ("t3", "o")]    # tube
    d = bowtie_decompose(_graph(edges))
    assert d.members(Component.TENDRILS) == {"t1", "t2", "t3"}
    assert d.sub_role_of == {"t1": TENDRIL_IN, "t2": TENDRIL_OUT, "t3": TUBE}


def test_is_askew_flag():
    skewed = _graph([("a", "b"), ("b", "a"),
                     ("i1", "a"), ("i2", "a"), ("i3", "b"), ("a", "o")])
    assert bowtie_decompose(skewed).is_askew
    balanced = _graph([("a", "b"), ("b", "a"), ("i1", "a"), ("a", "o")])
    assert not bowtie_decompose(balanced).is_askew


def test_matches_oracle_on_random_graphs():
    rng = random.Random(23)
    for trial in range(30):
        n, edges = oracles.random_digraph(rng, c=rng.choice((0.5, 1, 2, 4)),
                                          n_max=60)
        g = build_graph(oracles.corpus_from_edges(n, edges))
        d = bowtie_decompose(g)
        expected = oracles.bowtie_labels(n, edges)
        got = {u: c.value for u, c in d.label_of.items()}
        assert got == {oracles.user_name(v): c for v, c in expected.items()}, trial


def test_components_csv_roundtrip(tmp_path, worked_example_path):
    tweets, _ = read_tweets_file(worked_example_path)
    d = bowtie_decompose(build_graph(tweets))
    path = tmp_path / "components.csv"
    write_components_csv(d, path)
    assert read_components_csv(path) == d.label_of


def test_stats_to_dict_mirrors_fields(worked_example_path):
    tweets, _ = read_tweets_file(worked_example_path)
    g = build_graph(tweets)
    stats = component_stats(g, bowtie_decompose(g))
    raw = stats_to_dict(stats)
    assert raw["user_count"] == 9
    assert raw["mass_pct"]["LSCC"] == stats.mass_pct[Component.LSCC]
    assert raw["is_askew"] is False
