import random

import pytest

from convbowtie.graph import (TimeWindow, build_graph, cut_flow, flow_tweets,
                              induced_subgraph, read_graph_csv, time_slice,
                              write_edges_csv, write_vertices_csv)
from convbowtie.ingest import TweetKind, TweetRecord, read_tweets_file

from oracles import random_corpus


def _t(tid, author, recipients, ts=0, text="", kind=TweetKind.REPLY):
    return TweetRecord(tid, author, frozenset(recipients), ts, text, kind)


def test_empty_graph():
    g = build_graph([])
    assert g.users == frozenset()
    assert g.edges == {}
    assert g.tweets == ()


def test_weight_folding():
    g = build_graph([_t("t1", "u1", ["u2"]), _t("t2", "u1", ["u2"])])
    assert g.edges == {("u1", "u2"): 2}
    assert g.users == {"u1", "u2"}


def test_multi_recipient_fanout():
    g = build_graph([_t("t1", "u1", ["u2", "u3"])])
    assert g.edges == {("u1", "u2"): 1, ("u1", "u3"): 1}
    assert len(g.users) == 3


def test_recipientless_author_is_isolated_vertex():
    g = build_graph([_t("t1", "loner", [])])
    assert g.users == {"loner"}
    assert g.edges == {}


def test_no_self_edges():
    # parse_tweets strips these earlier, but the graph guards on its own
    g = build_graph([_t("t1", "u1", ["u1", "u2"])])
    assert ("u1", "u1") not in g.edges
    assert g.edges == {("u1", "u2"): 1}


def test_adjacency_mirrors_edges():
    g = build_graph([_t("t1", "a", ["b"]), _t("t2", "b", ["c"]),
                     _t("t3", "a", ["c"])])
    idx = g.index_of
    out_deg = {u: len(g.out_adj()[idx[u]]) for u in g.users}
    in_deg = {u: len(g.in_adj()[idx[u]]) for u in g.users}
    assert out_deg == {"a": 2, "b": 1, "c": 0}
    assert in_deg == {"a": 0, "b": 1, "c": 2}


def test_time_window_validation():
    with pytest.raises(ValueError):
        TimeWindow(10, 10)
    with pytest.raises(ValueError):
        TimeWindow(10, 5)


def test_time_window_intersect():
    assert TimeWindow(0, 10).intersect(TimeWindow(5, 20)) == TimeWindow(5, 10)
    assert TimeWindow(0, 5).intersect(TimeWindow(5, 10)) is None


def test_time_slice_half_open():
    g = build_graph([_t("t1", "a", ["b"], ts=100),
                     _t("t2", "b", ["c"], ts=200),
                     _t("t3", "c", ["d"], ts=300)])
    s = time_slice(g, TimeWindow(100, 300))
    assert {t.tweet_id for t in s.tweets} == {"t1", "t2"}
    # users are exactly those incident to surviving tweets
    assert s.users == {"a", "b", "c"}


def test_induced_subgraph_identity():
    g = build_graph([_t("t1", "a", ["b"]), _t("t2", "c", [])])
    assert induced_subgraph(g, g.users) == g


def test_induced_subgraph_restricts_recipients():
    g = build_graph([_t("t1", "a", ["b", "c"]), _t("t2", "b", ["c"])])
    sub = induced_subgraph(g, {"a", "b"})
    assert sub.users == {"a", "b"}
    assert sub.edges == {("a", "b"): 1}
    # b's tweet lost its only kept recipient, so it vanished entirely
    assert {t.tweet_id for t in sub.tweets} == {"t1"}


def test_induced_subgraph_keeps_requested_isolates():
    g = build_graph([_t("t1", "a", ["b"]), _t("t2", "c", ["a"])])
    sub = induced_subgraph(g, {"b", "c"})
    # both survive as vertices even though no tweet between them remains
    assert sub.users == {"b", "c"}
    assert sub.edges == {}


def test_induced_subgraph_keeps_recipientless_tweets():
    g = build_graph([_t("t1", "a", [])])
    sub = induced_subgraph(g, {"a"})
    assert len(sub.tweets) == 1


def test_induced_subgraph_ignores_unknown_ids():
    g = build_graph([_t("t1", "a", ["b"])])
    sub = induced_subgraph(g, {"a", "b", "ghost"})
    assert sub.users == {"a", "b"}


def test_cut_flow_definition_and_order():
    g = build_graph([
        _t("t9", "a", ["x"], ts=50),
        _t("t1", "a", ["x", "q"], ts=50),
        _t("t2", "b", ["y"], ts=10),
        _t("t3", "x", ["a"], ts=30),
        _t("t4", "a", ["q"], ts=20),
    ])
    flow = cut_flow(g, {"a", "b"}, {"x", "y"}, "SRC", "DST")
    # sorted by (timestamp, tweet_id); t4 misses the target set
    assert flow.tweet_ids == ("t2", "t1", "t9")
    assert flow.source_label == "SRC" and flow.target_label == "DST"
    assert len(flow) == 3
    assert [t.tweet_id for t in flow_tweets(flow, g)] == ["t2", "t1", "t9"]


def test_cut_flow_counts_tweet_once():
    g = build_graph([_t("t1", "a", ["x", "y"])])
    flow = cut_flow(g, {"a"}, {"x", "y"})
    assert flow.tweet_ids == ("t1",)


def test_cut_flow_overlapping_sets():
    g = build_graph([_t("t1", "a", ["b"]), _t("t2", "b", ["a"])])
    flow = cut_flow(g, {"a", "b"}, {"a", "b"})
    assert set(flow.tweet_ids) == {"t1", "t2"}


def test_cut_flow_matches_naive_scan():
    rng = random.Random(11)
    for _ in range(20):
        tweets = random_corpus(rng, max_tweets=120)
        g = build_graph(tweets)
        users = sorted(g.users)
        src = frozenset(rng.sample(users, rng.randint(0, len(users))))
        dst = frozenset(rng.sample(users, rng.randint(0, len(users))))
        flow = cut_flow(g, src, dst)
        naive = sorted((t for t in tweets
                        if t.author in src and t.recipients & dst),
                       key=lambda t: (t.timestamp, t.tweet_id))
        assert list(flow.tweet_ids) == [t.tweet_id for t in naive]


def test_graph_csv_roundtrip(tmp_path, worked_example_path):
    tweets, _ = read_tweets_file(worked_example_path)
    g = build_graph(tweets)
    write_vertices_csv(g, tmp_path / "vertices.csv")
    write_edges_csv(g, tmp_path / "edges.csv")
    users, edges = read_graph_csv(tmp_path / "edges.csv", tmp_path / "vertices.csv")
    assert users == set(g.users)
    assert edges == g.edges


def test_worked_example_shape(worked_example_path):
    tweets, report = read_tweets_file(worked_example_path)
    assert report.dropped == 0
    g = build_graph(tweets)
    assert len(g.users) == 9
    assert len(g.tweets) == 8
    assert g.edges[("u1", "u2")] == 1
    assert ("u8", "u8") not in g.edges
