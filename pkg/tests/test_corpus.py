import random

import networkx as nx

from signed_toric import corpus as C
from signed_toric.graph import is_connected, simple_cycles


def test_named_graphs_are_connected():
    for name in C.NAMED:
        assert is_connected(C.named_graph(name)), name


def test_k23_shape():
    g = C.k23()
    assert (g.n, g.m) == (5, 6)
    assert sorted(g.degree(v) for v in g.vertices()) == [2, 2, 2, 3, 3]


def test_g0_reproduces_its_binomial_cycles():
    # hexagon 1..6 with chords 24, 46, 62
    g = C.g0()
    assert g.edges[:6] == ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1))
    assert set(g.edges[6:]) == {(2, 4), (4, 6), (6, 2)}


def test_family_sizes():
    for tag in C.FAMILIES:
        for params in C.smallest_family_params(tag, 3):
            g = C.family_instance(tag, params)
            assert is_connected(g)
            assert min(g.degree(v) for v in g.vertices()) == 2
    # G2(n, m): two cycles glued on one edge
    g = C.family_instance("G2", (4, 5))
    assert (g.n, g.m) == (7, 8)
    assert len(simple_cycles(g)) == 3


def test_relabel_preserves_isomorphism_class():
    rng = random.Random(0)
    g = C.family_instance("G5", (4, 5))
    h = C.relabel_randomly(g, rng)
    assert C.is_isomorphic(g, h)


def test_clique_sum_compositions_are_distinct():
    graphs = C.clique_sum_compositions()
    assert len(graphs) == 149
    nxs = [nx.Graph([(u, v) for u, v in g.edges]) for g in graphs]
    hashes = {}
    for i, h in enumerate(nxs):
        hashes.setdefault(nx.weisfeiler_lehman_graph_hash(h), []).append(i)
    for group in hashes.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                assert not nx.is_isomorphic(nxs[group[a]], nxs[group[b]])


def test_curated_corpus_contents():
    corpus = C.curated_corpus()
    assert len(corpus) == 159
    for name in ("k4", "k23", "g0", "g5prime", "h3", "h1p", "h2p", "h3p"):
        assert name in corpus
    # each named configuration appears up to isomorphism
    for name in ("g2prime", "g3prime", "g4prime", "h1", "h2", "c5"):
        g = C.named_graph(name)
        assert any(C.is_isomorphic(g, h) for h in corpus.values()), name


def test_write_and_load_corpus(tmp_path):
    paths = C.write_corpus(tmp_path)
    assert len(paths) == len(C.NAMED)
    loaded = C.load_corpus(tmp_path)
    assert loaded == {name: C.named_graph(name) for name in C.NAMED}


def test_curated_corpus_has_three_instances_per_family():
    corpus = list(C.curated_corpus().values())
    for tag in C.FAMILIES:
        for params in C.smallest_family_params(tag, 3):
            g = C.family_instance(tag, params)
            assert any(C.is_isomorphic(g, h) for h in corpus), (tag, params)
