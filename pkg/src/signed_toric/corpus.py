"""Named test graphs, parametric families and the clique-sum corpus.

Everything here builds plain simple graphs with constant sign unless a sign is
part of the instance (the K4 instance and the two walk examples).  The
``corpus/`` directory at the repository root holds the same graphs as ``.sg``
files; :func:`write_corpus` regenerates it.
"""

from __future__ import annotations

import random
from pathlib import Path

import networkx as nx

from .graph import SignedGraph, block_decomposition, format_signed_graph, from_edges, parse_signed_graph


def _cycle_edges(vs):
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def _relabel(n, edges):
    """Renumber vertices 1..k in order of first appearance."""
    ids = {}
    for u, v in edges:
        for x in (u, v):
            if x not in ids:
                ids[x] = len(ids) + 1
    return len(ids), [(ids[u], ids[v]) for u, v in edges]


def cycle(n: int) -> SignedGraph:
    return from_edges(n, _cycle_edges(list(range(1, n + 1))))


def path(n: int) -> SignedGraph:
    return from_edges(n, [(i, i + 1) for i in range(1, n)])


def star(k: int) -> SignedGraph:
    return from_edges(k + 1, [(1, i) for i in range(2, k + 2)])


def complete_graph(n: int) -> SignedGraph:
    return from_edges(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def k23() -> SignedGraph:
    return from_edges(5, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])


# e1=v1v2 e2=v2v3 e3=v3v1 e4=v1v4 e5=v2v4 e6=v3v4; tau(e4,v1)=tau(e5,v2)=tau(e6,v3)=-1
K4_PAPER_EDGES = [(1, 2), (2, 3), (3, 1), (1, 4), (2, 4), (3, 4)]
K4_PAPER_TAU = [(1, 1), (1, 1), (1, 1), (-1, 1), (-1, 1), (-1, 1)]


def k4_paper() -> SignedGraph:
    return from_edges(4, K4_PAPER_EDGES, K4_PAPER_TAU)


def g0() -> SignedGraph:
    """Hexagon v1..v6 (e1..e6) with chords e7=v2v4, e8=v4v6, e9=v6v2.

    Reconstructed from the three binomials e1e8-e6e7, e2e8-e3e9, e4e9-e5e7
    and the hexagon binomial e1e3e5-e2e4e6; no other chord placement
    reproduces all four.
    """
    return from_edges(6, _cycle_edges([1, 2, 3, 4, 5, 6]) + [(2, 4), (4, 6), (6, 2)])


# -- walk examples with explicit signs ------------------------------------------------

# Edges of the five-vertex example: e1=v2v1 e2=v3v2 e3=v3v4 e4=v4v5 e5=v5v1 e6=v1v3.
WALK_EXAMPLE_EDGES = [(2, 1), (3, 2), (3, 4), (4, 5), (5, 1), (1, 3)]
WALK_EXAMPLE_W = "v3 e3 v4 e4 v5 e5 v1 e6 v3 e2 v2 e1 v1 e6 v3"
WALK_EXAMPLE_W2 = "v1 e1 v2 e2 v3 e6 v1 e5 v5 e5 v1"
# First sign, in lexicographic order over all 4^6 signs, with unbalanced vertex
# terms exactly at positions 2, 3, 4, 6 of w and 2, 4, 5 of w2 (1-based).
WALK_EXAMPLE_TAU = [(1, 1), (1, 1), (1, 1), (1, 1), (1, -1), (-1, -1)]

# Eight-vertex example: triangle v1v2v3, v1-v4-v5, triangle v5v6v7, v5-v8-v1.
SPLIT_EXAMPLE_EDGES = [(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 6), (6, 7), (7, 5), (5, 8), (8, 1)]
SPLIT_EXAMPLE_W = "v1 e1 v2 e2 v3 e3 v1 e4 v4 e5 v5 e6 v6 e7 v7 e8 v5 e9 v8 e10 v1"
# First sign in lexicographic order making w have four unbalanced terms while
# both pieces of its split at v5 are even.
SPLIT_EXAMPLE_TAU = [(1, 1)] * 5 + [(-1, 1)] * 4 + [(-1, -1)]


def walk_example() -> SignedGraph:
    return from_edges(5, WALK_EXAMPLE_EDGES, WALK_EXAMPLE_TAU)


def split_example() -> SignedGraph:
    return from_edges(8, SPLIT_EXAMPLE_EDGES, SPLIT_EXAMPLE_TAU)


# -- the 2-connected families --------------------------------------------------------

def _glue_on_edge(edges, n, a, b, length):
    """Add a cycle of ``length`` through the existing edge ab."""
    chain = [a] + list(range(n + 1, n + length - 1)) + [b]
    new = [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    return edges + new, n + length - 2


def family_g1(n: int) -> SignedGraph:
    return cycle(n)


def family_g2(n: int, m: int) -> SignedGraph:
    edges = _cycle_edges(list(range(1, n + 1)))
    edges, k = _glue_on_edge(edges, n, 1, 2, m)
    return from_edges(k, edges)


def family_g3(n: int, m: int) -> SignedGraph:
    edges = _cycle_edges([1, 2, 3])
    edges, k = _glue_on_edge(edges, 3, 1, 2, n)
    edges, k = _glue_on_edge(edges, k, 2, 3, m)
    return from_edges(k, edges)


def family_g4(n: int, m: int) -> SignedGraph:
    edges = _cycle_edges([1, 2, 3, 4])
    edges, k = _glue_on_edge(edges, 4, 1, 2, n)
    edges, k = _glue_on_edge(edges, k, 3, 4, m)
    return from_edges(k, edges)


def family_g5(n: int, m: int) -> SignedGraph:
    edges = _cycle_edges([1, 2, 3, 4]) + [(1, 3)]
    edges, k = _glue_on_edge(edges, 4, 1, 2, n)
    edges, k = _glue_on_edge(edges, k, 3, 4, m)
    return from_edges(k, edges)


FAMILIES = {"G1": family_g1, "G2": family_g2, "G3": family_g3, "G4": family_g4, "G5": family_g5}


def family_instance(tag: str, params) -> SignedGraph:
    return FAMILIES[tag](*params)


def smallest_family_params(tag: str, count: int = 3) -> list[tuple]:
    if tag == "G1":
        return [(n,) for n in range(3, 3 + count)]
    pairs = [(n, m) for s in range(6, 20) for n in range(3, s) for m in range(n, s) if n + m == s]
    return pairs[:count]


def relabel_randomly(g: SignedGraph, rng: random.Random) -> SignedGraph:
    """Same graph and sign under random vertex and edge permutations."""
    perm = list(range(1, g.n + 1))
    rng.shuffle(perm)
    order = list(range(g.m))
    rng.shuffle(order)
    edges = []
    tau = []
    for i in order:
        (u, v), (tu, tv) = g.edges[i], g.tau[i]
        if rng.random() < 0.5:
            u, v, tu, tv = v, u, tv, tu
        edges.append((perm[u - 1], perm[v - 1]))
        tau.append((tu, tv))
    return from_edges(g.n, edges, tau)


# -- two-block configurations ---------------------------------------------------------

def g2prime() -> SignedGraph:
    return family_g2(3, 3)


def g3prime() -> SignedGraph:
    return family_g3(3, 3)


def g4prime() -> SignedGraph:
    return family_g4(3, 3)


def g5prime() -> SignedGraph:
    return family_g5(3, 3)


def h1() -> SignedGraph:
    """Two triangles sharing one vertex."""
    return from_edges(5, _cycle_edges([1, 2, 3]) + _cycle_edges([1, 4, 5]))


def h2() -> SignedGraph:
    """Two triangles on an edge, plus a triangle at a degree-2 apex."""
    return from_edges(6, [(1, 2), (2, 3), (3, 1), (2, 4), (4, 3)] + _cycle_edges([1, 5, 6]))


def h3() -> SignedGraph:
    """Two copies of two-triangles-on-an-edge sharing a degree-2 apex."""
    return from_edges(7, [(1, 2), (2, 3), (3, 1), (2, 4), (4, 3),
                          (1, 5), (5, 6), (6, 1), (5, 7), (7, 6)])


def _bridge_out(g: SignedGraph, v: int) -> SignedGraph:
    """Split the cut vertex ``v`` into two vertices joined by a new edge.

    The block containing the least-numbered edge at ``v`` keeps ``v``; the
    other block moves to the fresh vertex.
    """
    tree = block_decomposition(g)
    at = tree.blocks_at(v)
    keep = min(at, key=lambda i: min(tree.block_edges[i]))
    moved = set()
    for i in at:
        if i != keep:
            moved.update(tree.block_edges[i])
    fresh = g.n + 1
    edges = []
    for e, (a, b) in enumerate(g.edges, start=1):
        if e in moved:
            a = fresh if a == v else a
            b = fresh if b == v else b
        edges.append((a, b))
    edges.append((v, fresh))
    return from_edges(fresh, edges)


def h1p() -> SignedGraph:
    return _bridge_out(h1(), 1)


def h2p() -> SignedGraph:
    return _bridge_out(h2(), 1)


def h3p() -> SignedGraph:
    return _bridge_out(h3(), 1)


# -- clique-sum compositions ----------------------------------------------------------

def _to_nx(edges) -> nx.Graph:
    h = nx.Graph()
    h.add_edges_from(edges)
    return h


def clique_sum_compositions(max_cycles: int = 3, lengths=(3, 4, 5)) -> list[SignedGraph]:
    """All connected graphs built from at most ``max_cycles`` cycles by 1- and 2-clique sums.

    Each new cycle is glued to the current graph at a vertex or along an
    edge (the edge is kept).  Results are deduplicated up to isomorphism and
    returned in a canonical order (edge count, then edge list).
    """
    level = []
    for k in lengths:
        level.append(_to_nx(_cycle_edges(list(range(k)))))
    found = list(level)
    for _ in range(max_cycles - 1):
        nxt = []
        for h in level:
            base = max(h.nodes) + 1
            for k in lengths:
                for v in sorted(h.nodes):
                    cyc = [v] + list(range(base, base + k - 1))
                    h2 = h.copy()
                    h2.add_edges_from(_cycle_edges(cyc))
                    nxt.append(h2)
                for a, b in sorted(tuple(sorted(e)) for e in h.edges):
                    chain = [a] + list(range(base, base + k - 2)) + [b]
                    h2 = h.copy()
                    h2.add_edges_from((chain[i], chain[i + 1]) for i in range(len(chain) - 1))
                    nxt.append(h2)
        level = _dedupe(nxt)
        found.extend(level)
    found = _dedupe(found)
    out = []
    for h in found:
        n, edges = _relabel(h.number_of_nodes(), sorted(tuple(sorted(e)) for e in h.edges))
        out.append(from_edges(n, edges))
    out.sort(key=lambda g: (g.m, g.n, g.edges))
    return out


def _dedupe(graphs):
    buckets: dict[str, list] = {}
    out = []
    for h in graphs:
        key = nx.weisfeiler_lehman_graph_hash(h)
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(h, o) for o in bucket):
            continue
        bucket.append(h)
        out.append(h)
    return out


def is_isomorphic(g1: SignedGraph, g2: SignedGraph) -> bool:
    """Isomorphism of the underlying graphs (signs ignored)."""
    return nx.is_isomorphic(_to_nx(g1.edges), _to_nx(g2.edges))


# -- named corpus -----------------------------------------------------------------------

NAMED = {
    "k4_paper": (k4_paper, "K4 with tau(e4,v1)=tau(e5,v2)=tau(e6,v3)=-1"),
    "g0": (g0, "hexagon plus the chords v2v4, v4v6, v6v2 (reconstructed from its binomials)"),
    "g2prime": (g2prime, "two triangles sharing an edge"),
    "g3prime": (g3prime, "fan of three triangles"),
    "g4prime": (g4prime, "C4 with triangles on two opposite edges"),
    "g5prime": (g5prime, "g4prime plus a diagonal of the middle C4"),
    "h1": (h1, "two triangles sharing a vertex"),
    "h2": (h2, "g2prime with a triangle at a degree-2 apex"),
    "h3": (h3, "two copies of g2prime sharing a degree-2 apex"),
    "h1p": (h1p, "h1 with the shared vertex split by a bridge"),
    "h2p": (h2p, "h2 with the shared vertex split by a bridge"),
    "h3p": (h3p, "h3 with the shared vertex split by a bridge"),
    "k23": (k23, "complete bipartite K_{2,3}"),
    "k4": (lambda: complete_graph(4), "K4 with constant sign"),
    "c3": (lambda: cycle(3), "triangle"),
    "c4": (lambda: cycle(4), "4-cycle"),
    "c5": (lambda: cycle(5), "5-cycle"),
    "c6": (lambda: cycle(6), "6-cycle"),
    "c7": (lambda: cycle(7), "7-cycle"),
    "p4": (lambda: path(4), "path on 4 vertices"),
    "star4": (lambda: star(4), "star with 4 leaves"),
    "walk_example": (walk_example, "five-vertex signed graph of the section-decomposition example"),
    "split_example": (split_example, "eight-vertex signed graph of the split-walk example"),
}


def named_graph(name: str) -> SignedGraph:
    return NAMED[name][0]()


def curated_corpus() -> dict[str, SignedGraph]:
    """Every graph checked by the classifier sweep, keyed by a stable name.

    Clique-sum compositions come first, then the named extras not already
    isomorphic to one of them, then three instances of each family.
    """
    out: dict[str, SignedGraph] = {}
    for i, g in enumerate(clique_sum_compositions()):
        out[f"cs{i:03d}"] = g
    for name in ("k4", "k23", "g0", "g3prime", "g4prime", "g5prime",
                 "h1", "h2", "h3", "h1p", "h2p", "h3p"):
        g = named_graph(name)
        if not any(g.m == o.m and g.n == o.n and is_isomorphic(g, o) for o in out.values()):
            out[name] = g
    for tag in FAMILIES:
        for params in smallest_family_params(tag):
            g = family_instance(tag, params)
            if not any(g.m == o.m and g.n == o.n and is_isomorphic(g, o) for o in out.values()):
                out[f"{tag.lower()}_{'_'.join(map(str, params))}"] = g
    return out


def write_corpus(directory: str | Path) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for name, (make, note) in NAMED.items():
        p = d / f"{name}.sg"
        p.write_text(f"# {note}\n" + format_signed_graph(make()))
        written.append(p)
    return written


def load_corpus(directory: str | Path) -> dict[str, SignedGraph]:
    return {p.stem: parse_signed_graph(p.read_text()) for p in sorted(Path(directory).glob("*.sg"))}
