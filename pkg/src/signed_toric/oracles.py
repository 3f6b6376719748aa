"""Cross-check suites: each structural shortcut against a brute-force counterpart.

Every suite is deterministic for a given seed and returns a :class:`SuiteResult`.
The CLI exposes them as ``oracle <suite>`` and the acceptance tests call them
directly.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import deque
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from . import corpus as C
from .binomial import Binomial
from .classify import (
    algorithm_ci_graph,
    classify_cis,
    exhaustive_cis_check,
    is_ring_graph,
)
from .graph import (
    SignedGraph,
    contract_ear,
    ears,
    from_edges,
    incidence_matrix,
    is_bipartite,
    is_connected,
    lift_sign_contraction,
    project_sign_subdivision,
    sign_class_representatives,
    simple_cycles,
)
from .groebner import same_ideal
from .ideal import (
    combination_certificate,
    graver_basis,
    is_complete_intersection,
    is_primitive_definitional,
    r_invariant,
    toric_ideal_basis,
)
from .lattice import kernel_lattice_basis, kernel_to_even_walks, product_identity_holds, rank_formula
from .walks import (
    Walk,
    binomial_of_walk,
    canonical_form,
    concat,
    enumerate_closed_walks,
    enumerate_primitive_walks,
    is_primitive_structural,
    mu,
    reverse,
    unbalanced_positions,
)

DEFAULT_SEED = 20240611


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and self.checked > 0

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failures": self.failures[:20],
            "failure_count": len(self.failures),
            "elapsed": round(self.elapsed, 3),
            "notes": self.notes,
        }


# -- random instances ------------------------------------------------------------------

def random_connected_graph(rng: random.Random, n_min: int = 2, n_max: int = 8, extra: float = 0.35) -> SignedGraph:
    n = rng.randint(n_min, n_max)
    edges = set()
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        edges.add((u, v))
    for u, v in itertools.combinations(range(1, n + 1), 2):
        if (u, v) not in edges and rng.random() < extra:
            edges.add((u, v))
    edges = sorted(edges)
    rng.shuffle(edges)
    return from_edges(n, edges)


def random_sign(g: SignedGraph, rng: random.Random, kind: str = "random") -> SignedGraph:
    if kind == "constant":
        return g.constant_sign()
    if kind == "orientation":
        return g.with_tau([(1, -1) if rng.random() < 0.5 else (-1, 1) for _ in range(g.m)])
    return g.with_tau([(rng.choice((1, -1)), rng.choice((1, -1))) for _ in range(g.m)])


def _bfs_path(g: SignedGraph, a: int, b: int) -> Walk:
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for e in sorted(g.incident(x)):
            y = g.other(e, x)
            if y not in prev:
                prev[y] = (x, e)
                queue.append(y)
    vs, es = [b], []
    while vs[-1] != a:
        x, e = prev[vs[-1]]
        vs.append(x)
        es.append(e)
    return Walk(tuple(vs[::-1]), tuple(es[::-1]))


def random_walk(g: SignedGraph, rng: random.Random, start: int, steps: int) -> Walk:
    vs, es = [start], []
    for _ in range(steps):
        e = rng.choice(g.incident(vs[-1]))
        es.append(e)
        vs.append(g.other(e, vs[-1]))
    return Walk(tuple(vs), tuple(es))


def random_walk_between(g: SignedGraph, rng: random.Random, a: int, b: int, steps: int) -> Walk:
    w = random_walk(g, rng, a, steps)
    return concat(w, _bfs_path(g, w.end, b))


def random_closed_walk(g: SignedGraph, rng: random.Random, start: int, steps: int) -> Walk:
    w = random_walk_between(g, rng, start, start, steps)
    if w.length == 0:
        w = random_walk_between(g, rng, start, start, max(steps, 1) + 1)
    return w


def _instance_graph(rng: random.Random) -> SignedGraph:
    while True:
        g = random_connected_graph(rng, 3, 7)
        if g.m >= 3:
            return random_sign(g, rng)


# -- criterion suites ---------------------------------------------------------------

def suite_k4(seed: int = DEFAULT_SEED) -> SuiteResult:
    res = SuiteResult("k4")
    g = C.k4_paper()
    expected = {
        Binomial.from_dicts(6, {1: 1, 5: 1}, {3: 1, 6: 1}).key(),
        Binomial.from_dicts(6, {1: 1, 4: 1}, {2: 1, 6: 1}).key(),
        Binomial.from_dicts(6, {2: 1, 5: 1}, {3: 1, 4: 1}).key(),
    }
    t = time.time()
    gb = graver_basis(g)
    v = is_complete_intersection(g)
    res.elapsed = time.time() - t
    res.checked = 4
    if {b.key() for b in gb} != expected or len(gb) != 3:
        res.fail(f"graver basis {[str(b) for b in gb]}")
    if r_invariant(g) != 2 or v.r != 2:
        res.fail(f"r = {v.r}")
    if v.is_ci:
        res.fail("reported CI")
    if res.elapsed >= 1.0:
        res.fail(f"took {res.elapsed:.2f}s")
    res.notes["graver"] = [str(b) for b in gb]
    return res


def suite_rank(seed: int = DEFAULT_SEED, count: int = 500) -> SuiteResult:
    res = SuiteResult("rank")
    rng = random.Random(seed)
    kinds = ("constant", "orientation", "random")
    for i in range(count):
        g = random_sign(random_connected_graph(rng, 1, 8), rng, kinds[i % 3])
        rep = rank_formula(g)
        res.checked += 1
        if not rep.agree:
            res.fail(f"{g.edges} {g.tau}: formula {rep.formula} exact {rep.exact}")
    return res


def connected_graphs_up_to(n_max: int) -> list[SignedGraph]:
    """Every connected simple graph on 2..n_max vertices, one per isomorphism class."""
    out = []
    for h in nx.graph_atlas_g():
        k = h.number_of_nodes()
        if k < 2 or k > n_max or not nx.is_connected(h):
            continue
        out.append(from_edges(k, sorted((u + 1, v + 1) for u, v in h.edges)))
    return out


def suite_primitivity(seed: int = DEFAULT_SEED, n_max: int = 5, max_len: int = 8) -> SuiteResult:
    res = SuiteResult("primitivity")
    graphs = connected_graphs_up_to(n_max)
    signs = 0
    for g0 in graphs:
        walks = enumerate_closed_walks(g0, max_len, even_only=False)
        for g in sign_class_representatives(g0):
            signs += 1
            A = np.array(incidence_matrix(g), dtype=np.int64)
            memo: dict = {}
            for w in walks:
                if mu(w, g) != 1:
                    continue
                f = binomial_of_walk(w, g)
                s = is_primitive_structural(w, g)
                key = (f.plus, f.minus)
                if key not in memo:
                    memo[key] = False if f.is_zero() else is_primitive_definitional(f, g, A)
                res.checked += 1
                if s != memo[key]:
                    res.fail(f"{g.edges} {g.tau} {w.tokens()}: structural {s} definitional {memo[key]}")
    res.notes.update(graphs=len(graphs), sign_classes=signs)
    return res


def corpus_graphs(max_edges: int | None = None) -> dict[str, SignedGraph]:
    graphs = dict(C.curated_corpus())
    for name in C.NAMED:
        graphs.setdefault(name, C.named_graph(name))
    if max_edges is not None:
        graphs = {k: g for k, g in graphs.items() if g.m <= max_edges}
    return graphs


def suite_generation(seed: int = DEFAULT_SEED, max_edges: int = 9) -> SuiteResult:
    res = SuiteResult("generation")
    for name, g0 in corpus_graphs(max_edges).items():
        if not is_connected(g0):
            continue
        for g in sign_class_representatives(g0):
            gb = graver_basis(g)
            tb = toric_ideal_basis(g)
            res.checked += 1
            if not gb and not tb.pairs:
                continue  # both ideals are zero
            if not same_ideal(gb, tb.binomials(), g.m):
                res.fail(f"{name} {g.tau}")
    return res


def suite_kernel(seed: int = DEFAULT_SEED, count: int = 200) -> SuiteResult:
    res = SuiteResult("kernel")
    rng = random.Random(seed)
    pool = [g for g in corpus_graphs(12).values() if g.m > g.n - 1]
    while res.checked < count:
        g = rng.choice(pool)
        g = random_sign(g, rng, rng.choice(("constant", "orientation", "random")))
        basis = kernel_lattice_basis(incidence_matrix(g), g.m)
        if not basis:
            continue
        coeffs = [rng.randint(-2, 2) for _ in basis]
        b = [sum(c * v[i] for c, v in zip(coeffs, basis)) for i in range(g.m)]
        if not any(b):
            continue
        res.checked += 1
        try:
            parts = kernel_to_even_walks(g, b)
        except AssertionError as exc:
            res.fail(f"{g.edges} {g.tau} b={b}: {exc}")
            continue
        for part in parts:
            w = part.walk
            if not w.closed or mu(w, g) != 1:
                res.fail(f"b={b}: walk {w.tokens()} not an even closed walk")
        used = [0] * g.m
        for part in parts:
            for e in part.walk.edges:
                used[e - 1] += 1
        if used != [abs(x) for x in b]:
            res.fail(f"b={b}: walks are not Eulerian on G_b")
        if not product_identity_holds(g, b, parts):
            res.fail(f"b={b}: product identity fails")
    return res


def suite_cis(seed: int = DEFAULT_SEED) -> SuiteResult:
    res = SuiteResult("cis")
    for name, g in C.curated_corpus().items():
        structural = classify_cis(g).is_cis
        sweep = exhaustive_cis_check(g, stop_early=True)
        res.checked += 1
        if structural != sweep.all_ci:
            res.fail(f"{name}: classifier {structural} sweep {sweep.all_ci}")
    return res


def suite_spot(seed: int = DEFAULT_SEED) -> SuiteResult:
    res = SuiteResult("spot")
    checks = [
        ("sweep(two triangles on an edge)", exhaustive_cis_check(C.g2prime()).all_ci, True),
        ("classify_cis(K23)", classify_cis(C.k23()).is_cis, False),
        ("algorithm(G0)", algorithm_ci_graph(C.g0()), False),
        ("algorithm(K4)", algorithm_ci_graph(C.complete_graph(4)), True),
    ]
    for label, got, want in checks:
        res.checked += 1
        if got != want:
            res.fail(f"{label} = {got}, expected {want}")
    return res


# -- walk lemma suites ------------------------------------------------------------------

def _sides(f: Binomial):
    return {(f.plus, f.minus), (f.minus, f.plus)}


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def product_rule_holds(w1: Walk, w2: Walk, g: SignedGraph) -> bool:
    total = binomial_of_walk(concat(w1, w2), g)
    a, b = binomial_of_walk(w1, g), binomial_of_walk(w2, g)
    for (ap, am), (bp, bm) in itertools.product(_sides(a), _sides(b)):
        if (_add(ap, bp), _add(am, bm)) in _sides(total):
            return True
    return False


def suite_lemmas(seed: int = DEFAULT_SEED, count: int = 1000) -> SuiteResult:
    res = SuiteResult("lemmas")
    rng = random.Random(seed)
    counts = dict.fromkeys(("multiplicativity", "cross", "product", "reversal", "certificate"), 0)

    def closed_at(g, v):
        return random_closed_walk(g, rng, v, rng.randint(1, 6))

    tries = 0
    while min(counts.values()) < count:
        tries += 1
        if tries > 200 * count:
            res.fail(f"instance generation stalled: {counts}")
            break
        g = _instance_graph(rng)
        v = rng.randint(1, g.n)
        w1, w2 = closed_at(g, v), closed_at(g, v)
        m1, m2 = mu(w1, g), mu(w2, g)
        if counts["multiplicativity"] < count:
            counts["multiplicativity"] += 1
            if mu(concat(w1, w2), g) != m1 * m2:
                res.fail(f"mu multiplicativity: {w1} + {w2}")
        if m1 == 1 and m2 == 1 and counts["product"] < count:
            counts["product"] += 1
            if not product_rule_holds(w1, w2, g):
                res.fail(f"product rule: {w1} + {w2}")
        if m1 == -1 and m2 == -1 and counts["reversal"] < count:
            counts["reversal"] += 1
            a = binomial_of_walk(concat(w1, w2), g)
            b = binomial_of_walk(concat(reverse(w1), w2), g)
            if _sides(a) != _sides(b):
                res.fail(f"reversal: {w1} , {w2}")
        u = rng.randint(1, g.n)
        w = random_walk_between(g, rng, u, v, rng.randint(0, 3))
        x1 = random_walk_between(g, rng, v, u, rng.randint(0, 4))
        x2 = random_walk_between(g, rng, v, u, rng.randint(0, 4))
        if counts["cross"] < count:
            lhs = mu(concat(x1, reverse(x2)), g)
            if w.length + x1.length > 0 and w.length + x2.length > 0 and x1.length + x2.length > 0:
                counts["cross"] += 1
                if lhs != mu(concat(w, x1), g) * mu(concat(w, x2), g):
                    res.fail(f"cross identity: {w} | {x1} | {x2}")
        if (counts["certificate"] < count and u != v and w.length >= 1
                and not unbalanced_positions(w, g)
                and mu(concat(w, x1), g) == 1 and mu(concat(w, x2), g) == 1):
            counts["certificate"] += 1
            try:
                cert = combination_certificate(w, x1, x2, g)
                if not cert.verify():
                    res.fail(f"certificate does not expand: {w} | {x1} | {x2}")
            except Exception as exc:  # noqa: BLE001 - any failure is a suite failure
                res.fail(f"certificate error {exc}: {w} | {x1} | {x2}")
    res.checked = sum(counts.values())
    res.notes.update(counts)
    return res


# -- ears ---------------------------------------------------------------------------------

def _expand(w: Walk, con, ear_path, ear_edges) -> Walk:
    """Walk of G for a walk of G/p: old ids restored, the fresh edge replaced by the ear."""
    vs = [con.vertex_map[w.vertices[0]]]
    es = []
    for e, y in zip(w.edges, w.vertices[1:]):
        oy = con.vertex_map[y]
        if e == con.new_edge:
            if vs[-1] == ear_path[0]:
                vs.extend(ear_path[1:])
                es.extend(ear_edges)
            else:
                vs.extend(ear_path[::-1][1:])
                es.extend(ear_edges[::-1])
        else:
            es.append(con.edge_map[e])
            vs.append(oy)
    return Walk(tuple(vs), tuple(es))


def _subdivided(rng: random.Random) -> tuple[SignedGraph, list[int]]:
    """A random connected graph with one edge replaced by a path; returns the graph and that ear."""
    while True:
        g = random_connected_graph(rng, 3, 6, extra=0.4)
        if g.m < g.n:
            continue
        e = rng.randint(1, g.m)
        a, b = g.endpoints(e)
        k = rng.randint(1, 3)
        new = list(range(g.n + 1, g.n + 1 + k))
        chain = [a] + new + [b]
        edges = [uv for i, uv in enumerate(g.edges, start=1) if i != e]
        edges += [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
        h = from_edges(g.n + k, edges)
        if h.edge_between(a, b) is None:
            return h, chain


def suite_ears(seed: int = DEFAULT_SEED, count: int = 100) -> SuiteResult:
    res = SuiteResult("ears")
    rng = random.Random(seed)
    from .graph import check_ear
    for _ in range(count):
        g, p = _subdivided(rng)
        ear_edges = check_ear(g, p)
        con = contract_ear(g, p)
        star = random_sign(con.graph, rng)
        tau = lift_sign_contraction(g, p, star)
        res.checked += 1
        if r_invariant(tau) != r_invariant(star):
            res.fail(f"lift changes r: {g.edges} {p}")
        for _ in range(5):
            w = random_closed_walk(star, rng, rng.randint(1, star.n), rng.randint(1, 6))
            if mu(_expand(w, con, p, ear_edges), tau) != mu(w, star):
                res.fail(f"lift parity: {g.edges} {p} {w}")
        if len(p) >= 4:
            q = p[:-1]
            sign = random_sign(g, rng)
            proj = project_sign_subdivision(sign, q)
            conq = contract_ear(g, q)
            res.checked += 1
            if r_invariant(proj) != r_invariant(sign):
                res.fail(f"project changes r: {g.edges} {q}")
            q_edges = check_ear(g, q)
            for _ in range(5):
                w = random_closed_walk(proj, rng, rng.randint(1, proj.n), rng.randint(1, 6))
                if mu(_expand(w, conq, q, q_edges), sign) != mu(w, proj):
                    res.fail(f"project parity: {g.edges} {q} {w}")
    for name, g in corpus_graphs().items():
        if not classify_cis(g).is_cis:
            continue
        for p in ears(g):
            res.checked += 1
            if not classify_cis(contract_ear(g, p).graph).is_cis:
                res.fail(f"{name}: contracting {p} leaves the class")
    return res


# -- specializations ----------------------------------------------------------------------

def bipartite_corpus() -> dict[str, SignedGraph]:
    out = {k: g for k, g in corpus_graphs().items() if is_bipartite(g) and is_connected(g)}
    extra = {
        "k33": from_edges(6, [(a, b) for a in (1, 2, 3) for b in (4, 5, 6)]),
        "ladder3": from_edges(8, [(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (1, 5), (2, 6), (3, 7), (4, 8)]),
        "theta_222": from_edges(5, [(1, 3), (3, 2), (1, 4), (4, 2), (1, 5), (5, 2)]),
        "c4_c6_1sum": from_edges(9, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 1)]),
        "k23_subdivided": from_edges(7, [(1, 3), (3, 2), (1, 4), (4, 2), (1, 5), (5, 6), (6, 7), (7, 2)]),
    }
    for k, g in extra.items():
        if is_bipartite(g):
            out[k] = g
    return out


def suite_specializations(seed: int = DEFAULT_SEED, max_edges: int = 12) -> SuiteResult:
    res = SuiteResult("specializations")
    for name, g in bipartite_corpus().items():
        res.checked += 1
        if algorithm_ci_graph(g) != is_ring_graph(g):
            res.fail(f"{name}: algorithm {algorithm_ci_graph(g)} ring {is_ring_graph(g)}")
    rng = random.Random(seed)
    for name, g in corpus_graphs(max_edges).items():
        h = random_sign(g, rng, "orientation")
        walks = {canonical_form(p.walk) for p in enumerate_primitive_walks(h)}
        cycles = set()
        for vs, es in simple_cycles(g):
            cycles.add(canonical_form(Walk(vs + (vs[0],), es)))
        res.checked += 1
        if walks != cycles:
            res.fail(f"{name}: {len(walks)} primitive walks, {len(cycles)} cycles")
    return res


SUITES = {
    "k4": suite_k4,
    "rank": suite_rank,
    "primitivity": suite_primitivity,
    "generation": suite_generation,
    "kernel": suite_kernel,
    "cis": suite_cis,
    "spot": suite_spot,
    "lemmas": suite_lemmas,
    "ears": suite_ears,
    "specializations": suite_specializations,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> SuiteResult:
    t = time.time()
    res = SUITES[name](seed)
    if name != "k4":
        res.elapsed = time.time() - t
    return res
