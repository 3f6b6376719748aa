"""Structural classification of graphs whose toric ideals are complete intersections.

The sign-independent families are recognised from the block structure; each
structural test has a brute-force counterpart built on the CI decision
procedure (``exhaustive_cis_check`` and the orientation oracle for cio).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .binomial import Binomial
from .graph import (
    GraphError,
    SignedGraph,
    bipartite_count,
    block_decomposition,
    components,
    induced_subgraph,
    is_bipartite,
    is_connected,
    is_two_connected,
    apply_orientation,
    ci_sign_representatives,
    component_subgraphs,
    incidence_class_count,
    incidence_class_key,
    simple_cycles,
)
from .groebner import GREVLEX, BudgetExceeded, buchberger
from .ideal import CiVerdict, graver_basis, is_complete_intersection
from .walks import Walk, binomial_of_walk, enumerate_walk_candidates


@dataclass(frozen=True)
class CisFamily:
    tag: str                      # Tree, G1..G5, TwoBlockConfig or NotCis
    params: tuple = ()
    blocks: tuple = ()            # vertex sets (original ids) of the nonedge blocks
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.tag != "NotCis"

    def to_json(self) -> dict:
        out = {"family": self.tag, "params": list(self.params), "blocks": [sorted(b) for b in self.blocks]}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class CisClassification:
    components: tuple[CisFamily, ...]

    @property
    def is_cis(self) -> bool:
        return all(c.ok for c in self.components)

    def to_json(self) -> dict:
        return {
            "is_cis": self.is_cis,
            "components": [c.to_json() for c in self.components],
        }


# -- skeleton of a 2-connected graph ----------------------------------------------------

def skeleton(g: SignedGraph):
    """Suppress degree-2 vertices.

    Returns ``(branch, paths)`` where ``paths`` lists ``(x, y, length)`` for each
    maximal chain between branch vertices (degree >= 3).  A cycle has no branch
    vertices and yields ``([], [])``.
    """
    branch = [v for v in g.vertices() if g.degree(v) >= 3]
    bset = set(branch)
    paths = []
    seen_edges = set()
    for x in branch:
        for e in g.incident(x):
            if e in seen_edges:
                continue
            seen_edges.add(e)
            prev, cur, length = x, g.other(e, x), 1
            last = e
            while cur not in bset:
                nxt = [f for f in g.incident(cur) if f != last]
                if len(nxt) != 1:
                    break
                last = nxt[0]
                seen_edges.add(last)
                prev, cur = cur, g.other(last, cur)
                length += 1
            paths.append((x, cur, length))
    return branch, paths


def _pattern_match(branch, paths, pattern, names):
    """Assign branch vertices to pattern names so the chain multisets coincide."""
    if len(branch) != len(names):
        return None
    want_len = len(pattern)
    if len(paths) != want_len:
        return None
    for perm in itertools.permutations(branch):
        label = dict(zip(perm, names))
        have = sorted((tuple(sorted((label[x], label[y]))), 1 if ln == 1 else 0) for x, y, ln in paths)
        want = sorted((tuple(sorted(p)), s) for p, s in pattern)
        if have == want:
            return label
    return None


# short edge = 1, long chain = 0
_G2 = [(("a", "b"), 1), (("a", "b"), 0), (("a", "b"), 0)]
_G3 = [(("a", "b"), 1), (("b", "c"), 1), (("a", "c"), 1), (("a", "b"), 0), (("b", "c"), 0)]
_G4 = [(("a", "b"), 1), (("b", "c"), 1), (("c", "d"), 1), (("d", "a"), 1), (("a", "b"), 0), (("c", "d"), 0)]
_G5 = _G4 + [(("a", "c"), 1)]


def _long_lengths(paths, label, pairs):
    out = []
    for pr in pairs:
        for x, y, ln in paths:
            if ln > 1 and {label[x], label[y]} == set(pr):
                out.append(ln + 1)
    return tuple(sorted(out))


def classify_block_cis(b: SignedGraph) -> CisFamily:
    """Family G1..G5 of a 2-connected simple graph, or NotCis."""
    if not is_two_connected(b):
        raise GraphError("input is not 2-connected")
    verts = frozenset(b.vertices())
    branch, paths = skeleton(b)
    if not branch:
        return CisFamily("G1", (b.n,), (verts,))
    degs = sorted(b.degree(v) for v in branch)
    if degs == [3, 3]:
        label = _pattern_match(branch, paths, _G2, "ab")
        if label:
            lens = sorted(ln + 1 for _, _, ln in paths if ln > 1)
            return CisFamily("G2", tuple(lens), (verts,))
    if degs == [3, 3, 4]:
        label = _pattern_match(branch, paths, _G3, "abc")
        if label:
            return CisFamily("G3", _long_lengths(paths, label, [("a", "b"), ("b", "c")]), (verts,))
    if degs == [3, 3, 3, 3]:
        label = _pattern_match(branch, paths, _G4, "abcd")
        if label:
            return CisFamily("G4", _long_lengths(paths, label, [("a", "b"), ("c", "d")]), (verts,))
    if degs == [3, 3, 4, 4]:
        label = _pattern_match(branch, paths, _G5, "abcd")
        if label:
            return CisFamily("G5", _long_lengths(paths, label, [("a", "b"), ("c", "d")]), (verts,))
    return CisFamily("NotCis", (), (verts,), "2-connected block outside G1-G5")


def _on_triangle(b: SignedGraph, v: int) -> bool:
    nb = b.neighbors(v)
    return any(b.edge_between(x, y) is not None for x, y in itertools.combinations(nb, 2))


def classify_cis(g: SignedGraph) -> CisClassification:
    """Membership in the class of graphs that are CI for every sign, per component."""
    out = []
    for comp in components(g):
        sub, vmap, _ = induced_subgraph(g, comp)
        out.append(_classify_component(sub, vmap))
    return CisClassification(tuple(out))


def _classify_component(g: SignedGraph, vmap) -> CisFamily:
    tree = block_decomposition(g)
    nonedge = tree.nonedge_blocks()
    orig = lambda vs: frozenset(vmap[v - 1] for v in vs)
    if not nonedge:
        return CisFamily("Tree", (g.n,))
    if len(nonedge) > 2:
        return CisFamily("NotCis", (), tuple(orig(tree.blocks[i]) for i in nonedge), "more than two nonedge blocks")
    fams = []
    subs = []
    for i in nonedge:
        sub, bmap, _ = induced_subgraph(g, tree.blocks[i])
        fam = classify_block_cis(sub)
        fams.append(fam)
        subs.append((sub, bmap))
    blocks = tuple(orig(tree.blocks[i]) for i in nonedge)
    if len(nonedge) == 1:
        f = fams[0]
        if not f.ok:
            return CisFamily("NotCis", (), blocks, f.reason)
        return CisFamily(f.tag, f.params, blocks)
    for f in fams:
        if f.tag not in ("G1", "G2"):
            return CisFamily("NotCis", (), blocks, "two nonedge blocks, one outside G1/G2")
    for k, (i, j) in enumerate(((nonedge[0], nonedge[1]), (nonedge[1], nonedge[0]))):
        if fams[k].tag != "G2":
            continue
        path = tree.path(i, j)
        v = path[1][1]   # cut vertex of block i towards block j
        sub, bmap = subs[k]
        lv = bmap.index(v) + 1
        if sub.degree(lv) != 2 or not _on_triangle(sub, lv):
            return CisFamily("NotCis", (), blocks, f"attachment vertex v{vmap[v - 1]} of a G2 block is not a degree-2 triangle vertex")
    params = tuple((f.tag, f.params) for f in fams)
    return CisFamily("TwoBlockConfig", params, blocks)


# -- exhaustive sweep ---------------------------------------------------------------------

@dataclass
class SweepRow:
    index: int
    component: int
    tau: tuple
    verdict: CiVerdict

    def to_json(self) -> dict:
        out = {"class": self.index, "component": self.component, "tau": [list(t) for t in self.tau]}
        out.update(self.verdict.to_json())
        return out


@dataclass
class SweepResult:
    all_ci: bool
    rows: list = field(default_factory=list)
    classes: int = 0
    complete: bool = True      # False when the sweep stopped at the first failure

    def to_json(self) -> dict:
        return {
            "verdict": self.all_ci,
            "classes": self.classes,
            "complete": self.complete,
            "table": [r.to_json() for r in self.rows],
        }


DEFAULT_SWEEP_BUDGET = 1 << 16


def exhaustive_cis_check(g: SignedGraph, max_classes: int = DEFAULT_SWEEP_BUDGET,
                         stop_early: bool = False) -> SweepResult:
    """Run the CI decision on one sign per class of every component.

    Classes are signs modulo vertex (row) negations, with runs of degree-2
    vertices reduced to their number of unbalanced terms; see
    :func:`ci_sign_representatives`.
    """
    rows = []
    ok = True
    idx = 0
    total = 0
    subs = []
    for comp in components(g):
        sub, _, _ = induced_subgraph(g, comp)
        count = incidence_class_count(sub)
        total += count
        subs.append(sub)
    if total > max_classes:
        raise BudgetExceeded(f"{total} sign classes exceed the sweep budget of {max_classes}")
    for ci, sub in enumerate(subs):
        cands = enumerate_walk_candidates(sub)
        for rep in ci_sign_representatives(sub):
            verdict = is_complete_intersection(rep, candidates=cands)
            rows.append(SweepRow(idx, ci, rep.tau, verdict))
            idx += 1
            if not verdict.is_ci:
                ok = False
                if stop_early:
                    return SweepResult(False, rows, total, False)
    return SweepResult(ok, rows, total, True)


# -- digraph class ----------------------------------------------------------------------------

def _is_complete(g: SignedGraph, verts) -> bool:
    vs = list(verts)
    return all(g.edge_between(x, y) is not None for x, y in itertools.combinations(vs, 2))


def _is_cycle(g: SignedGraph, verts) -> bool:
    vs = set(verts)
    if len(vs) < 3:
        return False
    sub, _, _ = induced_subgraph(g, vs)
    return is_connected(sub) and all(sub.degree(v) == 2 for v in sub.vertices())


def _clique_separator(g: SignedGraph, verts: frozenset, cap: int):
    vs = sorted(verts)
    for k in range(1, cap + 1):
        for s in itertools.combinations(vs, k):
            if not _is_complete(g, s):
                continue
            rest = verts - set(s)
            if not rest:
                continue
            comps = _components_within(g, rest)
            if len(comps) > 1:
                return set(s), comps
    return None


def _components_within(g: SignedGraph, verts) -> list[set]:
    verts = set(verts)
    seen = set()
    out = []
    for s in sorted(verts):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        q = deque([s])
        while q:
            x = q.popleft()
            for y in g.neighbors(x):
                if y in verts and y not in seen:
                    seen.add(y)
                    comp.add(y)
                    q.append(y)
        out.append(comp)
    return out


def clique_sum_atoms(g: SignedGraph, cap: int = 4) -> list[frozenset]:
    """Pieces left after splitting on clique separators of size at most ``cap``."""
    atoms = []
    stack = [frozenset(c) for c in _components_within(g, g.vertices())]
    while stack:
        verts = stack.pop()
        if len(verts) <= 2 or _is_complete(g, verts):
            atoms.append(verts)
            continue
        found = _clique_separator(g, verts, cap)
        if found is None:
            atoms.append(verts)
            continue
        sep, comps = found
        for c in comps:
            stack.append(frozenset(c | sep))
    return sorted(atoms, key=lambda a: sorted(a))


def classify_cio(g: SignedGraph, cap: int = 4) -> bool:
    """Clique sums of complete graphs and cycles (CI for every orientation)."""
    for atom in clique_sum_atoms(g, cap):
        if not (len(atom) <= 2 or _is_complete(g, atom) or _is_cycle(g, atom)):
            return False
    return True


def cio_oracle(g: SignedGraph, max_edges: int = 16) -> bool:
    """CI decision on every orientation of ``g``.

    Reversing an arc negates one column of the incidence matrix, which can
    change the verdict, so no single orientation is representative.
    Orientations are deduplicated by :func:`incidence_class_key`.
    """
    if g.m > max_edges:
        raise BudgetExceeded(f"{g.m} edges exceed the orientation sweep budget of {max_edges}")
    seen = set()
    cands = [enumerate_walk_candidates(sub) for sub, _, _ in component_subgraphs(g)] if g.m else []
    for bits in itertools.product((0, 1), repeat=g.m):
        tails = {e: g.endpoints(e)[b] for e, b in enumerate(bits, start=1)}
        h = apply_orientation(g, tails)
        key = incidence_class_key(h)
        if key in seen:
            continue
        seen.add(key)
        if not is_complete_intersection(h, candidates=cands[0] if len(cands) == 1 else None).is_ci:
            return False
    return True


def is_ring_graph(g: SignedGraph) -> bool:
    """Every nonedge block reduces to a single cycle by peeling chains whose ends are adjacent."""
    tree = block_decomposition(g)
    for i in tree.nonedge_blocks():
        sub, _, _ = induced_subgraph(g, tree.blocks[i])
        if not _peels_to_cycle(sub):
            return False
    return True


def _peels_to_cycle(b: SignedGraph) -> bool:
    verts = set(b.vertices())
    while True:
        sub, vmap, _ = induced_subgraph(b, verts)
        if all(sub.degree(v) == 2 for v in sub.vertices()):
            return True
        branch, paths = skeleton(sub)
        removable = None
        for x, y, ln in sorted(paths):
            if ln >= 2 and x != y and sub.edge_between(x, y) is not None:
                removable = (x, y)
                break
        if removable is None:
            return False
        # collect the chain interior
        x, y = removable
        for e in sub.incident(x):
            chain = []
            prev, cur = x, sub.other(e, x)
            last = e
            while sub.degree(cur) == 2 and cur != y:
                chain.append(cur)
                last = next(f for f in sub.incident(cur) if f != last)
                prev, cur = cur, sub.other(last, cur)
            if cur == y and chain:
                break
        verts -= {vmap[c - 1] for c in chain}


@dataclass
class NecessaryReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"violations": self.violations, "ok": self.ok}


def necessary_conditions_ci(g: SignedGraph, cycle_limit: int = 5000) -> NecessaryReport:
    """Check the known necessary conditions for CI under the constant sign."""
    rep = NecessaryReport()
    if not is_connected(g):
        raise GraphError("necessary conditions are stated for connected graphs")
    if not is_bipartite(g):
        total = sum(bipartite_count(g, [v]) for v in g.vertices())
        if 2 * g.m > 3 * g.n - total:
            rep.violations.append({"item": "i", "two_m": 2 * g.m, "bound": 3 * g.n - total})
    for x, y in itertools.combinations(g.vertices(), 2):
        common = sorted(set(g.neighbors(x)) & set(g.neighbors(y)))
        if len(common) >= 3:
            rep.violations.append({"item": "ii", "k23": [x, y] + common[:3]})
            break
    if is_two_connected(g):
        cycles = simple_cycles(g)
        if len(cycles) > cycle_limit:
            raise BudgetExceeded("too many cycles for the odd-cycle conditions")
        odd = [set(vs) for vs, es in cycles if len(es) % 2 == 1]
        iii = iv = None
        for c1, c2 in itertools.combinations(odd, 2):
            shared = c1 & c2
            if len(shared) == 1 and iii is None:
                (v,) = shared
                if not any(_joins(g, e, c1 - shared, c2 - shared) for e in range(1, g.m + 1)):
                    iii = {"item": "iii", "cycles": [sorted(c1), sorted(c2)], "vertex": v}
            elif not shared and iv is None:
                links = [e for e in range(1, g.m + 1) if _joins(g, e, c1, c2)]
                if not any(set(g.endpoints(a)).isdisjoint(g.endpoints(b)) for a, b in itertools.combinations(links, 2)):
                    iv = {"item": "iv", "cycles": [sorted(c1), sorted(c2)]}
        rep.violations += [x for x in (iii, iv) if x]
    tree = block_decomposition(g)
    nonbip = [sorted(tree.blocks[i]) for i in range(len(tree.blocks)) if not tree.is_bipartite[i]]
    if len(nonbip) > 2:
        rep.violations.append({"item": "v", "blocks": nonbip})
    return rep


def _joins(g: SignedGraph, e: int, a: set, b: set) -> bool:
    x, y = g.endpoints(e)
    return (x in a and y in b) or (x in b and y in a)


# -- the inductive CI procedure for graphs ------------------------------------------------------

@dataclass
class AlgorithmTrace:
    result: bool
    collected: list = field(default_factory=list)    # (vertex, W, walk, binomial)
    residual: list = field(default_factory=list)     # (vertex set, is_ci)
    fallback_used: bool = False
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "result": self.result,
            "collected": [
                {"vertex": v, "W": sorted(w), "walk": walk.tokens(), "binomial": b.to_json()}
                for v, w, walk, b in self.collected
            ],
            "residual": [{"vertices": sorted(vs), "is_ci": ok} for vs, ok in self.residual],
            "band_test_replaced_by_ci_oracle": self.fallback_used,
            "reason": self.reason,
        }


def shortest_even_closed_walk(g: SignedGraph, alive: set, target: set) -> Walk | None:
    """Shortest closed walk of even length inside ``target`` visiting all of it.

    Breadth-first search over (vertex, parity, visited set) from the least
    vertex of ``target``; neighbours are expanded by edge id so ties resolve
    to the lexicographically first walk.
    """
    target = set(target) & set(alive)
    if not target:
        return None
    order = sorted(target)
    bit = {v: 1 << i for i, v in enumerate(order)}
    full = (1 << len(order)) - 1
    s = order[0]
    start = (s, 0, bit[s])
    parent = {start: None}   # state -> (previous state, edge used)
    q = deque([start])
    while q:
        st = q.popleft()
        x, par, mask = st
        for e in sorted(g.incident(x)):
            y = g.other(e, x)
            if y not in target:
                continue
            nst = (y, par ^ 1, mask | bit[y])
            if y == s and nst[1] == 0 and nst[2] == full:
                vs, es = [y], [e]
                cur = st
                while cur is not None:
                    vs.append(cur[0])
                    link = parent[cur]
                    if link is None:
                        break
                    es.append(link[1])
                    cur = link[0]
                return Walk(tuple(vs[::-1]), tuple(es[::-1]))
            if nst not in parent:
                parent[nst] = (st, e)
                q.append(nst)
    return None


def algorithm_ci_graph(g: SignedGraph, trace: bool = False):
    """Inductive CI test for a simple graph under the constant sign.

    Residual components (minimum degree at least three) are judged by the CI
    decision procedure rather than by band recognition.
    """
    gc = g.constant_sign()
    alive = set(gc.vertices())
    tr = AlgorithmTrace(True)

    def sub_of(verts):
        return induced_subgraph(gc, verts)[0]

    def b_of(verts):
        return bipartite_count(sub_of(verts)) if verts else 0

    while True:
        low = [v for v in sorted(alive) if sum(1 for y in gc.neighbors(v) if y in alive) <= 2]
        if not low:
            break
        v = low[0]
        nbrs = [y for y in gc.neighbors(v) if y in alive]
        if len(nbrs) == 2 and b_of(alive - {v}) == b_of(alive):
            w_set = {v} | set(nbrs)
            for u in sorted(alive - {v}):
                if b_of(alive - {u, v}) > b_of(alive - {u}):
                    w_set.add(u)
            walk = shortest_even_closed_walk(gc, alive, w_set)
            if walk is None:
                tr.result = False
                tr.reason = f"no even closed walk covers W at v{v}"
                return tr if trace else False
            tr.collected.append((v, frozenset(w_set), walk, binomial_of_walk(walk, gc)))
        alive.discard(v)

    gens = [b for _, _, _, b in tr.collected]
    for comp in _components_within(gc, alive) if alive else []:
        sub, _, emap = induced_subgraph(gc, comp)
        tr.fallback_used = True
        verdict = is_complete_intersection(sub)
        tr.residual.append((frozenset(comp), verdict.is_ci))
        if not verdict.is_ci:
            tr.result = False
            tr.reason = "a residual component is not a complete intersection"
            return tr if trace else False
        for b in verdict.witness:
            p = [0] * gc.m
            q = [0] * gc.m
            for i, (x, y) in enumerate(zip(b.plus, b.minus)):
                p[emap[i] - 1] = x
                q[emap[i] - 1] = y
            gens.append(Binomial(tuple(p), tuple(q)))
    graver = graver_basis(gc)
    gens = [b for b in gens if not b.reduced().is_zero()]
    if not gens:
        ok = not graver
    else:
        gb = buchberger(gens, GREVLEX, gc.m)
        ok = all(gb.contains(b) for b in graver)
    tr.result = ok
    if not ok:
        tr.reason = "collected binomials do not generate the toric ideal"
    return tr if trace else ok
