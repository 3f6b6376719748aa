"""Signed graphs: representation, `.sg` I/O, incidence matrix, blocks, ears and signs.

Vertices and edges are dense 1-based integers.  A sign ``tau`` assigns +1/-1 to
each incidence; it is stored per edge as the pair ``(tau(e, u), tau(e, v))``
aligned with the endpoint pair ``(u, v)``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph, walk or ear."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class SignedGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    tau: tuple[tuple[int, int], ...]
    simple: bool = True
    _inc: tuple[tuple[int, ...], ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        tau = tuple((int(a), int(b)) for a, b in self.tau)
        if len(tau) != len(edges):
            raise GraphError("tau must give one sign pair per edge")
        seen = set()
        inc: list[list[int]] = [[] for _ in range(self.n + 1)]
        for i, ((u, v), (a, b)) in enumerate(zip(edges, tau), start=1):
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge {i}: endpoint out of range")
            if u == v:
                raise GraphError(f"edge {i}: loops are not allowed")
            if a not in (1, -1) or b not in (1, -1):
                raise GraphError(f"edge {i}: sign not +1/-1")
            key = (min(u, v), max(u, v))
            if self.simple and key in seen:
                raise GraphError(f"edge {i}: parallel edge in a simple graph")
            seen.add(key)
            inc[u].append(i)
            inc[v].append(i)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "_inc", tuple(tuple(x) for x in inc))

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def endpoints(self, e: int) -> tuple[int, int]:
        if not 1 <= e <= self.m:
            raise GraphError(f"unknown edge id {e}")
        return self.edges[e - 1]

    def other(self, e: int, v: int) -> int:
        u, w = self.endpoints(e)
        if v == u:
            return w
        if v == w:
            return u
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def sign(self, e: int, v: int) -> int:
        u, w = self.endpoints(e)
        if v == u:
            return self.tau[e - 1][0]
        if v == w:
            return self.tau[e - 1][1]
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def incident(self, v: int) -> tuple[int, ...]:
        return self._inc[v]

    def degree(self, v: int) -> int:
        return len(self._inc[v])

    def neighbors(self, v: int) -> list[int]:
        return sorted({self.other(e, v) for e in self._inc[v]})

    def edge_between(self, u: int, v: int) -> int | None:
        for e in self._inc[u]:
            if self.other(e, u) == v:
                return e
        return None

    def with_tau(self, tau: Sequence[tuple[int, int]]) -> "SignedGraph":
        return SignedGraph(self.n, self.edges, tuple(tau), self.simple)

    def constant_sign(self) -> "SignedGraph":
        return self.with_tau([(1, 1)] * self.m)

    def orientation_sign(self) -> "SignedGraph":
        """Digraph sign: each edge points from its first endpoint to its second."""
        return self.with_tau([(1, -1)] * self.m)


def from_edges(n: int, edges: Iterable[tuple[int, int]], tau=None, simple: bool = True) -> SignedGraph:
    """Build a graph from an edge list; ``tau=None`` means the constant sign."""
    edges = tuple(edges)
    if tau is None:
        tau = [(1, 1)] * len(edges)
    return SignedGraph(n, edges, tuple(tau), simple)


# -- .sg format -------------------------------------------------------------

_SIGN_TOKENS = {"+1": 1, "+": 1, "1": 1, "-1": -1, "-": -1}


def parse_signed_graph(text: str) -> SignedGraph:
    """Parse the line-oriented ``.sg`` format.

    Edge lines may omit both sign tokens when a ``sign constant`` or
    ``sign orient`` directive precedes them (orient: first endpoint is the tail).
    """
    n = None
    default = None
    rows: dict[int, tuple[int, int, tuple[int, int]]] = {}
    header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        if not header:
            if kind != "sg" or len(tok) != 2 or tok[1] != "1":
                raise ParseError("expected header 'sg 1'", lineno)
            header = True
            continue
        if kind == "n":
            if n is not None or len(tok) != 2:
                raise ParseError("malformed or repeated 'n' line", lineno)
            try:
                n = int(tok[1])
            except ValueError:
                raise ParseError(f"bad vertex count {tok[1]!r}", lineno) from None
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
        elif kind == "sign":
            if len(tok) != 2 or tok[1] not in ("constant", "orient"):
                raise ParseError("sign directive must be 'constant' or 'orient'", lineno)
            default = tok[1]
        elif kind == "e":
            if n is None:
                raise ParseError("edge before 'n' line", lineno)
            if len(tok) not in (4, 6):
                raise ParseError("edge line needs 'e id u v [tau_u tau_v]'", lineno)
            try:
                eid, u, v = int(tok[1]), int(tok[2]), int(tok[3])
            except ValueError:
                raise ParseError("non-integer edge field", lineno) from None
            if len(tok) == 6:
                try:
                    sg = (_SIGN_TOKENS[tok[4]], _SIGN_TOKENS[tok[5]])
                except KeyError:
                    raise ParseError("sign not +1/-1", lineno) from None
            elif default == "constant":
                sg = (1, 1)
            elif default == "orient":
                sg = (1, -1)
            else:
                raise ParseError("missing signs and no 'sign' directive", lineno)
            if eid in rows:
                raise ParseError(f"duplicate edge id {eid}", lineno)
            if u == v:
                raise ParseError(f"loop edge {eid}", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge {eid}: endpoint out of range", lineno)
            rows[eid] = (u, v, sg)
        else:
            raise ParseError(f"unknown line type {kind!r}", lineno)
    if not header:
        raise ParseError("empty input", None)
    if n is None:
        raise ParseError("missing 'n' line", None)
    if sorted(rows) != list(range(1, len(rows) + 1)):
        raise ParseError("edge ids must be exactly 1..m", None)
    edges = [rows[i][:2] for i in range(1, len(rows) + 1)]
    tau = [rows[i][2] for i in range(1, len(rows) + 1)]
    try:
        return SignedGraph(n, tuple(edges), tuple(tau))
    except GraphError as exc:
        raise ParseError(str(exc), None) from None


def format_signed_graph(g: SignedGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines += ["sg 1", f"n {g.n}"]
    fmt = {1: "+1", -1: "-1"}
    for i, ((u, v), (a, b)) in enumerate(zip(g.edges, g.tau), start=1):
        lines.append(f"e {i} {u} {v} {fmt[a]} {fmt[b]}")
    return "\n".join(lines) + "\n"


def apply_orientation(g: SignedGraph, tails: dict[int, int]) -> SignedGraph:
    """Orientation sign; ``tails`` overrides the tail of listed edges."""
    tau = []
    for e in range(1, g.m + 1):
        u, v = g.endpoints(e)
        tail = tails.get(e, u)
        if tail not in (u, v):
            raise GraphError(f"vertex {tail} is not an endpoint of edge {e}")
        tau.append((1, -1) if tail == u else (-1, 1))
    return g.with_tau(tau)


# -- matrix and structure ---------------------------------------------------

def incidence_matrix(g: SignedGraph) -> list[list[int]]:
    rows = [[0] * g.m for _ in range(g.n)]
    for j, ((u, v), (a, b)) in enumerate(zip(g.edges, g.tau)):
        rows[u - 1][j] = a
        rows[v - 1][j] = b
    return rows


def components(g: SignedGraph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Connected components (sorted vertex lists) of ``g`` minus ``removed``."""
    gone = set(removed)
    seen = set(gone)
    out = []
    for s in g.vertices():
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e in g.incident(x):
                y = g.other(e, x)
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: SignedGraph) -> bool:
    return len(components(g)) <= 1


def induced_subgraph(g: SignedGraph, vertices: Iterable[int]):
    """Induced subgraph with dense relabeling.

    Returns ``(sub, vmap, emap)``; ``vmap``/``emap`` map new ids to old ids.
    """
    vs = sorted(set(vertices))
    index = {v: i for i, v in enumerate(vs, start=1)}
    edges, tau, emap = [], [], []
    for e in range(1, g.m + 1):
        u, v = g.endpoints(e)
        if u in index and v in index:
            edges.append((index[u], index[v]))
            tau.append(g.tau[e - 1])
            emap.append(e)
    sub = SignedGraph(len(vs), tuple(edges), tuple(tau), g.simple)
    return sub, tuple(vs), tuple(emap)


def component_subgraphs(g: SignedGraph):
    return [induced_subgraph(g, comp) for comp in components(g)]


def _is_bipartite_on(g: SignedGraph, verts: Sequence[int], gone: set[int]) -> bool:
    color = {verts[0]: 0}
    queue = deque([verts[0]])
    while queue:
        x = queue.popleft()
        for e in g.incident(x):
            y = g.other(e, x)
            if y in gone:
                continue
            if y not in color:
                color[y] = 1 - color[x]
                queue.append(y)
            elif color[y] == color[x]:
                return False
    return True


def bipartite_count(g: SignedGraph, removed: Iterable[int] = ()) -> int:
    """b(G - removed): number of bipartite components, isolated vertices included."""
    gone = set(removed)
    return sum(1 for comp in components(g, gone) if _is_bipartite_on(g, comp, gone))


def is_bipartite(g: SignedGraph) -> bool:
    return all(_is_bipartite_on(g, comp, set()) for comp in components(g))


def multigraph_blocks(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    """Biconnected components of a loopless multigraph, as lists of 0-based edge indices.

    Parallel edges are distinct; two parallel copies form a 2-vertex block.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for i, (u, v) in enumerate(edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    disc = [0] * (n + 1)
    low = [0] * (n + 1)
    timer = 1
    blocks: list[list[int]] = []
    estack: list[int] = []
    for root in range(1, n + 1):
        if disc[root] or not adj[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frames: (vertex, parent edge index, iterator position)
        stack = [(root, -1, 0)]
        while stack:
            v, pe, pos = stack[-1]
            if pos < len(adj[v]):
                stack[-1] = (v, pe, pos + 1)
                w, ei = adj[v][pos]
                if ei == pe:
                    continue
                if not disc[w]:
                    estack.append(ei)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, ei, 0))
                elif disc[w] < disc[v]:
                    estack.append(ei)
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] >= disc[p]:
                        block = []
                        while True:
                            ei = estack.pop()
                            block.append(ei)
                            if ei == pe:
                                break
                        blocks.append(sorted(block))
    return blocks


@dataclass(frozen=True)
class BlockTree:
    blocks: tuple[frozenset, ...]
    block_edges: tuple[tuple[int, ...], ...]
    cut_vertices: frozenset
    is_edge_block: tuple[bool, ...]
    is_bipartite: tuple[bool, ...]

    def nonedge_blocks(self) -> list[int]:
        return [i for i, flag in enumerate(self.is_edge_block) if not flag]

    def blocks_at(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def path(self, i: int, j: int) -> list:
        """Alternating block/cut-vertex path between blocks ``i`` and ``j``.

        Blocks appear as ``("B", index)`` and cut vertices as ``("v", id)``.
        Returns ``[]`` if the blocks lie in different components.
        """
        start, goal = ("B", i), ("B", j)
        prev = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            if node == goal:
                break
            if node[0] == "B":
                nxt = [("v", c) for c in sorted(self.blocks[node[1]] & self.cut_vertices)]
            else:
                nxt = [("B", k) for k in self.blocks_at(node[1])]
            for x in nxt:
                if x not in prev:
                    prev[x] = node
                    queue.append(x)
        if goal not in prev:
            return []
        out = [goal]
        while out[-1] != start:
            out.append(prev[out[-1]])
        return out[::-1]


def block_decomposition(g: SignedGraph) -> BlockTree:
    raw = multigraph_blocks(g.n, g.edges)
    blocks, bedges, edge_flags, bip = [], [], [], []
    count: dict[int, int] = {}
    for blk in sorted(raw, key=lambda b: b[0]):
        eids = tuple(i + 1 for i in blk)
        verts = frozenset(v for e in eids for v in g.endpoints(e))
        for v in verts:
            count[v] = count.get(v, 0) + 1
        sub, _, _ = induced_subgraph(g, verts)
        blocks.append(verts)
        bedges.append(eids)
        edge_flags.append(len(eids) == 1)
        bip.append(is_bipartite(sub))
    cuts = frozenset(v for v, c in count.items() if c > 1)
    return BlockTree(tuple(blocks), tuple(bedges), cuts, tuple(edge_flags), tuple(bip))


def is_two_connected(g: SignedGraph) -> bool:
    if g.n < 3 or not is_connected(g):
        return False
    return len(multigraph_blocks(g.n, g.edges)) == 1


# -- derived edge sign and balance ------------------------------------------

def derived_edge_sign(g: SignedGraph, e: int) -> int:
    g.endpoints(e)  # validates the id
    a, b = g.tau[e - 1]
    return -a * b


def edge_signs(g: SignedGraph) -> tuple[int, ...]:
    return tuple(-a * b for a, b in g.tau)


def _potentials(g: SignedGraph):
    """BFS potentials p with p(y) = p(x) * sigma(xy) along a spanning forest."""
    sigma = edge_signs(g)
    pot: dict[int, int] = {}
    tree_edges = set()
    for s in g.vertices():
        if s in pot:
            continue
        pot[s] = 1
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e in g.incident(x):
                y = g.other(e, x)
                if y not in pot:
                    pot[y] = pot[x] * sigma[e - 1]
                    tree_edges.add(e)
                    queue.append(y)
    return pot, tree_edges, sigma


def has_odd_closed_walk(g: SignedGraph, vertices: Iterable[int] | None = None) -> bool:
    """True iff some closed walk (within ``vertices``' component, if given) is odd."""
    pot, _, sigma = _potentials(g)
    keep = None if vertices is None else set(vertices)
    for e in range(1, g.m + 1):
        u, v = g.endpoints(e)
        if keep is not None and u not in keep:
            continue
        if pot[u] * pot[v] != sigma[e - 1]:
            return True
    return False


def simple_cycles(g: SignedGraph) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All cycles as ``(vertices, edges)`` with the cycle closing from last vertex to first.

    Each cycle is reported once: it starts at its least vertex and its second
    vertex is less than its last.  Exponential; meant for small graphs.
    """
    out = []
    for s in g.vertices():
        # DFS over simple paths from s using vertices > s
        stack = [(s, [s], [])]
        while stack:
            x, path, epath = stack.pop()
            for e in g.incident(x):
                y = g.other(e, x)
                if y == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append((tuple(path), tuple(epath + [e])))
                elif y > s and y not in path:
                    stack.append((y, path + [y], epath + [e]))
    out.sort()
    return out


def has_odd_closed_walk_by_cycles(g: SignedGraph) -> bool:
    """Oracle for :func:`has_odd_closed_walk`: enumerate cycles and multiply edge signs."""
    sigma = edge_signs(g)
    for _, es in simple_cycles(g):
        prod = 1
        for e in es:
            prod *= sigma[e - 1]
        if prod == -1:
            return True
    return False


def bfs_tree_edges(g: SignedGraph) -> set[int]:
    return _potentials(g)[1]


def sign_class_representatives(g: SignedGraph) -> list[SignedGraph]:
    """One sign per derived-sign class: sigma = +1 on a BFS tree, free on co-tree edges."""
    if not is_connected(g):
        raise GraphError("sign classes are enumerated per connected component")
    tree = bfs_tree_edges(g)
    cotree = [e for e in range(1, g.m + 1) if e not in tree]
    reps = []
    for bits in itertools.product((1, -1), repeat=len(cotree)):
        sigma = [1] * g.m
        for e, s in zip(cotree, bits):
            sigma[e - 1] = s
        reps.append(g.with_tau([(1, -s) for s in sigma]))
    return reps


def all_signs(g: SignedGraph):
    """Every sign of ``g`` (4^m of them)."""
    for bits in itertools.product((1, -1), repeat=2 * g.m):
        yield g.with_tau([(bits[2 * i], bits[2 * i + 1]) for i in range(g.m)])


# -- ears ---------------------------------------------------------------------

def check_ear(g: SignedGraph, path: Sequence[int]) -> list[int]:
    """Validate an ear ``v0 .. vt`` and return its edge ids ``e1 .. et``."""
    path = list(path)
    t = len(path) - 1
    if t < 2:
        raise GraphError("an ear has length at least two")
    if len(set(path)) != len(path):
        raise GraphError("an ear is a path (no repeated vertices)")
    edges = []
    for a, b in zip(path, path[1:]):
        e = g.edge_between(a, b)
        if e is None:
            raise GraphError(f"{a}-{b} is not an edge")
        edges.append(e)
    for v in path[1:-1]:
        if g.degree(v) != 2:
            raise GraphError(f"internal vertex {v} has degree {g.degree(v)}, not 2")
    if g.edge_between(path[0], path[-1]) is not None:
        raise GraphError("ear ends are adjacent")
    return edges


@dataclass(frozen=True)
class EarContraction:
    graph: SignedGraph
    vertex_map: tuple[int, ...]   # new vertex id -> old vertex id (index 0 unused)
    edge_map: tuple[int, ...]     # new edge id -> old edge id, 0 for the fresh edge
    new_edge: int


def contract_ear(g: SignedGraph, path: Sequence[int]) -> EarContraction:
    """G/p: drop the ear's internal vertices and join its ends by a fresh edge.

    The fresh edge is the last edge id and carries the placeholder sign (+1, +1);
    use :func:`lift_sign_contraction` / :func:`project_sign_subdivision` for signs.
    """
    ear_edges = set(check_ear(g, path))
    internal = set(path[1:-1])
    keep = [v for v in g.vertices() if v not in internal]
    vindex = {v: i for i, v in enumerate(keep, start=1)}
    edges, tau, emap = [], [], []
    for e in range(1, g.m + 1):
        if e in ear_edges:
            continue
        u, v = g.endpoints(e)
        edges.append((vindex[u], vindex[v]))
        tau.append(g.tau[e - 1])
        emap.append(e)
    edges.append((vindex[path[0]], vindex[path[-1]]))
    tau.append((1, 1))
    emap.append(0)
    h = SignedGraph(len(keep), tuple(edges), tuple(tau), g.simple)
    return EarContraction(h, (0, *keep), (0, *emap), len(edges))


def lift_sign_contraction(g: SignedGraph, path: Sequence[int], star: SignedGraph) -> SignedGraph:
    """Sign of G from a sign of G/p; walk parities correspond through the ear."""
    con = contract_ear(g, path)
    if star.n != con.graph.n or star.edges != con.graph.edges:
        raise GraphError("sign does not belong to the contracted graph")
    ear_edges = check_ear(g, path)
    old_to_new = {old: new for new, old in enumerate(con.edge_map) if new and old}
    estar = con.new_edge
    v0, vt = path[0], path[-1]
    s0 = star.sign(estar, con.vertex_map.index(v0))
    st = star.sign(estar, con.vertex_map.index(vt))
    signs: dict[tuple[int, int], int] = {}
    t = len(path) - 1
    for i, e in enumerate(ear_edges):
        a, b = path[i], path[i + 1]   # edge e = v_i v_{i+1}
        signs[(e, a)] = s0 if i == 0 else 1
        signs[(e, b)] = st if i == t - 1 else -1
    tau = []
    for e in range(1, g.m + 1):
        u, v = g.endpoints(e)
        if e in old_to_new:
            tau.append(star.tau[old_to_new[e] - 1])
        else:
            tau.append((signs[(e, u)], signs[(e, v)]))
    return g.with_tau(tau)


def _path_unbalanced(g: SignedGraph, path: Sequence[int], edges: Sequence[int]) -> int:
    count = 0
    for i in range(1, len(path) - 1):
        if g.sign(edges[i - 1], path[i]) * g.sign(edges[i], path[i]) == 1:
            count += 1
    return count


def project_sign_subdivision(g: SignedGraph, q: Sequence[int]) -> SignedGraph:
    """Sign of G/q from the sign of G, where q is an ear minus its last vertex.

    ``q = v0 .. v_{t-1}`` extends uniquely to the ear ``p = v0 .. vt`` (t >= 3)
    because ``v_{t-1}`` has degree two.
    """
    q = list(q)
    if len(q) < 3:
        raise GraphError("q must have length at least two")
    last = q[-1]
    if g.degree(last) != 2:
        raise GraphError("last vertex of q must have degree two")
    nxt = [w for w in g.neighbors(last) if w != q[-2]]
    if len(nxt) != 1:
        raise GraphError("cannot extend q to an ear")
    p = q + nxt
    if p[-1] in p[:-1]:
        raise GraphError("q does not extend to an ear")
    p_edges = check_ear(g, p)
    check_ear(g, q)
    k = _path_unbalanced(g, p, p_edges) + 1
    con = contract_ear(g, q)
    h = con.graph
    inv = con.vertex_map
    estar = con.new_edge
    last_edge = p_edges[-1]
    tau = list(h.tau)
    for new in range(1, h.m + 1):
        old = con.edge_map[new]
        u, v = h.endpoints(new)
        ou, ov = inv[u], inv[v]
        if new == estar:
            # endpoints are (v0, v_{t-1})
            tau[new - 1] = (g.sign(p_edges[0], p[0]), 1)
        elif old == last_edge:
            def s(x):
                return (-1) ** k if x == last else g.sign(old, x)
            tau[new - 1] = (s(ou), s(ov))
        else:
            tau[new - 1] = g.tau[old - 1]
    return h.with_tau(tau)


def ears(g: SignedGraph) -> list[list[int]]:
    """All ears of ``g``, each reported once (from its smaller end)."""
    out = []
    for v0 in g.vertices():
        for e in g.incident(v0):
            path = [v0, g.other(e, v0)]
            while True:
                x = path[-1]
                if x == v0:
                    break
                if len(path) >= 3 and v0 < x and g.edge_between(v0, x) is None:
                    out.append(list(path))
                if g.degree(x) != 2:
                    break
                y = [g.other(f, x) for f in g.incident(x) if g.other(f, x) != path[-2]]
                if not y or y[0] in path[1:]:
                    break
                path.append(y[0])
    return out


# -- sign classes for ideal-level questions ------------------------------------------
#
# Negating a row of A leaves ker(A) unchanged, so the toric ideal depends only on
# the partition of the edges at each vertex by tau(., v).  Negating a column does
# change the ideal (K4 has two signs with equal edge signs sigma and different CI
# verdicts), so sigma classes are too coarse for CI sweeps.  A balanced term at a
# degree-2 vertex can be suppressed (x_g -> x_e*x_f), so along a chain of degree-2
# vertices only the number of unbalanced terms matters.


def degree_two_chains(g: SignedGraph) -> list[tuple[int, ...]]:
    """Maximal runs of degree-2 vertices, in path order.

    A run that closes up (a cycle component) starts at its least vertex and
    heads towards the smaller neighbour; an open run starts at the end whose
    outer neighbour has the smaller (vertex id, edge id).
    """
    seen = set()
    chains = []
    for s in g.vertices():
        if g.degree(s) != 2 or s in seen:
            continue
        # extend both ways
        run = [s]
        seen.add(s)
        ends = []
        for e0 in g.incident(s):
            part = []
            prev_e, cur = e0, g.other(e0, s)
            while g.degree(cur) == 2 and cur != s:
                part.append(cur)
                seen.add(cur)
                prev_e = next(f for f in g.incident(cur) if f != prev_e)
                cur = g.other(prev_e, cur)
            ends.append((part, cur, prev_e))
            if cur == s:
                break
        if len(ends) == 1:   # closed run
            cyc = [s] + ends[0][0]
            k = cyc.index(min(cyc))
            cyc = cyc[k:] + cyc[:k]
            if len(cyc) > 2 and cyc[-1] < cyc[1]:
                cyc = [cyc[0]] + cyc[1:][::-1]
            chains.append(tuple(cyc))
            continue
        (p1, x1, f1), (p2, x2, f2) = ends
        run = p1[::-1] + [s] + p2
        if (x2, f2) < (x1, f1):
            run = run[::-1]
        chains.append(tuple(run))
    return sorted(chains)




def incidence_class_key(g: SignedGraph) -> tuple:
    """Key of the sign modulo row negations, with degree-2 runs reduced to unbalanced counts."""
    chains = degree_two_chains(g)
    in_chain = {v for c in chains for v in c}
    key = []
    for v in g.vertices():
        if v in in_chain or g.degree(v) == 0:
            continue
        inc = sorted(g.incident(v))
        t0 = g.sign(inc[0], v)
        key.append((v, tuple(g.sign(e, v) * t0 for e in inc[1:])))
    counts = []
    for c in chains:
        k = 0
        for v in c:
            e, f = g.incident(v)
            if g.sign(e, v) == g.sign(f, v):
                k += 1
        counts.append((c, k))
    return tuple(key), tuple(counts)


def sign_from_class_key(g: SignedGraph, key: tuple) -> SignedGraph:
    """Representative sign for a key of :func:`incidence_class_key`."""
    vert_patterns, counts = key
    sign: dict[tuple[int, int], int] = {}
    for v, pattern in vert_patterns:
        inc = sorted(g.incident(v))
        sign[(inc[0], v)] = 1
        for e, s in zip(inc[1:], pattern):
            sign[(e, v)] = s
    for chain, k in counts:
        for i, v in enumerate(chain):
            e, f = sorted(g.incident(v))
            sign[(e, v)] = 1
            sign[(f, v)] = 1 if i < k else -1
    tau = []
    for e in range(1, g.m + 1):
        u, v = g.endpoints(e)
        tau.append((sign[(e, u)], sign[(e, v)]))
    return g.with_tau(tau)


def incidence_class_count(g: SignedGraph) -> int:
    chains = degree_two_chains(g)
    in_chain = {v for c in chains for v in c}
    total = 1
    for v in g.vertices():
        if v not in in_chain and g.degree(v) > 0:
            total *= 2 ** (g.degree(v) - 1)
    for c in chains:
        total *= len(c) + 1
    return total


def ci_sign_representatives(g: SignedGraph):
    """One sign per class of :func:`incidence_class_key` (generator, canonical order)."""
    chains = degree_two_chains(g)
    in_chain = {v for c in chains for v in c}
    verts = [v for v in g.vertices() if v not in in_chain and g.degree(v) > 0]
    pattern_sets = [itertools.product((1, -1), repeat=g.degree(v) - 1) for v in verts]
    for patterns in itertools.product(*pattern_sets):
        vp = tuple(zip(verts, patterns))
        for ks in itertools.product(*[range(len(c) + 1) for c in chains]):
            yield sign_from_class_key(g, (vp, tuple(zip(chains, ks))))
