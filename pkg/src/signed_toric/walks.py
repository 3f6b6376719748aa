"""Walks in signed graphs: parity, balanced sections, binomials and primitivity.

A walk stores its vertex terms ``v1 .. v(t+1)`` and edge terms ``e1 .. et``.
For a closed walk the vertex term at index 0 is the wrap-around term, whose
neighbouring edge terms are ``et`` and ``e1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .binomial import Binomial
from .graph import GraphError, SignedGraph, multigraph_blocks


class WalkError(GraphError):
    pass


@dataclass(frozen=True)
class Walk:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(self.vertices) != len(self.edges) + 1:
            raise WalkError("a walk has one more vertex term than edge terms")

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def tokens(self) -> str:
        out = [f"v{self.vertices[0]}"]
        for e, v in zip(self.edges, self.vertices[1:]):
            out += [f"e{e}", f"v{v}"]
        return " ".join(out)

    def __str__(self) -> str:
        return self.tokens()

    @classmethod
    def parse(cls, text: str) -> "Walk":
        """Parse ``v1 e1 v2 ... `` tokens (the ``v``/``e`` prefixes are optional)."""
        toks = text.split()
        if not toks or len(toks) % 2 == 0:
            raise WalkError("walk must alternate vertex and edge terms, starting and ending with a vertex")
        try:
            vals = [int(t.lstrip("veVE")) for t in toks]
        except ValueError:
            raise WalkError(f"bad walk token in {text!r}") from None
        return cls(tuple(vals[0::2]), tuple(vals[1::2]))

    @classmethod
    def from_vertices(cls, g: SignedGraph, verts: Sequence[int]) -> "Walk":
        """Walk through consecutive adjacent vertices of a simple graph."""
        edges = []
        for a, b in zip(verts, verts[1:]):
            e = g.edge_between(a, b)
            if e is None:
                raise WalkError(f"v{a} and v{b} are not adjacent")
            edges.append(e)
        return cls(tuple(verts), tuple(edges))


def validate_walk(w: Walk, g: SignedGraph) -> None:
    for i, e in enumerate(w.edges):
        if not 1 <= e <= g.m:
            raise WalkError(f"unknown edge e{e}")
        if set(g.endpoints(e)) != {w.vertices[i], w.vertices[i + 1]}:
            raise WalkError(f"e{e} does not join v{w.vertices[i]} and v{w.vertices[i + 1]}")


# -- walk algebra -------------------------------------------------------------

def reverse(w: Walk) -> Walk:
    return Walk(w.vertices[::-1], w.edges[::-1])


def concat(w1: Walk, w2: Walk) -> Walk:
    if w1.end != w2.start:
        raise WalkError("walks do not meet: end of the first is not the start of the second")
    return Walk(w1.vertices + w2.vertices[1:], w1.edges + w2.edges)


def rotate(w: Walk, k: int) -> Walk:
    """Closed walk started at its vertex term ``k``."""
    if not w.closed:
        raise WalkError("only closed walks can be rotated")
    t = w.length
    if t == 0:
        return w
    k %= t
    vs = w.vertices[:-1]
    vs = vs[k:] + vs[:k]
    return Walk(vs + (vs[0],), w.edges[k:] + w.edges[:k])


def section(w: Walk, i: int, j: int) -> Walk:
    """Section from vertex term ``i`` to vertex term ``j`` (``i <= j``)."""
    return Walk(w.vertices[i:j + 1], w.edges[i:j])


def _stream(w: Walk) -> tuple[int, ...]:
    out = []
    for v, e in zip(w.vertices, w.edges):
        out += [v, e]
    out.append(w.vertices[-1])
    return tuple(out)


def canonical_form(w: Walk) -> Walk:
    """Least (vertex, edge) stream among rotations and both directions."""
    if not w.closed or w.length == 0:
        r = reverse(w)
        return min(w, r, key=_stream)
    best = None
    best_key = None
    for base in (w, reverse(w)):
        for k in range(w.length):
            cand = rotate(base, k)
            key = _stream(cand)
            if best_key is None or key < best_key:
                best, best_key = cand, key
    return best


# -- parity -------------------------------------------------------------------

def unbalanced_positions(w: Walk, g: SignedGraph) -> list[int]:
    """Indices of unbalanced vertex terms (index 0 is the wrap term of a closed walk)."""
    validate_walk(w, g)
    t = w.length
    out = []
    if w.closed and t > 0:
        idx = range(t)
    else:
        idx = range(1, t)
    for i in idx:
        v = w.vertices[i]
        if g.sign(w.edges[i - 1], v) * g.sign(w.edges[i], v) == 1:
            out.append(i)
    return out


def mu(w: Walk, g: SignedGraph) -> int:
    return -1 if len(unbalanced_positions(w, g)) % 2 else 1


def _mu_closed_fast(g: SignedGraph, vs: Sequence[int], es: Sequence[int]) -> int:
    # vs has the same length as es: vertex term i sits between es[i-1] and es[i]
    tau = g.tau
    edges = g.edges
    k = 0
    prev = es[-1]
    for v, e in zip(vs, es):
        a = tau[prev - 1][0] if edges[prev - 1][0] == v else tau[prev - 1][1]
        b = tau[e - 1][0] if edges[e - 1][0] == v else tau[e - 1][1]
        if a == b:
            k += 1
        prev = e
    return -1 if k % 2 else 1


# -- balanced sections ----------------------------------------------------------

@dataclass(frozen=True)
class BalancedDecomposition:
    sections: tuple[Walk, ...]
    anchor: int | None      # vertex term of the original walk where section 0 starts

    @property
    def classes(self) -> tuple[int, ...]:
        """Parity class per section: +1 for even index, -1 for odd."""
        return tuple(1 if i % 2 == 0 else -1 for i in range(len(self.sections)))

    def __len__(self):
        return len(self.sections)


def balanced_decomposition(w: Walk, g: SignedGraph) -> BalancedDecomposition:
    """Cut a closed walk at every unbalanced vertex term.

    Section 0 starts at the unbalanced term with the least (vertex id, index).
    Odd walks are accepted; they yield an odd number of sections.
    """
    if not w.closed:
        raise WalkError("balanced decomposition needs a closed walk")
    unb = unbalanced_positions(w, g)
    if not unb:
        return BalancedDecomposition((w,), None)
    anchor = min(unb, key=lambda i: (w.vertices[i], i))
    t = w.length
    rw = rotate(w, anchor)
    cuts = sorted((i - anchor) % t for i in unb) + [t]
    sections = tuple(section(rw, a, b) for a, b in zip(cuts, cuts[1:]))
    return BalancedDecomposition(sections, anchor)


def binomial_of_walk(w: Walk, g: SignedGraph) -> Binomial:
    """B_w in raw form (common factors are kept)."""
    if not w.closed:
        raise WalkError("binomials are defined for closed walks")
    dec = balanced_decomposition(w, g)
    if len(dec) % 2 and dec.anchor is not None:
        raise WalkError("walk is odd")
    plus = [0] * g.m
    minus = [0] * g.m
    if dec.anchor is None:
        for e in w.edges:
            plus[e - 1] += 1
    else:
        for i, sec in enumerate(dec.sections):
            side = plus if i % 2 == 0 else minus
            for e in sec.edges:
                side[e - 1] += 1
    return Binomial(tuple(plus), tuple(minus), note=f"walk {w.tokens()}")


def walk_exponent_vector(w: Walk, g: SignedGraph) -> tuple[int, ...]:
    b = binomial_of_walk(w, g)
    return b.difference()


# -- [w] and primitivity --------------------------------------------------------

def walk_multigraph(w: Walk, g: SignedGraph | None = None):
    """[w]: the vertex set of ``w`` with one edge copy per edge term.

    Returns ``(multigraph, vertex_map, edge_map)`` where the maps send new ids
    to the original vertex/edge ids.  Signs are copied from ``g`` when given.
    """
    vs = sorted(set(w.vertices))
    index = {v: i for i, v in enumerate(vs, start=1)}
    edges, tau = [], []
    for i, e in enumerate(w.edges):
        a, b = w.vertices[i], w.vertices[i + 1]
        if g is None:
            edges.append((index[a], index[b]))
            tau.append((1, 1))
        else:
            u, v = g.endpoints(e)
            edges.append((index[u], index[v]))
            tau.append(g.tau[e - 1])
    h = SignedGraph(len(vs), tuple(edges), tuple(tau), simple=False)
    return h, tuple(vs), tuple(w.edges)


def cactus_condition(w: Walk) -> bool:
    """Every block of [w] is a cycle (2-cycles allowed) and no vertex lies in three blocks."""
    vs = sorted(set(w.vertices))
    index = {v: i for i, v in enumerate(vs, start=1)}
    edges = [(index[w.vertices[i]], index[w.vertices[i + 1]]) for i in range(w.length)]
    blocks = multigraph_blocks(len(vs), edges)
    count = [0] * (len(vs) + 1)
    for blk in blocks:
        verts = set()
        for i in blk:
            verts.update(edges[i])
        if len(blk) < 2 or len(verts) != len(blk):
            return False
        for v in verts:
            count[v] += 1
            if count[v] > 2:
                return False
    return True


def split_condition(w: Walk, g: SignedGraph) -> bool:
    """Every split of w at a repeated vertex term yields two odd closed walks."""
    t = w.length
    vs = w.vertices[:-1]
    es = w.edges
    for i in range(t):
        for j in range(i + 1, t):
            if vs[i] != vs[j]:
                continue
            if _mu_closed_fast(g, vs[i:j], es[i:j]) != -1:
                return False
            if _mu_closed_fast(g, vs[j:] + vs[:i], es[j:] + es[:i]) != -1:
                return False
    return True


def is_primitive_structural(w: Walk, g: SignedGraph, _cactus: bool | None = None) -> bool:
    """Primitivity of B_w read off the shape of [w] and the parity of its splits.

    ``_cactus`` lets callers pass a cached result of :func:`cactus_condition`,
    which does not depend on the sign.
    """
    if not w.closed:
        raise WalkError("primitivity is defined for closed walks")
    if mu(w, g) != 1:
        raise WalkError("walk is odd")
    if binomial_of_walk(w, g).is_zero():
        return False
    ok = cactus_condition(w) if _cactus is None else _cactus
    return ok and split_condition(w, g)


class PrimitiveWalk(NamedTuple):
    walk: Walk
    binomial: Binomial


def enumerate_primitive_walks(g: SignedGraph, max_len: int | None = None) -> list[PrimitiveWalk]:
    """All primitive walks up to rotation and reversal, with at most ``max_len`` edge terms.

    The default cap is 2m.  Each vertex and edge occurs at most twice in a
    primitive walk, and a partial walk is abandoned as soon as it closes an
    even sub-walk at a repeated vertex, since that split can never become odd.
    """
    if max_len is None:
        max_len = 2 * g.m
    found: dict[tuple, Walk] = {}
    ecount = [0] * (g.m + 1)
    vcount = [0] * (g.n + 1)
    path_v: list[int] = []
    path_e: list[int] = []
    last_seen: dict[int, int] = {}

    def record():
        w = Walk(tuple(path_v), tuple(path_e))
        if _mu_closed_fast(g, path_v[:-1], path_e) != 1:
            return
        c = canonical_form(w)
        key = _stream(c)
        if key in found:
            return
        if is_primitive_structural(c, g):
            found[key] = c

    def extend(s: int):
        x = path_v[-1]
        if len(path_e) >= max_len:
            return
        for e in g.incident(x):
            if ecount[e] >= 2:
                continue
            y = g.other(e, x)
            if y < s:
                continue
            if y == s:
                path_v.append(y)
                path_e.append(e)
                ecount[e] += 1
                record()
                # continue through s only if the closed part is odd
                if vcount[s] < 2 and _mu_closed_fast(g, path_v[:-1], path_e) == -1:
                    vcount[s] += 1
                    extend(s)
                    vcount[s] -= 1
                ecount[e] -= 1
                path_v.pop()
                path_e.pop()
                continue
            if vcount[y] >= 2:
                continue
            if vcount[y] == 1:
                i = last_seen[y]
                sub_v = path_v[i:]
                sub_e = path_e[i:] + [e]
                if _mu_closed_fast(g, sub_v, sub_e) != -1:
                    continue
            prev = last_seen.get(y)
            last_seen[y] = len(path_v)
            path_v.append(y)
            path_e.append(e)
            ecount[e] += 1
            vcount[y] += 1
            extend(s)
            vcount[y] -= 1
            ecount[e] -= 1
            path_v.pop()
            path_e.pop()
            if prev is None:
                del last_seen[y]
            else:
                last_seen[y] = prev

    for s in g.vertices():
        path_v[:] = [s]
        path_e[:] = []
        last_seen.clear()
        last_seen[s] = 0
        vcount[s] = 1
        extend(s)
        vcount[s] = 0
    out = []
    for key in sorted(found):
        w = found[key]
        out.append(PrimitiveWalk(w, binomial_of_walk(w, g)))
    return out


def enumerate_closed_walks(g: SignedGraph, max_len: int, even_only: bool = False) -> list[Walk]:
    """Every closed walk of length 1..max_len in canonical form (no duplicates)."""
    found: dict[tuple, Walk] = {}
    for s in g.vertices():
        stack = [((s,), ())]
        while stack:
            vs, es = stack.pop()
            x = vs[-1]
            for e in g.incident(x):
                y = g.other(e, x)
                if y < s:
                    continue
                nv, ne = vs + (y,), es + (e,)
                if y == s:
                    if not even_only or _mu_closed_fast(g, nv[:-1], ne) == 1:
                        c = canonical_form(Walk(nv, ne))
                        found.setdefault(_stream(c), c)
                if len(ne) < max_len:
                    stack.append((nv, ne))
    return [found[k] for k in sorted(found)]


def extract_odd_cycle(w: Walk, g: SignedGraph) -> Walk:
    """A cycle of g with odd parity inside [w], for an odd closed walk w."""
    if not w.closed:
        raise WalkError("need a closed walk")
    if mu(w, g) != -1:
        raise WalkError("walk is even")
    while True:
        t = w.length
        vs = w.vertices[:-1]
        pair = None
        for j in range(t):
            for i in range(j):
                if vs[i] == vs[j]:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            return w
        i, j = pair
        first = Walk(vs[i:j] + (vs[i],), w.edges[i:j])
        rest = Walk(vs[j:] + vs[:i] + (vs[j],), w.edges[j:] + w.edges[:i])
        w = first if mu(first, g) == -1 else rest


def enumerate_walk_candidates(g: SignedGraph, max_len: int | None = None) -> list[Walk]:
    """Closed walks whose shape could be primitive under some sign.

    Sign-independent part of :func:`enumerate_primitive_walks`: every vertex and
    edge at most twice and [w] a cactus of cycles with no vertex in three blocks.
    Canonical forms, computed once and filtered per sign by
    :func:`primitive_walks_from_candidates`.
    """
    if max_len is None:
        max_len = 2 * g.m
    found: dict[tuple, Walk] = {}
    ecount = [0] * (g.m + 1)
    vcount = [0] * (g.n + 1)
    path_v: list[int] = []
    path_e: list[int] = []

    def extend(s):
        x = path_v[-1]
        if len(path_e) >= max_len:
            return
        for e in g.incident(x):
            if ecount[e] >= 2:
                continue
            y = g.other(e, x)
            if y < s:
                continue
            if y == s:
                w = Walk(tuple(path_v) + (s,), tuple(path_e) + (e,))
                c = canonical_form(w)
                key = _stream(c)
                if key not in found and cactus_condition(c):
                    found[key] = c
                if vcount[s] >= 2:
                    continue
            elif vcount[y] >= 2:
                continue
            path_v.append(y)
            path_e.append(e)
            ecount[e] += 1
            vcount[y] += 1
            extend(s)
            vcount[y] -= 1
            ecount[e] -= 1
            path_v.pop()
            path_e.pop()

    for s in g.vertices():
        path_v[:] = [s]
        path_e[:] = []
        vcount[s] = 1
        extend(s)
        vcount[s] = 0
    return [found[k] for k in sorted(found)]


def primitive_walks_from_candidates(g: SignedGraph, candidates: Sequence[Walk]) -> list[PrimitiveWalk]:
    out = []
    for w in candidates:
        if _mu_closed_fast(g, w.vertices[:-1], w.edges) != 1:
            continue
        if not split_condition(w, g):
            continue
        b = binomial_of_walk(w, g)
        if b.is_zero():
            continue
        out.append(PrimitiveWalk(w, b))
    return out
