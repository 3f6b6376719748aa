"""Exact integer linear algebra and the kernel-vector to even-walk decomposition."""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .binomial import Binomial
from .graph import GraphError, SignedGraph, components, has_odd_closed_walk, incidence_matrix
from .walks import Walk, binomial_of_walk, mu


def exact_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    if not a or not a[0]:
        return 0
    nr, nc = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(nc):
        piv = next((i for i in range(rank, nr) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nr):
            f = a[i][col]
            row_i, row_r = a[i], a[rank]
            for j in range(col, nc):
                # exact division keeps entries bounded by minors
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
        prev = p
        rank += 1
        if rank == nr:
            break
    return rank


def kernel_lattice_basis(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the integer kernel lattice {x in Z^c : Mx = 0}.

    Integer column operations bring M to column echelon form M*U; U is
    unimodular, so the columns of U paired with zero columns of M*U span the
    whole integer kernel, not just a finite-index sublattice.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else (ncols or 0)
    cols = [[rows[i][j] for i in range(nr)] for j in range(nc)]
    unit = [[1 if i == j else 0 for i in range(nc)] for j in range(nc)]
    start = 0
    for i in range(nr):
        while True:
            nz = [k for k in range(start, nc) if cols[k][i] != 0]
            if not nz:
                break
            k0 = min(nz, key=lambda k: (abs(cols[k][i]), k))
            if len(nz) == 1:
                cols[start], cols[k0] = cols[k0], cols[start]
                unit[start], unit[k0] = unit[k0], unit[start]
                start += 1
                break
            piv = cols[k0][i]
            for k in nz:
                if k == k0:
                    continue
                q = cols[k][i] // piv
                if q:
                    ck, cp = cols[k], cols[k0]
                    for r in range(nr):
                        ck[r] -= q * cp[r]
                    uk, up = unit[k], unit[k0]
                    for r in range(nc):
                        uk[r] -= q * up[r]
    basis = [unit[k] for k in range(start, nc)]
    return [tuple(v) for v in _size_reduce(basis)]


def _size_reduce(basis: list[list[int]]) -> list[list[int]]:
    # cheap pairwise reduction for readable vectors; keeps the lattice unchanged
    basis = [list(v) for v in basis]
    changed = True
    rounds = 0
    while changed and rounds < 50:
        changed = False
        rounds += 1
        basis.sort(key=lambda v: (sum(x * x for x in v), v))
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                bi, bj = basis[i], basis[j]
                nj = sum(x * x for x in bj)
                if nj == 0:
                    continue
                dot = sum(x * y for x, y in zip(bi, bj))
                q = round(dot / nj)
                if q:
                    cand = [x - q * y for x, y in zip(bi, bj)]
                    if sum(x * x for x in cand) < sum(x * x for x in bi):
                        basis[i] = cand
                        changed = True
    for v in basis:
        lead = next((x for x in v if x), 0)
        if lead < 0:
            v[:] = [-x for x in v]
    basis.sort(key=lambda v: (sum(x * x for x in v), [-x for x in v]))
    return basis


def mat_vec(rows: Sequence[Sequence[int]], b: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(r, b)) for r in rows]


def in_kernel(g: SignedGraph, b: Sequence[int]) -> bool:
    return not any(mat_vec(incidence_matrix(g), b))


class RankReport(NamedTuple):
    formula: int
    exact: int
    agree: bool


def rank_by_formula(g: SignedGraph) -> int:
    total = 0
    for comp in components(g):
        total += len(comp) - (0 if has_odd_closed_walk(g, comp) else 1)
    return total


def rank_formula(g: SignedGraph) -> RankReport:
    f = rank_by_formula(g)
    x = exact_rank(incidence_matrix(g)) if g.m else 0
    return RankReport(f, x, f == x)


# -- kernel vector -> even closed walks ----------------------------------------

class ComponentWalk(NamedTuple):
    walk: Walk
    binomial: Binomial  # B_w with its sign chosen so the plus side holds positive entries of b


def kernel_to_even_walks(g: SignedGraph, b: Sequence[int]) -> list[ComponentWalk]:
    """One even closed Eulerian walk per nontrivial component of G_b.

    G_b has |b_e| copies of each edge e.  An incidence (copy of e, v) gets the
    class sign(b_e) * tau(e, v); consecutive incidences of the walk at every
    vertex term (the wrap term included) must lie in different classes, which
    keeps edges of one side of b together between unbalanced terms.
    """
    b = list(b)
    if len(b) != g.m:
        raise GraphError("kernel vector length differs from the edge count")
    if not any(b):
        raise GraphError("kernel vector is zero")
    if not in_kernel(g, b):
        raise GraphError("vector is not in the kernel of the incidence matrix")

    copies = []   # (edge id, copy index)
    for e in range(1, g.m + 1):
        copies.extend((e, k) for k in range(abs(b[e - 1])))
    used = [False] * len(copies)
    at: dict[int, list[int]] = {v: [] for v in g.vertices()}
    for idx, (e, _) in enumerate(copies):
        for v in g.endpoints(e):
            at[v].append(idx)

    def cls(idx: int, v: int) -> int:
        e = copies[idx][0]
        return (1 if b[e - 1] > 0 else -1) * g.sign(e, v)

    for v, incs in at.items():
        balance = sum(cls(i, v) for i in incs)
        if balance:
            raise AssertionError(f"class balance fails at v{v}")

    def trail(start: int):
        """Closed trail of unused copies from ``start``; returns (vertices, copy ids)."""
        vs, cs = [start], []
        x = start
        need = None  # class required for the next departure
        first = None
        while True:
            cand = [i for i in at[x] if not used[i] and (need is None or cls(i, x) == need)]
            if not cand:
                raise AssertionError("alternating trail got stuck")
            i = min(cand, key=lambda i: copies[i])
            used[i] = True
            if first is None:
                first = cls(i, x)
            y = g.other(copies[i][0], x)
            cs.append(i)
            vs.append(y)
            arrive = cls(i, y)
            x = y
            if x == start and arrive != first:
                return vs, cs
            need = -arrive

    result = []
    while True:
        # one walk per component of G_b: Hierholzer splicing reaches all of it
        starts = [v for v in g.vertices() if any(not used[i] for i in at[v])]
        if not starts:
            break
        vs, cs = trail(min(starts))
        while True:
            t = len(cs)
            spot = None
            for pos in range(t):
                v = vs[pos]
                if any(not used[i] for i in at[v]):
                    spot = pos
                    break
            if spot is None:
                break
            v = vs[spot]
            sub_v, sub_c = trail(v)
            incoming = cls(cs[spot - 1], v)
            if cls(sub_c[0], v) == incoming:
                sub_v, sub_c = sub_v[::-1], sub_c[::-1]
            vs = vs[:spot] + sub_v + vs[spot + 1:]
            cs = cs[:spot] + sub_c + cs[spot:]
        # every transition must alternate classes
        for pos in range(len(cs)):
            v = vs[pos]
            if cls(cs[pos - 1], v) == cls(cs[pos], v):
                raise AssertionError("walk transition does not alternate")
        w = Walk(tuple(vs), tuple(copies[i][0] for i in cs))
        if mu(w, g) != 1:
            raise AssertionError("component walk is odd")
        bw = binomial_of_walk(w, g)
        e0 = w.edges[0]
        if (b[e0 - 1] > 0) != (bw.plus[e0 - 1] > 0):
            bw = bw.negate()
        result.append(ComponentWalk(w, bw))
    return result


def product_identity_holds(g: SignedGraph, b: Sequence[int], parts: Sequence[ComponentWalk]) -> bool:
    plus = [0] * g.m
    minus = [0] * g.m
    for part in parts:
        for i in range(g.m):
            plus[i] += part.binomial.plus[i]
            minus[i] += part.binomial.minus[i]
    target = Binomial.from_vector(b)
    return tuple(plus) == target.plus and tuple(minus) == target.minus
