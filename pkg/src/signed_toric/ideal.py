"""Toric ideals of signed graphs: Groebner bases, Graver bases, primitivity, r and CI."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .binomial import Binomial
from .graph import SignedGraph, components, incidence_matrix, induced_subgraph
from .groebner import GREVLEX, BudgetExceeded, GroebnerBasis, MonomialOrder, buchberger, saturate
from .lattice import exact_rank, kernel_lattice_basis, rank_by_formula
from .walks import (
    Walk,
    binomial_of_walk,
    concat,
    enumerate_primitive_walks,
    mu,
    primitive_walks_from_candidates,
    reverse,
    unbalanced_positions,
)

DEFAULT_EDGE_BUDGET = 16


def _check_budget(g: SignedGraph, budget: int | None):
    limit = DEFAULT_EDGE_BUDGET if budget is None else budget
    if g.m > limit:
        raise BudgetExceeded(f"graph has {g.m} edges, budget is {limit}")


def toric_ideal_basis(g: SignedGraph, order: MonomialOrder = GREVLEX, budget: int | None = None) -> GroebnerBasis:
    """Groebner basis of I_(G,tau) from the kernel lattice by saturation."""
    _check_budget(g, budget)
    if g.m == 0:
        return GroebnerBasis([], order, 0)
    gens = [Binomial.from_vector(b) for b in kernel_lattice_basis(incidence_matrix(g))]
    gb = saturate(gens, g.m)
    if order != GREVLEX:
        gb = buchberger(gb.binomials(), order, g.m)
    return gb


def r_invariant(g: SignedGraph) -> int:
    """Height of the toric ideal: m minus the rank of the incidence matrix."""
    return g.m - rank_by_formula(g)


def r_invariant_exact(g: SignedGraph) -> int:
    return g.m - (exact_rank(incidence_matrix(g)) if g.m else 0)


# -- Graver basis ------------------------------------------------------------------

def graver_basis(g: SignedGraph, mode: str = "walks", budget: int | None = None, candidates=None) -> list[Binomial]:
    """Primitive binomials, reduced, one per sign pair, in a canonical order.

    ``mode='walks'`` reads them off primitive walks; ``mode='kernel'`` enumerates
    kernel vectors with entries in [-2, 2] and keeps the conformally minimal ones.
    ``candidates`` may carry precomputed walk shapes from
    :func:`enumerate_walk_candidates` (useful when sweeping many signs).
    """
    _check_budget(g, budget)
    if mode == "walks" and candidates is not None:
        bins = [p.binomial for p in primitive_walks_from_candidates(g, candidates)]
    elif mode == "walks":
        bins = [p.binomial for p in enumerate_primitive_walks(g)]
    elif mode == "kernel":
        bins = [Binomial.from_vector(b) for b in graver_by_kernel(g)]
    else:
        raise ValueError(f"unknown graver mode {mode!r}")
    return canonical_binomials(bins)


def canonical_binomials(bins) -> list[Binomial]:
    seen = {}
    for b in bins:
        r = b.reduced()
        if r.is_zero():
            continue
        k = r.key()
        if k not in seen:
            seen[k] = Binomial(k[0], k[1], b.note)
    return [seen[k] for k in sorted(seen, key=lambda k: (max(sum(k[0]), sum(k[1])), k))]


def kernel_box_vectors(g: SignedGraph, bound: int) -> list[tuple[int, ...]]:
    """Every nonzero b with |b_e| <= bound and A b = 0 (depth-first, vertex sums pruned)."""
    m = g.m
    remaining = [0] * (g.n + 1)
    for e in range(1, m + 1):
        for v in g.endpoints(e):
            remaining[v] += 1
    sums = [0] * (g.n + 1)
    b = [0] * m
    out = []

    def rec(e):
        if e > m:
            if any(b):
                out.append(tuple(b))
            return
        u, v = g.endpoints(e)
        su, sv = g.sign(e, u), g.sign(e, v)
        remaining[u] -= 1
        remaining[v] -= 1
        for x in range(-bound, bound + 1):
            nu = sums[u] + su * x
            nv = sums[v] + sv * x
            if abs(nu) > bound * remaining[u] or abs(nv) > bound * remaining[v]:
                continue
            sums[u], sums[v] = nu, nv
            b[e - 1] = x
            rec(e + 1)
            sums[u] -= su * x
            sums[v] -= sv * x
        b[e - 1] = 0
        remaining[u] += 1
        remaining[v] += 1

    rec(1)
    return out


def _conformal_le(c, b) -> bool:
    for x, y in zip(c, b):
        if x == 0:
            continue
        if (x > 0) != (y > 0) or abs(x) > abs(y) or y == 0:
            return False
    return True


def graver_by_kernel(g: SignedGraph, bound: int = 2) -> list[tuple[int, ...]]:
    """Conformally minimal kernel vectors within the box, one of each +/- pair."""
    vecs = kernel_box_vectors(g, bound)
    vecs.sort(key=lambda v: (sum(abs(x) for x in v), v))
    minimal = []
    for v in vecs:
        if any(_conformal_le(c, v) for c in minimal):
            continue
        minimal.append(v)
    out = set()
    for v in minimal:
        lead = next(x for x in v if x)
        out.add(v if lead > 0 else tuple(-x for x in v))
    return sorted(out)


# -- definitional primitivity ----------------------------------------------------------

class NotInIdeal(ValueError):
    pass


def is_primitive_definitional(f: Binomial, g: SignedGraph, A=None) -> bool:
    """No other binomial of the ideal has sides dividing the sides of ``f``.

    Decided by searching the conformal box {c : c+ <= f+, c- <= f-} for a
    kernel vector other than 0 and the exponent difference of ``f`` itself.
    """
    if f.is_zero():
        return False
    if not f.is_reduced():
        # the reduced binomial divides both sides and lies in the ideal
        return False
    b = f.difference()
    if A is None:
        A = incidence_matrix(g)
    A = np.asarray(A, dtype=np.int64).reshape(g.n, g.m)
    bv = np.array(b, dtype=np.int64)
    if np.any(A @ bv):
        raise NotInIdeal(f"{f} is not in the toric ideal")
    support = [i for i, x in enumerate(b) if x]
    ranges = [np.arange(0, b[i] + 1) if b[i] > 0 else np.arange(b[i], 1) for i in support]
    grids = np.meshgrid(*ranges, indexing="ij")
    box = np.stack([x.ravel() for x in grids], axis=1)
    sub = A[:, support]
    zero = ~np.any(box @ sub.T, axis=1)
    # c = 0 and c = b always qualify
    count = int(zero.sum())
    return count == 2


# -- complete intersection ------------------------------------------------------------

@dataclass
class CiVerdict:
    is_ci: bool
    r: int
    graver: list[Binomial]
    witness: list[Binomial] = field(default_factory=list)
    forced: list[Binomial] = field(default_factory=list)
    subsets_tried: int = 0
    components: list["CiVerdict"] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "is_ci": self.is_ci,
            "r": self.r,
            "graver_size": len(self.graver),
            "forced": [b.to_json() for b in self.forced],
            "subsets_tried": self.subsets_tried,
        }
        if self.is_ci:
            out["witness"] = [b.to_json() for b in self.witness]
        return out


def generates(subset: Sequence[Binomial], targets: Sequence[Binomial], nvars: int) -> bool:
    if not subset:
        return not targets
    gb = buchberger(subset, GREVLEX, nvars)
    return all(gb.contains(t) for t in targets)


def _ci_connected(g: SignedGraph, budget, candidates=None) -> CiVerdict:
    r = r_invariant(g)
    graver = graver_basis(g, budget=budget, candidates=candidates)
    if r == 0 or not graver:
        return CiVerdict(not graver and r == 0, r, graver)
    forced = []
    for i, b in enumerate(graver):
        others = graver[:i] + graver[i + 1:]
        if not others or not buchberger(others, GREVLEX, g.m).contains(b):
            forced.append(b)
    if len(forced) > r:
        return CiVerdict(False, r, graver, forced=forced)
    rest = [b for b in graver if b not in forced]
    tried = 0
    for extra in itertools.combinations(rest, r - len(forced)):
        tried += 1
        subset = forced + list(extra)
        if generates(subset, [b for b in graver if b not in subset], g.m):
            return CiVerdict(True, r, graver, witness=subset, forced=forced, subsets_tried=tried)
    return CiVerdict(False, r, graver, forced=forced, subsets_tried=tried)


def is_complete_intersection(g: SignedGraph, budget: int | None = None, candidates=None) -> CiVerdict:
    """Decide whether some r-subset of the Graver basis generates the toric ideal.

    A disconnected graph is a complete intersection iff every component is.
    ``candidates`` (connected graphs only) are walk shapes reused across signs.
    """
    _check_budget(g, budget)
    comps = components(g)
    if len(comps) <= 1:
        return _ci_connected(g, budget, candidates)
    parts = []
    for comp in comps:
        sub, _, emap = induced_subgraph(g, comp)
        v = _ci_connected(sub, budget)
        lift = lambda b: Binomial(_spread(b.plus, emap, g.m), _spread(b.minus, emap, g.m), b.note)
        parts.append(CiVerdict(v.is_ci, v.r, [lift(b) for b in v.graver], [lift(b) for b in v.witness],
                               [lift(b) for b in v.forced], v.subsets_tried))
    verdict = CiVerdict(
        all(p.is_ci for p in parts),
        sum(p.r for p in parts),
        canonical_binomials([b for p in parts for b in p.graver]),
        [b for p in parts for b in p.witness] if all(p.is_ci for p in parts) else [],
        [b for p in parts for b in p.forced],
        sum(p.subsets_tried for p in parts),
        parts,
    )
    return verdict


def _spread(exps, emap, m):
    out = [0] * m
    for new, x in enumerate(exps):
        out[emap[new] - 1] = x
    return tuple(out)


# -- combination certificate ----------------------------------------------------------

def _poly_mul(mono: Sequence[int], f: Binomial, coef: int = 1) -> dict:
    out: dict = {}
    for side, s in ((f.plus, 1), (f.minus, -1)):
        key = tuple(a + b for a, b in zip(mono, side))
        out[key] = out.get(key, 0) + s * coef
    return {k: v for k, v in out.items() if v}


def _poly_add(*ps: dict) -> dict:
    out: dict = {}
    for p in ps:
        for k, v in p.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _poly_of(f: Binomial) -> dict:
    return _poly_mul((0,) * f.m, f)


@dataclass
class Certificate:
    target: Binomial
    inputs: tuple[Binomial, Binomial]
    cofactors: tuple[tuple[int, ...], tuple[int, ...]]
    signs: tuple[int, int]
    case: str

    def verify(self) -> bool:
        (p, q), (s1, s2) = self.cofactors, self.signs
        lhs = _poly_of(self.target)
        rhs = _poly_add(_poly_mul(p, self.inputs[0], s1), _poly_mul(q, self.inputs[1], s2))
        return lhs == rhs

    def to_json(self) -> dict:
        def mono(x):
            return {f"e{i}": k for i, k in enumerate(x, start=1) if k}
        return {
            "target": self.target.to_json(),
            "inputs": [b.to_json() for b in self.inputs],
            "cofactors": [mono(self.cofactors[0]), mono(self.cofactors[1])],
            "signs": list(self.signs),
            "case": self.case,
        }


class CertificateError(ValueError):
    pass


def combination_certificate(w: Walk, w1: Walk, w2: Walk, g: SignedGraph) -> Certificate:
    """Write B_{w1 + w2^-1} as p*B_{w+w1} + q*B_{w+w2} with monomial cofactors.

    ``w`` runs from u to v with no unbalanced vertex term; ``w1`` and ``w2`` run
    from v back to u.  X is the product of the edges of ``w``; the two cases
    are X | B+_a, X | B-_b and X | B-_a, X | B+_b, with a = w + w1 and
    b = (w + w2)^-1.
    """
    if w.length < 1 or w.closed:
        raise CertificateError("w must be a walk between two distinct vertices")
    if unbalanced_positions(w, g):
        raise CertificateError("w has an unbalanced vertex term")
    for wi in (w1, w2):
        if wi.start != w.end or wi.end != w.start:
            raise CertificateError("w1 and w2 must run from the end of w back to its start")
    a = concat(w, w1)
    a2 = concat(w, w2)
    if mu(a, g) != 1 or mu(a2, g) != 1:
        raise CertificateError("w + w1 and w + w2 must be even")
    c = concat(w1, reverse(w2))
    target = binomial_of_walk(c, g)
    ba = binomial_of_walk(a, g)
    bb = binomial_of_walk(a2, g)
    x = [0] * g.m
    for e in w.edges:
        x[e - 1] += 1

    def div(mono, by):
        q = tuple(m_ - b_ for m_, b_ in zip(mono, by))
        return q if min(q, default=0) >= 0 else None

    for sa, sb in itertools.product((1, -1), repeat=2):
        A = ba if sa == 1 else ba.negate()
        B = bb if sb == 1 else bb.negate()
        for case, (num_b, num_a) in (("X|B+a,B-b", (A.plus, B.minus)), ("X|B-a,B+b", (A.minus, B.plus))):
            p_b = div(num_b, x)   # cofactor of B
            q_a = div(num_a, x)   # cofactor of A
            if p_b is None or q_a is None:
                continue
            for st in (1, -1):
                tgt = target if st == 1 else target.negate()
                cert = Certificate(tgt, (ba, bb), (q_a, p_b), (sa, sb), case)
                if cert.verify():
                    return cert
    if target.is_zero():
        zero = (0,) * g.m
        cert = Certificate(target, (ba, bb), (zero, zero), (0, 0), "zero")
        return cert
    raise CertificateError("no certificate found")
