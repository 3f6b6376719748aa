"""Buchberger's algorithm specialised to pure difference binomials.

S-polynomials and reductions of binomials x^a - x^b stay binomials, so a
basis element is just an ordered pair of exponent tuples (lead, trail).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .binomial import Binomial


class BudgetExceeded(RuntimeError):
    """A computation exceeded its configured size budget."""


Exps = tuple[int, ...]


def grevlex_key(a: Exps):
    return (sum(a), tuple(-x for x in reversed(a)))


def lex_key(a: Exps):
    return a


@dataclass(frozen=True)
class MonomialOrder:
    """kind is 'grevlex', 'lex' or 'elim'; 'elim' ranks the ``block`` variables first."""

    kind: str = "grevlex"
    block: tuple[int, ...] = ()

    def key(self) -> Callable[[Exps], tuple]:
        if self.kind == "grevlex":
            return grevlex_key
        if self.kind == "lex":
            return lex_key
        if self.kind == "elim":
            block = self.block
            inblock = set(block)

            def key(a: Exps):
                rest = tuple(x for i, x in enumerate(a) if i not in inblock)
                return (sum(a[i] for i in block), grevlex_key(rest))
            return key
        raise ValueError(f"unknown monomial order {self.kind!r}")


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def _divides(a: Exps, b: Exps) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _reduce_monomial(u: Exps, basis: Sequence[tuple[Exps, Exps]]) -> Exps:
    u = list(u)
    n = len(u)
    changed = True
    while changed:
        changed = False
        for lead, trail in basis:
            ok = True
            for i in range(n):
                if lead[i] > u[i]:
                    ok = False
                    break
            if ok:
                for i in range(n):
                    u[i] += trail[i] - lead[i]
                changed = True
                break
    return tuple(u)


def _orient(p: Exps, q: Exps, key) -> tuple[Exps, Exps] | None:
    if p == q:
        return None
    return (p, q) if key(p) > key(q) else (q, p)


@dataclass
class GroebnerBasis:
    pairs: list[tuple[Exps, Exps]]
    order: MonomialOrder
    nvars: int
    reduced: bool = True

    def binomials(self) -> list[Binomial]:
        return [Binomial(lead, trail) for lead, trail in self.pairs]

    def normal_form_monomial(self, u: Exps) -> Exps:
        return _reduce_monomial(u, self.pairs)

    def normal_form(self, f: Binomial) -> Binomial:
        p = self.normal_form_monomial(f.plus)
        q = self.normal_form_monomial(f.minus)
        return Binomial(p, q)

    def contains(self, f: Binomial) -> bool:
        return self.normal_form_monomial(f.plus) == self.normal_form_monomial(f.minus)

    def __len__(self):
        return len(self.pairs)


def buchberger(gens: Iterable[Binomial] | Iterable[tuple[Exps, Exps]], order: MonomialOrder = GREVLEX,
               nvars: int | None = None, max_pairs: int = 200_000) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by binomials ``gens``."""
    key = order.key()
    basis: list[tuple[Exps, Exps]] = []
    raw = []
    for g in gens:
        if isinstance(g, Binomial):
            raw.append((g.plus, g.minus))
        else:
            raw.append((tuple(g[0]), tuple(g[1])))
    if nvars is None:
        nvars = len(raw[0][0]) if raw else 0
    for p, q in raw:
        o = _orient(p, q, key)
        if o is not None:
            o = _reduce_pair(o, basis, key)
            if o is not None:
                basis.append(o)
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    processed = 0
    while pairs:
        # normal strategy: smallest lcm first
        best = min(range(len(pairs)), key=lambda k: key(_lcm(basis[pairs[k][0]][0], basis[pairs[k][1]][0])))
        i, j = pairs.pop(best)
        processed += 1
        if processed > max_pairs:
            raise BudgetExceeded(f"Buchberger exceeded {max_pairs} S-pairs")
        (a1, b1), (a2, b2) = basis[i], basis[j]
        if not any(x and y for x, y in zip(a1, a2)):
            continue  # coprime leading terms
        lcm = _lcm(a1, a2)
        if _chain_skip(i, j, lcm, basis, pairs):
            continue
        s1 = tuple(l - x + y for l, x, y in zip(lcm, a1, b1))
        s2 = tuple(l - x + y for l, x, y in zip(lcm, a2, b2))
        o = _orient(s1, s2, key)
        if o is None:
            continue
        o = _reduce_pair(o, basis, key)
        if o is None:
            continue
        basis.append(o)
        k = len(basis) - 1
        pairs.extend((i2, k) for i2 in range(k))
    return GroebnerBasis(_interreduce(basis, key), order, nvars)


def _lcm(a: Exps, b: Exps) -> Exps:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _chain_skip(i, j, lcm, basis, pending) -> bool:
    # Buchberger's chain criterion: some k with lead_k | lcm whose pairs with i and j are done
    pend = set(pending)
    for k in range(len(basis)):
        if k in (i, j):
            continue
        if not _divides(basis[k][0], lcm):
            continue
        if (min(i, k), max(i, k)) in pend or (min(j, k), max(j, k)) in pend:
            continue
        return True
    return False


def _reduce_pair(o, basis, key):
    p = _reduce_monomial(o[0], basis)
    q = _reduce_monomial(o[1], basis)
    return _orient(p, q, key)


def _interreduce(basis, key):
    basis = sorted(set(basis), key=lambda pq: key(pq[0]))
    minimal = []
    for idx, (lead, trail) in enumerate(basis):
        if any(_divides(l2, lead) for j, (l2, _) in enumerate(basis) if j != idx and (l2 != lead or j < idx)):
            continue
        minimal.append((lead, trail))
    out = []
    for lead, trail in minimal:
        others = [pq for pq in minimal if pq[0] != lead]
        out.append((lead, _reduce_monomial(trail, others)))
    out.sort(key=lambda pq: key(pq[0]))
    return out


def normal_form(f: Binomial, gb: GroebnerBasis) -> Binomial:
    return gb.normal_form(f)


def ideal_contains(gb: GroebnerBasis, fs: Iterable[Binomial]) -> bool:
    return all(gb.contains(f) for f in fs)


def same_ideal(gens1: Sequence[Binomial], gens2: Sequence[Binomial], nvars: int) -> bool:
    """Mutual membership of two binomial generating sets."""
    gb1 = buchberger(gens1, GREVLEX, nvars)
    gb2 = buchberger(gens2, GREVLEX, nvars)
    return ideal_contains(gb1, gens2) and ideal_contains(gb2, gens1)


def saturate(gens: Sequence[Binomial], nvars: int, max_pairs: int = 200_000) -> GroebnerBasis:
    """Groebner basis (grevlex) of the saturation of <gens> by the product of all variables.

    One variable at a time: adjoin t with t*x_i - 1, eliminate t, keep the
    t-free part.  This works whether or not the ideal is homogeneous.
    """
    current = [(g.plus, g.minus) for g in gens if not g.is_zero()]
    for i in range(nvars):
        if not current:
            break
        lifted = [(p + (0,), q + (0,)) for p, q in current]
        tx = [0] * (nvars + 1)
        tx[i] = 1
        tx[nvars] = 1
        lifted.append((tuple(tx), (0,) * (nvars + 1)))
        gb = buchberger(lifted, MonomialOrder("elim", (nvars,)), nvars + 1, max_pairs)
        current = [(p[:-1], q[:-1]) for p, q in gb.pairs if p[-1] == 0 and q[-1] == 0]
    return buchberger(current, GREVLEX, nvars, max_pairs)
