import itertools
import random

import pytest
import sympy as sp

from signed_toric import corpus as C
from signed_toric.binomial import Binomial
from signed_toric.graph import ci_sign_representatives, from_edges, incidence_matrix
from signed_toric.groebner import GREVLEX, LEX, BudgetExceeded, buchberger
from signed_toric.ideal import (
    CertificateError,
    NotInIdeal,
    combination_certificate,
    graver_basis,
    is_complete_intersection,
    is_primitive_definitional,
    kernel_box_vectors,
    r_invariant,
    r_invariant_exact,
    toric_ideal_basis,
)
from signed_toric.oracles import random_connected_graph, random_sign
from signed_toric.walks import Walk

K4_KEYS = {
    Binomial.from_dicts(6, {1: 1, 5: 1}, {3: 1, 6: 1}).key(),
    Binomial.from_dicts(6, {1: 1, 4: 1}, {2: 1, 6: 1}).key(),
    Binomial.from_dicts(6, {2: 1, 5: 1}, {3: 1, 4: 1}).key(),
}


# -- independent oracle: eliminate t, t^-1 from x_e - t^{A_e} with sympy -------------------

def sympy_toric(g):
    A = incidence_matrix(g)
    xs = sp.symbols(f"x1:{g.m + 1}")
    ts = sp.symbols(f"t1:{g.n + 1}")
    ss = sp.symbols(f"s1:{g.n + 1}")
    gens = [t * s - 1 for t, s in zip(ts, ss)]
    for j, x in enumerate(xs):
        mono = sp.Integer(1)
        for i in range(g.n):
            a = A[i][j]
            mono *= ts[i] ** a if a > 0 else ss[i] ** (-a)
        gens.append(x - mono)
    G = sp.groebner(gens, *ts, *ss, *xs, order="lex")
    aux = set(ts) | set(ss)
    return [p for p in G.exprs if not (p.free_symbols & aux)], xs


def as_expr(f: Binomial, xs):
    plus = sp.Mul(*[x ** k for x, k in zip(xs, f.plus)])
    minus = sp.Mul(*[x ** k for x, k in zip(xs, f.minus)])
    return plus - minus


@pytest.mark.parametrize("name", ["c4", "c5", "k4_paper", "g2prime", "walk_example", "k23", "h1", "split_example"])
def test_toric_basis_matches_elimination(name):
    g = C.named_graph(name)
    ours = toric_ideal_basis(g)
    polys, xs = sympy_toric(g)
    if not polys:
        assert len(ours) == 0
        return
    G = sp.groebner(polys, *xs, order="grevlex")
    for f in ours.binomials():
        assert G.contains(as_expr(f, xs))
    for p in polys:
        poly = sp.Poly(p, *xs)
        assert len(poly.terms()) == 2
        (e1, c1), (e2, c2) = poly.terms()
        assert c1 == -c2
        assert ours.contains(Binomial(tuple(e1), tuple(e2)))


def test_random_signs_match_elimination():
    rng = random.Random(9)
    for _ in range(8):
        g = random_sign(random_connected_graph(rng, 3, 5), rng)
        polys, xs = sympy_toric(g)
        ours = toric_ideal_basis(g)
        for p in polys:
            (e1, _), (e2, _) = sp.Poly(p, *xs).terms()
            assert ours.contains(Binomial(tuple(e1), tuple(e2)))
        if polys:
            G = sp.groebner(polys, *xs, order="grevlex")
            assert all(G.contains(as_expr(f, xs)) for f in ours.binomials())
        else:
            assert len(ours) == 0


def test_toric_basis_examples():
    assert len(toric_ideal_basis(C.path(4))) == 0
    gb = toric_ideal_basis(C.cycle(4))
    assert [f.key() for f in gb.binomials()] == [Binomial.from_dicts(4, {1: 1, 3: 1}, {2: 1, 4: 1}).key()]
    k4 = toric_ideal_basis(C.k4_paper(), LEX)
    for k in K4_KEYS:
        assert k4.contains(Binomial(*k))


def test_graver_examples():
    assert {f.key() for f in graver_basis(C.k4_paper())} == K4_KEYS
    c6 = graver_basis(C.cycle(6))
    assert [f.key() for f in c6] == [Binomial.from_dicts(6, {1: 1, 3: 1, 5: 1}, {2: 1, 4: 1, 6: 1}).key()]
    # constant sign: both triangles odd, only the outer 4-cycle is primitive
    g2 = graver_basis(C.g2prime())
    assert len(g2) == 1 and g2[0].degree() == 2


@pytest.mark.parametrize("name", ["c4", "k4_paper", "g2prime", "h1", "k23", "walk_example", "split_example", "g0"])
def test_graver_modes_agree(name):
    g = C.named_graph(name)
    assert {f.key() for f in graver_basis(g)} == {f.key() for f in graver_basis(g, mode="kernel")}


def test_graver_modes_agree_on_random_signs():
    rng = random.Random(21)
    for _ in range(40):
        g = random_sign(random_connected_graph(rng, 3, 6), rng)
        if g.m > 9:
            continue
        assert {f.key() for f in graver_basis(g)} == {f.key() for f in graver_basis(g, mode="kernel")}


def test_definitional_primitivity():
    assert is_primitive_definitional(Binomial.from_dicts(6, {1: 1, 5: 1}, {3: 1, 6: 1}), C.k4_paper())
    assert not is_primitive_definitional(Binomial.from_dicts(4, {1: 2, 3: 2}, {2: 2, 4: 2}), C.cycle(4))
    hexagon = Binomial.from_dicts(9, {1: 1, 3: 1, 5: 1}, {2: 1, 4: 1, 6: 1})
    assert is_primitive_definitional(hexagon, C.g0())
    with pytest.raises(NotInIdeal):
        is_primitive_definitional(Binomial.from_dicts(4, {1: 1}, {2: 1}), C.cycle(4))


def test_r_invariant():
    assert r_invariant(C.k4_paper()) == 2
    assert r_invariant(C.cycle(4)) == 1
    assert r_invariant(C.path(5)) == 0
    rng = random.Random(13)
    for _ in range(100):
        g = random_sign(random_connected_graph(rng, 2, 8), rng)
        assert r_invariant(g) == r_invariant_exact(g)


def test_ci_examples():
    k4 = is_complete_intersection(C.k4_paper())
    assert not k4.is_ci and k4.r == 2 and len(k4.graver) == 3
    g2 = is_complete_intersection(C.g2prime())
    assert g2.is_ci and len(g2.witness) == 1
    assert g2.witness[0].key() == graver_basis(C.g2prime())[0].key()
    assert not is_complete_intersection(C.g0()).is_ci


def test_ci_of_disconnected_graph():
    g = from_edges(8, [(1, 2), (2, 3), (3, 4), (4, 1), (5, 6), (6, 7), (7, 8), (8, 5)])
    v = is_complete_intersection(g)
    assert v.is_ci and v.r == 2 and len(v.witness) == 2


def test_budget():
    with pytest.raises(BudgetExceeded):
        graver_basis(C.k23(), budget=3)


# -- bounded-degree search: CI verdicts do not depend on searching inside the Graver basis ---

def _bounded_search_ci(g, bound=2):
    cands = {}
    for v in kernel_box_vectors(g, bound):
        f = Binomial.from_vector(v)
        cands.setdefault(f.key(), f)
    target = toric_ideal_basis(g).binomials()
    r = r_invariant(g)
    if not target:
        return r == 0
    for sub in itertools.combinations(list(cands.values()), r):
        gb = buchberger(sub, GREVLEX, g.m)
        if all(gb.contains(t) for t in target):
            return True
    return False


@pytest.mark.parametrize("name, limit", [
    ("c4", None), ("c5", None), ("c6", None), ("g2prime", None), ("h1", None),
    ("walk_example", None), ("k23", None), ("k4", 12),
])
def test_graver_subset_search_matches_bounded_search(name, limit):
    reps = list(ci_sign_representatives(C.named_graph(name)))
    if limit:
        reps = reps[:limit] + [C.k4_paper()]
    for g in reps:
        assert _bounded_search_ci(g) == is_complete_intersection(g).is_ci, g.tau


# -- combination certificates -----------------------------------------------------------------

def test_k4_certificate():
    g = C.k4_paper()
    w = Walk.parse("v1 e1 v2")
    w1 = Walk.parse("v2 e5 v4 e6 v3 e3 v1")
    w2 = Walk.parse("v2 e2 v3 e6 v4 e4 v1")
    cert = combination_certificate(w, w1, w2, g)
    assert cert.verify()
    assert cert.target.key() in K4_KEYS


def test_certificate_for_equal_walks_is_zero():
    g = C.k4_paper()
    w = Walk.parse("v1 e1 v2")
    w1 = Walk.parse("v2 e5 v4 e6 v3 e3 v1")
    cert = combination_certificate(w, w1, w1, g)
    assert cert.target.is_zero() and cert.verify()


def test_theta_certificate():
    # two 4-cycles sharing edge 12; the 6-cycle binomial follows from the two squares
    g = from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 1), (2, 5), (5, 6), (6, 1)])
    w = Walk.parse("v1 e1 v2")
    w1 = Walk.parse("v2 e2 v3 e3 v4 e4 v1")
    w2 = Walk.parse("v2 e5 v5 e6 v6 e7 v1")
    cert = combination_certificate(w, w1, w2, g)
    assert cert.verify()
    assert cert.target.key() == Binomial.from_dicts(7, {2: 1, 4: 1, 6: 1}, {3: 1, 5: 1, 7: 1}).key()


def test_certificate_rejects_unbalanced_connector():
    g = C.cycle(4)
    with pytest.raises(CertificateError):
        combination_certificate(Walk.parse("v1 e1 v2 e2 v3"), Walk.parse("v3 e3 v4 e4 v1"),
                                Walk.parse("v3 e3 v4 e4 v1"), g)
