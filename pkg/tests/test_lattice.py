import random

import numpy as np
import pytest

from signed_toric import corpus as C
from signed_toric.binomial import Binomial
from signed_toric.graph import GraphError, from_edges, incidence_matrix
from signed_toric.lattice import (
    exact_rank,
    in_kernel,
    kernel_lattice_basis,
    kernel_to_even_walks,
    product_identity_holds,
    rank_formula,
)
from signed_toric.oracles import random_connected_graph, random_sign
from signed_toric.walks import canonical_form, mu, Walk


def test_exact_rank_trivial():
    assert exact_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([]) == 0


def test_exact_rank_matches_floating_point_oracle():
    rng = random.Random(1)
    for _ in range(200):
        n, m = rng.randint(1, 6), rng.randint(1, 7)
        rows = [[rng.choice((0, 0, 1, -1, 2)) for _ in range(m)] for _ in range(n)]
        assert exact_rank(rows) == np.linalg.matrix_rank(np.array(rows, dtype=float))


def test_k4_rank():
    assert exact_rank(incidence_matrix(C.k4_paper())) == 4


def test_kernel_of_c4():
    basis = kernel_lattice_basis(incidence_matrix(C.cycle(4)), 4)
    assert len(basis) == 1
    assert basis[0] in ((1, -1, 1, -1), (-1, 1, -1, 1))


def test_kernel_of_tree_is_empty():
    assert kernel_lattice_basis(incidence_matrix(C.path(4)), 3) == []


def test_k4_kernel_spans_the_three_binomials():
    g = C.k4_paper()
    basis = kernel_lattice_basis(incidence_matrix(g), 6)
    assert len(basis) == 2
    B = np.array(basis, dtype=float).T
    for plus, minus in (({1: 1, 5: 1}, {3: 1, 6: 1}), ({1: 1, 4: 1}, {2: 1, 6: 1}), ({2: 1, 5: 1}, {3: 1, 4: 1})):
        d = np.array(Binomial.from_dicts(6, plus, minus).difference(), dtype=float)
        coef, *_ = np.linalg.lstsq(B, d, rcond=None)
        assert np.allclose(B @ coef, d)
        # integral combination: the basis is a lattice basis
        assert np.allclose(coef, np.round(coef))


def test_kernel_basis_is_a_lattice_basis():
    rng = random.Random(4)
    for _ in range(50):
        g = random_sign(random_connected_graph(rng, 2, 7), rng)
        A = incidence_matrix(g)
        basis = kernel_lattice_basis(A, g.m)
        assert len(basis) == g.m - exact_rank(A)
        for v in basis:
            assert in_kernel(g, v)


@pytest.mark.parametrize("g, expected", [
    (C.path(3), 2),
    (C.cycle(4).orientation_sign(), 3),
    (C.k4_paper(), 4),
    (C.cycle(3), 3),
])
def test_rank_formula_examples(g, expected):
    rep = rank_formula(g)
    assert rep.formula == expected and rep.exact == expected and rep.agree


def test_c4_kernel_vector_gives_the_cycle():
    g = C.cycle(4)
    parts = kernel_to_even_walks(g, [1, -1, 1, -1])
    assert len(parts) == 1
    assert sorted(parts[0].walk.edges) == [1, 2, 3, 4]
    f = parts[0].binomial
    assert f == Binomial((1, 0, 1, 0), (0, 1, 0, 1))
    assert product_identity_holds(g, [1, -1, 1, -1], parts)


def test_doubled_c4_vector():
    g = C.cycle(4)
    b = [2, -2, 2, -2]
    parts = kernel_to_even_walks(g, b)
    assert sum(p.walk.length for p in parts) == 8
    assert product_identity_holds(g, b, parts)
    # (e1 e3)^2 - (e2 e4)^2
    total_plus = tuple(sum(p.binomial.plus[i] for p in parts) for i in range(4))
    assert total_plus == (2, 0, 2, 0)


def test_k4_vector_round_trips_to_the_four_cycle():
    g = C.k4_paper()
    f = Binomial.from_dicts(6, {1: 1, 5: 1}, {3: 1, 6: 1})
    parts = kernel_to_even_walks(g, f.difference())
    assert len(parts) == 1
    w = Walk.parse("v1 e1 v2 e5 v4 e6 v3 e3 v1")
    assert canonical_form(parts[0].walk) == canonical_form(w)
    assert parts[0].binomial == f


def test_disconnected_support_gives_one_walk_per_piece():
    # two even squares joined by a path; the vector uses only the squares
    h = from_edges(8, [(1, 2), (2, 3), (3, 4), (4, 1), (4, 5), (5, 6), (6, 7), (7, 8), (8, 5)])
    b = [1, -1, 1, -1, 0, 1, -1, 1, -1]
    parts = kernel_to_even_walks(h, b)
    assert len(parts) == 2
    assert all(mu(p.walk, h) == 1 for p in parts)
    assert product_identity_holds(h, b, parts)


def test_kernel_to_even_walks_rejects_bad_vectors():
    g = C.cycle(4)
    with pytest.raises(GraphError):
        kernel_to_even_walks(g, [1, 0, 0, 0])
    with pytest.raises(GraphError):
        kernel_to_even_walks(g, [0, 0, 0, 0])
