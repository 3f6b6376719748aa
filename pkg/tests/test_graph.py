import itertools
import random

import numpy as np
import pytest

from signed_toric import corpus as C
from signed_toric.graph import (
    GraphError,
    ParseError,
    all_signs,
    apply_orientation,
    bipartite_count,
    block_decomposition,
    ci_sign_representatives,
    contract_ear,
    derived_edge_sign,
    ears,
    format_signed_graph,
    from_edges,
    has_odd_closed_walk,
    has_odd_closed_walk_by_cycles,
    incidence_class_count,
    incidence_class_key,
    incidence_matrix,
    lift_sign_contraction,
    parse_signed_graph,
    project_sign_subdivision,
    sign_class_representatives,
    simple_cycles,
)
from signed_toric.ideal import is_complete_intersection, r_invariant
from signed_toric.walks import Walk, mu


# -- parsing ---------------------------------------------------------------------

def test_parse_triangle_constant():
    g = parse_signed_graph("sg 1\nn 3\ne 1 1 2 +1 +1\ne 2 2 3 +1 +1\ne 3 3 1 +1 +1\n")
    assert g.n == 3 and g.m == 3
    assert g.tau == ((1, 1),) * 3


def test_parse_sign_directive():
    g = parse_signed_graph("sg 1\nn 3\nsign orient\ne 1 1 2\ne 2 2 3 -1 +1\n")
    assert g.tau == ((1, -1), (-1, 1))


def test_parse_k4_file_matches_builder():
    with open("corpus/k4_paper.sg") as fh:
        g = parse_signed_graph(fh.read())
    assert g == C.k4_paper()
    negative = [(e, v) for e in range(1, 7) for v in g.endpoints(e) if g.sign(e, v) == -1]
    assert negative == [(4, 1), (5, 2), (6, 3)]


@pytest.mark.parametrize("text, fragment", [
    ("sg 1\nn 2\ne 1 1 1 +1 +1\n", "loop"),
    ("sg 2\nn 2\n", "header"),
    ("sg 1\ne 1 1 2 +1 +1\n", "before 'n'"),
    ("sg 1\nn 2\ne 1 1 2\n", "sign"),
    ("sg 1\nn 2\ne 1 1 3 +1 +1\n", "range"),
    ("sg 1\nn 3\ne 1 1 2 +1 +1\ne 3 2 3 +1 +1\n", "1..m"),
    ("sg 1\nn 3\ne 1 1 2 +1 +1\ne 2 2 1 +1 +1\n", "parallel"),
    ("sg 1\nn 2\ne 1 1 2 +1 +2\n", "sign"),
    ("", "empty"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_signed_graph(text)


def test_parse_error_reports_line():
    with pytest.raises(ParseError) as info:
        parse_signed_graph("sg 1\nn 2\n# comment\ne 1 1 1 +1 +1\n")
    assert info.value.line == 4


def test_format_round_trip():
    for name in C.NAMED:
        g = C.named_graph(name)
        assert parse_signed_graph(format_signed_graph(g, comment=name)) == g


def test_corpus_files_match_builders():
    for name in C.NAMED:
        with open(f"corpus/{name}.sg") as fh:
            assert parse_signed_graph(fh.read()) == C.named_graph(name), name


# -- incidence matrix and signs ---------------------------------------------------------

def test_incidence_columns():
    assert incidence_matrix(from_edges(2, [(1, 2)])) == [[1], [1]]
    assert incidence_matrix(from_edges(2, [(1, 2)], [(1, -1)])) == [[1], [-1]]


def test_k4_incidence_has_three_negative_entries():
    A = np.array(incidence_matrix(C.k4_paper()))
    assert A.shape == (4, 6)
    assert sorted(zip(*np.nonzero(A == -1))) == [(0, 3), (1, 4), (2, 5)]


def test_derived_edge_sign():
    assert derived_edge_sign(from_edges(2, [(1, 2)]), 1) == -1
    assert derived_edge_sign(from_edges(2, [(1, 2)], [(1, -1)]), 1) == 1
    assert derived_edge_sign(C.k4_paper(), 4) == 1


def test_odd_closed_walks():
    tree = from_edges(4, [(1, 2), (2, 3), (2, 4)])
    assert not has_odd_closed_walk(tree)
    assert has_odd_closed_walk(C.cycle(3))
    rng = random.Random(7)
    for _ in range(50):
        g = C.complete_graph(rng.randint(3, 6))
        assert not has_odd_closed_walk(g.orientation_sign())
        signed = g.with_tau([(rng.choice((1, -1)), rng.choice((1, -1))) for _ in range(g.m)])
        assert has_odd_closed_walk(signed) == has_odd_closed_walk_by_cycles(signed)


def test_apply_orientation():
    g = apply_orientation(C.cycle(3), {2: 3})
    assert g.tau == ((1, -1), (-1, 1), (1, -1))
    assert not has_odd_closed_walk(g)


# -- blocks and bipartiteness --------------------------------------------------------------

def test_blocks_of_c5():
    bt = block_decomposition(C.cycle(5))
    assert len(bt.blocks) == 1 and not bt.cut_vertices
    assert bt.is_bipartite == (False,)


def test_blocks_of_bowtie():
    bt = block_decomposition(C.h1())
    assert len(bt.nonedge_blocks()) == 2
    assert bt.cut_vertices == frozenset({1})


def test_blocks_of_tree():
    bt = block_decomposition(C.path(4))
    assert len(bt.blocks) == 3 and all(bt.is_edge_block)
    assert bt.nonedge_blocks() == []


def test_bipartite_count():
    assert bipartite_count(C.cycle(4)) == 1
    assert bipartite_count(C.cycle(3)) == 0
    union = from_edges(7, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 7), (7, 4)])
    assert bipartite_count(union) == 1


def test_simple_cycles_of_k4():
    # 4 triangles and 3 four-cycles
    lengths = sorted(len(es) for _, es in simple_cycles(C.complete_graph(4)))
    assert lengths == [3, 3, 3, 3, 4, 4, 4]


# -- ears -------------------------------------------------------------------------------------

def test_contract_ear_c5():
    con = contract_ear(C.cycle(5), [1, 2, 3])
    assert con.graph.n == 4 and con.graph.m == 4
    assert all(con.graph.degree(v) == 2 for v in con.graph.vertices())


def test_contract_ear_rejects_chord():
    with pytest.raises(GraphError, match="adjacent"):
        contract_ear(C.cycle(3), [1, 2, 3])
    with pytest.raises(GraphError, match="degree"):
        contract_ear(C.complete_graph(4), [1, 2, 3])
    with pytest.raises(GraphError, match="length"):
        contract_ear(C.cycle(5), [1, 2])


def test_two_triangles_on_an_edge_have_no_ears():
    # both apex paths join adjacent vertices
    assert ears(C.g2prime()) == []


def test_outer_paths_of_subdivided_g0_contract_to_g0():
    # replace the hexagon edges 12, 34, 56 of G0 by paths through fresh vertices
    g0 = C.g0()
    edges = [e for e in g0.edges if e not in ((1, 2), (3, 4), (5, 6))]
    edges += [(1, 7), (7, 2), (3, 8), (8, 4), (5, 9), (9, 6)]
    g = from_edges(9, edges)
    # highest fresh vertex first, so earlier contractions do not relabel later paths
    for p in ([5, 9, 6], [3, 8, 4], [1, 7, 2]):
        g = contract_ear(g, p).graph
    assert C.is_isomorphic(g, g0)


def test_lift_sign_on_c4():
    g = C.cycle(4)
    star = contract_ear(g, [1, 2, 3]).graph
    tau = lift_sign_contraction(g, [1, 2, 3], star)
    # internal vertex 2: backward end of e1, forward end of e2
    assert (tau.sign(1, 2), tau.sign(2, 2)) == (-1, 1)
    # off-ear edges copied verbatim
    assert tau.tau[2:] == star.tau[:2]
    cycle_g = Walk((1, 2, 3, 4, 1), (1, 2, 3, 4))
    cycle_star = Walk((1, 2, 3, 1), (3, 1, 2))
    assert mu(cycle_g, tau) == mu(cycle_star, star)


def test_project_then_r_is_preserved():
    rng = random.Random(3)
    g = C.cycle(6)
    for _ in range(20):
        sign = g.with_tau([(rng.choice((1, -1)), rng.choice((1, -1))) for _ in range(g.m)])
        proj = project_sign_subdivision(sign, [1, 2, 3])
        assert r_invariant(proj) == r_invariant(sign)


def test_project_k1_case():
    # orientation-signed C6: no unbalanced internal term on q = 1 2 3
    g = C.cycle(6).orientation_sign()
    proj = project_sign_subdivision(g, [1, 2, 3])
    # old v3 is new v2 once the internal vertex is dropped; old e34 is new e1
    e = proj.edge_between(2, 3)
    assert proj.sign(e, 2) == -1


# -- sign classes ------------------------------------------------------------------------

def test_sign_class_counts():
    assert len(sign_class_representatives(C.path(4))) == 1
    assert len(sign_class_representatives(C.cycle(3))) == 2
    assert len(sign_class_representatives(C.g2prime())) == 4


def test_edge_sign_classes_do_not_decide_ci_on_k4():
    # every cycle has the same parity under both signs, yet the CI verdicts differ
    k4 = C.k4_paper()
    other = k4.with_tau([(1, -1), (1, 1), (1, -1), (1, -1), (1, 1), (1, 1)])
    for vs, es in simple_cycles(k4):
        w = Walk(vs + (vs[0],), es)
        assert mu(w, k4) == mu(w, other)
    assert not is_complete_intersection(k4).is_ci
    assert is_complete_intersection(other).is_ci


def test_incidence_class_key_is_invariant_under_row_negation():
    rng = random.Random(11)
    g = C.g2prime()
    for _ in range(30):
        sign = g.with_tau([(rng.choice((1, -1)), rng.choice((1, -1))) for _ in range(g.m)])
        v = rng.randint(1, g.n)
        flipped = [list(t) for t in sign.tau]
        for e in g.incident(v):
            i = 0 if g.endpoints(e)[0] == v else 1
            flipped[e - 1][i] *= -1
        assert incidence_class_key(sign) == incidence_class_key(sign.with_tau([tuple(t) for t in flipped]))


def test_incidence_classes_cover_all_signs():
    g = C.g2prime()
    keys = {incidence_class_key(s) for s in all_signs(g)}
    reps = list(ci_sign_representatives(g))
    assert len(keys) == len(reps) == incidence_class_count(g)
    assert {incidence_class_key(s) for s in reps} == keys


@pytest.mark.parametrize("name", ["c4", "g2prime", "k4"])
def test_incidence_class_decides_ci(name):
    # every sign has the verdict of its class representative
    g = C.named_graph(name)
    verdict = {incidence_class_key(s): is_complete_intersection(s).is_ci for s in ci_sign_representatives(g)}
    signs = list(all_signs(g))
    rng = random.Random(5)
    for s in rng.sample(signs, min(len(signs), 150)):
        assert is_complete_intersection(s).is_ci == verdict[incidence_class_key(s)]
