import pytest

from signed_toric.binomial import Binomial
from signed_toric.groebner import GREVLEX, LEX, BudgetExceeded, buchberger, normal_form, same_ideal, saturate

K4 = [
    Binomial.from_dicts(6, {1: 1, 5: 1}, {3: 1, 6: 1}),
    Binomial.from_dicts(6, {1: 1, 4: 1}, {2: 1, 6: 1}),
    Binomial.from_dicts(6, {2: 1, 5: 1}, {3: 1, 4: 1}),
]


def test_single_binomial_is_its_own_basis():
    f = Binomial.from_dicts(4, {1: 1, 3: 1}, {2: 1, 4: 1})
    gb = buchberger([f], GREVLEX, 4)
    assert len(gb) == 1
    assert gb.binomials()[0].key() == f.key()


def test_k4_generators_reduce_to_zero():
    gb = buchberger(K4, GREVLEX, 6)
    for f in K4:
        assert normal_form(f, gb).is_zero()


def test_lex_transitivity():
    f = Binomial.from_dicts(3, {1: 1}, {2: 1})
    g = Binomial.from_dicts(3, {2: 1}, {3: 1})
    gb = buchberger([f, g], LEX, 3)
    assert normal_form(Binomial.from_dicts(3, {1: 1}, {3: 1}), gb).is_zero()


def test_normal_form_of_zero_and_non_member():
    gb = buchberger(K4, GREVLEX, 6)
    assert normal_form(Binomial((0,) * 6, (0,) * 6), gb).is_zero()
    # every generator is homogeneous of degree 2, so a degree-1 binomial is outside
    assert not normal_form(Binomial.from_dicts(6, {1: 1}, {2: 1}), gb).is_zero()


def test_same_ideal_detects_difference():
    assert same_ideal(K4, list(reversed(K4)), 6)
    assert not same_ideal(K4[:2], K4, 6)


def test_saturation_removes_monomial_factors():
    # <x1 x3 - x2 x3> saturated by x1 x2 x3 contains x1 - x2
    gb = saturate([Binomial((1, 0, 1), (0, 1, 1))], 3)
    assert gb.contains(Binomial((1, 0, 0), (0, 1, 0)))
    assert not buchberger([Binomial((1, 0, 1), (0, 1, 1))], GREVLEX, 3).contains(Binomial((1, 0, 0), (0, 1, 0)))


def test_pair_budget():
    gens = [Binomial.from_dicts(6, {1: 2}, {2: 1, 3: 1}), Binomial.from_dicts(6, {2: 2}, {4: 1, 5: 1}),
            Binomial.from_dicts(6, {3: 2, 6: 1}, {1: 1, 4: 1})]
    with pytest.raises(BudgetExceeded):
        buchberger(gens, LEX, 6, max_pairs=1)
