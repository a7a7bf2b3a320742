import pytest

from models.permutation import Permutation
from utils.config import EngineBudget, OrderChoice
from utils.detideal import (
    antidiagonal_order,
    check_diagonal_property,
    diagonal_initial_ideal,
    diagonal_order,
    essential_minors,
    minor_polynomial,
    order_for,
    random_diagonal_order,
    schubert_ideal,
    verify_diagonal_gb,
)
from utils.errors import VerificationFailure
from utils.groebner import format_monomials, ideal_equal
from utils.permcore import all_permutations, is_vexillary
from utils.polyring import var, z


def P(*values):
    return Permutation.of(values)


def test_two_by_two_minor():
    expected = var(z(1, 1)) * var(z(2, 2)) - var(z(1, 2)) * var(z(2, 1))
    assert minor_polynomial((1, 2), (1, 2)) == expected


@pytest.mark.parametrize("order", [diagonal_order(3), random_diagonal_order(3, 0), random_diagonal_order(3, 7)])
def test_diagonal_orders_pick_main_diagonals(order):
    check_diagonal_property(order, 3)


def test_antidiagonal_order_picks_antidiagonals():
    check_diagonal_property(antidiagonal_order(3), 3, anti=True)
    with pytest.raises(VerificationFailure):
        check_diagonal_property(antidiagonal_order(3), 3)


def test_order_for_choices():
    assert order_for(OrderChoice.parse("diagonal"), 2).name == "diagonal(2)"
    assert order_for(OrderChoice.parse("antidiagonal"), 2).name == "antidiagonal(2)"
    assert order_for(OrderChoice.parse("seed:4"), 2).name == "diagonal(2,seed=4)"


def test_essential_minors_of_41325():
    specs = essential_minors(P(4, 1, 3, 2, 5))
    assert sorted(s.size for s in specs) == [1, 1, 1, 2, 2, 2]
    ideal = schubert_ideal(P(4, 1, 3, 2, 5))
    assert len(ideal.ring) == 25


def test_initial_ideal_of_41325():
    init = diagonal_initial_ideal(P(4, 1, 3, 2, 5))
    assert sorted(format_monomials(init.monomials())) == ["z1_1", "z1_2", "z1_3", "z2_1*z3_2"]


def test_verdict_for_vexillary_permutation():
    verdict = verify_diagonal_gb(P(4, 1, 3, 2, 5))
    assert verdict.diagonal_gb and verdict.vexillary
    assert verdict.stanley_reisner_match is True
    assert len(verdict.orders_checked) == 1 + EngineBudget().random_orders


def test_verdict_for_2143_has_witness():
    verdict = verify_diagonal_gb(P(2, 1, 4, 3))
    assert not verdict.diagonal_gb
    assert verdict.witness_spair is not None
    assert verdict.initial_ideal == []


def test_verdict_matches_vexillarity_on_s4():
    budget = EngineBudget(random_orders=1)
    for perm in all_permutations(4):
        verdict = verify_diagonal_gb(perm, budget, check_complex=False)
        assert verdict.diagonal_gb == is_vexillary(perm)


def test_full_and_essential_minors_agree():
    perm = P(1, 4, 3, 2)
    assert ideal_equal(schubert_ideal(perm, "full"), schubert_ideal(perm))
