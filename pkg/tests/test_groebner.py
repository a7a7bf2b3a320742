import pytest
import sympy
from hypothesis import given, settings, strategies as st

from utils.config import EngineBudget
from utils.errors import BudgetExhausted
from utils.formats import from_sympy, to_sympy, sympy_symbol
from utils.groebner import (
    Ideal,
    buchberger,
    eliminate,
    ideal_contains,
    ideal_equal,
    intersect,
    is_groebner_basis,
    minimalize,
    monomial_radical,
    normal_form,
    saturate,
)
from utils.polyring import SparsePolynomial, graded_lex, lex, make_monomial, var, x

X1, X2, X3 = var(x(1)), var(x(2)), var(x(3))
RING = [x(1), x(2), x(3)]


@st.composite
def small_polynomials(draw):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(min_value=0, max_value=2) for _ in RING]),
        st.integers(min_value=-2, max_value=2).filter(bool),
        min_size=1,
        max_size=3,
    ))
    return SparsePolynomial({make_monomial(dict(zip(RING, exps))): c for exps, c in terms.items()})


def _sympy_basis(gens, order_name):
    symbols = [sympy_symbol(v) for v in RING]
    basis = sympy.groebner([to_sympy(g) for g in gens], *symbols, order=order_name, domain="QQ")
    cleared = [sympy.Poly(g, *symbols).clear_denoms()[1].as_expr() for g in basis.exprs]
    return cleared


@settings(derandomize=True, max_examples=25, deadline=None)
@given(st.lists(small_polynomials(), min_size=1, max_size=3))
def test_buchberger_matches_sympy(gens):
    order = graded_lex(RING)
    ours = buchberger(Ideal(gens, RING), order)
    theirs = {from_sympy(g, RING).primitive(order) for g in _sympy_basis(gens, "grlex")}
    assert set(ours.elements) == theirs


def test_lex_basis_of_twisted_cubic():
    gens = [X2 - X1 ** 2, X3 - X1 ** 3]
    order = lex([x(3), x(2), x(1)])
    basis = buchberger(Ideal(gens, RING), order)
    assert set(basis.elements) == {X3 - X1 ** 3, X2 - X1 ** 2}
    assert is_groebner_basis(list(basis.elements), order).is_groebner


def test_non_groebner_generators_carry_a_witness():
    gens = [X1 ** 2, X1 * X2 + X2 ** 2]
    check = is_groebner_basis(gens, graded_lex(RING))
    assert not check.is_groebner
    assert check.witness is not None
    assert check.witness.remainder != "0"


def test_normal_form_and_membership():
    basis = buchberger(Ideal([X1 - X2, X2 - X3], RING), graded_lex(RING))
    assert basis.contains(X1 - X3)
    assert not normal_form(X1 * X1 + 1, list(basis.elements), basis.order).is_zero()
    assert ideal_contains(Ideal([X1 - X2, X2 - X3], RING), Ideal([X1 - X3], RING))


def test_budget_is_enforced():
    twisted_cubic = Ideal([X2 - X1 ** 2, X3 - X1 ** 3], RING)
    assert buchberger(twisted_cubic, graded_lex(RING)).contains(X2 ** 3 - X3 ** 2)
    with pytest.raises(BudgetExhausted):
        buchberger(twisted_cubic, graded_lex(RING), EngineBudget(max_pairs=1))


def test_intersection_and_saturation():
    assert intersect(Ideal([X1], RING), Ideal([X2], RING)).monomials() == [make_monomial({x(1): 1, x(2): 1})]
    meet = intersect(Ideal([X1 - 1], RING), Ideal([X2], RING))
    assert ideal_equal(meet, Ideal([X1 * X2 - X2], RING))
    saturated = saturate(Ideal([X1 * X2 - X1 * X3], RING), x(1))
    assert ideal_equal(saturated, Ideal([X2 - X3], RING))


def test_elimination():
    eliminated = eliminate(Ideal([X1 - X2, X2 - X3], RING), [x(2)])
    assert ideal_equal(eliminated, Ideal([X1 - X3], [x(1), x(3)]))


def test_monomial_helpers():
    a = make_monomial({x(1): 2})
    b = make_monomial({x(1): 3, x(2): 1})
    assert minimalize([b, a]) == [a]
    radical = monomial_radical(Ideal.from_monomials([a, make_monomial({x(2): 2, x(3): 1})], RING))
    assert radical.monomials() == sorted([make_monomial({x(1): 1}), make_monomial({x(2): 1, x(3): 1})])
