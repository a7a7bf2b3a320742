import pytest
from hypothesis import given, settings, strategies as st

from models.permutation import Partition, Permutation
from utils.config import EngineBudget
from utils.errors import PreconditionError, VerificationFailure
from utils.formats import parse_polynomial
from utils import invariants
from utils.groebner import Ideal
from utils.invariants import (
    GradedWeights,
    buch_tableau_sum,
    count_standard_monomials,
    cross_validate,
    expand_products,
    grassmannian_single_grothendieck,
    grothendieck,
    hilbert_series,
    k_polynomial,
    minimum_covers,
    multidegree,
    multidegree_from_k_polynomial,
    product_terms,
    schubert,
)
from utils.permcore import all_permutations
from utils.polyring import make_monomial, x

RING = [x(1), x(2), x(3)]
SMALL_SHAPES = [(1,), (2,), (1, 1), (2, 1), (2, 2)]


def P(*values):
    return Permutation.of(values)


def monomial_ideal(*texts, ring=RING):
    return Ideal((parse_polynomial(t) for t in texts), ring)


@st.composite
def monomial_ideals(draw):
    exps = draw(st.lists(
        st.tuples(*[st.integers(min_value=0, max_value=2) for _ in RING]).filter(any),
        min_size=1,
        max_size=4,
    ))
    return Ideal.from_monomials([make_monomial(dict(zip(RING, e))) for e in exps], RING)


def test_small_double_polynomials():
    assert schubert(P(2, 1)) == parse_polynomial("x1 - y1")
    assert schubert(P(1, 3, 2)) == parse_polynomial("x1 + x2 - y1 - y2")
    assert grothendieck(P(2, 1)) == parse_polynomial("1 - x1*y1^-1")
    assert schubert(Permutation.identity(3)) == parse_polynomial("1")


def test_product_expansions_of_1432():
    perm = P(1, 4, 3, 2)
    tableau_terms = product_terms(perm, "schubert", "tableau")
    pipe_terms = product_terms(perm, "schubert", "pipedream")
    assert len(tableau_terms) == len(pipe_terms) == 5
    assert all(t.sign == 1 and len(t.factors) == 3 for t in tableau_terms)
    assert expand_products(tableau_terms) == expand_products(pipe_terms) == schubert(perm)


def test_grothendieck_terms_carry_signs():
    terms = product_terms(P(4, 1, 3, 2, 5), "grothendieck", "tableau")
    assert sorted(t.sign for t in terms) == [-1, 1, 1]
    assert expand_products(terms) == grothendieck(P(4, 1, 3, 2, 5))


def test_unknown_expansion():
    with pytest.raises(PreconditionError):
        product_terms(P(2, 1), "schubert", "interior_faces")
    with pytest.raises(PreconditionError):
        schubert(P(2, 1), "bogus")


@pytest.mark.parametrize("kind", ["schubert", "grothendieck"])
def test_methods_agree_on_s3(kind):
    for perm in all_permutations(3):
        cross_validate(perm, kind)


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["schubert", "grothendieck"])
def test_methods_agree_on_s4(kind):
    for perm in all_permutations(4):
        cross_validate(perm, kind, EngineBudget())


def test_non_vexillary_skips_tableaux():
    perm = P(2, 1, 4, 3)
    assert cross_validate(perm, "schubert") == schubert(perm, "divided_difference")


def test_vexillary_five_cross_validates():
    perm = P(4, 1, 3, 2, 5)
    assert cross_validate(perm, "schubert") == schubert(perm, "tableau")
    assert cross_validate(perm, "grothendieck") == grothendieck(perm, "interior_faces")


def test_single_box_grothendieck():
    expected = parse_polynomial("x1 + x2 - x1*x2")
    assert buch_tableau_sum(Partition(parts=(1,)), 2) == expected
    assert grassmannian_single_grothendieck(Partition(parts=(1,)), 2) == expected


@pytest.mark.parametrize("parts", SMALL_SHAPES)
@pytest.mark.parametrize("k", [2, 3])
def test_set_valued_sum_matches_recursion(parts, k):
    shape = Partition(parts=parts)
    assert buch_tableau_sum(shape, k) == grassmannian_single_grothendieck(shape, k)


@settings(derandomize=True, max_examples=40, deadline=None)
@given(monomial_ideals())
def test_hilbert_series_counts_standard_monomials(ideal):
    series = hilbert_series(ideal)
    assert series.dimension_counts(5) == tuple(count_standard_monomials(ideal, d) for d in range(6))


def test_hilbert_series_is_reduced():
    series = hilbert_series(monomial_ideal("x1", "x2"))
    assert series.denominator_power == 1
    assert series.coefficients == (1,)


def test_k_polynomial_methods():
    weights = GradedWeights.generic(RING)
    assert k_polynomial(monomial_ideal("x1*x2"), weights) == parse_polynomial("1 - x1*x2")
    ideal = monomial_ideal("x1*x2", "x2*x3")
    assert k_polynomial(ideal, weights, "taylor") == k_polynomial(ideal, weights, "faces")
    with pytest.raises(PreconditionError):
        k_polynomial(monomial_ideal("x1^2"), weights, "faces")


def test_k_polynomial_rejects_polynomials():
    with pytest.raises(PreconditionError):
        k_polynomial(monomial_ideal("x1 - x2"), GradedWeights.generic(RING))


def test_multidegree_counts_multiplicity():
    weights = GradedWeights.generic(RING, "linear")
    assert multidegree(monomial_ideal("x1^2", "x1*x2"), weights) == parse_polynomial("x1")
    assert multidegree(monomial_ideal("x1^2", "x2"), weights) == parse_polynomial("2*x1*x2")
    assert multidegree(monomial_ideal("x1*x2", "x2*x3"), weights) == parse_polynomial("x2")


def test_minimum_covers():
    covers = minimum_covers([make_monomial({x(1): 1, x(2): 1}), make_monomial({x(2): 1, x(3): 1})])
    assert covers == [frozenset({x(2)})]


def test_multidegree_is_the_low_part_of_the_k_polynomial():
    weights = GradedWeights.generic(RING, "linear")
    assert multidegree_from_k_polynomial(monomial_ideal("x1^2", "x1*x2"), weights, 1) == parse_polynomial("x1")
    assert multidegree_from_k_polynomial(monomial_ideal("x1^2", "x2"), weights, 2) == parse_polynomial("2*x1*x2")


@settings(derandomize=True, max_examples=40, deadline=None)
@given(monomial_ideals())
def test_multidegree_agrees_with_k_polynomial(ideal):
    assert multidegree(ideal, GradedWeights.generic(RING, "linear")).terms


def test_multidegree_catches_a_wrong_multiplicity(monkeypatch):
    monkeypatch.setattr(invariants, "_artinian_length", lambda gens, variables: 3)
    with pytest.raises(VerificationFailure):
        multidegree(monomial_ideal("x1^2", "x1*x2"), GradedWeights.generic(RING, "linear"))
