import pytest
from hypothesis import given, settings, strategies as st

from models.combinatorics import PipeDream, Word
from models.permutation import Box, Partition, Permutation
from utils.errors import BudgetExhausted
from utils.groebner import format_monomials
from utils.polyring import x
from utils.subword import (
    SimplicialComplex,
    SubwordComplex,
    absorbable_elbows,
    contains,
    contains_exhaustive,
    demazure_product,
    facets,
    gamma_complex,
    gamma_data,
    interior_faces,
    is_shelling,
    rectangle_word,
    staircase_word,
    stanley_reisner,
    trace_pipes,
    vertex_decompose,
    word_of_mu,
    z_of_position,
)
from utils.tableaux import hook_content_count


def P(*values):
    return Permutation.of(values)


def test_word_of_mu_for_41325():
    word = word_of_mu(P(4, 1, 3, 2, 5))
    assert word.letters == (2, 1, 3, 2, 5, 4, 3)
    assert word.positions[0] == Box(3, 2)
    assert word.positions[-1] == Box(1, 1)


def test_staircase_and_rectangle_words():
    assert staircase_word(3).letters == (2, 1, 2)
    assert len(rectangle_word(3, 6)) == 18
    assert max(rectangle_word(3, 6).letters) == 8


def test_demazure_product():
    assert demazure_product([1, 1]) == P(2, 1)
    assert demazure_product([1, 2, 1]) == P(3, 2, 1)
    assert demazure_product([1, 2, 1, 2]) == P(3, 2, 1)


@settings(derandomize=True, max_examples=60, deadline=None)
@given(
    st.lists(st.integers(min_value=1, max_value=3), max_size=6),
    st.permutations(range(1, 5)),
)
def test_contains_agrees_with_search(letters, values):
    rho = Permutation.of(values)
    assert contains(letters, rho) == contains_exhaustive(letters, rho)


def test_gamma_of_41325():
    perm = P(4, 1, 3, 2, 5)
    top, k, size = gamma_data(perm)
    assert (top, k, size) == (P(1, 3, 6, 2, 4, 5), 3, 6)
    complex_ = gamma_complex(perm)
    assert complex_.target_length() == 4
    assert len(facets(complex_)) == 2
    assert all(len(f) == 3 for f in facets(complex_))
    assert len(interior_faces(complex_)) == 3


def test_gamma_stanley_reisner_is_initial_ideal():
    complex_ = gamma_complex(P(4, 1, 3, 2, 5))
    sr = stanley_reisner(complex_, z_of_position(complex_.word))
    assert sorted(format_monomials(sr.monomials())) == ["z1_1", "z1_2", "z1_3", "z2_1*z3_2"]


def test_grassmannian_on_rectangle():
    complex_ = SubwordComplex(rectangle_word(3, 6), P(1, 3, 6, 2, 4, 5))
    assert len(complex_.facets()) == hook_content_count(Partition(parts=(3, 1)), 3) == 15
    assert complex_.is_nonempty()


def test_absorbable_elbows_use_the_whole_subword():
    word = Word(letters=(1, 2, 1, 2))
    assert absorbable_elbows(word, {0, 3}) == frozenset({1, 2})
    assert absorbable_elbows(word, {0, 1}) == frozenset({3})


def test_interior_of_an_alternating_word():
    complex_ = SubwordComplex(Word(letters=(1, 2, 1, 2)), P(2, 3, 1))
    expected = [{0, 1}, {0, 3}, {2, 3}, {0, 1, 3}, {0, 2, 3}]
    assert sorted(map(sorted, complex_.interior_complements())) == sorted(map(sorted, expected))


def test_reduced_pipe_dreams_of_1432():
    complex_ = SubwordComplex(staircase_word(4), P(1, 4, 3, 2))
    assert len(complex_.reduced_subwords()) == 5
    order = vertex_decompose(complex_)
    assert is_shelling(order)
    assert len(order) == 5


def test_shelling_of_gamma_follows_boxes():
    perm = P(4, 1, 3, 2, 5)
    order = vertex_decompose(gamma_complex(perm), perm)
    assert is_shelling(order)
    assert sorted(order, key=sorted) == sorted(facets(gamma_complex(perm)), key=sorted)


def test_is_shelling_rejects_disjoint_facets():
    assert not is_shelling([frozenset({1, 2}), frozenset({3, 4})])
    assert is_shelling([frozenset({1, 2}), frozenset({2, 3})])


def test_empty_complex_when_word_too_short():
    complex_ = SubwordComplex(staircase_word(3), P(1, 4, 3, 2))
    assert not complex_.is_nonempty()
    assert complex_.facets() == []


def test_long_words_hit_the_budget():
    with pytest.raises(BudgetExhausted):
        SubwordComplex(staircase_word(8), P(2, 1))


def test_simplicial_complex_operations():
    complex_ = SimplicialComplex([{1, 2}, {2, 3}], ground={1, 2, 3, 4})
    assert complex_.dimension() == 1
    assert complex_.is_pure()
    assert complex_.link(2).facets == [frozenset({1}), frozenset({3})]
    assert complex_.deletion(2).ground == complex_.ground
    sr = complex_.stanley_reisner(x)
    assert sorted(format_monomials(sr.monomials())) == ["x1*x3", "x4"]


def test_trace_pipes_single_cross():
    pd = PipeDream(k=2, N=2, crosses=(Box(1, 1),))
    assert trace_pipes(pd) == {Box(1, 1): (("h", 1), ("v", 1))}


def test_gamma_facet_crosses_of_41325():
    complex_ = gamma_complex(P(4, 1, 3, 2, 5))
    crosses = {complex_.crosses(complex_.positions - f) for f in facets(complex_)}
    assert crosses == {
        (Box(1, 1), Box(1, 2), Box(1, 3), Box(2, 1)),
        (Box(1, 1), Box(1, 2), Box(1, 3), Box(3, 2)),
    }


def test_gamma_of_1432_shells_in_five_steps():
    perm = P(1, 4, 3, 2)
    order = vertex_decompose(gamma_complex(perm), perm)
    assert len(order) == 5
    assert is_shelling(order)


def test_facets_are_pure():
    complex_ = SubwordComplex(staircase_word(4), P(2, 1, 4, 3))
    sizes = {len(f) for f in complex_.facets()}
    assert sizes == {len(complex_.word) - complex_.target_length()}
