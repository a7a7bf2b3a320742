import pytest
from hypothesis import given, settings, strategies as st

from models.permutation import Box, EssentialBox, Partition, Permutation
from utils.errors import InvalidPermutationError, PreconditionError
from utils.permcore import (
    accessible_boxes,
    all_permutations,
    bruhat_leq,
    compose,
    contains_2143,
    descend_PC,
    diagram,
    essential_set,
    flag,
    from_reduced_word,
    grassmannian_from_shape,
    grassmannianize,
    inverse,
    is_grassmannian,
    is_vexillary,
    largest_descent,
    length,
    longest_element,
    rank_array,
    reconstruct_from_rank,
    shape_lambda,
    shape_mu,
)


def P(*values):
    return Permutation.of(values)


@st.composite
def vexillary_perms(draw, max_n=6):
    n = draw(st.integers(min_value=2, max_value=max_n))
    values = draw(st.permutations(range(1, n + 1)).filter(lambda v: not contains_2143(Permutation.of(v))))
    return Permutation.of(values)


def test_permutation_rejects_non_bijection():
    with pytest.raises(InvalidPermutationError):
        Permutation.of([1, 1, 3])
    with pytest.raises(InvalidPermutationError):
        Permutation.of([0, 1])


def test_equality_ignores_trailing_fixed_points():
    assert P(1, 3, 2) == P(1, 3, 2, 4, 5)
    assert hash(P(2, 1)) == hash(P(2, 1, 3))
    assert P(1, 2, 3).trimmed() == ()
    assert P(4, 1, 3, 2, 5)(7) == 7


def test_diagram_and_essential_set_of_41325():
    perm = P(4, 1, 3, 2, 5)
    assert diagram(perm) == {Box(1, 1), Box(1, 2), Box(1, 3), Box(3, 2)}
    assert length(perm) == 4
    assert essential_set(perm) == {EssentialBox(Box(1, 3), 0), EssentialBox(Box(3, 2), 1)}
    assert rank_array(perm).at(3, 2) == 1


def test_shapes_and_flag_of_41325():
    perm = P(4, 1, 3, 2, 5)
    assert shape_lambda(perm) == Partition(parts=(3, 1))
    assert shape_mu(perm) == Partition(parts=(3, 2, 2))
    assert flag(perm).bounds == (1, 3)


def test_flag_of_1432():
    perm = P(1, 4, 3, 2)
    assert shape_lambda(perm) == Partition(parts=(2, 1))
    assert flag(perm).bounds == (2, 3)


def test_flag_needs_vexillary():
    with pytest.raises(PreconditionError):
        flag(P(2, 1, 4, 3))


def test_identity_has_empty_data():
    perm = Permutation.identity(4)
    assert diagram(perm) == frozenset()
    assert shape_mu(perm) == Partition()
    assert accessible_boxes(perm) == frozenset()
    assert largest_descent(perm) == 0


def test_vexillary_counts():
    assert sum(is_vexillary(p) for p in all_permutations(3)) == 6
    assert sum(is_vexillary(p) for p in all_permutations(4)) == 23


@pytest.mark.slow
def test_vexillary_count_s5():
    assert sum(is_vexillary(p) for p in all_permutations(5)) == 103


def test_2143_is_not_vexillary():
    perm = P(2, 1, 4, 3)
    assert contains_2143(perm)
    assert not is_vexillary(perm)


def test_descend_41325():
    perm = P(4, 1, 3, 2, 5)
    assert accessible_boxes(perm) == {Box(3, 2)}
    perm_p, perm_c = descend_PC(perm, Box(3, 2))
    assert perm_p == P(4, 1, 2, 3, 5)
    assert perm_c == P(4, 2, 1, 3, 5)


def test_descend_in_s9():
    perm = P(8, 7, 1, 6, 2, 9, 5, 3, 4)
    assert shape_lambda(perm) == Partition(parts=(7, 6, 4, 3, 2))
    perm_p, perm_c = descend_PC(perm, Box(7, 4))
    assert perm_p == P(8, 7, 1, 6, 2, 9, 4, 3, 5)
    assert perm_c == P(8, 7, 1, 6, 4, 9, 2, 3, 5)


def test_descend_rejects_inaccessible_box():
    with pytest.raises(PreconditionError):
        descend_PC(P(4, 1, 3, 2, 5), Box(1, 3))


@settings(derandomize=True, max_examples=40, deadline=None)
@given(st.data())
def test_descend_lowers_projection_length(data):
    perm = data.draw(vexillary_perms())
    boxes = sorted(accessible_boxes(perm))
    if not boxes:
        return
    box = data.draw(st.sampled_from(boxes))
    perm_p, perm_c = descend_PC(perm, box)
    assert length(perm_p) == length(perm) - 1
    assert length(perm_c) == length(perm)
    assert diagram(perm_p) == diagram(perm) - {box}


@settings(derandomize=True, max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=7).flatmap(lambda n: st.permutations(range(1, n + 1))))
def test_rank_array_reconstructs(values):
    perm = Permutation.of(values)
    assert reconstruct_from_rank(rank_array(perm)) == perm
    assert len(diagram(perm)) == length(perm)


def test_grassmannianize_41325():
    chain, k, size = grassmannianize(P(4, 1, 3, 2, 5))
    assert (k, size) == (3, 6)
    assert chain[0] == P(1, 3, 6, 2, 4, 5)
    assert chain[0] == grassmannian_from_shape(Partition(parts=(3, 1)), 3)
    assert chain[-1] == P(4, 1, 3, 2, 5)


@settings(derandomize=True, max_examples=30, deadline=None)
@given(vexillary_perms())
def test_grassmannian_chain_keeps_lambda(perm):
    chain, k, size = grassmannianize(perm)
    top = chain[0]
    assert is_grassmannian(top)
    assert largest_descent(top) == k
    assert shape_lambda(top) == shape_lambda(perm)
    assert all(sigma.n == size for sigma in chain)


def test_grassmannianize_35142():
    chain, k, size = grassmannianize(P(3, 5, 1, 4, 2))
    assert (k, size) == (4, 7)
    assert chain[0] == grassmannian_from_shape(Partition(parts=(3, 2, 1)), 4)
    assert chain[-1] == P(3, 5, 1, 4, 2)
    for sigma, below in zip(chain, chain[1:]):
        assert any(descend_PC(sigma, box)[1] == below for box in accessible_boxes(sigma))


def check_chains(n):
    for perm in all_permutations(n):
        if not is_vexillary(perm):
            continue
        chain, k, size = grassmannianize(perm)
        assert is_grassmannian(chain[0]), perm
        assert k == largest_descent(perm) == largest_descent(chain[0])
        assert shape_lambda(chain[0]) == shape_lambda(perm)
        assert chain[-1] == perm


def test_every_vexillary_s5_perm_has_a_chain():
    check_chains(5)


@pytest.mark.slow
def test_every_vexillary_s6_perm_has_a_chain():
    check_chains(6)


def test_bruhat_and_reduced_words():
    assert from_reduced_word([2, 1, 3, 2]) == P(3, 4, 1, 2)
    assert bruhat_leq(Permutation.identity(4), longest_element(4))
    assert not bruhat_leq(longest_element(3), P(2, 1, 3))
    perm = P(3, 1, 4, 2)
    assert compose(perm, inverse(perm)) == Permutation.identity(4)
