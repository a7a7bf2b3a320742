import pytest

from models.combinatorics import Diagonal, MinorSpec, PipeDream
from models.permutation import Box, Permutation
from utils.errors import PreconditionError
from utils.permcore import all_permutations, is_vexillary
from utils.poison import (
    cross_diagram,
    diagonal_divisibility,
    is_minimal_poisoning,
    poisons,
    poisons_essential,
    sharpness_certificate,
)


def P(*values):
    return Permutation.of(values)


def test_cross_diagram_of_41325():
    pd = cross_diagram(P(4, 1, 3, 2, 5))
    assert pd.crosses == (Box(1, 1), Box(1, 2), Box(1, 3), Box(3, 2))
    assert pd.k == pd.N == 5


def test_poisons_a_single_minor():
    pd = PipeDream(k=3, N=3, crosses=(Box(2, 2),))
    assert poisons(pd, MinorSpec(corner=Box(3, 3), size=2, row_set=(1, 2), col_set=(1, 2)))
    assert not poisons(pd, MinorSpec(corner=Box(3, 3), size=2, row_set=(1, 2), col_set=(1, 3)))
    assert poisons(pd, Diagonal(boxes=(Box(1, 1), Box(2, 2))))


def test_cross_diagrams_always_poison():
    for perm in all_permutations(4):
        assert poisons_essential(cross_diagram(perm), perm)


def test_minimality_matches_vexillarity_on_s4():
    for perm in all_permutations(4):
        assert is_minimal_poisoning(cross_diagram(perm), perm).is_minimal == is_vexillary(perm)


def test_2143_drops_its_southeast_cross():
    result = is_minimal_poisoning(cross_diagram(P(2, 1, 4, 3)), P(2, 1, 4, 3))
    assert not result.is_minimal
    assert result.removable_cross == Box(3, 3)


def test_minimality_needs_a_poisoning():
    with pytest.raises(PreconditionError):
        is_minimal_poisoning(PipeDream(k=5, N=5), P(4, 1, 3, 2, 5))


def test_diagonal_divisibility_for_vexillary():
    for perm in all_permutations(4):
        if is_vexillary(perm):
            assert diagonal_divisibility(perm)


def test_sharpness_certificate_for_2143():
    certificate = sharpness_certificate(P(2, 1, 4, 3))
    assert certificate.poison_crosses == [Box(1, 1)]
    assert certificate.codim == 1
    assert certificate.length == 2
    assert certificate.codim < certificate.length


def test_no_certificate_for_vexillary():
    with pytest.raises(PreconditionError):
        sharpness_certificate(P(4, 1, 3, 2, 5))
