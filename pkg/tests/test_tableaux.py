import pytest
from hypothesis import given, settings, strategies as st

from models.combinatorics import PipeDream, SetValuedTableau
from models.permutation import Box, Flag, Partition, Permutation
from utils.errors import PreconditionError
from utils.subword import gamma_data, rectangle_word
from utils.tableaux import (
    absorbed_crosses,
    check_omega_structure,
    enumerate_ssyt,
    enumerate_svt,
    extras_are_absorbable,
    fst,
    ft,
    hook_content_count,
    minimum_tableau,
    omega,
    omega_inverse,
)


def P(*values):
    return Permutation.of(values)


# The set-valued tableau of shape (7,6,4,3,2) and its pipe dream in the 7 x 14 grid.
TAU = SetValuedTableau(
    shape=(7, 6, 4, 3, 2),
    rows=(
        ((1,),) * 7,
        ((2,),) * 6,
        ((3, 4), (4,), (4,), (4,)),
        ((5,), (5, 6), (6,)),
        ((6, 7), (7,)),
    ),
)
TAU_CROSSES = (
    [Box(1, c) for c in range(1, 8)]
    + [Box(2, c) for c in range(1, 7)]
    + [Box(3, 1)]
    + [Box(4, c) for c in (2, 3, 4, 5)]
    + [Box(5, 2), Box(5, 3)]
    + [Box(6, c) for c in (2, 4, 5)]
    + [Box(7, 3), Box(7, 4)]
)


@st.composite
def shapes(draw, max_rows=3, max_part=3):
    parts = draw(st.lists(st.integers(min_value=1, max_value=max_part), min_size=1, max_size=max_rows))
    return Partition(parts=tuple(sorted(parts, reverse=True)))


def test_semistandard_validation():
    with pytest.raises(ValueError):
        SetValuedTableau(shape=(2,), rows=(((2,), (1,)),))
    with pytest.raises(ValueError):
        SetValuedTableau(shape=(1, 1), rows=(((1, 2),), ((2,),)))
    assert TAU.size == 25
    assert not TAU.is_ordinary()
    assert minimum_tableau(TAU).is_ordinary()


def test_flagged_counts():
    assert len(ft(P(1, 4, 3, 2))) == 5
    assert len(ft(P(4, 1, 3, 2, 5))) == 2
    assert len(fst(P(4, 1, 3, 2, 5))) == 3


def test_flag_must_match_shape():
    with pytest.raises(PreconditionError):
        list(enumerate_ssyt(Partition(parts=(2, 1)), 3, Flag(bounds=(3,))))


def test_ft_needs_vexillary():
    with pytest.raises(PreconditionError):
        ft(P(2, 1, 4, 3))


@settings(derandomize=True, max_examples=30, deadline=None)
@given(shapes(), st.integers(min_value=1, max_value=4))
def test_ssyt_count_is_hook_content(shape, k):
    expected = hook_content_count(shape, k) if len(shape) <= k else 0
    assert len(list(enumerate_ssyt(shape, k))) == expected


@settings(derandomize=True, max_examples=20, deadline=None)
@given(shapes(max_rows=2, max_part=2), st.integers(min_value=1, max_value=3))
def test_svt_contains_ssyt(shape, k):
    svt = list(enumerate_svt(shape, k))
    ordinary = [t for t in svt if t.is_ordinary()]
    assert ordinary == list(enumerate_ssyt(shape, k))
    assert len({t.rows for t in svt}) == len(svt)


def test_omega_of_the_large_tableau():
    pd = omega(TAU, 7, 14)
    assert pd.cross_set() == set(TAU_CROSSES)
    assert omega_inverse(pd, Partition(parts=(7, 6, 4, 3, 2))) == TAU


def test_omega_structure_of_the_minimum_tableau():
    pd = check_omega_structure(minimum_tableau(TAU), 7, 14)
    assert len(pd) == 22
    assert len(absorbed_crosses(TAU, 7, 14)) == TAU.size - 22


def test_omega_rejects_out_of_grid():
    tableau = SetValuedTableau(shape=(1,), rows=(((3,),),))
    with pytest.raises(PreconditionError):
        omega(tableau, 2, 4)


def test_omega_inverse_rejects_foreign_pipe_dreams():
    with pytest.raises(PreconditionError):
        omega_inverse(PipeDream(k=2, N=4, crosses=(Box(1, 4),)), Partition(parts=(1,)))


def test_omega_round_trips_for_41325():
    perm = P(4, 1, 3, 2, 5)
    _, k, size = gamma_data(perm)
    for tableau in fst(perm):
        pd = omega(tableau, k, size)
        assert omega_inverse(pd, perm) == tableau
    for tableau in ft(perm):
        check_omega_structure(tableau, k, size)


def test_extras_become_absorbable_elbows():
    top, k, size = gamma_data(P(4, 1, 3, 2, 5))
    word = rectangle_word(k, size)
    for tableau in fst(P(4, 1, 3, 2, 5)):
        assert extras_are_absorbable(tableau, word, k, size)


def test_split_box_is_absorbable_in_41325():
    perm = P(4, 1, 3, 2, 5)
    top, k, size = gamma_data(perm)
    tableau = SetValuedTableau(shape=(3, 1), rows=(((1,), (1,), (1,)), ((2, 3),)))
    assert tableau in list(fst(perm))
    assert len(absorbed_crosses(tableau, k, size)) == 1
    assert extras_are_absorbable(tableau, rectangle_word(k, size), k, size)
