import pytest

from models.permutation import Box, Permutation
from utils.errors import PreconditionError
from utils.formats import parse_polynomial
from utils.groebner import Ideal, ideal_equal
from utils.gvd import (
    check_multidegree_additivity,
    gvd_step_schubert,
    hilbert_check,
    iterate_gvd,
    split_CP,
    stanley_reisner_split,
)
from utils.invariants import schubert
from utils.polyring import x, y
from utils.subword import SimplicialComplex


def P(*values):
    return Permutation.of(values)


def ideal_of(*texts):
    return Ideal(parse_polynomial(t) for t in texts)


def test_split_of_a_hyperbola():
    split = split_CP(ideal_of("x1*y1 - 1"), y(1))
    assert split.is_gvd
    assert split.degrees == (1,)
    assert ideal_equal(split.I_prime, ideal_of("x1*y1"))
    assert ideal_equal(split.C, ideal_of("x1"))
    assert ideal_equal(split.P, ideal_of("y1"))


def test_hilbert_check_needs_homogeneous_input():
    ideal = ideal_of("x1*y1 - 1")
    with pytest.raises(PreconditionError):
        hilbert_check(ideal, split_CP(ideal, y(1)))


def test_split_that_is_not_a_decomposition():
    # <xy - 1> meet <x, y>
    ideal = ideal_of("x1^2*y1 - x1", "x1*y1^2 - y1")
    split = split_CP(ideal, y(1))
    assert not split.is_gvd
    assert sorted(split.degrees) == [1, 2]
    assert ideal_equal(split.I_prime, ideal_of("x1*y1^2", "x1^2*y1"))
    assert ideal_equal(split.C, ideal_of("x1"))
    assert ideal_equal(split.P, ideal_of("y1"))
    assert set(split.basis.elements) == {parse_polynomial("x1*y1^2 - y1"), parse_polynomial("x1^2*y1 - x1")}


def test_hilbert_series_detect_failure():
    ideal = ideal_of("x1*y1^2", "x1^2*y1")
    split = split_CP(ideal, y(1))
    assert not split.is_gvd
    assert hilbert_check(ideal, split).equal is False


def test_hilbert_series_agree_on_a_variable():
    ideal = Ideal([parse_polynomial("x1")], [x(1), y(1)])
    split = split_CP(ideal, y(1))
    assert split.is_gvd
    assert hilbert_check(ideal, split).equal is True


def test_schubert_step_at_accessible_box():
    split, record = gvd_step_schubert(P(4, 1, 3, 2, 5), Box(3, 2))
    assert record.perm_P == [4, 1, 2, 3, 5]
    assert record.perm_C == [4, 2, 1, 3, 5]
    assert record.is_gvd
    assert record.hilbert_equal is True
    assert max(split.degrees) == 1


def test_schubert_step_rejects_bad_input():
    with pytest.raises(PreconditionError):
        gvd_step_schubert(P(2, 1, 4, 3))
    with pytest.raises(PreconditionError):
        gvd_step_schubert(P(4, 1, 3, 2, 5), Box(1, 1))


def test_iterated_decomposition_of_41325():
    trace = iterate_gvd(P(4, 1, 3, 2, 5))
    assert sorted(trace.monomial_ideal) == ["z1_1", "z1_2", "z1_3", "z2_1*z3_2"]
    assert trace.steps[0].box == Box(3, 2)


def test_iterated_decomposition_of_1432():
    trace = iterate_gvd(P(1, 4, 3, 2), certify=False)
    assert all("^" not in m for m in trace.monomial_ideal)
    assert len(trace.steps) >= 1


def test_seeded_decomposition_reaches_the_same_ideal():
    perm = P(1, 4, 3, 2)
    assert iterate_gvd(perm, seed=3, certify=False).monomial_ideal == iterate_gvd(perm, certify=False).monomial_ideal


def test_identity_has_no_steps():
    trace = iterate_gvd(Permutation.identity(3))
    assert trace.steps == []
    assert trace.monomial_ideal == []


def test_multidegree_is_additive():
    perm = P(4, 1, 3, 2, 5)
    assert check_multidegree_additivity(perm) == schubert(perm)


def test_stanley_reisner_split():
    complex_ = SimplicialComplex([{1, 2}, {2, 3}, {3, 4}], ground={1, 2, 3, 4})
    split = stanley_reisner_split(complex_, 2, x)
    assert split.is_gvd
    assert ideal_equal(split.C, ideal_of("x1*x3", "x4"))
    assert ideal_equal(split.P, ideal_of("x2", "x1*x3", "x1*x4"))
