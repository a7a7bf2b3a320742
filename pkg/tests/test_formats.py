import pytest
import sympy

from models.combinatorics import PipeDream
from models.permutation import Box, Permutation
from utils.errors import InvalidPermutationError, ParseError
from utils.formats import (
    format_ideal_text,
    format_polynomial,
    from_sympy,
    latex_polynomial,
    parse_ideal_text,
    parse_permutation,
    parse_pipe_dream,
    parse_polynomial,
    render_pipe_dream,
    to_sympy,
)
from utils.polyring import SparsePolynomial, var, x, y, z


@pytest.mark.parametrize("text", ["4 1 3 2 5", "[4,1,3,2,5]", "41325", " 4, 1, 3, 2, 5 "])
def test_parse_permutation_forms(text):
    assert parse_permutation(text) == Permutation.of([4, 1, 3, 2, 5])


def test_parse_permutation_errors():
    with pytest.raises(ParseError):
        parse_permutation("4 a 3")
    with pytest.raises(InvalidPermutationError):
        parse_permutation("1 3 3")


def test_parse_polynomial_grammar():
    f = parse_polynomial("x1^2*y2 - 3*z1_1*z2_2")
    expected = var(x(1)) ** 2 * var(y(2)) - 3 * var(z(1, 1)) * var(z(2, 2))
    assert f == expected
    assert parse_polynomial("2 x1 x2 + 1") == 2 * var(x(1)) * var(x(2)) + 1
    assert parse_polynomial("-x1 + x1") == 0
    assert parse_polynomial("x1*y1^-1") == var(x(1)) * SparsePolynomial.variable(y(1), -1)


@pytest.mark.parametrize("text", ["", "x1 +", "* x1", "x1 ** x2", "x1^-1", "w3"])
def test_parse_polynomial_rejects(text):
    with pytest.raises(ParseError):
        parse_polynomial(text)


def test_format_polynomial_is_canonical():
    f = parse_polynomial("x2 + x1^2 - 3*z1_1*z2_2 + 5")
    text = format_polynomial(f)
    assert parse_polynomial(text) == f
    assert format_polynomial(SparsePolynomial()) == "0"
    assert format_polynomial(parse_polynomial("z1_1 - z2_2")) in ("z1_1 - z2_2", "-z2_2 + z1_1")


def test_sympy_bridge():
    f = parse_polynomial("x1^2 - 2*x1*x2 + 7")
    expr = to_sympy(f)
    assert sympy.expand(expr - (sympy.Symbol("x1") - sympy.Symbol("x2")) ** 2) == 7 - sympy.Symbol("x2") ** 2
    assert from_sympy(expr, [x(1), x(2)]) == f
    assert "x_{1}" in latex_polynomial(f)


def test_ideal_file_round_trip():
    text = "ring: x1..x3 y1\n# a comment\nx1*y1 - 1  # trailing\n\nx2^2 - x3\n"
    ideal = parse_ideal_text(text)
    assert ideal.ring == (x(1), x(2), x(3), y(1))
    assert len(ideal.generators) == 2
    again = parse_ideal_text(format_ideal_text(ideal))
    assert again.ring == ideal.ring
    assert set(again.generators) == set(ideal.generators)


def test_ideal_file_full_grid_header():
    ideal = parse_ideal_text("ring: z 2\nz1_1*z2_2 - z1_2*z2_1\n")
    assert ideal.ring == (z(1, 1), z(1, 2), z(2, 1), z(2, 2))
    assert format_ideal_text(ideal).splitlines()[0] == "ring: z 2"


def test_ideal_file_reports_line():
    with pytest.raises(ParseError, match="line 2"):
        parse_ideal_text("x1\nx1 +\n")


def test_pipe_dream_text_round_trip():
    pd = PipeDream(k=2, N=3, crosses=(Box(1, 1), Box(2, 3)))
    text = render_pipe_dream(pd)
    assert text == "+..\n..+"
    assert parse_pipe_dream(text) == pd
    with pytest.raises(ParseError):
        parse_pipe_dream("+.\n+")
