"""
formats.py

Text, JSON and LaTeX emitters and parsers for every type that crosses the CLI
boundary: permutations, polynomials, ideal files, pipe dreams and tableaux.
"""

import logging
import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy

from models.combinatorics import PipeDream, SetValuedTableau
from models.permutation import Box, Permutation
from models.reports import ProductTerm
from utils.errors import InvalidPermutationError, ParseError
from utils.polyring import (
    S_VAR,
    SparsePolynomial,
    VariableId,
    aux,
    display_key,
    make_monomial,
    mono_str,
    x,
    y,
    z,
)

logger = logging.getLogger(__name__)


# ============================================================================
# PERMUTATIONS
# ============================================================================

def parse_permutation(text: str) -> Permutation:
    """
    Parse one-line notation such as "4 1 3 2 5", "[4,1,3,2,5]" or the compact "41325".

    The compact form is only accepted when every value is a single digit.

    Raises:
        ParseError: a token is not an integer
        InvalidPermutationError: the values are not a bijection on 1..n
    """
    cleaned = text.strip().strip("[]()")
    tokens = [tok for tok in re.split(r"[\s,]+", cleaned) if tok]
    if len(tokens) == 1 and len(tokens[0]) > 1 and tokens[0].isdigit():
        tokens = list(tokens[0])
    values = []
    for tok in tokens:
        if not re.fullmatch(r"\d+", tok):
            raise ParseError("permutation entries must be positive integers", tok)
        values.append(int(tok))
    return Permutation.of(values)


def format_permutation(perm: Permutation) -> str:
    return str(perm)


# ============================================================================
# POLYNOMIALS
# ============================================================================

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>z\d+_\d+|[xyt]\d+|s(?![a-z0-9]))(?:\^(?P<exp>-?\d+))?|(?P<op>[+\-*]))"
)


def _variable_of(name: str) -> VariableId:
    if name == "s":
        return S_VAR
    if name[0] == "z":
        row, col = name[1:].split("_")
        return z(int(row), int(col))
    index = int(name[1:])
    if index < 1:
        raise ParseError("variable indices start at 1", name)
    return {"x": x, "y": y, "t": aux}[name[0]](index)


def format_polynomial(poly: SparsePolynomial) -> str:
    """
    Render in the grammar `x1^2*y2 - 3*z1_1*z2_2`.

    Terms follow the graded-lex display order, largest first, so the output is
    deterministic and parses back to the same polynomial.
    """
    if poly.is_zero():
        return "0"
    pieces: List[str] = []
    for m, c in poly.sorted_terms():
        magnitude = abs(c)
        if not m:
            body = str(magnitude)
        elif magnitude == 1:
            body = mono_str(m)
        else:
            body = f"{magnitude}*{mono_str(m)}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


def parse_polynomial(text: str) -> SparsePolynomial:
    """
    Parse the polynomial grammar; `*` between factors is optional.

    Raises:
        ParseError: unknown token, dangling operator, or a negative exponent on a
            variable other than y
    """
    terms: Dict[tuple, int] = {}
    sign, coefficient = 1, 1
    exponents: Dict[VariableId, int] = {}
    have_factor = False
    after_star = False
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")

    def flush() -> None:
        m = make_monomial(exponents)
        terms[m] = terms.get(m, 0) + sign * coefficient

    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise ParseError("unexpected character in polynomial", text[pos:pos + 8])
        pos = match.end()
        op = match.group("op")
        if op in ("+", "-"):
            if have_factor:
                flush()
                sign, coefficient, exponents, have_factor = 1, 1, {}, False
            elif after_star:
                raise ParseError("operator after '*'", op)
            if op == "-":
                sign = -sign
            after_star = False
        elif op == "*":
            if not have_factor or after_star:
                raise ParseError("'*' without a left factor", text[max(0, pos - 4):pos + 4])
            after_star = True
        elif match.group("num") is not None:
            coefficient *= int(match.group("num"))
            have_factor, after_star = True, False
        else:
            variable = _variable_of(match.group("var"))
            exp = int(match.group("exp")) if match.group("exp") else 1
            if exp < 0 and variable.kind != "y":
                raise ParseError("negative exponents are only allowed on y-variables", match.group(0).strip())
            exponents[variable] = exponents.get(variable, 0) + exp
            have_factor, after_star = True, False
    if after_star or not have_factor:
        raise ParseError("polynomial ends with an operator", text[-4:])
    flush()
    return SparsePolynomial(terms)


# ----- sympy bridge -----

def _latex_name(v: VariableId) -> str:
    if v.kind == "z":
        return f"z_{{{v.i}{v.j}}}" if v.i < 10 and v.j < 10 else f"z_{{{v.i},{v.j}}}"
    if v.kind == "s":
        return "s"
    return f"{v.kind}_{{{v.i}}}"


def sympy_symbol(v: VariableId) -> sympy.Symbol:
    return sympy.Symbol(str(v))


def to_sympy(poly: SparsePolynomial) -> sympy.Expr:
    expr = sympy.Integer(0)
    for m, c in poly.terms.items():
        term = sympy.Integer(c)
        for v, e in m:
            term *= sympy_symbol(v) ** e
        expr += term
    return expr


def from_sympy(expr: sympy.Expr, variables: Sequence[VariableId]) -> SparsePolynomial:
    """
    Read a sympy polynomial back over the given variables.

    Raises:
        ParseError: the expression is not an integer polynomial in those variables
    """
    expr = sympy.expand(expr)
    if expr == 0:
        return SparsePolynomial()
    gens = [sympy_symbol(v) for v in variables]
    try:
        poly = sympy.Poly(expr, *gens) if gens else sympy.Poly(expr, sympy.Symbol("_"))
    except sympy.PolynomialError as exc:
        raise ParseError(f"not a polynomial: {exc}", str(expr))
    terms = {}
    for exps, coeff in poly.terms():
        if not coeff.is_integer:
            raise ParseError("non-integer coefficient", str(coeff))
        terms[make_monomial(dict(zip(variables, exps)))] = int(coeff)
    return SparsePolynomial(terms)


def latex_polynomial(poly: SparsePolynomial) -> str:
    """Expanded LaTeX through sympy; negative y-powers render as fractions."""
    names = {sympy_symbol(v): _latex_name(v) for v in poly.variables()}
    return sympy.latex(to_sympy(poly), symbol_names=names)


# ----- product expansions -----

def format_product_sum(terms: Iterable[ProductTerm]) -> str:
    pieces = []
    for term in terms:
        body = "*".join(f"({factor})" for factor in term.factors) or "1"
        if not pieces:
            pieces.append(body if term.sign > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if term.sign > 0 else f"- {body}")
    return " ".join(pieces) or "0"


def latex_product_sum(terms: Iterable[ProductTerm]) -> str:
    """Unexpanded sum of products, one parenthesized factor per linear form."""
    pieces = []
    for term in terms:
        body = "".join(f"\\left({latex_polynomial(parse_polynomial(f))}\\right)" for f in term.factors) or "1"
        if not pieces:
            pieces.append(body if term.sign > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if term.sign > 0 else f"- {body}")
    return " ".join(pieces) or "0"


# ============================================================================
# IDEAL FILES
# ============================================================================

def _parse_ring_token(tokens: List[str], idx: int) -> Tuple[List[VariableId], int]:
    tok = tokens[idx]
    if tok == "z":
        if idx + 1 >= len(tokens) or not tokens[idx + 1].isdigit():
            raise ParseError("'z' in a ring header needs a grid size", tok)
        n = int(tokens[idx + 1])
        return [z(i, j) for i in range(1, n + 1) for j in range(1, n + 1)], idx + 2
    if ".." in tok:
        first, last = (_variable_of(part) for part in tok.split("..", 1))
        if first.kind != last.kind or first.kind == "z" or first.i > last.i:
            raise ParseError("ranges must run over one variable kind in increasing order", tok)
        return [VariableId(first.kind, i) for i in range(first.i, last.i + 1)], idx + 1
    if not re.fullmatch(r"z\d+_\d+|[xyt]\d+|s", tok):
        raise ParseError("unknown variable in ring header", tok)
    return [_variable_of(tok)], idx + 1


def parse_ring(text: str) -> List[VariableId]:
    tokens = text.replace(",", " ").split()
    variables: List[VariableId] = []
    idx = 0
    while idx < len(tokens):
        found, idx = _parse_ring_token(tokens, idx)
        variables.extend(found)
    return variables


def parse_ideal_text(text: str):
    """
    Read an ideal file: optional `ring:` header, `#` comments, one polynomial per line.

    Returns:
        utils.groebner.Ideal over the declared ring
    """
    from utils.groebner import Ideal

    ring: List[VariableId] = []
    generators = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("ring:"):
            ring.extend(parse_ring(line[5:]))
            continue
        try:
            generators.append(parse_polynomial(line))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}")
    logger.debug("parsed %d generators over %d declared variables", len(generators), len(ring))
    return Ideal(generators, ring)


def format_ideal_text(ideal) -> str:
    """Inverse of parse_ideal_text; a full z grid is written as `z n`."""
    ring = list(ideal.ring)
    zs = [v for v in ring if v.kind == "z"]
    header: List[str] = []
    n = max((max(v.i, v.j) for v in zs), default=0)
    full_grid = zs and len(zs) == n * n
    for v in sorted(ring, key=display_key):
        if v.kind == "z" and full_grid:
            continue
        header.append(str(v))
    if full_grid:
        header += ["z", str(n)]
    lines = ["ring: " + " ".join(header)] if header else []
    lines += [format_polynomial(g) for g in ideal.generators]
    return "\n".join(lines) + "\n"


# ============================================================================
# PIPE DREAMS
# ============================================================================

def render_pipe_dream(pd: PipeDream) -> str:
    """ASCII grid: `+` for a cross, `.` for an elbow."""
    crosses = pd.cross_set()
    return "\n".join(
        "".join("+" if Box(r, c) in crosses else "." for c in range(1, pd.N + 1))
        for r in range(1, pd.k + 1)
    )


def parse_pipe_dream(text: str) -> PipeDream:
    rows = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not rows or len({len(row) for row in rows}) != 1:
        raise ParseError("pipe dream rows must be nonempty and of equal width")
    crosses = []
    for r, row in enumerate(rows, start=1):
        for c, ch in enumerate(row, start=1):
            if ch == "+":
                crosses.append(Box(r, c))
            elif ch != ".":
                raise ParseError("pipe dream tiles are '+' or '.'", ch)
    return PipeDream(k=len(rows), N=len(rows[0]), crosses=tuple(crosses))


def pipe_dream_json(pd: PipeDream) -> str:
    return pd.model_dump_json(indent=2)


def parse_pipe_dream_json(text: str) -> PipeDream:
    return PipeDream.model_validate_json(text)


# ============================================================================
# TABLEAUX
# ============================================================================

def tableau_json(tableau: SetValuedTableau) -> str:
    return tableau.model_dump_json(indent=2)


def parse_tableau_json(text: str) -> SetValuedTableau:
    return SetValuedTableau.model_validate_json(text)


def latex_tableau(tableau: SetValuedTableau) -> str:
    """`\\tableau{1 & 1 & 12 \\\\ 2}`; set-valued boxes list their entries together."""
    rows = []
    for row in tableau.rows:
        cells = []
        for entry in row:
            joined = "".join(str(v) for v in entry) if all(v < 10 for v in entry) else ",".join(str(v) for v in entry)
            cells.append(joined if len(entry) == 1 else f"{{{joined}}}")
        rows.append(" & ".join(cells))
    return "\\tableau{" + " \\\\ ".join(rows) + "}"


def render_tableau(tableau: SetValuedTableau) -> str:
    lines = []
    for row in tableau.rows:
        lines.append(" ".join("{" + ",".join(str(v) for v in entry) + "}" for entry in row))
    return "\n".join(lines)


def boxes_json(boxes: Iterable[Box]) -> List[List[int]]:
    return [[b.row, b.col] for b in sorted(boxes)]


def verbatim_latex(text: str, label: Optional[str] = None) -> str:
    """Fallback LaTeX for reports with no mathematical display."""
    head = f"% {label}\n" if label else ""
    return head + "\\begin{verbatim}\n" + text.rstrip("\n") + "\n\\end{verbatim}\n"
