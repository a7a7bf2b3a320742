"""
polyring.py

Sparse exact polynomials over the integers, with Laurent support restricted to
y-variables, plus term orders and the divided-difference operators.

A monomial is a tuple of (VariableId, exponent) pairs sorted by variable; the
empty tuple is 1. Polynomials are immutable dictionaries from monomial to int.
"""

import logging
from math import gcd
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from utils.errors import PreconditionError

logger = logging.getLogger(__name__)


# ============================================================================
# VARIABLES AND MONOMIALS
# ============================================================================

class VariableId(NamedTuple):
    """A ring variable: kind is one of x, y, z, t (auxiliary) or s (Hilbert series)."""
    kind: str
    i: int
    j: int = 0

    def __str__(self) -> str:
        if self.kind == "z":
            return f"z{self.i}_{self.j}"
        if self.kind == "s":
            return "s"
        return f"{self.kind}{self.i}"


def x(i: int) -> VariableId:
    return VariableId("x", i)


def y(j: int) -> VariableId:
    return VariableId("y", j)


def z(row: int, col: int) -> VariableId:
    return VariableId("z", row, col)


def aux(i: int) -> VariableId:
    return VariableId("t", i)


S_VAR = VariableId("s", 0)

# Display priority: x before y before z before auxiliaries.
_KIND_RANK = {"x": 0, "y": 1, "z": 2, "t": 3, "s": 4}


def display_key(var: VariableId) -> Tuple[int, int, int]:
    return (_KIND_RANK.get(var.kind, 9), var.i, var.j)


Monomial = Tuple[Tuple[VariableId, int], ...]
ONE: Monomial = ()


def make_monomial(exponents: Mapping[VariableId, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in exponents.items() if e != 0))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return make_monomial(exps)


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b as exponent subtraction; the caller checks divisibility when it matters."""
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) - e
    return make_monomial(exps)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    if len(a) > len(b):
        return False
    exps = dict(b)
    return all(exps.get(v, 0) >= e for v, e in a)


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for v, e in b:
        exps[v] = max(exps.get(v, 0), e)
    return make_monomial(exps)


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(b)
    return make_monomial({v: min(e, exps.get(v, 0)) for v, e in a})


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    vars_b = {v for v, _ in b}
    return all(v not in vars_b for v, _ in a)


def mono_is_squarefree(m: Monomial) -> bool:
    return all(e == 1 for _, e in m)


def mono_support(m: Monomial) -> Monomial:
    return tuple((v, 1) for v, _ in m)


def mono_exponent(m: Monomial, var: VariableId) -> int:
    for v, e in m:
        if v == var:
            return e
    return 0


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for v, e in sorted(m, key=lambda pair: display_key(pair[0])):
        parts.append(str(v) if e == 1 else f"{v}^{e}")
    return "*".join(parts)


# ============================================================================
# TERM ORDERS
# ============================================================================

class TermOrder:
    """
    A monomial order given by a key function; larger key means larger monomial.

    Built by `lex`, `graded_lex` or `block`. Every variable that can occur must be
    listed in the priority sequence of the innermost lex order.
    """

    __slots__ = ("name", "_key", "_cache", "priority")

    def __init__(self, name: str, key: Callable[[Monomial], tuple], priority: Sequence[VariableId]):
        self.name = name
        self._key = key
        self._cache: Dict[Monomial, tuple] = {}
        self.priority = tuple(priority)

    def key(self, m: Monomial) -> tuple:
        cached = self._cache.get(m)
        if cached is None:
            cached = self._key(m)
            self._cache[m] = cached
        return cached

    def max(self, monomials: Iterable[Monomial]) -> Monomial:
        return max(monomials, key=self.key)

    def sorted(self, monomials: Iterable[Monomial], descending: bool = True) -> List[Monomial]:
        return sorted(monomials, key=self.key, reverse=descending)

    def __repr__(self) -> str:
        return f"TermOrder({self.name})"


def _dense(priority: Sequence[VariableId]) -> Callable[[Monomial], tuple]:
    rank = {v: idx for idx, v in enumerate(priority)}
    width = len(priority)

    def dense(m: Monomial) -> tuple:
        vector = [0] * width
        for v, e in m:
            idx = rank.get(v)
            if idx is None:
                raise PreconditionError(f"variable {v} is not ranked by the term order")
            vector[idx] = e
        return tuple(vector)

    return dense


def lex(priority: Sequence[VariableId], name: str = "lex") -> TermOrder:
    """Lexicographic order with priority[0] the most significant variable."""
    return TermOrder(name, _dense(priority), priority)


def graded_lex(priority: Sequence[VariableId], name: str = "grlex") -> TermOrder:
    dense = _dense(priority)
    return TermOrder(name, lambda m: (mono_degree(m), dense(m)), priority)


def block(first: Sequence[VariableId], inner: TermOrder, name: Optional[str] = None) -> TermOrder:
    """
    Compare total degree in the `first` variables, then `inner` on the remaining
    variables, then lex on the `first` variables.

    With first = [y] this is the y-block order; with auxiliary variables it is an
    elimination order for them.
    """
    head = frozenset(first)
    head_lex = _dense(list(first))
    priority = list(first) + [v for v in inner.priority if v not in head]

    def key(m: Monomial) -> tuple:
        rest = tuple((v, e) for v, e in m if v not in head)
        lead = tuple((v, e) for v, e in m if v in head)
        return (sum(e for _, e in lead), inner.key(rest), head_lex(lead))

    return TermOrder(name or f"block({','.join(str(v) for v in first)};{inner.name})", key, priority)


def default_order(variables: Iterable[VariableId]) -> TermOrder:
    """Graded lex over the display priority (x1.., y1.., z11.., t1..); used for canonical output."""
    return graded_lex(sorted(set(variables), key=display_key), name="grlex-display")


# ============================================================================
# POLYNOMIALS
# ============================================================================

Scalar = int


class SparsePolynomial:
    """Immutable map from monomial to nonzero integer coefficient."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        self.terms: Dict[Monomial, int] = {m: int(c) for m, c in (terms or {}).items() if c != 0}
        self._hash: Optional[int] = None

    # ----- construction -----

    @classmethod
    def constant(cls, c: int) -> "SparsePolynomial":
        return cls({ONE: c})

    @classmethod
    def variable(cls, var: VariableId, exponent: int = 1) -> "SparsePolynomial":
        return cls({((var, exponent),): 1})

    @classmethod
    def monomial(cls, m: Monomial, c: int = 1) -> "SparsePolynomial":
        return cls({m: c})

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int]) -> "SparsePolynomial":
        poly = cls.__new__(cls)
        poly.terms = terms
        poly._hash = None
        return poly

    # ----- arithmetic -----

    def _coerce(self, other: Union["SparsePolynomial", int]) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            return other
        if isinstance(other, int):
            return SparsePolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            total = terms.get(m, 0) + c
            if total:
                terms[m] = total
            else:
                terms.pop(m, None)
        return SparsePolynomial._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                total = terms.get(m, 0) + c1 * c2
                if total:
                    terms[m] = total
                else:
                    terms.pop(m, None)
        return SparsePolynomial._raw(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise PreconditionError("negative powers of polynomials are not supported")
        result = SparsePolynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale_monomial(self, m: Monomial, c: int = 1) -> "SparsePolynomial":
        return SparsePolynomial._raw({mono_mul(t, m): a * c for t, a in self.terms.items()})

    # ----- comparison -----

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = SparsePolynomial.constant(other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.terms.items())

    # ----- inspection -----

    def variables(self) -> frozenset:
        return frozenset(v for m in self.terms for v, _ in m)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_laurent(self) -> bool:
        return any(e < 0 for m in self.terms for _, e in m)

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def min_degree(self) -> int:
        return min((mono_degree(m) for m in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self.terms}) <= 1

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def primitive(self, order: Optional[TermOrder] = None) -> "SparsePolynomial":
        """Divide by the content; make the leading coefficient positive when an order is given."""
        if not self.terms:
            return self
        g = self.content()
        if order is not None and self.terms[order.max(self.terms)] < 0:
            g = -g
        if g == 1:
            return self
        return SparsePolynomial._raw({m: c // g for m, c in self.terms.items()})

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(m, 0)

    def homogeneous_part(self, degree: int) -> "SparsePolynomial":
        return SparsePolynomial._raw({m: c for m, c in self.terms.items() if mono_degree(m) == degree})

    def sorted_terms(self, order: Optional[TermOrder] = None) -> List[Tuple[Monomial, int]]:
        order = order or default_order(self.variables())
        return [(m, self.terms[m]) for m in order.sorted(self.terms)]

    def __str__(self) -> str:
        from utils.formats import format_polynomial

        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"SparsePolynomial({self})"

    # ----- substitution -----

    def substitute(self, images: Mapping[VariableId, "SparsePolynomial"]) -> "SparsePolynomial":
        """
        Replace variables by polynomials.

        A negative exponent needs an invertible image (a monomial with coefficient +-1);
        the result may carry negative exponents only on y-variables.

        Raises:
            PreconditionError: non-invertible image under a negative exponent, or a
                negative exponent left on a non-y variable
        """
        result: Dict[Monomial, int] = {}
        power_cache: Dict[Tuple[VariableId, int], SparsePolynomial] = {}
        for m, c in self.terms.items():
            term = SparsePolynomial.constant(c)
            kept = []
            for v, e in m:
                image = images.get(v)
                if image is None:
                    kept.append((v, e))
                    continue
                key = (v, e)
                if key not in power_cache:
                    power_cache[key] = _power(image, e, v)
                term = term * power_cache[key]
            term = term.scale_monomial(tuple(kept))
            for tm, tc in term.terms.items():
                total = result.get(tm, 0) + tc
                if total:
                    result[tm] = total
                else:
                    result.pop(tm, None)
        poly = SparsePolynomial._raw(result)
        check_laurent_support(poly)
        return poly


def _power(image: SparsePolynomial, exponent: int, var: VariableId) -> SparsePolynomial:
    if exponent >= 0:
        return image ** exponent
    if not image.is_monomial():
        raise PreconditionError(f"cannot invert the image of {var} under a negative exponent")
    (m, c), = image.terms.items()
    if c not in (1, -1):
        raise PreconditionError(f"image of {var} has non-unit coefficient {c}")
    inverse = SparsePolynomial._raw({tuple((v, -e) for v, e in m): c})
    return inverse ** (-exponent)


def check_laurent_support(poly: SparsePolynomial) -> None:
    for m in poly.terms:
        for v, e in m:
            if e < 0 and v.kind != "y":
                raise PreconditionError(f"negative exponent on non-y variable {v}")


def var(v: VariableId) -> SparsePolynomial:
    return SparsePolynomial.variable(v)


def const(c: int) -> SparsePolynomial:
    return SparsePolynomial.constant(c)


ZERO = SparsePolynomial()
UNIT = SparsePolynomial.constant(1)


def product(factors: Iterable[SparsePolynomial]) -> SparsePolynomial:
    result = UNIT
    for f in factors:
        result = result * f
    return result


def poly_sum(polys: Iterable[SparsePolynomial]) -> SparsePolynomial:
    result = ZERO
    for f in polys:
        result = result + f
    return result


# ============================================================================
# LEADING TERMS
# ============================================================================

def leading_term(f: SparsePolynomial, order: TermOrder) -> Tuple[Monomial, int]:
    """
    The order-maximal term of f.

    Raises:
        PreconditionError: f is zero or Laurent
    """
    if not f.terms:
        raise PreconditionError("the zero polynomial has no leading term")
    if f.is_laurent():
        raise PreconditionError("leading terms are only defined for honest polynomials")
    m = order.max(f.terms)
    return m, f.terms[m]


def leading_monomial(f: SparsePolynomial, order: TermOrder) -> Monomial:
    return leading_term(f, order)[0]


def initial_y_form(f: SparsePolynomial, yvar: VariableId) -> SparsePolynomial:
    """Sum of the terms of f carrying the highest power of yvar."""
    if not f.terms:
        return f
    top = max(mono_exponent(m, yvar) for m in f.terms)
    return SparsePolynomial._raw({m: c for m, c in f.terms.items() if mono_exponent(m, yvar) == top})


def y_decomposition(f: SparsePolynomial, yvar: VariableId) -> Tuple[int, SparsePolynomial, SparsePolynomial]:
    """Write f = y^d q + r with y not dividing q and r of lower y-degree."""
    top = initial_y_form(f, yvar)
    d = max((mono_exponent(m, yvar) for m in f.terms), default=0)
    q = SparsePolynomial._raw({mono_div(m, ((yvar, d),)) if d else m: c for m, c in top.terms.items()})
    return d, q, f - top


# ============================================================================
# DIVIDED DIFFERENCES
# ============================================================================

def swap_x(f: SparsePolynomial, i: int) -> SparsePolynomial:
    """s_i f: exchange x_i and x_{i+1}."""
    a, b = x(i), x(i + 1)
    terms: Dict[Monomial, int] = {}
    for m, c in f.terms.items():
        swapped = make_monomial({(b if v == a else a if v == b else v): e for v, e in m})
        terms[swapped] = terms.get(swapped, 0) + c
    return SparsePolynomial(terms)


def divided_difference(i: int, f: SparsePolynomial) -> SparsePolynomial:
    """
    (f - s_i f) / (x_i - x_{i+1}), computed monomial by monomial.

    y-variables (including negative powers) are constants for the operator.
    """
    a, b = x(i), x(i + 1)
    result: Dict[Monomial, int] = {}
    for m, c in f.terms.items():
        exps = dict(m)
        ea, eb = exps.pop(a, 0), exps.pop(b, 0)
        if ea == eb:
            continue
        sign = 1
        if ea < eb:
            ea, eb, sign = eb, ea, -1
        if ea < 0 or eb < 0:
            raise PreconditionError("divided differences need non-negative x exponents")
        rest = make_monomial(exps)
        span = ea - eb
        for k in range(span):
            piece = mono_mul(rest, make_monomial({a: eb + span - 1 - k, b: eb + k}))
            total = result.get(piece, 0) + sign * c
            if total:
                result[piece] = total
            else:
                result.pop(piece, None)
    return SparsePolynomial._raw(result)


def demazure_operator(i: int, f: SparsePolynomial) -> SparsePolynomial:
    """
    Isobaric divided difference f -> d_i(-x_{i+1} f), i.e.
    (x_{i+1} f - x_i s_i f) / (x_{i+1} - x_i).

    Idempotent and the identity on functions symmetric in x_i, x_{i+1}. With this
    convention the Grothendieck recursion starts from prod (1 - x_i/y_j).
    """
    return divided_difference(i, -(var(x(i + 1)) * f))


# ============================================================================
# SPECIALIZATIONS
# ============================================================================

def one_minus_images(variables: Iterable[VariableId]) -> Dict[VariableId, SparsePolynomial]:
    return {v: UNIT - var(v) for v in variables}


def clear_y_denominators(f: SparsePolynomial) -> Tuple[SparsePolynomial, Monomial]:
    """Multiply by the smallest y-monomial making f an honest polynomial; returns (f*m, m)."""
    shift: Dict[VariableId, int] = {}
    for m in f.terms:
        for v, e in m:
            if e < 0:
                shift[v] = max(shift.get(v, 0), -e)
    m = make_monomial(shift)
    return (f.scale_monomial(m) if m else f), m


def lowest_degree_part(f: SparsePolynomial) -> SparsePolynomial:
    if not f.terms:
        return f
    return f.homogeneous_part(f.min_degree())


def lowest_degree_after_one_minus(f: SparsePolynomial) -> SparsePolynomial:
    """
    Lowest homogeneous component of f(1-x, 1-y) as a power series.

    Negative y-powers are cleared first; the cleared denominator prod (1-y_j)^{d_j}
    has lowest component 1, so it does not affect the answer.
    """
    cleared, _ = clear_y_denominators(f)
    images = one_minus_images(v for v in cleared.variables() if v.kind in ("x", "y"))
    return lowest_degree_part(cleared.substitute(images))
