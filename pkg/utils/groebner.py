"""
groebner.py

Exact Buchberger engine: division, S-pairs, reduced Groebner bases, ideal
equality, elimination, intersection, colon/saturation and the monomial-ideal
fast paths used throughout the degeneration code.

Reductions run over the rationals on monic polynomials; everything handed back
to callers is cleared to primitive integer polynomials with positive leading
coefficient.
"""

import logging
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from models.reports import GroebnerCheck, SPairWitness
from utils.config import DEFAULT_BUDGET, EngineBudget
from utils.errors import BudgetExhausted, PreconditionError
from utils.polyring import (
    Monomial,
    SparsePolynomial,
    TermOrder,
    VariableId,
    aux,
    block,
    default_order,
    display_key,
    graded_lex,
    mono_coprime,
    mono_degree,
    mono_div,
    mono_divides,
    mono_exponent,
    mono_gcd,
    mono_lcm,
    mono_mul,
    mono_str,
    mono_support,
    var,
)

logger = logging.getLogger(__name__)

_Terms = Dict[Monomial, Fraction]
_Monic = Tuple[Monomial, _Terms]


# ============================================================================
# IDEALS
# ============================================================================

class Ideal:
    """
    An ideal given by generators inside a declared polynomial ring.

    `ring` lists the ambient variables; it always includes every variable that
    occurs in a generator.
    """

    __slots__ = ("generators", "ring")

    def __init__(self, generators: Iterable[SparsePolynomial] = (), ring: Iterable[VariableId] = ()):
        gens = []
        for g in generators:
            if g.is_zero():
                continue
            if g.is_laurent():
                raise PreconditionError("ideal generators must not carry negative exponents")
            if g not in gens:
                gens.append(g)
        variables = set(ring)
        for g in gens:
            variables |= g.variables()
        self.generators: Tuple[SparsePolynomial, ...] = tuple(gens)
        self.ring: Tuple[VariableId, ...] = tuple(sorted(variables, key=display_key))

    @classmethod
    def from_monomials(cls, monomials: Iterable[Monomial], ring: Iterable[VariableId] = ()) -> "Ideal":
        return cls((SparsePolynomial.monomial(m) for m in monomials), ring)

    def is_zero(self) -> bool:
        return not self.generators

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def monomials(self) -> List[Monomial]:
        """Generators of a monomial ideal, minimalized."""
        if not self.is_monomial():
            raise PreconditionError("ideal is not generated by monomials")
        return minimalize([next(iter(g.terms)) for g in self.generators])

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def with_ring(self, ring: Iterable[VariableId]) -> "Ideal":
        return Ideal(self.generators, tuple(self.ring) + tuple(ring))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.generators + other.generators, self.ring + other.ring)

    def __len__(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">"

    def __repr__(self) -> str:
        return f"Ideal({self})"


class GroebnerBasis:
    """Groebner basis elements under a fixed order; `reduced` marks the unique reduced basis."""

    __slots__ = ("elements", "order", "reduced", "ring")

    def __init__(self, elements: Sequence[SparsePolynomial], order: TermOrder, reduced: bool, ring: Sequence[VariableId] = ()):
        self.elements: Tuple[SparsePolynomial, ...] = tuple(elements)
        self.order = order
        self.reduced = reduced
        self.ring = tuple(ring)

    def leading_monomials(self) -> List[Monomial]:
        return [self.order.max(g.terms) for g in self.elements]

    def initial_ideal(self) -> Ideal:
        return Ideal.from_monomials(minimalize(self.leading_monomials()), self.ring)

    def ideal(self) -> Ideal:
        return Ideal(self.elements, self.ring)

    def contains(self, f: SparsePolynomial, budget: EngineBudget = DEFAULT_BUDGET) -> bool:
        return normal_form(f, self.elements, self.order, budget).is_zero()

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


# ============================================================================
# MONOMIAL IDEAL UTILITIES
# ============================================================================

def minimalize(monomials: Iterable[Monomial]) -> List[Monomial]:
    """Drop every monomial divisible by another one; output sorted for determinism."""
    kept: List[Monomial] = []
    for m in sorted(set(monomials), key=lambda mono: (mono_degree(mono), mono)):
        if not any(mono_divides(g, m) for g in kept):
            kept.append(m)
    return sorted(kept)


def monomial_intersect(a: Iterable[Monomial], b: Iterable[Monomial]) -> List[Monomial]:
    b = list(b)
    return minimalize(mono_lcm(m, n) for m in a for n in b)


def monomial_colon(gens: Iterable[Monomial], m: Monomial) -> List[Monomial]:
    """(I : m) = < g / gcd(g, m) >."""
    return minimalize(mono_div(g, mono_gcd(g, m)) for g in gens)


def monomial_in(m: Monomial, gens: Iterable[Monomial]) -> bool:
    return any(mono_divides(g, m) for g in gens)


def monomial_radical(ideal: Ideal) -> Ideal:
    """
    Squarefree-ize each generator of a monomial ideal and minimalize.

    Raises:
        PreconditionError: a generator is not a monomial
    """
    if not ideal.is_monomial():
        raise PreconditionError("monomial_radical needs monomial generators")
    return Ideal.from_monomials(minimalize(mono_support(m) for m in ideal.monomials()), ideal.ring)


# ============================================================================
# INTERNAL RATIONAL ARITHMETIC
# ============================================================================

def _monic(f: SparsePolynomial, order: TermOrder) -> _Monic:
    lm = order.max(f.terms)
    lc = f.terms[lm]
    return lm, {m: Fraction(c, lc) for m, c in f.terms.items()}


def _monic_terms(terms: _Terms, order: TermOrder) -> _Monic:
    lm = order.max(terms)
    lc = terms[lm]
    return lm, {m: c / lc for m, c in terms.items()}


def _clear(terms: _Terms) -> SparsePolynomial:
    """Multiply by the lcm of the denominators."""
    scale = 1
    for c in terms.values():
        scale = scale * c.denominator // gcd(scale, c.denominator)
    return SparsePolynomial({m: int(c * scale) for m, c in terms.items()})


def _to_output(terms: _Terms, order: TermOrder) -> SparsePolynomial:
    return _clear(terms).primitive(order)


def _reduce(terms: _Terms, basis: Sequence[_Monic], order: TermOrder, budget: EngineBudget) -> _Terms:
    """Full reduction of `terms` modulo the monic basis; returns the remainder."""
    p = dict(terms)
    remainder: _Terms = {}
    while p:
        m = order.max(p)
        c = p[m]
        for lm_g, g in basis:
            if mono_divides(lm_g, m):
                shift = mono_div(m, lm_g)
                for t, a in g.items():
                    mt = mono_mul(t, shift)
                    value = p.get(mt, 0) - c * a
                    if value:
                        p[mt] = value
                    else:
                        p.pop(mt, None)
                break
        else:
            remainder[m] = p.pop(m)
        if len(p) + len(remainder) > budget.max_poly_terms:
            raise BudgetExhausted("polynomial terms", budget.max_poly_terms)
    return remainder


def _s_polynomial(f: _Monic, g: _Monic) -> _Terms:
    lm_f, tf = f
    lm_g, tg = g
    lcm = mono_lcm(lm_f, lm_g)
    shift_f, shift_g = mono_div(lcm, lm_f), mono_div(lcm, lm_g)
    result: _Terms = {}
    for t, a in tf.items():
        mt = mono_mul(t, shift_f)
        result[mt] = result.get(mt, 0) + a
    for t, a in tg.items():
        mt = mono_mul(t, shift_g)
        value = result.get(mt, 0) - a
        if value:
            result[mt] = value
        else:
            result.pop(mt, None)
    return {m: c for m, c in result.items() if c}


# ============================================================================
# DIVISION AND S-PAIRS
# ============================================================================

def normal_form(
    f: SparsePolynomial,
    basis: Sequence[SparsePolynomial],
    order: TermOrder,
    budget: EngineBudget = DEFAULT_BUDGET,
) -> SparsePolynomial:
    """
    Remainder of f on division by `basis`.

    No term of the result is divisible by a leading monomial of the basis. The
    remainder is computed over the rationals and cleared of denominators, so it is
    exact whenever the basis leading coefficients are +-1.
    """
    if f.is_zero():
        return f
    monic = [_monic(g, order) for g in basis if not g.is_zero()]
    rest = _reduce({m: Fraction(c) for m, c in f.terms.items()}, monic, order, budget)
    return _clear(rest)


def s_polynomial(f: SparsePolynomial, g: SparsePolynomial, order: TermOrder) -> SparsePolynomial:
    return _clear(_s_polynomial(_monic(f, order), _monic(g, order)))


def is_groebner_basis(
    gens: Sequence[SparsePolynomial],
    order: TermOrder,
    budget: EngineBudget = DEFAULT_BUDGET,
) -> GroebnerCheck:
    """
    Check every S-pair of `gens` reduces to zero.

    Pairs with coprime leading monomials are skipped. On failure the record carries
    the first S-pair (in generator order) with a nonzero remainder.
    """
    gens = [g for g in gens if not g.is_zero()]
    monic = [_monic(g, order) for g in gens]
    checked = 0
    for i in range(len(monic)):
        for j in range(i + 1, len(monic)):
            if mono_coprime(monic[i][0], monic[j][0]):
                continue
            checked += 1
            if checked > budget.max_pairs:
                raise BudgetExhausted("S-pairs", budget.max_pairs)
            spoly = _s_polynomial(monic[i], monic[j])
            remainder = _reduce(spoly, monic, order, budget)
            if remainder:
                witness = SPairWitness(
                    first=str(gens[i]),
                    second=str(gens[j]),
                    s_polynomial=str(_to_output(spoly, order)),
                    remainder=str(_to_output(remainder, order)),
                )
                logger.info("S-pair %d,%d has nonzero remainder under %s", i, j, order.name)
                return GroebnerCheck(is_groebner=False, pairs_checked=checked, witness=witness)
    return GroebnerCheck(is_groebner=True, pairs_checked=checked)


# ============================================================================
# BUCHBERGER
# ============================================================================

def buchberger(ideal: Ideal, order: TermOrder, budget: EngineBudget = DEFAULT_BUDGET) -> GroebnerBasis:
    """
    Reduced Groebner basis of `ideal` under `order`.

    Pairs are selected by the normal strategy (smallest lcm first) and pruned with
    the coprime and chain criteria.

    Raises:
        BudgetExhausted: more than budget.max_pairs pairs or an oversized polynomial
    """
    basis: List[_Monic] = []
    pending: set = set()

    def add(terms: _Terms) -> None:
        basis.append(_monic_terms(terms, order))
        new = len(basis) - 1
        for old in range(new):
            pending.add((old, new))

    for g in ideal.generators:
        rest = _reduce({m: Fraction(c) for m, c in g.terms.items()}, basis, order, budget)
        if rest:
            add(rest)

    processed = 0
    while pending:
        i, j = min(
            pending,
            key=lambda pair: (
                mono_degree(mono_lcm(basis[pair[0]][0], basis[pair[1]][0])),
                order.key(mono_lcm(basis[pair[0]][0], basis[pair[1]][0])),
                pair,
            ),
        )
        pending.discard((i, j))
        lm_i, lm_j = basis[i][0], basis[j][0]
        if mono_coprime(lm_i, lm_j):
            continue
        lcm = mono_lcm(lm_i, lm_j)
        if any(
            k != i and k != j
            and mono_divides(basis[k][0], lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(basis))
        ):
            continue
        processed += 1
        if processed > budget.max_pairs:
            logger.warning("Buchberger stopped after %d pairs under %s", budget.max_pairs, order.name)
            raise BudgetExhausted("S-pairs", budget.max_pairs)
        remainder = _reduce(_s_polynomial(basis[i], basis[j]), basis, order, budget)
        if remainder:
            add(remainder)
            logger.debug("basis size %d after %d pairs", len(basis), processed)

    return GroebnerBasis(_reduced_basis(basis, order, budget), order, True, ideal.ring)


def _reduced_basis(basis: List[_Monic], order: TermOrder, budget: EngineBudget) -> List[SparsePolynomial]:
    minimal: List[_Monic] = []
    for idx, (lm, terms) in enumerate(basis):
        dominated = any(
            mono_divides(other_lm, lm) and (other_lm != lm or other_idx < idx)
            for other_idx, (other_lm, _) in enumerate(basis)
            if other_idx != idx
        )
        if not dominated:
            minimal.append((lm, terms))
    reduced = []
    for idx, (lm, terms) in enumerate(minimal):
        others = [g for other_idx, g in enumerate(minimal) if other_idx != idx]
        reduced.append(_reduce(terms, others, order, budget))
    output = [_to_output(terms, order) for terms in reduced]
    return sorted(output, key=lambda f: order.key(order.max(f.terms)), reverse=True)


def initial_ideal(ideal: Ideal, order: TermOrder, budget: EngineBudget = DEFAULT_BUDGET) -> Ideal:
    """Monomial ideal of leading terms of a computed Groebner basis."""
    if ideal.is_monomial():
        return Ideal.from_monomials(ideal.monomials(), ideal.ring)
    return buchberger(ideal, order, budget).initial_ideal()


# ============================================================================
# ELIMINATION, INTERSECTION, SATURATION
# ============================================================================

def eliminate(ideal: Ideal, variables: Iterable[VariableId], budget: EngineBudget = DEFAULT_BUDGET) -> Ideal:
    """Generators of ideal intersected with the subring without `variables`, via a block order."""
    variables = sorted(set(variables), key=display_key)
    remaining = [v for v in ideal.ring if v not in variables]
    order = block(variables, graded_lex(remaining), name="elimination")
    basis = buchberger(ideal, order, budget)
    dropped = set(variables)
    kept = [g for g in basis.elements if not (g.variables() & dropped)]
    return Ideal(kept, remaining)


def _fresh_aux(*ideals: Ideal) -> VariableId:
    used = {v.i for ideal in ideals for v in ideal.ring if v.kind == "t"}
    return aux(max(used, default=0) + 1)


def intersect(a: Ideal, b: Ideal, budget: EngineBudget = DEFAULT_BUDGET) -> Ideal:
    """
    Generators of a intersected with b.

    Monomial ideals go through pairwise lcms; otherwise <t a, (1-t) b> is eliminated.
    """
    ring = tuple(a.ring) + tuple(b.ring)
    if a.is_zero() or b.is_zero():
        return Ideal((), ring)
    if a.is_monomial() and b.is_monomial():
        return Ideal.from_monomials(monomial_intersect(a.monomials(), b.monomials()), ring)
    t = _fresh_aux(a, b)
    tv = var(t)
    gens = [tv * f for f in a.generators] + [(1 - tv) * g for g in b.generators]
    return eliminate(Ideal(gens, ring + (t,)), [t], budget).with_ring(ring)


def colon_variable(ideal: Ideal, yvar: VariableId, budget: EngineBudget = DEFAULT_BUDGET) -> Ideal:
    """(I : y) computed as (1/y)(I intersected with <y>)."""
    if ideal.is_monomial():
        return Ideal.from_monomials(monomial_colon(ideal.monomials(), ((yvar, 1),)), ideal.ring)
    meet = intersect(ideal, Ideal([var(yvar)], ideal.ring), budget)
    divided = []
    for g in meet.generators:
        if any(mono_exponent(m, yvar) < 1 for m in g.terms):
            raise PreconditionError(f"generator {g} of I meet <{yvar}> is not divisible by {yvar}")
        divided.append(g.scale_monomial(((yvar, -1),)))
    return Ideal(divided, ideal.ring)


def saturate(ideal: Ideal, yvar: VariableId, budget: EngineBudget = DEFAULT_BUDGET) -> Ideal:
    """
    (I : y^infinity), iterating colon by y until the ideal stops growing.

    Monomial ideals saturate by deleting y from every generator.
    """
    if ideal.is_monomial():
        stripped = [tuple((v, e) for v, e in m if v != yvar) for m in ideal.monomials()]
        return Ideal.from_monomials(minimalize(stripped), ideal.ring)
    current = ideal
    steps = 0
    while True:
        following = colon_variable(current, yvar, budget)
        steps += 1
        if ideal_equal(current, following, budget):
            logger.debug("saturation by %s stable after %d colon steps", yvar, steps)
            return following
        current = following


def ideal_equal(a: Ideal, b: Ideal, budget: EngineBudget = DEFAULT_BUDGET) -> bool:
    """Compare reduced Groebner bases under the canonical graded order."""
    if a.is_monomial() and b.is_monomial():
        return a.monomials() == b.monomials()
    order = default_order(tuple(a.ring) + tuple(b.ring))
    return reduced_elements(a, order, budget) == reduced_elements(b, order, budget)


def reduced_elements(ideal: Ideal, order: TermOrder, budget: EngineBudget = DEFAULT_BUDGET) -> List[SparsePolynomial]:
    return list(buchberger(ideal, order, budget).elements)


def ideal_contains(ideal: Ideal, other: Ideal, budget: EngineBudget = DEFAULT_BUDGET) -> bool:
    """True when every generator of `other` lies in `ideal`."""
    order = default_order(tuple(ideal.ring) + tuple(other.ring))
    basis = buchberger(ideal, order, budget)
    return all(basis.contains(g, budget) for g in other.generators)


def format_monomials(monomials: Iterable[Monomial]) -> List[str]:
    return [mono_str(m) for m in monomials]
