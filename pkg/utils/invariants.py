"""
invariants.py

Hilbert series, K-polynomials and multidegrees of monomial ideals, and the
independent computations of double Schubert and Grothendieck polynomials that
are cross-validated against each other.
"""

import itertools
import logging
from math import comb
from typing import Callable, Dict, Iterable, Iterator, List, Literal, Mapping, Optional, Sequence, Tuple

from models.algebra import RationalSeries
from models.permutation import Partition, Permutation
from models.reports import ProductTerm
from utils.config import DEFAULT_BUDGET, EngineBudget
from utils.detideal import diagonal_initial_ideal
from utils.errors import PreconditionError, VerificationFailure
from utils.groebner import Ideal, minimalize, monomial_colon
from utils.permcore import (
    grassmannian_from_shape,
    is_vexillary,
    longest_element,
    require_vexillary,
    swap_positions,
)
from utils.polyring import (
    ONE,
    UNIT,
    ZERO,
    Monomial,
    SparsePolynomial,
    VariableId,
    demazure_operator,
    divided_difference,
    lowest_degree_after_one_minus,
    make_monomial,
    mono_degree,
    mono_divides,
    mono_is_squarefree,
    mono_lcm,
    one_minus_images,
    poly_sum,
    product,
    var,
    x,
    y,
    z,
)

logger = logging.getLogger(__name__)

SchubertMethod = Literal["tableau", "pipedream", "divided_difference", "multidegree"]
GrothendieckMethod = Literal["tableau", "interior_faces", "k_polynomial", "demazure"]
SCHUBERT_METHODS: Tuple[str, ...] = ("tableau", "pipedream", "divided_difference", "multidegree")
GROTHENDIECK_METHODS: Tuple[str, ...] = ("tableau", "interior_faces", "k_polynomial", "demazure")

# Face sums enumerate subsets of the support; above this size only the Taylor sum runs.
FACE_SUM_MAX_SUPPORT = 16


# ============================================================================
# GRADINGS
# ============================================================================

class GradedWeights:
    """
    A weight for every ring variable.

    Linear weights (z_ij -> x_i - y_j) give multidegrees; monomial weights
    (z_ij -> x_i / y_j) give K-polynomials.
    """

    __slots__ = ("assignment", "kind")

    def __init__(self, assignment: Mapping[VariableId, SparsePolynomial], kind: Literal["linear", "monomial"]):
        self.assignment: Dict[VariableId, SparsePolynomial] = dict(assignment)
        self.kind = kind
        if kind == "monomial" and not all(w.is_monomial() for w in self.assignment.values()):
            raise PreconditionError("K-polynomial weights must be monomials")

    @classmethod
    def multidegree(cls, n: int) -> "GradedWeights":
        return cls({z(i, j): var(x(i)) - var(y(j)) for i in range(1, n + 1) for j in range(1, n + 1)}, "linear")

    @classmethod
    def k_theory(cls, n: int) -> "GradedWeights":
        return cls(
            {z(i, j): SparsePolynomial.monomial(make_monomial({x(i): 1, y(j): -1}))
             for i in range(1, n + 1) for j in range(1, n + 1)},
            "monomial",
        )

    @classmethod
    def generic(cls, variables: Iterable[VariableId], kind: Literal["linear", "monomial"] = "monomial") -> "GradedWeights":
        """Every variable weighted by itself (the finest grading)."""
        return cls({v: var(v) for v in variables}, kind)

    def weight(self, v: VariableId) -> SparsePolynomial:
        try:
            return self.assignment[v]
        except KeyError:
            raise PreconditionError(f"no weight for variable {v}")

    def of_monomial(self, m: Monomial) -> SparsePolynomial:
        return product(self.weight(v) ** e for v, e in m)


# ============================================================================
# HILBERT SERIES
# ============================================================================

_Dense = Dict[int, int]


def _dense_mul(a: _Dense, b: _Dense) -> _Dense:
    out: _Dense = {}
    for i, c in a.items():
        for j, d in b.items():
            out[i + j] = out.get(i + j, 0) + c * d
    return {k: c for k, c in out.items() if c}


def _dense_add(a: _Dense, b: _Dense) -> _Dense:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def _pairwise_coprime(gens: Sequence[Monomial]) -> bool:
    seen = set()
    for m in gens:
        support = {v for v, _ in m}
        if seen & support:
            return False
        seen |= support
    return True


def _pivot(gens: Sequence[Monomial]) -> VariableId:
    counts: Dict[VariableId, int] = {}
    for m in gens:
        for v, _ in m:
            counts[v] = counts.get(v, 0) + 1
    return max(sorted(counts), key=lambda v: counts[v])


def hilbert_numerator(gens: Iterable[Monomial]) -> _Dense:
    """
    Numerator N(s) of h_{R/I} = N(s) / (1-s)^{#vars}, by the pivot recursion
    N(I) = N(I + <v>) + s N(I : v).
    """
    gens = minimalize(gens)
    if not gens:
        return {0: 1}
    if ONE in gens:
        return {}
    if _pairwise_coprime(gens):
        numerator: _Dense = {0: 1}
        for m in gens:
            numerator = _dense_mul(numerator, {0: 1, mono_degree(m): -1})
        return numerator
    v = _pivot(gens)
    pivot = ((v, 1),)
    added = hilbert_numerator(list(gens) + [pivot])
    colon = hilbert_numerator(monomial_colon(gens, pivot))
    return _dense_add(added, _dense_mul({1: 1}, colon))


def hilbert_series(ideal: Ideal, num_vars: Optional[int] = None) -> RationalSeries:
    """
    Exact Hilbert series of R/I for a monomial ideal, every variable of degree 1.

    Raises:
        PreconditionError: the ideal is not monomial
    """
    if not ideal.is_monomial():
        raise PreconditionError("hilbert_series needs a monomial ideal; pass an initial ideal")
    numerator = hilbert_numerator(ideal.monomials())
    top = max(numerator, default=-1)
    return RationalSeries(
        coefficients=tuple(numerator.get(e, 0) for e in range(top + 1)),
        denominator_power=len(ideal.ring) if num_vars is None else num_vars,
    )


def count_standard_monomials(ideal: Ideal, degree: int) -> int:
    """Brute-force dim (R/I)_degree: monomials of that degree outside a monomial ideal."""
    gens = ideal.monomials()
    ring = list(ideal.ring)
    count = 0
    for combo in itertools.combinations_with_replacement(ring, degree):
        exponents: Dict[VariableId, int] = {}
        for v in combo:
            exponents[v] = exponents.get(v, 0) + 1
        if not any(mono_divides(g, make_monomial(exponents)) for g in gens):
            count += 1
    return count


# ============================================================================
# K-POLYNOMIALS AND MULTIDEGREES
# ============================================================================

def _taylor_sum(gens: Sequence[Monomial]) -> Dict[Monomial, int]:
    """Signed lcms over all generator subsets, merged as they appear."""
    acc: Dict[Monomial, int] = {ONE: 1}
    for g in gens:
        grown = dict(acc)
        for m, c in acc.items():
            l = mono_lcm(m, g)
            grown[l] = grown.get(l, 0) - c
        acc = {m: c for m, c in grown.items() if c}
    return acc


def _face_sum(gens: Sequence[Monomial], weights: GradedWeights) -> SparsePolynomial:
    support = sorted({v for m in gens for v, _ in m})
    total = ZERO
    for size in range(len(support) + 1):
        for face in itertools.combinations(support, size):
            face_mono = make_monomial({v: 1 for v in face})
            if any(mono_divides(g, face_mono) for g in gens):
                continue
            inside = product(weights.weight(v) for v in face)
            outside = product(UNIT - weights.weight(v) for v in support if v not in face)
            total = total + inside * outside
    return total


def k_polynomial(ideal: Ideal, weights: GradedWeights,
                 method: Literal["taylor", "faces", "both"] = "both") -> SparsePolynomial:
    """
    K-polynomial of R/I for a monomial ideal under monomial weights.

    "taylor" is the inclusion-exclusion over generator subsets with lcm signs;
    "faces" sums over the Stanley-Reisner complex and needs a squarefree ideal.
    "both" runs the face sum whenever it applies and asserts agreement.

    Raises:
        PreconditionError: non-monomial ideal, or "faces" on a non-squarefree ideal
        VerificationFailure: the two methods disagree
    """
    if not ideal.is_monomial():
        raise PreconditionError("k_polynomial needs a monomial ideal")
    gens = ideal.monomials()
    squarefree = all(mono_is_squarefree(m) for m in gens)
    if method == "faces" and not squarefree:
        raise PreconditionError("the face sum needs a squarefree monomial ideal")

    taylor = None
    if method in ("taylor", "both"):
        taylor = poly_sum(weights.of_monomial(m).scale_monomial(ONE, c) for m, c in _taylor_sum(gens).items())
        if method == "taylor":
            return taylor
    support = {v for m in gens for v, _ in m}
    if not squarefree or (method == "both" and len(support) > FACE_SUM_MAX_SUPPORT):
        logger.debug("face sum skipped: squarefree=%s, support=%d", squarefree, len(support))
        return taylor
    faces = _face_sum(gens, weights)
    if taylor is not None and faces != taylor:
        raise VerificationFailure("K-polynomial methods disagree", witness=(str(taylor), str(faces)))
    return faces


def minimum_covers(gens: Sequence[Monomial]) -> List[frozenset]:
    """Minimum-size variable sets meeting the support of every generator."""
    supports = [frozenset(v for v, _ in m) for m in gens]
    best: List[frozenset] = []
    bound = [len({v for s in supports for v in s}) + 1]

    def branch(chosen: frozenset) -> None:
        if len(chosen) > bound[0]:
            return
        missing = next((s for s in supports if not (s & chosen)), None)
        if missing is None:
            if len(chosen) < bound[0]:
                bound[0] = len(chosen)
                best.clear()
            if chosen not in best:
                best.append(chosen)
            return
        if len(chosen) == bound[0]:
            return
        for v in sorted(missing):
            branch(chosen | {v})

    branch(frozenset())
    return sorted(best, key=lambda s: sorted(s))


def _artinian_length(gens: Sequence[Monomial], variables: Sequence[VariableId]) -> int:
    """Number of standard monomials of an ideal primary to the maximal ideal of `variables`."""
    caps = {}
    for v in variables:
        pure = [m[0][1] for m in gens if len(m) == 1 and m[0][0] == v]
        if not pure:
            raise VerificationFailure(f"ideal is not primary: no pure power of {v}", witness=v)
        caps[v] = min(pure)
    count = 0
    for exps in itertools.product(*(range(caps[v]) for v in variables)):
        m = make_monomial(dict(zip(variables, exps)))
        if not any(mono_divides(g, m) for g in gens):
            count += 1
    return count


def multidegree(ideal: Ideal, weights: GradedWeights) -> SparsePolynomial:
    """
    Sum over top-dimensional components <variables of a minimum cover> of
    multiplicity times the product of the weights of those variables.

    Multiplicities come from localizing: the variables outside the cover are set to 1.
    The result is checked against the lowest-degree part of the K-polynomial.

    Raises:
        PreconditionError: non-monomial ideal
        VerificationFailure: the component sum and the K-polynomial disagree
    """
    if not ideal.is_monomial():
        raise PreconditionError("multidegree needs a monomial ideal")
    gens = ideal.monomials()
    if ONE in gens:
        return ZERO
    total = ZERO
    covers = minimum_covers(gens)
    for cover in covers:
        local = minimalize(tuple((v, e) for v, e in m if v in cover) for m in gens)
        multiplicity = _artinian_length(local, sorted(cover))
        total = total + product(weights.weight(v) for v in sorted(cover)) * multiplicity
    expected = multidegree_from_k_polynomial(ideal, weights, len(covers[0]))
    if total != expected:
        raise VerificationFailure("multidegree differs from the K-polynomial's lowest-degree part",
                                  witness=(str(total), str(expected)))
    return total


def _one_minus_part(m: Monomial, degree: int) -> Iterator[Tuple[Monomial, int]]:
    """Terms of degree `degree` in prod_v (1 - t_v)^{e_v} over m = prod_v t_v^{e_v}."""
    items = list(m)
    room = [sum(e for _, e in items[i:]) for i in range(len(items) + 1)]

    def walk(i: int, left: int, picked: Dict[VariableId, int], coeff: int) -> Iterator[Tuple[Monomial, int]]:
        if left == 0:
            yield make_monomial(picked), coeff
            return
        if room[i] < left:
            return
        v, e = items[i]
        for k in range(min(e, left) + 1):
            yield from walk(i + 1, left - k, {**picked, v: k} if k else picked, coeff * (-1) ** k * comb(e, k))

    yield from walk(0, degree, {}, 1)


def multidegree_from_k_polynomial(ideal: Ideal, weights: GradedWeights, codim: int) -> SparsePolynomial:
    """
    Degree-codim part of K(1 - t) for the finely graded K-polynomial K(t), then t_v -> weight(v).

    K(1 - t) has nothing below the codimension, so this is its lowest-degree part.
    """
    acc: Dict[Monomial, int] = {}
    for m, c in _taylor_sum(ideal.monomials()).items():
        for picked, coeff in _one_minus_part(m, codim):
            acc[picked] = acc.get(picked, 0) + c * coeff
    return poly_sum(weights.of_monomial(m).scale_monomial(ONE, c) for m, c in acc.items() if c)


# ============================================================================
# SCHUBERT AND GROTHENDIECK POLYNOMIALS
# ============================================================================

def _linear(i: int, j: int) -> SparsePolynomial:
    return var(x(i)) - var(y(j))


def _k_factor(i: int, j: int) -> SparsePolynomial:
    return UNIT - SparsePolynomial.monomial(make_monomial({x(i): 1, y(j): -1}))


_Expansion = List[Tuple[int, List[SparsePolynomial]]]


def _tableau_expansion(perm: Permutation, factor: Callable[[int, int], SparsePolynomial], set_valued: bool) -> _Expansion:
    from utils.tableaux import fst, ft

    require_vexillary(perm, "tableau formula")
    tableaux = fst(perm) if set_valued else ft(perm)
    expansion = []
    for tableau in tableaux:
        factors = [factor(v, v + box.col - box.row) for box, entry in tableau.items() for v in entry]
        sign = -1 if (tableau.size - sum(tableau.shape)) % 2 else 1
        expansion.append((sign, factors))
    logger.debug("%s: %d tableau terms", perm, len(expansion))
    return expansion


def _pipe_dream_expansion(perm: Permutation, budget: EngineBudget) -> _Expansion:
    from utils.subword import SubwordComplex, staircase_word

    word = staircase_word(max(perm.n, 2))
    complex_ = SubwordComplex(word, perm, budget)
    return [
        (1, [_linear(box.row, box.col) for box in complex_.crosses(chosen)])
        for chosen in complex_.reduced_subwords()
    ]


def _interior_face_expansion(perm: Permutation, budget: EngineBudget) -> _Expansion:
    from utils.subword import gamma_complex

    require_vexillary(perm, "interior-face formula")
    complex_ = gamma_complex(perm, budget)
    ell = complex_.target_length()
    return [
        (-1 if (len(chosen) - ell) % 2 else 1, [_k_factor(box.row, box.col) for box in complex_.crosses(chosen)])
        for chosen in complex_.interior_complements()
    ]


def _sum_expansion(expansion: _Expansion) -> SparsePolynomial:
    return poly_sum(product(factors) * sign for sign, factors in expansion)


def _to_terms(expansion: _Expansion) -> List[ProductTerm]:
    return [ProductTerm(sign=sign, factors=tuple(str(f) for f in factors)) for sign, factors in expansion]


def product_terms(perm: Permutation, kind: Literal["schubert", "grothendieck"], method: str,
                  budget: EngineBudget = DEFAULT_BUDGET) -> List[ProductTerm]:
    """
    The unexpanded signed products behind a combinatorial formula.

    Schubert: tableau or pipedream. Grothendieck: tableau or interior_faces.
    """
    if kind == "schubert" and method == "tableau":
        return _to_terms(_tableau_expansion(perm, _linear, set_valued=False))
    if kind == "schubert" and method == "pipedream":
        return _to_terms(_pipe_dream_expansion(perm, budget))
    if kind == "grothendieck" and method == "tableau":
        return _to_terms(_tableau_expansion(perm, _k_factor, set_valued=True))
    if kind == "grothendieck" and method == "interior_faces":
        return _to_terms(_interior_face_expansion(perm, budget))
    raise PreconditionError(f"no product expansion for {kind} by {method}")


def expand_products(terms: Iterable[ProductTerm]) -> SparsePolynomial:
    """Multiply out a list of signed products given in polynomial text."""
    from utils.formats import parse_polynomial

    return poly_sum(product(parse_polynomial(f) for f in term.factors) * term.sign for term in terms)


def _operator_recursion(perm: Permutation, top: SparsePolynomial,
                        operator: Callable[[int, SparsePolynomial], SparsePolynomial]) -> SparsePolynomial:
    """Apply operator_i along ascents from the longest element down to perm, memoized per call."""
    n = max(perm.n, 1)
    w0 = longest_element(n).one_line
    memo: Dict[Tuple[int, ...], SparsePolynomial] = {w0: top}

    def compute(w: Tuple[int, ...]) -> SparsePolynomial:
        if w in memo:
            return memo[w]
        i = next(i for i in range(1, n) if w[i - 1] < w[i])
        above = swap_positions(Permutation(one_line=w), i, i + 1).one_line
        memo[w] = operator(i, compute(above))
        return memo[w]

    return compute(tuple(perm.one_line))


def _staircase_product(n: int, factor: Callable[[int, int], SparsePolynomial]) -> SparsePolynomial:
    return product(factor(i, j) for i in range(1, n) for j in range(1, n - i + 1))


def schubert(perm: Permutation, method: SchubertMethod = "divided_difference",
             budget: EngineBudget = DEFAULT_BUDGET) -> SparsePolynomial:
    """
    Double Schubert polynomial of perm.

    tableau: sum over FT(pi) of prod (x_v - y_{v+c-r}) (vexillary only).
    pipedream: sum over reduced pipe dreams of prod (x_i - y_j).
    divided_difference: recursion from prod_{i+j<=n} (x_i - y_j).
    multidegree: multidegree of the diagonal initial ideal, z_ij -> x_i - y_j.
    """
    if method == "tableau":
        return _sum_expansion(_tableau_expansion(perm, _linear, set_valued=False))
    if method == "pipedream":
        return _sum_expansion(_pipe_dream_expansion(perm, budget))
    if method == "divided_difference":
        n = max(perm.n, 1)
        return _operator_recursion(perm, _staircase_product(n, _linear), divided_difference)
    if method == "multidegree":
        return multidegree(diagonal_initial_ideal(perm, budget=budget), GradedWeights.multidegree(perm.n))
    raise PreconditionError(f"unknown Schubert method {method}")


def grothendieck(perm: Permutation, method: GrothendieckMethod = "demazure",
                 budget: EngineBudget = DEFAULT_BUDGET) -> SparsePolynomial:
    """
    Double Grothendieck polynomial of perm, a Laurent polynomial in y.

    tableau: signed sum over FST(pi) of prod (1 - x_v / y_{v+c-r}) (vexillary only).
    interior_faces: signed sum over interior faces of Gamma_pi (vexillary only).
    k_polynomial: K-polynomial of the diagonal initial ideal, z_pq -> x_p / y_q.
    demazure: isobaric divided differences from prod_{i+j<=n} (1 - x_i / y_j).
    """
    if method == "tableau":
        return _sum_expansion(_tableau_expansion(perm, _k_factor, set_valued=True))
    if method == "interior_faces":
        return _sum_expansion(_interior_face_expansion(perm, budget))
    if method == "k_polynomial":
        return k_polynomial(diagonal_initial_ideal(perm, budget=budget), GradedWeights.k_theory(perm.n))
    if method == "demazure":
        n = max(perm.n, 1)
        return _operator_recursion(perm, _staircase_product(n, _k_factor), demazure_operator)
    raise PreconditionError(f"unknown Grothendieck method {method}")


def lowest_degree_schubert(g: SparsePolynomial) -> SparsePolynomial:
    """Lowest homogeneous component of g(1-x, 1-y)."""
    return lowest_degree_after_one_minus(g)


def cross_validate(perm: Permutation, kind: Literal["schubert", "grothendieck"],
                   budget: EngineBudget = DEFAULT_BUDGET,
                   methods: Optional[Sequence[str]] = None) -> SparsePolynomial:
    """
    Compute every applicable method and assert they agree.

    Tableau and interior-face methods are skipped for non-vexillary perms. For
    Grothendieck polynomials the lowest-degree part of g(1-x, 1-y) must also equal
    the Schubert polynomial.

    Raises:
        VerificationFailure: two methods differ
    """
    vexillary = is_vexillary(perm)
    chosen = list(methods or (SCHUBERT_METHODS if kind == "schubert" else GROTHENDIECK_METHODS))
    if not vexillary:
        chosen = [m for m in chosen if m not in ("tableau", "interior_faces")]
    compute = schubert if kind == "schubert" else grothendieck
    results = {method: compute(perm, method, budget) for method in chosen}
    reference_method = chosen[0]
    reference = results[reference_method]
    for method, value in results.items():
        if value != reference:
            raise VerificationFailure(
                f"{kind} polynomial of {perm}: {method} disagrees with {reference_method}",
                witness={reference_method: str(reference), method: str(value)},
            )
    if kind == "grothendieck":
        expected = schubert(perm, "divided_difference", budget)
        if lowest_degree_schubert(reference) != expected:
            raise VerificationFailure(f"lowest degree of G_{perm}(1-x,1-y) is not S_{perm}", witness=str(reference))
    logger.info("%s: %d %s methods agree", perm, len(results), kind)
    return reference


# ============================================================================
# SINGLE GROTHENDIECK POLYNOMIALS OF GRASSMANNIAN PERMUTATIONS
# ============================================================================

def buch_specialize(g: SparsePolynomial) -> SparsePolynomial:
    """Replace every y_q by 1, then every x_p by 1 - x_p."""
    ys = {v: UNIT for v in g.variables() if v.kind == "y"}
    specialized = g.substitute(ys)
    return specialized.substitute(one_minus_images(v for v in specialized.variables() if v.kind == "x"))


def buch_tableau_sum(shape: Partition, k: int) -> SparsePolynomial:
    """Sum over set-valued tableaux of `shape` with entries <= k of (-1)^{|tau|-|lambda|} prod x_v."""
    from utils.tableaux import enumerate_svt

    total = ZERO
    for tableau in enumerate_svt(shape, k):
        sign = -1 if (tableau.size - shape.size) % 2 else 1
        total = total + product(var(x(v)) for _, entry in tableau.items() for v in entry) * sign
    return total


def grassmannian_single_grothendieck(shape: Partition, k: int) -> SparsePolynomial:
    """
    buch_specialize(G_{pi~}) for the Grassmannian perm of `shape`, computed with y = 1
    from the start so the recursion stays in the x-variables.
    """
    perm = grassmannian_from_shape(shape, k)
    n = max(perm.n, 1)
    top = product((UNIT - var(x(i))) ** (n - i) for i in range(1, n))
    g = _operator_recursion(perm, top, demazure_operator)
    return g.substitute(one_minus_images(v for v in g.variables() if v.kind == "x"))
