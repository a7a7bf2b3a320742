"""
gvd.py

Geometric vertex decomposition: the one-variable degeneration I' = init_y I with its
cone ideal C and projection ideal P, the Hilbert series comparison, the Schubert
induction step at an accessible box, and the iterated decomposition down to the
diagonal initial ideal.
"""

import logging
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import sympy

from models.algebra import GvdSplit
from models.permutation import Box, Permutation
from models.reports import GvdStepRecord, GvdTrace, HilbertComparison
from utils.config import DEFAULT_BUDGET, EngineBudget
from utils.detideal import diagonal_initial_ideal, diagonal_order, schubert_ideal
from utils.errors import PreconditionError, VerificationFailure
from utils.groebner import (
    Ideal,
    buchberger,
    ideal_equal,
    intersect,
    is_groebner_basis,
    minimalize,
    monomial_intersect,
    monomial_radical,
    saturate,
)
from utils.invariants import GradedWeights, hilbert_series, multidegree
from utils.permcore import accessible_boxes, descend_PC, require_vexillary, shape_mu, southeast_accessible_box
from utils.polyring import (
    Monomial,
    SparsePolynomial,
    TermOrder,
    VariableId,
    block,
    default_order,
    initial_y_form,
    leading_monomial,
    mono_is_squarefree,
    mono_str,
    var,
    x,
    y,
    y_decomposition,
    z,
)
from utils.subword import SimplicialComplex

logger = logging.getLogger(__name__)


# ============================================================================
# THE SPLIT
# ============================================================================

def _leading_ideal(gens, order: TermOrder, ring) -> Ideal:
    return Ideal.from_monomials(minimalize(leading_monomial(g, order) for g in gens), ring)


def _require_gb(gens, order: TermOrder, label: str, budget: EngineBudget) -> None:
    check = is_groebner_basis(list(gens), order, budget)
    if not check.is_groebner:
        raise VerificationFailure(f"generators of {label} are not a Groebner basis under {order.name}", check.witness)


def split_CP(ideal: Ideal, yvar: VariableId, inner: Optional[TermOrder] = None,
             budget: EngineBudget = DEFAULT_BUDGET) -> GvdSplit:
    """
    Degenerate `ideal` along yvar and split the limit into cone and projection ideals.

    Every element g of a Groebner basis under the y-block order is written
    y^d q + r with y not dividing q; then I' = <y^d q>, C = <q> and
    P = <q : d = 0> + <y>. Along the way the following are asserted:
    the three generating sets are Groebner bases; for max d <= 1, I' = C meet P and
    init(C + P) = init C + init P; the radical of init I' is the intersection of the
    radicals of init C and init P; and I' saturated by y is C.

    Args:
        ideal: any ideal; its ring must contain yvar
        yvar: the variable to degenerate along
        inner: the tie-breaking order on the other variables (graded lex by default)
        budget: Buchberger limits

    Returns:
        the split, with is_gvd = (I' == C meet P)

    Raises:
        VerificationFailure: one of the asserted properties fails
        BudgetExhausted: any Groebner computation runs out of budget
    """
    ring = tuple(ideal.ring) + (yvar,)
    if inner is None:
        inner = default_order(v for v in ring if v != yvar)
    order = block([yvar], inner)
    basis = buchberger(Ideal(ideal.generators, ring), order, budget)

    for g in basis:
        if leading_monomial(g, order) != leading_monomial(initial_y_form(g, yvar), order):
            raise VerificationFailure(f"the order is not compatible with the y-degree of {g}", witness=str(g))

    degrees, lifted, cone, projection = [], [], [], []
    y_poly = var(yvar)
    for g in basis:
        d, q, _ = y_decomposition(g, yvar)
        degrees.append(d)
        lifted.append(q * (y_poly ** d))
        cone.append(q)
        if d == 0:
            projection.append(q)
    projection.append(y_poly)
    I_prime, C, P = Ideal(lifted, ring), Ideal(cone, ring), Ideal(projection, ring)

    _require_gb(I_prime.generators, order, "I'", budget)
    _require_gb(C.generators, order, "C", budget)
    _require_gb(P.generators, order, "P", budget)

    meet = intersect(C, P, budget)
    is_gvd = ideal_equal(I_prime, meet, budget)

    init_C = _leading_ideal(C.generators, order, ring)
    init_P = _leading_ideal(P.generators, order, ring)
    if max(degrees, default=0) <= 1:
        if not is_gvd:
            raise VerificationFailure("I' differs from C meet P although every y-degree is at most 1", witness=str(I_prime))
        joint = buchberger(C + P, order, budget).initial_ideal()
        if joint.monomials() != minimalize(init_C.monomials() + init_P.monomials()):
            raise VerificationFailure("init(C + P) differs from init C + init P", witness=str(joint))

    init_I = _leading_ideal(I_prime.generators, order, ring)
    radical_meet = monomial_intersect(monomial_radical(init_C).monomials(), monomial_radical(init_P).monomials())
    if monomial_radical(init_I).monomials() != radical_meet:
        raise VerificationFailure("radical of init I' is not the intersection of the radicals of init C and init P",
                                  witness=[mono_str(m) for m in radical_meet])

    if not ideal_equal(saturate(I_prime, yvar, budget), C, budget):
        raise VerificationFailure(f"I' saturated by {yvar} is not C", witness=str(C))

    logger.info("split at %s: degrees %s, geometric vertex decomposition %s", yvar, degrees, is_gvd)
    return GvdSplit(y=yvar, I_prime=I_prime, C=C, P=P, degrees=tuple(degrees), is_gvd=is_gvd, basis=basis)


# ============================================================================
# HILBERT SERIES COMPARISON
# ============================================================================

def hilbert_check(ideal: Ideal, split: GvdSplit) -> HilbertComparison:
    """
    Compare h_{R/I} with h_{R/P} + s h_{R/C}; equality must hold exactly for splits
    that are geometric vertex decompositions.

    Raises:
        PreconditionError: the ideal is not homogeneous
        VerificationFailure: the equality verdict disagrees with split.is_gvd
    """
    if not ideal.is_homogeneous():
        raise PreconditionError("hilbert_check needs a homogeneous ideal")
    order = split.basis.order
    ring = split.basis.ring
    width = len(ring)
    series_I = hilbert_series(split.basis.initial_ideal(), width)
    series_C = hilbert_series(_leading_ideal(split.C.generators, order, ring), width)
    series_P = hilbert_series(_leading_ideal(split.P.generators, order, ring), width)
    s = sympy.Symbol("s")
    difference = series_I.to_sympy() - (series_P.to_sympy() + s * series_C.to_sympy())
    equal = sympy.cancel(difference) == 0
    if equal != split.is_gvd:
        raise VerificationFailure(
            f"Hilbert series equality {equal} disagrees with the decomposition verdict {split.is_gvd}",
            witness=str(sympy.cancel(difference)),
        )
    return HilbertComparison(
        ideal_series=str(series_I),
        projection_series=str(series_P),
        cone_series=str(series_C),
        equal=equal,
    )


# ============================================================================
# SCHUBERT STEPS
# ============================================================================

def gvd_step_schubert(perm: Permutation, box: Optional[Box] = None, budget: EngineBudget = DEFAULT_BUDGET,
                      with_hilbert: bool = True) -> Tuple[GvdSplit, GvdStepRecord]:
    """
    Split I_pi at z_pq for an accessible box (p,q) and identify the pieces:
    C = I_{pi_C} and P = I_{pi_P} + <z_pq>.

    The essential minors of pi (and of pi_C) are certified as diagonal Groebner
    bases first, and the split must be a geometric vertex decomposition.

    Raises:
        PreconditionError: non-vexillary perm or inaccessible box
        VerificationFailure: any identification or certification fails
    """
    require_vexillary(perm, "gvd_step_schubert")
    box = box or southeast_accessible_box(perm)
    if box is None:
        raise PreconditionError(f"{perm} has no accessible box")
    n = perm.n
    order = diagonal_order(n)
    ideal = schubert_ideal(perm)
    _require_gb(ideal.generators, order, f"A_{perm}", budget)

    perm_p, perm_c = descend_PC(perm, box)
    yvar = z(*box)
    split = split_CP(ideal, yvar, order, budget)

    if not ideal_equal(split.C, schubert_ideal(perm_c), budget):
        raise VerificationFailure(f"C is not the ideal of pi_C = {perm_c}", witness=str(split.C))
    expected_p = schubert_ideal(perm_p) + Ideal([var(yvar)])
    if not ideal_equal(split.P, expected_p, budget):
        raise VerificationFailure(f"P is not the ideal of pi_P = {perm_p} plus <{yvar}>", witness=str(split.P))
    _require_gb(schubert_ideal(perm_c).generators, order, f"A_{perm_c}", budget)
    if not split.is_gvd:
        raise VerificationFailure(f"the split of I_{perm} at {box} is not a geometric vertex decomposition")

    hilbert_equal = hilbert_check(ideal, split).equal if with_hilbert else None
    record = GvdStepRecord(box=box, perm_P=list(perm_p.one_line), perm_C=list(perm_c.one_line),
                           is_gvd=split.is_gvd, hilbert_equal=hilbert_equal)
    return split, record


def _z_over(shape_boxes) -> List[Monomial]:
    return [((z(b.row, b.col), 1),) for b in shape_boxes]


def iterate_gvd(perm: Permutation, budget: EngineBudget = DEFAULT_BUDGET, certify: bool = True,
                seed: Optional[int] = None) -> GvdTrace:
    """
    Decompose I_pi repeatedly until every piece is monomial.

    The limit ideal obeys M(pi) = M(pi_C) meet (M(pi_P) + <z_pq>), with M(pi) generated
    by the variables of mu(pi) once every rank condition is zero. Boxes are taken
    southeast first, or at random among the accessible ones when a seed is given.
    Every intermediate limit must be squarefree and the final one must be the
    diagonal initial ideal.

    Args:
        perm: a vexillary permutation
        budget: Buchberger limits
        certify: run gvd_step_schubert at every node instead of only descending
        seed: choose accessible boxes at random with this seed

    Returns:
        the trace of steps in the order they were taken, and the final monomial ideal

    Raises:
        VerificationFailure: a limit is not squarefree or the final ideal is wrong
    """
    require_vexillary(perm, "iterate_gvd")
    rng = np.random.default_rng(seed) if seed is not None else None
    memo: Dict[Tuple[int, ...], List[Monomial]] = {}
    steps: List[GvdStepRecord] = []

    def choose(current: Permutation) -> Optional[Box]:
        if rng is None:
            return southeast_accessible_box(current)
        boxes = sorted(accessible_boxes(current))
        return boxes[int(rng.integers(len(boxes)))] if boxes else None

    def limit(current: Permutation) -> List[Monomial]:
        key = current.trimmed()
        if key in memo:
            return memo[key]
        box = choose(current)
        if box is None:
            result = minimalize(_z_over(shape_mu(current).boxes()))
        else:
            if certify:
                _, record = gvd_step_schubert(current, box, budget, with_hilbert=False)
                perm_p, perm_c = Permutation.of(record.perm_P), Permutation.of(record.perm_C)
            else:
                perm_p, perm_c = descend_PC(current, box)
                record = GvdStepRecord(box=box, perm_P=list(perm_p.one_line), perm_C=list(perm_c.one_line))
            steps.append(record)
            projection = limit(perm_p) + [((z(*box), 1),)]
            result = monomial_intersect(limit(perm_c), projection)
        if not all(mono_is_squarefree(m) for m in result):
            raise VerificationFailure(f"limit ideal of {current} is not squarefree", witness=[mono_str(m) for m in result])
        memo[key] = result
        return result

    final = limit(perm)
    expected = diagonal_initial_ideal(perm, budget=budget).monomials()
    if final != expected:
        raise VerificationFailure(
            f"iterated decomposition of {perm} does not reach the diagonal initial ideal",
            witness=[mono_str(m) for m in final],
        )
    logger.info("%s: %d decomposition steps", perm, len(steps))
    return GvdTrace(perm=list(perm.one_line), steps=steps, monomial_ideal=[mono_str(m) for m in final])


def check_multidegree_additivity(perm: Permutation, box: Optional[Box] = None,
                                 budget: EngineBudget = DEFAULT_BUDGET) -> SparsePolynomial:
    """
    Assert [init I_pi] = (x_p - y_q)[init I_{pi_P}] + [init I_{pi_C}] for multidegrees
    under z_ij -> x_i - y_j.

    Returns:
        the multidegree of init I_pi
    """
    require_vexillary(perm, "check_multidegree_additivity")
    box = box or southeast_accessible_box(perm)
    if box is None:
        raise PreconditionError(f"{perm} has no accessible box")
    perm_p, perm_c = descend_PC(perm, box)
    weights = GradedWeights.multidegree(perm.n)

    def degree_of(p: Permutation) -> SparsePolynomial:
        return multidegree(diagonal_initial_ideal(p, budget=budget), weights)

    whole = degree_of(perm)
    parts = (var(x(box.row)) - var(y(box.col))) * degree_of(perm_p) + degree_of(perm_c)
    if whole != parts:
        raise VerificationFailure(f"multidegree of {perm} is not additive at {box}", witness=(str(whole), str(parts)))
    return whole


# ============================================================================
# STANLEY-REISNER SPLITS
# ============================================================================

def stanley_reisner_split(complex_: SimplicialComplex, vertex, var_of: Callable[[object], VariableId],
                          budget: EngineBudget = DEFAULT_BUDGET) -> GvdSplit:
    """
    Split the Stanley-Reisner ideal of a complex at a vertex: the limit is the ideal
    itself, C is the ideal of the star and P the ideal of the deletion.

    Raises:
        VerificationFailure: any of the three identifications fails
    """
    ideal = complex_.stanley_reisner(var_of)
    yvar = var_of(vertex)
    split = split_CP(ideal, yvar, budget=budget)
    if not ideal_equal(split.I_prime, ideal, budget):
        raise VerificationFailure(f"degenerating a monomial ideal at {yvar} changed it", witness=str(split.I_prime))
    if not ideal_equal(split.C, complex_.star(vertex).stanley_reisner(var_of), budget):
        raise VerificationFailure(f"C is not the ideal of the star of {vertex}", witness=str(split.C))
    if not ideal_equal(split.P, complex_.deletion(vertex).stanley_reisner(var_of), budget):
        raise VerificationFailure(f"P is not the ideal of the deletion of {vertex}", witness=str(split.P))
    if not split.is_gvd:
        raise VerificationFailure(f"Stanley-Reisner split at {vertex} is not a decomposition")
    return split
