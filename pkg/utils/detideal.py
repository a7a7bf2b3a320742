"""
detideal.py

Schubert determinantal ideals: essential (A_pi) and full (B_pi) minor generating
sets, diagonal and antidiagonal term orders on the generic matrix z, and the
diagonal Groebner-basis verdict.
"""

import itertools
import logging
from functools import lru_cache
from typing import Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np

from models.combinatorics import MinorSpec
from models.permutation import Box, Permutation
from models.reports import GbVerdict
from utils.config import DEFAULT_BUDGET, EngineBudget, OrderChoice
from utils.errors import BudgetExhausted, VerificationFailure
from utils.groebner import Ideal, buchberger, is_groebner_basis, minimalize
from utils.permcore import essential_set, is_vexillary, rank_array
from utils.polyring import (
    Monomial,
    SparsePolynomial,
    TermOrder,
    VariableId,
    leading_monomial,
    lex,
    make_monomial,
    mono_str,
    z,
)

logger = logging.getLogger(__name__)


# ============================================================================
# MINORS
# ============================================================================

def z_ring(n: int) -> List[VariableId]:
    return [z(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def _parity(perm: Sequence[int]) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=4096)
def minor_polynomial(rows: Tuple[int, ...], cols: Tuple[int, ...]) -> SparsePolynomial:
    """Determinant of z restricted to rows x cols, expanded over all permutations."""
    terms = {}
    for perm in itertools.permutations(range(len(cols))):
        m = make_monomial({z(r, cols[perm[idx]]): 1 for idx, r in enumerate(rows)})
        terms[m] = terms.get(m, 0) + _parity(perm)
    return SparsePolynomial(terms)


def diagonal_monomial(rows: Sequence[int], cols: Sequence[int]) -> Monomial:
    return make_monomial({z(r, c): 1 for r, c in zip(rows, cols)})


def minors_in_corner(corner: Box, size: int) -> Iterable[MinorSpec]:
    for rows in itertools.combinations(range(1, corner.row + 1), size):
        for cols in itertools.combinations(range(1, corner.col + 1), size):
            yield MinorSpec(corner=corner, size=size, row_set=rows, col_set=cols)


def essential_minors(perm: Permutation) -> List[MinorSpec]:
    """A_pi: minors of size 1 + r_pq in z_{p x q}, for (p,q) in Ess(pi)."""
    specs = []
    for entry in sorted(essential_set(perm)):
        specs.extend(minors_in_corner(entry.box, entry.rank + 1))
    return specs


def full_minors(perm: Permutation) -> List[MinorSpec]:
    """B_pi: the same minors over every (p,q) of the n x n grid, deduplicated by row/column sets."""
    ranks = rank_array(perm)
    seen = set()
    specs = []
    for p in range(1, perm.n + 1):
        for q in range(1, perm.n + 1):
            size = ranks.at(p, q) + 1
            if size > min(p, q):
                continue
            for spec in minors_in_corner(Box(p, q), size):
                key = (spec.row_set, spec.col_set)
                if key not in seen:
                    seen.add(key)
                    specs.append(spec)
    return specs


def schubert_ideal(perm: Permutation, which: Literal["essential", "full"] = "essential") -> Ideal:
    """
    I_pi generated by its essential minors (A_pi) or by all rank-condition minors (B_pi).

    The ring is always the full n x n generic matrix.
    """
    specs = essential_minors(perm) if which == "essential" else full_minors(perm)
    return Ideal((minor_polynomial(s.row_set, s.col_set) for s in specs), z_ring(perm.n))


# ============================================================================
# TERM ORDERS ON THE GENERIC MATRIX
# ============================================================================

def diagonal_order(n: int) -> TermOrder:
    """Row-major lex z11 > z12 > ... > z1n > z21 > ...; no variable precedes one to its northwest."""
    return lex(z_ring(n), name=f"diagonal({n})")


def antidiagonal_order(n: int) -> TermOrder:
    """Rows top to bottom, columns right to left: the antidiagonal of every minor leads."""
    priority = [z(i, j) for i in range(1, n + 1) for j in range(n, 0, -1)]
    return lex(priority, name=f"antidiagonal({n})")


def random_diagonal_order(n: int, seed: int) -> TermOrder:
    """
    Lex order along a random linear extension of "northwest before southeast".

    Any such order picks main diagonals as leading terms.
    """
    rng = np.random.default_rng(seed)
    remaining = {(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    priority = []
    while remaining:
        minimal = sorted(
            (i, j) for (i, j) in remaining
            if (i - 1, j) not in remaining and (i, j - 1) not in remaining
        )
        i, j = minimal[int(rng.integers(len(minimal)))]
        remaining.discard((i, j))
        priority.append(z(i, j))
    return lex(priority, name=f"diagonal({n},seed={seed})")


def order_for(choice: OrderChoice, n: int) -> TermOrder:
    if choice.kind == "antidiagonal":
        return antidiagonal_order(n)
    if choice.kind == "seed":
        return random_diagonal_order(n, choice.seed or 0)
    return diagonal_order(n)


def check_diagonal_property(order: TermOrder, n: int, max_size: Optional[int] = None, anti: bool = False) -> None:
    """
    Assert the leading term of every square minor of z is its main diagonal
    (or antidiagonal when `anti`).

    Raises:
        VerificationFailure: naming the first minor that fails
    """
    for size in range(1, (max_size or n) + 1):
        for rows in itertools.combinations(range(1, n + 1), size):
            for cols in itertools.combinations(range(1, n + 1), size):
                expected = diagonal_monomial(rows, tuple(reversed(cols)) if anti else cols)
                got = leading_monomial(minor_polynomial(rows, cols), order)
                if got != expected:
                    raise VerificationFailure(
                        f"{order.name} picks {mono_str(got)} for minor rows={rows} cols={cols}",
                        witness=(rows, cols),
                    )


# ============================================================================
# GROEBNER VERDICT
# ============================================================================

def diagonal_initial_ideal(perm: Permutation, order: Optional[TermOrder] = None,
                           budget: EngineBudget = DEFAULT_BUDGET) -> Ideal:
    """
    init I_pi under a diagonal order.

    For vexillary pi the essential minors are certified as a Groebner basis and their
    diagonal terms are returned; otherwise Buchberger runs.
    """
    order = order or diagonal_order(perm.n)
    ideal = schubert_ideal(perm)
    if is_vexillary(perm):
        check = is_groebner_basis(ideal.generators, order, budget)
        if not check.is_groebner:
            raise VerificationFailure(f"essential minors of vexillary {perm} are not a Groebner basis", check.witness)
        leads = [leading_monomial(g, order) for g in ideal.generators]
        return Ideal.from_monomials(minimalize(leads), ideal.ring)
    return buchberger(ideal, order, budget).initial_ideal()


def verify_diagonal_gb(perm: Permutation, budget: EngineBudget = DEFAULT_BUDGET,
                       check_complex: bool = True) -> GbVerdict:
    """
    Check whether the essential minors form a diagonal Groebner basis.

    The verdict must equal is_vexillary(perm). Vexillary input is also checked under
    budget.random_orders sampled diagonal orders and its initial ideal compared to the
    Stanley-Reisner ideal of its subword complex.

    Raises:
        VerificationFailure: verdict and vexillarity disagree, or the initial ideal
            differs from the Stanley-Reisner ideal
        BudgetExhausted: the S-pair check ran out of budget
    """
    n = perm.n
    vexillary = is_vexillary(perm)
    ideal = schubert_ideal(perm)
    order = diagonal_order(n)
    check = is_groebner_basis(ideal.generators, order, budget)
    orders = [order.name]
    if check.is_groebner != vexillary:
        raise VerificationFailure(
            f"diagonal Groebner verdict {check.is_groebner} disagrees with vexillarity {vexillary} for {perm}",
            witness=check.witness,
        )
    verdict = GbVerdict(perm=list(perm.one_line), vexillary=vexillary, diagonal_gb=check.is_groebner,
                        witness_spair=check.witness)
    if not vexillary:
        logger.info("%s: essential minors are not a diagonal Groebner basis", perm)
        return verdict

    for offset in range(budget.random_orders):
        sampled = random_diagonal_order(n, budget.seed + offset)
        if not is_groebner_basis(ideal.generators, sampled, budget).is_groebner:
            raise VerificationFailure(f"{perm}: essential minors fail under {sampled.name}", witness=sampled.name)
        orders.append(sampled.name)

    init = Ideal.from_monomials(minimalize(leading_monomial(g, order) for g in ideal.generators), ideal.ring)
    verdict.initial_ideal = [mono_str(m) for m in init.monomials()]
    verdict.orders_checked = orders
    if check_complex:
        from utils.subword import gamma_complex, stanley_reisner, z_of_position

        try:
            complex_ = gamma_complex(perm, budget)
            sr = stanley_reisner(complex_, z_of_position(complex_.word))
        except BudgetExhausted as exc:
            logger.warning("%s: skipping the subword-complex comparison (%s)", perm, exc)
        else:
            verdict.stanley_reisner_match = sr.monomials() == init.monomials()
            if not verdict.stanley_reisner_match:
                raise VerificationFailure(
                    f"{perm}: initial ideal differs from the Stanley-Reisner ideal of its subword complex",
                    witness=[mono_str(m) for m in sr.monomials()],
                )
    logger.info("%s: diagonal Groebner basis certified under %d orders", perm, len(orders))
    return verdict
