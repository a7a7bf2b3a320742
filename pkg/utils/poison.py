"""
poison.py

Poisonings of determinantal generators: sets of crosses meeting the main diagonal of
every minor in a generating set. The cross diagram of a permutation always poisons
its essential minors, and it does so minimally exactly for vexillary permutations.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

from models.combinatorics import Diagonal, MinorSpec, PipeDream
from models.permutation import Box, Permutation
from models.reports import MinimalityResult, PoisonCertificate
from utils.detideal import diagonal_monomial, essential_minors, full_minors
from utils.errors import PreconditionError, VerificationFailure
from utils.groebner import monomial_in
from utils.permcore import antidiagonal_dot_pair, diagram, essential_set, is_vexillary, length
from utils.polyring import make_monomial, z

logger = logging.getLogger(__name__)


# ============================================================================
# CROSS DIAGRAM
# ============================================================================

def cross_diagram(perm: Permutation) -> PipeDream:
    """C(pi): a cross on every box of the diagram, elbows elsewhere."""
    n = max(perm.n, 1)
    pd = PipeDream(k=n, N=n, crosses=tuple(diagram(perm)))
    if len(pd) != length(perm):
        raise VerificationFailure(f"cross diagram of {perm} has {len(pd)} crosses for length {length(perm)}")
    return pd


# ============================================================================
# POISONING
# ============================================================================

def poisons(pd: PipeDream, target: Union[Diagonal, MinorSpec]) -> bool:
    """True when some box on the (main) diagonal is a cross of pd."""
    diagonal = target.diagonal() if isinstance(target, MinorSpec) else target
    crosses = pd.cross_set()
    return any(box in crosses for box in diagonal.boxes)


def _clean_chain_lengths(crosses: Iterable[Box], rows: int, cols: int) -> np.ndarray:
    """
    L[i, j]: length of the longest diagonal inside the northwest i x j block that
    avoids every cross.
    """
    blocked = np.zeros((rows + 1, cols + 1), dtype=bool)
    for box in crosses:
        if box.row <= rows and box.col <= cols:
            blocked[box.row, box.col] = True
    chains = np.zeros((rows + 1, cols + 1), dtype=int)
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            through = chains[i - 1, j - 1] + (0 if blocked[i, j] else 1)
            chains[i, j] = max(chains[i - 1, j], chains[i, j - 1], through)
    return chains


def poisons_essential(pd: PipeDream, perm: Permutation) -> bool:
    """
    True when pd poisons every essential minor of perm.

    The (1 + r)-minors of the p x q block are all poisoned iff no cross-free
    diagonal of length 1 + r fits in the block.
    """
    ess = essential_set(perm)
    if not ess:
        return True
    rows = max(entry.box.row for entry in ess)
    cols = max(entry.box.col for entry in ess)
    chains = _clean_chain_lengths(pd.crosses, rows, cols)
    return all(chains[entry.box.row, entry.box.col] <= entry.rank for entry in ess)


def _unpoisoned_minor(pd: PipeDream, perm: Permutation) -> Optional[MinorSpec]:
    return next((spec for spec in essential_minors(perm) if not poisons(pd, spec)), None)


def _removal_candidates(pd: PipeDream, perm: Permutation) -> List[Box]:
    """Crosses with an antidiagonal dot pair to their northwest first, northwest-most first."""
    crosses = sorted(pd.crosses)
    preferred = [box for box in crosses
                 if box.row <= perm.n and box.col <= perm.n and antidiagonal_dot_pair(perm, box) is not None]
    return preferred + [box for box in crosses if box not in preferred]


def is_minimal_poisoning(pd: PipeDream, perm: Permutation) -> MinimalityResult:
    """
    Decide whether every cross of pd is needed to poison the essential minors.

    Args:
        pd: a poisoning of the essential minors of perm
        perm: the permutation whose minors are poisoned

    Returns:
        is_minimal, and on False a cross whose removal keeps the poisoning

    Raises:
        PreconditionError: pd does not poison every essential minor
    """
    if not poisons_essential(pd, perm):
        missed = _unpoisoned_minor(pd, perm)
        raise PreconditionError(
            f"crosses do not poison the minor on rows {missed.row_set if missed else ()} "
            f"and columns {missed.col_set if missed else ()}"
        )
    for box in _removal_candidates(pd, perm):
        if poisons_essential(pd.without(box), perm):
            logger.info("%s: cross %s can be dropped from the poisoning", perm, box)
            return MinimalityResult(is_minimal=False, removable_cross=box)
    return MinimalityResult(is_minimal=True)


# ============================================================================
# DIVISIBILITY AND SHARPNESS
# ============================================================================

def _diagonal_terms(specs: Sequence[MinorSpec]):
    return [diagonal_monomial(s.row_set, s.col_set) for s in specs]


def diagonal_divisibility(perm: Permutation) -> bool:
    """Every diagonal term of a minor in B_pi is divisible by the diagonal term of a minor in A_pi."""
    essential_terms = _diagonal_terms(essential_minors(perm))
    for spec in full_minors(perm):
        if not monomial_in(diagonal_monomial(spec.row_set, spec.col_set), essential_terms):
            logger.info("%s: diagonal of rows %s, columns %s escapes A_pi", perm, spec.row_set, spec.col_set)
            return False
    return True


def sharpness_certificate(perm: Permutation) -> PoisonCertificate:
    """
    A poisoning of A_pi with fewer crosses than the length of a non-vexillary pi.

    The ideal generated by the cross variables then contains every diagonal term of
    A_pi, giving a component of the initial scheme of codimension below the length.

    Raises:
        PreconditionError: perm is vexillary
        VerificationFailure: the cross diagram is minimal or the containment fails
    """
    if is_vexillary(perm):
        raise PreconditionError(f"{perm} is vexillary; its cross diagram is a minimal poisoning")
    full = cross_diagram(perm)
    verdict = is_minimal_poisoning(full, perm)
    if verdict.is_minimal:
        raise VerificationFailure(f"cross diagram of non-vexillary {perm} is a minimal poisoning")
    reduced = full.without(verdict.removable_cross)
    generators = [make_monomial({z(b.row, b.col): 1}) for b in reduced.crosses]
    outside = [term for term in _diagonal_terms(essential_minors(perm)) if not monomial_in(term, generators)]
    if outside:
        raise VerificationFailure(f"cross ideal misses {len(outside)} diagonal terms of {perm}", witness=outside[0])
    return PoisonCertificate(
        perm=list(perm.one_line),
        length=length(perm),
        poison_crosses=list(reduced.crosses),
        codim=len(reduced.crosses),
        contains_diagonal_terms=True,
    )
