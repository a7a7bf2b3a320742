"""
tableaux.py

Semistandard and set-valued tableaux, their flagged enumerations, and the map Omega
from tableaux to pipe dreams together with its inverse and the structural checks on
its images.
"""

import itertools
import logging
from math import prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from models.combinatorics import PipeDream, SetValuedTableau, Word
from models.permutation import Box, Flag, Partition, Permutation
from utils.errors import PreconditionError, VerificationFailure
from utils.permcore import flag, require_vexillary, shape_lambda
from utils.subword import absorbable_elbows, trace_pipes

logger = logging.getLogger(__name__)


# ============================================================================
# ENUMERATION
# ============================================================================

def _row_bounds(shape: Partition, max_entry: int, flagging: Optional[Flag]) -> List[int]:
    if flagging is None:
        return [max_entry] * len(shape)
    if len(flagging) != len(shape):
        raise PreconditionError(f"flag {list(flagging.bounds)} does not match shape {shape}")
    return [min(max_entry, b) for b in flagging.bounds]


def enumerate_svt(shape: Partition, max_entry: int, flagging: Optional[Flag] = None,
                  set_valued: bool = True) -> Iterator[SetValuedTableau]:
    """
    Stream the (flagged) set-valued tableaux of `shape` with entries at most max_entry.

    Boxes are filled in row-major order; the candidates for a box are the nonempty
    subsets of [lo, bound], where lo respects the box to the left (weakly) and the
    box above (strictly). With set_valued=False only singletons are tried.

    Args:
        shape: the Young diagram
        max_entry: global bound on entries
        flagging: optional per-row bounds f(i)
        set_valued: allow sets of size > 1

    Returns:
        a generator in a deterministic order
    """
    bounds = _row_bounds(shape, max_entry, flagging)
    boxes = list(shape.boxes())
    filling: Dict[Box, Tuple[int, ...]] = {}

    def candidates(box: Box) -> Iterator[Tuple[int, ...]]:
        lo = 1
        if box.col > 1:
            lo = max(lo, filling[Box(box.row, box.col - 1)][-1])
        if box.row > 1:
            lo = max(lo, filling[Box(box.row - 1, box.col)][-1] + 1)
        values = range(lo, bounds[box.row - 1] + 1)
        sizes = range(1, len(values) + 1) if set_valued else range(1, 2)
        for size in sizes:
            yield from itertools.combinations(values, size)

    def fill(idx: int) -> Iterator[SetValuedTableau]:
        if idx == len(boxes):
            yield SetValuedTableau.from_entries(shape, filling)
            return
        box = boxes[idx]
        for entry in candidates(box):
            filling[box] = entry
            yield from fill(idx + 1)
        filling.pop(box, None)

    yield from fill(0)


def enumerate_ssyt(shape: Partition, max_entry: int, flagging: Optional[Flag] = None) -> Iterator[SetValuedTableau]:
    return enumerate_svt(shape, max_entry, flagging, set_valued=False)


def fst(perm: Permutation) -> List[SetValuedTableau]:
    """FST(pi): set-valued tableaux of shape lambda(pi) flagged by f_pi."""
    require_vexillary(perm, "fst")
    bounds = flag(perm)
    found = list(enumerate_svt(shape_lambda(perm), max(bounds.bounds, default=0), bounds))
    logger.debug("|FST(%s)| = %d", perm, len(found))
    return found


def ft(perm: Permutation) -> List[SetValuedTableau]:
    """FT(pi): the ordinary tableaux inside FST(pi)."""
    require_vexillary(perm, "ft")
    bounds = flag(perm)
    return list(enumerate_ssyt(shape_lambda(perm), max(bounds.bounds, default=0), bounds))


def hook_content_count(shape: Partition, k: int) -> int:
    """s_lambda(1, ..., 1) with k ones, by the hook-content formula."""
    columns = [sum(1 for part in shape.parts if part >= c) for c in range(1, (shape.parts[0] if shape.parts else 0) + 1)]
    numerator = prod(k + box.col - box.row for box in shape.boxes())
    hooks = prod(
        (shape.parts[box.row - 1] - box.col) + (columns[box.col - 1] - box.row) + 1
        for box in shape.boxes()
    )
    return numerator // hooks


def minimum_tableau(tableau: SetValuedTableau) -> SetValuedTableau:
    """tau-bar: keep only the smallest entry of each box."""
    return SetValuedTableau(
        shape=tableau.shape,
        rows=tuple(tuple((entry[0],) for entry in row) for row in tableau.rows),
    )


# ============================================================================
# OMEGA
# ============================================================================

def _cross_of(value: int, box: Box) -> Box:
    return Box(value, value + box.col - box.row)


def omega(tableau: SetValuedTableau, k: int, N: int) -> PipeDream:
    """
    For each value i in box b, a cross in row i on the diagonal of b.

    Raises:
        PreconditionError: a cross falls outside the k x N grid
        VerificationFailure: two entries land on the same cross
    """
    crosses = []
    for box, entry in tableau.items():
        for value in entry:
            cross = _cross_of(value, box)
            if not (1 <= cross.row <= k and 1 <= cross.col <= N):
                raise PreconditionError(f"value {value} in box {box} lands outside the {k}x{N} grid at {cross}")
            crosses.append(cross)
    if len(set(crosses)) != len(crosses):
        raise VerificationFailure("Omega sent two entries to the same tile", witness=sorted(crosses))
    return PipeDream(k=k, N=N, crosses=tuple(crosses))


def _diagonal_boxes(shape: Partition) -> Dict[int, List[Box]]:
    by_diagonal: Dict[int, List[Box]] = {}
    for box in shape.boxes():
        by_diagonal.setdefault(box.col - box.row, []).append(box)
    return by_diagonal


def _splits(values: Sequence[int], parts: int) -> Iterator[List[Tuple[int, ...]]]:
    """Cut a sorted sequence into `parts` nonempty consecutive groups."""
    for cuts in itertools.combinations(range(1, len(values)), parts - 1):
        edges = (0,) + cuts + (len(values),)
        yield [tuple(values[a:b]) for a, b in zip(edges, edges[1:])]


def omega_inverse(pd: PipeDream, target: Union[Permutation, Partition]) -> SetValuedTableau:
    """
    The unique tableau tau of shape lambda(target) with omega(tau) = pd.

    Crosses on each diagonal are read top to bottom and cut into consecutive groups,
    one per box of the shape on that diagonal; exactly one combination of cuts must
    be semistandard.

    Raises:
        PreconditionError: pd is not in the image, with the failing constraint
    """
    shape = target if isinstance(target, Partition) else shape_lambda(target)
    boxes_on = _diagonal_boxes(shape)
    rows_on: Dict[int, List[int]] = {}
    for cross in pd.crosses:
        rows_on.setdefault(cross.col - cross.row, []).append(cross.row)
    stray = sorted(set(rows_on) - set(boxes_on))
    if stray:
        raise PreconditionError(f"crosses on diagonals {stray} have no box of {shape}")
    per_diagonal = []
    for d, boxes in sorted(boxes_on.items()):
        rows = sorted(rows_on.get(d, []))
        if len(rows) < len(boxes):
            raise PreconditionError(f"diagonal {d} carries {len(rows)} crosses for {len(boxes)} boxes")
        per_diagonal.append([(boxes, split) for split in _splits(rows, len(boxes))])

    found: List[SetValuedTableau] = []
    reason = "no candidate"
    for choice in itertools.product(*per_diagonal):
        entries = {box: group for boxes, split in choice for box, group in zip(boxes, split)}
        try:
            found.append(SetValuedTableau.from_entries(shape, entries))
        except ValidationError as exc:
            reason = exc.errors()[0]["msg"]
    if not found:
        raise PreconditionError(f"pipe dream is not Omega of a tableau of shape {shape}: {reason}")
    if len(found) > 1:
        raise VerificationFailure("Omega is not injective on this pipe dream", witness=[t.rows for t in found])
    return found[0]


# ============================================================================
# STRUCTURE OF OMEGA IMAGES
# ============================================================================

def no_pipe_switches(pd: PipeDream) -> bool:
    """No pipe passes horizontally through one cross and vertically through another."""
    traced = trace_pipes(pd)
    horizontal = {h for h, _ in traced.values()}
    vertical = {v for _, v in traced.values()}
    return not (horizontal & vertical)


def rows_follow_horizontal_pipes(tableau: SetValuedTableau, pd: PipeDream) -> bool:
    """The rows of the crosses on the i-th horizontal pipe are the values in row i."""
    traced = trace_pipes(pd)
    for p in range(1, len(tableau.shape) + 1):
        on_pipe = sorted(cross.row for cross, (h, _) in traced.items() if h == ("h", p))
        values = sorted(v for entry in tableau.rows[p - 1] for v in entry)
        if on_pipe != values:
            return False
    return True


def diagonals_preserved(tableau: SetValuedTableau, pd: PipeDream) -> bool:
    box_diagonals = sorted(box.col - box.row for box, entry in tableau.items() for _ in entry)
    cross_diagonals = sorted(cross.col - cross.row for cross in pd.crosses)
    return box_diagonals == cross_diagonals


def boxes_at_pipe_crossings(tableau: SetValuedTableau, pd: PipeDream) -> bool:
    """Box (p,q) sits where the p-th horizontal pipe meets the q-th vertical pipe."""
    traced = trace_pipes(pd)
    for box, entry in tableau.items():
        for value in entry:
            if traced.get(_cross_of(value, box)) != (("h", box.row), ("v", box.col)):
                return False
    return True


def check_omega_structure(tableau: SetValuedTableau, k: int, N: int) -> PipeDream:
    """
    Apply omega to an ordinary tableau and assert the four structural properties.

    Raises:
        VerificationFailure: naming the property that fails
    """
    pd = omega(tableau, k, N)
    checks = (
        ("no pipe switches direction", no_pipe_switches(pd)),
        ("rows follow horizontal pipes", rows_follow_horizontal_pipes(tableau, pd)),
        ("diagonals preserved", diagonals_preserved(tableau, pd)),
        ("boxes at pipe crossings", boxes_at_pipe_crossings(tableau, pd)),
    )
    for name, holds in checks:
        if not holds:
            raise VerificationFailure(f"Omega image fails: {name}", witness=tableau.rows)
    return pd


def absorbed_crosses(tableau: SetValuedTableau, k: int, N: int) -> Tuple[Box, ...]:
    """Crosses of omega(tau) missing from omega(tau-bar): one per extra entry."""
    full = omega(tableau, k, N).cross_set()
    base = omega(minimum_tableau(tableau), k, N).cross_set()
    return tuple(sorted(full - base))


def extras_are_absorbable(tableau: SetValuedTableau, word: Word, k: int, N: int) -> bool:
    """Every extra entry of tau becomes an absorbable elbow of omega(tau-bar) in `word`."""
    index = word.position_index()
    base = omega(minimum_tableau(tableau), k, N).crosses
    if any(cross not in index for cross in base):
        return False
    spare = absorbable_elbows(word, (index[c] for c in base))
    return all(cross in index and index[cross] in spare for cross in absorbed_crosses(tableau, k, N))
