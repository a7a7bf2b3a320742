"""
permcore.py

Permutations in one-line notation and their diagram-theoretic data:
rank arrays, Rothe diagrams, essential sets, vexillarity, the shapes lambda and mu,
flaggings, accessible boxes, the P/C descent and the Grassmannian chain.

All grids are 1-indexed in matrix convention (row index increases downward).
"""

import itertools
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from models.permutation import Box, EssentialBox, Flag, Partition, Permutation, RankArray
from utils.errors import PreconditionError, VerificationFailure

logger = logging.getLogger(__name__)


# ============================================================================
# BASIC PERMUTATION ARITHMETIC
# ============================================================================

def length(perm: Permutation) -> int:
    """Coxeter length, i.e. the number of inversions."""
    values = perm.one_line
    return sum(1 for i, j in itertools.combinations(range(len(values)), 2) if values[i] > values[j])


def inverse(perm: Permutation) -> Permutation:
    inv = [0] * perm.n
    for i, value in enumerate(perm.one_line, start=1):
        inv[value - 1] = i
    return Permutation(one_line=tuple(inv))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """The composite a o b (apply b first), embedded in the larger symmetric group."""
    n = max(a.n, b.n)
    return Permutation(one_line=tuple(a(b(i)) for i in range(1, n + 1)))


def embed(perm: Permutation, size: int) -> Permutation:
    """Embed into S_size by fixing size+1..N; a no-op when size <= n."""
    if size <= perm.n:
        return perm
    return Permutation(one_line=perm.one_line + tuple(range(perm.n + 1, size + 1)))


def swap_positions(perm: Permutation, i: int, j: int) -> Permutation:
    """Right multiplication by the transposition (i, j), growing the ambient group if needed."""
    perm = embed(perm, max(i, j))
    values = list(perm.one_line)
    values[i - 1], values[j - 1] = values[j - 1], values[i - 1]
    return Permutation(one_line=tuple(values))


def descents(perm: Permutation) -> FrozenSet[int]:
    values = perm.one_line
    return frozenset(i for i in range(1, len(values)) if values[i - 1] > values[i])


def is_grassmannian(perm: Permutation) -> bool:
    return len(descents(perm)) <= 1


def largest_descent(perm: Permutation) -> int:
    """Largest descent position, 0 for the identity."""
    return max(descents(perm), default=0)


# ============================================================================
# RANK ARRAYS, DIAGRAMS, ESSENTIAL SETS
# ============================================================================

def permutation_matrix(perm: Permutation) -> np.ndarray:
    matrix = np.zeros((perm.n, perm.n), dtype=np.int64)
    for row, value in enumerate(perm.one_line):
        matrix[row, value - 1] = 1
    return matrix


def rank_array(perm: Permutation) -> RankArray:
    """
    Count dots in every northwest subarray.

    Args:
        perm: any permutation

    Returns:
        RankArray with entries r[p][q] for 1 <= p, q <= n
    """
    ranks = permutation_matrix(perm).cumsum(axis=0).cumsum(axis=1)
    return RankArray(entries=tuple(tuple(int(v) for v in row) for row in ranks))


def reconstruct_from_rank(ranks: RankArray) -> Permutation:
    """Recover the dots from second differences of the rank array."""
    padded = np.pad(np.array(ranks.entries, dtype=np.int64), ((1, 0), (1, 0)))
    dots = padded[1:, 1:] - padded[:-1, 1:] - padded[1:, :-1] + padded[:-1, :-1]
    if not np.isin(dots, (0, 1)).all():
        raise VerificationFailure("rank array has a second difference outside {0,1}", witness=dots.tolist())
    if not ((dots.sum(axis=0) == 1).all() and (dots.sum(axis=1) == 1).all()):
        raise VerificationFailure("rank array does not come from a permutation", witness=dots.tolist())
    return Permutation(one_line=tuple(int(np.argmax(row)) + 1 for row in dots))


def diagram(perm: Permutation) -> FrozenSet[Box]:
    """Boxes (p,q) with pi(p) > q and pi^{-1}(q) > p."""
    inv = inverse(perm)
    return frozenset(
        Box(p, q)
        for p in range(1, perm.n + 1)
        for q in range(1, perm.n + 1)
        if perm(p) > q and inv(q) > p
    )


def essential_set(perm: Permutation) -> FrozenSet[EssentialBox]:
    """Southeast corners of the connected components of D(pi), with their ranks."""
    boxes = diagram(perm)
    ranks = rank_array(perm)
    return frozenset(
        EssentialBox(box, ranks.at(box.row, box.col))
        for box in boxes
        if Box(box.row + 1, box.col) not in boxes and Box(box.row, box.col + 1) not in boxes
    )


def essential_boxes(perm: Permutation) -> FrozenSet[Box]:
    return frozenset(entry.box for entry in essential_set(perm))


def components(boxes: Iterable[Box]) -> List[FrozenSet[Box]]:
    """Connected components under edge adjacency, found by flood fill."""
    remaining: Set[Box] = set(boxes)
    found: List[FrozenSet[Box]] = []
    while remaining:
        start = min(remaining)
        seen = {start}
        queue = deque([start])
        while queue:
            r, c = queue.popleft()
            for neighbour in (Box(r - 1, c), Box(r + 1, c), Box(r, c - 1), Box(r, c + 1)):
                if neighbour in remaining and neighbour not in seen:
                    seen.add(neighbour)
                    queue.append(neighbour)
        remaining -= seen
        found.append(frozenset(seen))
    return found


def component_of(boxes: Iterable[Box], box: Box) -> FrozenSet[Box]:
    for component in components(boxes):
        if box in component:
            return component
    raise PreconditionError(f"box {box} is not in the diagram")


# ============================================================================
# VEXILLARITY
# ============================================================================

def contains_2143(perm: Permutation) -> bool:
    values = perm.one_line
    for a, b, c, d in itertools.combinations(range(len(values)), 4):
        if values[b] < values[a] < values[d] < values[c]:
            return True
    return False


def essential_nw_pair(perm: Permutation) -> Optional[Tuple[Box, Box]]:
    """A pair of essential boxes with the first strictly northwest of the second, if any."""
    boxes = sorted(essential_boxes(perm))
    for first, second in itertools.permutations(boxes, 2):
        if first.row < second.row and first.col < second.col:
            return first, second
    return None


def dots_northwest(perm: Permutation, rows: int, cols: int) -> List[Box]:
    """Dots of pi inside the northwest rows x cols subarray, sorted by row."""
    return [Box(r, perm(r)) for r in range(1, rows + 1) if perm(r) <= cols]


def antidiagonal_dot_pair(perm: Permutation, box: Box) -> Optional[Tuple[Box, Box]]:
    """Two dots of pi_{(p-1) x (q-1)} in antidiagonal position, if any."""
    dots = dots_northwest(perm, box.row - 1, box.col - 1)
    for upper, lower in itertools.combinations(dots, 2):
        if upper.col > lower.col:
            return upper, lower
    return None


def diagonal_dots_hold(perm: Permutation) -> bool:
    """For every diagram box the dots northwest of it form a diagonal."""
    ranks = rank_array(perm)
    for box in diagram(perm):
        dots = dots_northwest(perm, box.row - 1, box.col - 1)
        if len(dots) != ranks.at(box.row, box.col):
            raise VerificationFailure(f"dot count northwest of {box} disagrees with the rank array")
        if antidiagonal_dot_pair(perm, box) is not None:
            return False
    return True


def is_vexillary(perm: Permutation) -> bool:
    """
    2143-avoidance, checked three ways that must agree.

    The pattern test, the essential-set test (no essential box strictly northwest
    of another) and the diagonal-dots test are all evaluated.

    Raises:
        VerificationFailure: the three criteria disagree
    """
    by_pattern = not contains_2143(perm)
    by_essential = essential_nw_pair(perm) is None
    by_dots = diagonal_dots_hold(perm)
    if not by_pattern == by_essential == by_dots:
        raise VerificationFailure(
            f"vexillarity criteria disagree for {perm}",
            witness={"pattern": by_pattern, "essential": by_essential, "dots": by_dots},
        )
    return by_pattern


def require_vexillary(perm: Permutation, operation: str) -> None:
    if not is_vexillary(perm):
        raise PreconditionError(f"{operation} needs a vexillary permutation, got {perm}")


# ============================================================================
# SHAPES AND FLAGS
# ============================================================================

def shape_lambda(perm: Permutation) -> Partition:
    """Row sizes of D(pi), sorted decreasingly."""
    counts: Dict[int, int] = {}
    for box in diagram(perm):
        counts[box.row] = counts.get(box.row, 0) + 1
    return Partition(parts=tuple(sorted(counts.values(), reverse=True)))


def shape_mu(perm: Permutation) -> Partition:
    """Smallest Ferrers shape containing D(pi): the union of the rectangles over Ess(pi)."""
    ess = essential_boxes(perm)
    if not ess:
        return Partition()
    rows = max(box.row for box in ess)
    parts = tuple(max(box.col for box in ess if box.row >= r) for r in range(1, rows + 1))
    return Partition(parts=parts)


def flag(perm: Permutation) -> Flag:
    """
    f(i) is the row of the southeast-most box of mu(pi) on the diagonal of (i, lambda_i).

    Raises:
        PreconditionError: perm is not vexillary
    """
    require_vexillary(perm, "flag")
    lam = shape_lambda(perm)
    mu = shape_mu(perm)
    bounds = []
    for i, part in enumerate(lam.parts, start=1):
        offset = part - i
        row = i
        while mu.contains(Box(row + 1, row + 1 + offset)):
            row += 1
        bounds.append(row)
    return Flag(bounds=tuple(bounds))


# ============================================================================
# ACCESSIBLE BOXES AND THE P/C DESCENT
# ============================================================================

def accessible_boxes(perm: Permutation) -> FrozenSet[Box]:
    """Diagram boxes of nonzero rank with no other diagram box weakly to the southeast."""
    boxes = diagram(perm)
    ranks = rank_array(perm)
    ess = essential_boxes(perm)
    found = set()
    for box in boxes:
        if ranks.at(box.row, box.col) == 0:
            continue
        if any(other != box and other.row >= box.row and other.col >= box.col for other in boxes):
            continue
        if box not in ess:
            raise VerificationFailure(f"accessible box {box} is not essential", witness=box)
        found.add(box)
    return frozenset(found)


def southeast_accessible_box(perm: Permutation) -> Optional[Box]:
    """The accessible box chosen first by the iterated decompositions."""
    return max(accessible_boxes(perm), default=None)


def northwest_dot(perm: Permutation, box: Box) -> Box:
    """The dot (t, pi(t)) adjacent to the northwest corner of the component of `box`."""
    component = component_of(diagram(perm), box)
    corner = Box(min(b.row for b in component), min(b.col for b in component))
    if corner not in component:
        raise VerificationFailure(f"component of {box} has no northwest corner", witness=sorted(component))
    t = corner.row - 1
    if t < 1 or perm(t) != corner.col - 1:
        raise VerificationFailure(f"no dot at {Box(corner.row - 1, corner.col - 1)} for {perm}", witness=corner)
    return Box(t, perm(t))


def descend_PC(perm: Permutation, box: Box) -> Tuple[Permutation, Permutation]:
    """
    The projection and cone permutations at an accessible box.

    pi_P = pi o (p, pi^{-1}(q)) and pi_C = pi_P o (t, p), where (t, pi(t)) is the dot just
    northwest of the component containing (p,q).

    Args:
        perm: a vexillary permutation
        box: an accessible box of perm

    Returns:
        (pi_P, pi_C), each checked against the seven parts of the structure lemma

    Raises:
        PreconditionError: non-vexillary perm or inaccessible box
    """
    require_vexillary(perm, "descend_PC")
    if box not in accessible_boxes(perm):
        raise PreconditionError(f"box {box} is not accessible for {perm}")
    p, q = box
    perm_p = swap_positions(perm, p, inverse(perm)(q))
    t = northwest_dot(perm, box).row
    perm_c = swap_positions(perm_p, t, p)
    check_descent(perm, box, perm_p, perm_c)
    return perm_p, perm_c


def check_descent(perm: Permutation, box: Box, perm_p: Permutation, perm_c: Permutation) -> None:
    """
    Assert parts (a)-(g) of the P/C structure lemma.

    Raises:
        VerificationFailure: naming the first part that fails
    """
    p, q = box
    t, pi_t = northwest_dot(perm, box)
    inv_q = inverse(perm)(q)
    pi_p = perm(p)
    boxes = diagram(perm)

    if diagram(perm_p) != boxes - {box}:
        raise VerificationFailure("D(pi_P) is not D(pi) minus the box", witness=box)

    moved = {b for b in component_of(boxes, box) if b.row <= p and b.col <= q}
    expected_c = (boxes - moved) | {Box(b.row - 1, b.col - 1) for b in moved}
    if diagram(perm_c) != expected_c:
        raise VerificationFailure("D(pi_C) is not the northwest shift of the rectangle", witness=box)

    ranks, ranks_p, ranks_c = rank_array(perm), rank_array(perm_p), rank_array(perm_c)
    for i in range(1, perm.n + 1):
        for j in range(1, perm.n + 1):
            raised = p <= i <= inv_q - 1 and q <= j <= pi_p - 1
            lowered = t <= i <= p - 1 and pi_t <= j <= q - 1
            if ranks_p.at(i, j) != ranks.at(i, j) + int(raised):
                raise VerificationFailure(f"rank of pi_P wrong at {Box(i, j)}", witness=Box(i, j))
            if ranks_c.at(i, j) != ranks.at(i, j) + int(raised) - int(lowered):
                raise VerificationFailure(f"rank of pi_C wrong at {Box(i, j)}", witness=Box(i, j))

    ess, ess_p, ess_c = essential_boxes(perm), essential_boxes(perm_p), essential_boxes(perm_c)
    if not (ess - {box}) <= ess_p or not (ess_p - ess) <= {Box(p - 1, q), Box(p, q - 1)}:
        raise VerificationFailure("Ess(pi_P) violates the containment rule", witness=sorted(ess_p))
    if ess_c != (ess - {box}) | {Box(p - 1, q - 1)}:
        raise VerificationFailure("Ess(pi_C) is not Ess(pi) with the box shifted", witness=sorted(ess_c))

    if not (is_vexillary(perm_p) and is_vexillary(perm_c)):
        raise VerificationFailure("pi_P or pi_C is not vexillary", witness=(perm_p, perm_c))


# ============================================================================
# GRASSMANNIAN CHAIN
# ============================================================================

def _constructed_lift(perm: Permutation) -> Optional[Tuple[Permutation, Box]]:
    """The row-and-column construction of a sigma with sigma_C = perm, or None when it leaves the grid badly."""
    desc = sorted(descents(perm))
    i = desc[-2]
    j = max(box.col for box in diagram(perm) if box.row == i)
    h = min(box.row for box in essential_boxes(perm) if box.col == j)
    p = inverse(perm)(j + 1)
    southeast = [r for r in range(h + 1, perm.n + 1) if perm(r) > j]
    if southeast:
        c = min(southeast)
        if any(perm(r) < perm(c) for r in southeast):
            return None
    else:
        perm = embed(perm, perm.n + 1)
        c = perm.n
    sigma = swap_positions(swap_positions(perm, p, h + 1), h + 1, c)
    return sigma, Box(h + 1, j + 1)


def _lift_candidates(perm: Permutation, size_limit: int) -> Iterator[Tuple[Permutation, Box]]:
    """
    Every sigma = perm o (t, p) o (p, c) with t < p < c, paired with the box (p, sigma(c)).

    These are exactly the permutations whose P/C descent at that box can return perm.
    The constructed lift comes first; the ambient size grows by at most one past perm.
    """
    constructed = _constructed_lift(perm)
    if constructed is not None:
        yield constructed
    for size in range(perm.n, min(perm.n + 1, size_limit) + 1):
        base = embed(perm, size)
        for t, p, c in itertools.combinations(range(1, size + 1), 3):
            sigma = swap_positions(swap_positions(base, t, p), p, c)
            yield sigma, Box(p, sigma(c))


def _is_lift(sigma: Permutation, box: Box, perm: Permutation, lam: Partition, k: int) -> bool:
    if not is_vexillary(sigma) or largest_descent(sigma) != k or shape_lambda(sigma) != lam:
        return False
    if box not in accessible_boxes(sigma):
        return False
    return descend_PC(sigma, box)[1] == perm


def grassmannianize(perm: Permutation) -> Tuple[List[Permutation], int, int]:
    """
    Build the chain sigma_1, ..., sigma_t = perm with sigma_{i+1} = (sigma_i)_C.

    sigma_1 is Grassmannian with descent k, the largest descent of perm. Each lift keeps
    lambda and k. The row-and-column construction is tried first; when it produces a
    non-vexillary sigma or one that does not descend back, the other transposition pairs
    are searched, embedding by one when a step needs a dot beyond the grid. Lifts move a
    rectangle of the diagram southeast, so no permutation repeats along a branch and the
    search backtracks out of dead ends.

    Returns:
        (chain, k, N) with every chain element embedded in S_N

    Raises:
        VerificationFailure: no lift sequence reaches a Grassmannian permutation
    """
    require_vexillary(perm, "grassmannianize")
    k = largest_descent(perm)
    lam = shape_lambda(perm)
    size_limit = max(perm.n, k + (lam.parts[0] if lam.parts else 0))
    dead_ends: Set[Permutation] = set()

    def climb(current: Permutation) -> Optional[List[Permutation]]:
        if is_grassmannian(current):
            return [current]
        if current in dead_ends:
            return None
        for sigma, box in _lift_candidates(current, size_limit):
            if sigma.n > size_limit or not _is_lift(sigma, box, current, lam, k):
                continue
            above = climb(sigma)
            if above is not None:
                logger.debug("lifted %s to %s at %s", current, sigma, box)
                return [current] + above
        dead_ends.add(current)
        return None

    path = climb(perm)
    if path is None:
        raise VerificationFailure(f"no Grassmannian chain above {perm}", witness=perm)
    size = max(sigma.n for sigma in path)
    chain = [embed(sigma, size) for sigma in reversed(path)]
    check_grassmannian_essential_set(perm, chain[0], k)
    return chain, k, size


def check_grassmannian_essential_set(perm: Permutation, top: Permutation, k: int) -> None:
    expected = {
        EssentialBox(Box(k, k - e.box.row + e.box.col), k - e.box.row + e.rank)
        for e in essential_set(perm)
    }
    if set(essential_set(top)) != expected:
        raise VerificationFailure(f"Ess of {top} does not match the shifted Ess of {perm}", witness=sorted(expected))


def grassmannian_from_shape(shape: Partition, k: int) -> Permutation:
    """
    The Grassmannian permutation with descent at k and lambda equal to `shape`.

    pi(i) = i + lambda_{k+1-i} for i <= k, remaining values increasing; N = k + lambda_1.
    """
    if len(shape) > k:
        raise PreconditionError(f"shape {shape} has more than {k} rows")
    parts = list(shape.parts) + [0] * (k - len(shape))
    size = k + (parts[0] if parts else 0)
    head = [i + parts[k - i] for i in range(1, k + 1)]
    tail = [v for v in range(1, size + 1) if v not in head]
    return Permutation(one_line=tuple(head + tail))


# ============================================================================
# BRUHAT ORDER
# ============================================================================

def bruhat_leq(u: Permutation, v: Permutation) -> bool:
    """u <= v in Bruhat order iff r(u) >= r(v) entrywise."""
    size = max(u.n, v.n)
    ru = rank_array(embed(u, size))
    rv = rank_array(embed(v, size))
    return bool((np.array(ru.entries) >= np.array(rv.entries)).all())


def all_permutations(n: int) -> Iterable[Permutation]:
    for values in itertools.permutations(range(1, n + 1)):
        yield Permutation(one_line=values)


def longest_element(n: int) -> Permutation:
    return Permutation(one_line=tuple(range(n, 0, -1)))


def from_reduced_word(letters: Sequence[int], size: int = 0) -> Permutation:
    """Product s_{i_1} s_{i_2} ... as a one-line permutation (right multiplication swaps positions)."""
    size = max([size] + [i + 1 for i in letters])
    perm = Permutation.identity(size)
    for i in letters:
        perm = swap_positions(perm, i, i + 1)
    return perm
