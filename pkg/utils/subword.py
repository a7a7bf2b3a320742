"""
subword.py

Words in simple reflections, Demazure products, subword complexes Delta(Q, rho),
the complex Gamma_pi on the mu(pi)-shaped word, pipe dreams, interior faces and
shellings.

Permutations inside the enumerators are plain one-line tuples; only results are
turned into Permutation models.
"""

import itertools
import logging
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from models.combinatorics import PipeDream, Word
from models.permutation import Box, Partition, Permutation
from utils.config import DEFAULT_BUDGET, EngineBudget
from utils.errors import BudgetExhausted, VerificationFailure
from utils.groebner import Ideal, minimalize, monomial_intersect
from utils.permcore import (
    bruhat_leq,
    descend_PC,
    grassmannianize,
    is_vexillary,
    largest_descent,
    shape_mu,
    southeast_accessible_box,
)
from utils.polyring import UNIT, Monomial, VariableId, make_monomial, z

logger = logging.getLogger(__name__)

Face = FrozenSet[int]
_Perm = Tuple[int, ...]


# ============================================================================
# TUPLE PERMUTATION HELPERS
# ============================================================================

def _identity(m: int) -> _Perm:
    return tuple(range(1, m + 1))


def _pad(values: Sequence[int], m: int) -> _Perm:
    return tuple(values) + tuple(range(len(values) + 1, m + 1))


def _swap(u: _Perm, i: int) -> _Perm:
    values = list(u)
    values[i - 1], values[i] = values[i], values[i - 1]
    return tuple(values)


def _length(u: _Perm) -> int:
    return sum(1 for a, b in itertools.combinations(u, 2) if a > b)


def _inverse(u: _Perm) -> _Perm:
    inv = [0] * len(u)
    for i, v in enumerate(u, start=1):
        inv[v - 1] = i
    return tuple(inv)


def _compose(a: _Perm, b: _Perm) -> _Perm:
    return tuple(a[v - 1] for v in b)


def _is_right_prefix(u: _Perm, target: _Perm, target_length: int) -> bool:
    """u <= target in right weak order: target = u v with lengths adding."""
    return _length(_compose(_inverse(u), target)) == target_length - _length(u)


# ============================================================================
# WORDS
# ============================================================================

def word_of_mu(perm: Permutation) -> Word:
    """
    Fill box (p,q) of mu(pi) with s_{k-p+q}, k the largest descent, and read each row
    right to left starting from the bottom row.
    """
    mu = shape_mu(perm)
    k = largest_descent(perm)
    return _shape_word(mu, k)


def _shape_word(shape: Partition, k: int) -> Word:
    letters, positions = [], []
    for p in range(len(shape), 0, -1):
        for q in range(shape.parts[p - 1], 0, -1):
            letters.append(k - p + q)
            positions.append(Box(p, q))
    return Word(letters=tuple(letters), positions=tuple(positions))


def rectangle_word(k: int, N: int) -> Word:
    """The same filling over the full k x N grid."""
    return _shape_word(Partition(parts=(N,) * k), k)


def staircase_word(n: int) -> Word:
    """
    Boxes (i,j) with i + j <= n carry s_{i+j-1}; rows are read top to bottom, each
    right to left. Reduced subwords for pi are the reduced pipe dreams of pi.
    """
    letters, positions = [], []
    for i in range(1, n):
        for j in range(n - i, 0, -1):
            letters.append(i + j - 1)
            positions.append(Box(i, j))
    return Word(letters=tuple(letters), positions=tuple(positions))


def word_product(letters: Iterable[int], m: int) -> _Perm:
    u = _identity(m)
    for i in letters:
        u = _swap(u, i)
    return u


def _demazure_fold(letters: Iterable[int], m: int) -> _Perm:
    u = _identity(m)
    for i in letters:
        if u[i - 1] < u[i]:
            u = _swap(u, i)
    return u


def demazure_product(word: Union[Word, Sequence[int]]) -> Permutation:
    """Left-to-right fold u <- u s_i when that increases length, else u."""
    letters = word.letters if isinstance(word, Word) else tuple(word)
    m = max(letters, default=0) + 1
    return Permutation(one_line=_demazure_fold(letters, m))


def contains(word: Union[Word, Sequence[int]], rho: Permutation) -> bool:
    """True iff some subword of `word` is a reduced expression for rho."""
    return bruhat_leq(rho, demazure_product(word))


def contains_exhaustive(word: Union[Word, Sequence[int]], rho: Permutation) -> bool:
    """Brute-force subsequence search; any subword with product rho contains a reduced one."""
    letters = word.letters if isinstance(word, Word) else tuple(word)
    m = max([rho.n] + [i + 1 for i in letters])
    target = _pad(rho.one_line, m)
    for size in range(len(letters) + 1):
        for chosen in itertools.combinations(letters, size):
            if word_product(chosen, m) == target:
                return True
    return False


def _prefix_absorbable(word: Word, chosen: Iterable[int]) -> FrozenSet[int]:
    """Positions j outside `chosen` where the fold of the chosen letters before j already has a descent at letter_j."""
    chosen = set(chosen)
    u = _identity(word.rank())
    found = set()
    for j, i in enumerate(word.letters):
        if j in chosen:
            if u[i - 1] < u[i]:
                u = _swap(u, i)
        elif u[i - 1] > u[i]:
            found.add(j)
    return frozenset(found)


def absorbable_elbows(word: Word, chosen: Iterable[int]) -> FrozenSet[int]:
    """
    Positions j outside `chosen` whose letter leaves the Demazure product of the whole
    chosen subword unchanged: the two pipes through elbow j already cross elsewhere.
    """
    chosen = set(chosen)
    m = word.rank()
    letters = word.letters

    def fold(positions: Iterable[int]) -> _Perm:
        return _demazure_fold((letters[j] for j in sorted(positions)), m)

    product = fold(chosen)
    return frozenset(j for j in range(len(letters)) if j not in chosen and fold(chosen | {j}) == product)


# ============================================================================
# SIMPLICIAL COMPLEXES
# ============================================================================

def _maximal(sets: Iterable[FrozenSet]) -> List[FrozenSet]:
    unique = sorted(set(sets), key=lambda s: (-len(s), sorted(s)))
    kept: List[FrozenSet] = []
    for s in unique:
        if not any(s <= other for other in kept):
            kept.append(s)
    return sorted(kept, key=sorted)


class SimplicialComplex:
    """A complex given by its facets on a ground set of possible vertices."""

    __slots__ = ("facets", "ground")

    def __init__(self, facets: Iterable[Iterable], ground: Optional[Iterable] = None):
        self.facets: List[FrozenSet] = _maximal(frozenset(f) for f in facets)
        vertices = set().union(*self.facets) if self.facets else set()
        self.ground: FrozenSet = frozenset(ground) | frozenset(vertices) if ground is not None else frozenset(vertices)

    def vertices(self) -> FrozenSet:
        return frozenset().union(*self.facets) if self.facets else frozenset()

    def is_face(self, face: Iterable) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def faces(self) -> Iterator[FrozenSet]:
        seen = set()
        for facet in self.facets:
            for size in range(len(facet) + 1):
                for face in itertools.combinations(sorted(facet), size):
                    face = frozenset(face)
                    if face not in seen:
                        seen.add(face)
                        yield face

    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def deletion(self, v) -> "SimplicialComplex":
        return SimplicialComplex((f - {v} for f in self.facets), self.ground)

    def link(self, v) -> "SimplicialComplex":
        return SimplicialComplex((f - {v} for f in self.facets if v in f), self.ground)

    def star(self, v) -> "SimplicialComplex":
        return SimplicialComplex((f for f in self.facets if v in f), self.ground)

    def stanley_reisner(self, var_of: Callable[[object], VariableId]) -> Ideal:
        """Intersection over facets F of the primes generated by the vertices outside F."""
        ring = [var_of(u) for u in sorted(self.ground)]
        if not self.facets:
            return Ideal([UNIT], ring)
        generators: Optional[List[Monomial]] = None
        for facet in self.facets:
            prime = [make_monomial({var_of(u): 1}) for u in sorted(self.ground - facet)]
            generators = prime if generators is None else monomial_intersect(generators, prime)
            if not generators:
                break
        return Ideal.from_monomials(minimalize(generators or []), ring)


# ============================================================================
# SUBWORD COMPLEXES
# ============================================================================

class SubwordComplex:
    """
    Delta(Q, rho): faces are position sets F such that Q minus F contains rho.

    Faces are frozensets of 0-based word positions; the complement of a face is the
    chosen subword P, drawn as the crosses of a pipe dream.
    """

    __slots__ = ("word", "target", "rank", "_target", "_reduced", "_interior")

    def __init__(self, word: Word, target: Permutation, budget: EngineBudget = DEFAULT_BUDGET):
        if len(word) > budget.max_word_length:
            raise BudgetExhausted("subword length", budget.max_word_length)
        self.word = word
        self.target = target
        self.rank = max(word.rank(), len(target.trimmed()), 1)
        self._target = _pad(target.trimmed(), self.rank)
        self._reduced: Optional[List[FrozenSet[int]]] = None
        self._interior: Optional[List[FrozenSet[int]]] = None

    @property
    def positions(self) -> FrozenSet[int]:
        return frozenset(range(len(self.word)))

    def target_length(self) -> int:
        return _length(self._target)

    def is_nonempty(self) -> bool:
        return len(self.target.trimmed()) <= self.word.rank() and contains(self.word, self.target)

    def reduced_subwords(self) -> List[FrozenSet[int]]:
        """Position sets P of reduced expressions for the target, by depth-first search."""
        if self._reduced is not None:
            return self._reduced
        letters = self.word.letters
        goal = self.target_length()
        found: List[FrozenSet[int]] = []
        if len(self.target.trimmed()) > self.word.rank():
            self._reduced = found
            return found

        def search(pos: int, u: _Perm, chosen: List[int]) -> None:
            if len(chosen) == goal:
                if u == self._target:
                    found.append(frozenset(chosen))
                return
            if len(letters) - pos < goal - len(chosen):
                return
            i = letters[pos]
            if u[i - 1] < u[i]:
                grown = _swap(u, i)
                if _is_right_prefix(grown, self._target, goal):
                    chosen.append(pos)
                    search(pos + 1, grown, chosen)
                    chosen.pop()
            search(pos + 1, u, chosen)

        search(0, _identity(self.rank), [])
        logger.debug("%d reduced subwords for %s in a word of length %d", len(found), self.target, len(letters))
        self._reduced = sorted(found, key=sorted)
        return self._reduced

    def facets(self) -> List[Face]:
        everything = self.positions
        return [everything - chosen for chosen in self.reduced_subwords()]

    def interior_complements(self) -> List[FrozenSet[int]]:
        """
        Subwords P with Demazure product equal to the target, computed two ways:
        directly, and as reduced subwords enlarged by subsets of the positions their
        left-to-right fold already absorbs.

        Raises:
            VerificationFailure: the two characterizations disagree
        """
        if self._interior is not None:
            return self._interior
        direct = set(self._demazure_subwords())
        constructive = set()
        for chosen in self.reduced_subwords():
            spare = sorted(_prefix_absorbable(self.word, chosen))
            for size in range(len(spare) + 1):
                for extra in itertools.combinations(spare, size):
                    constructive.add(chosen | frozenset(extra))
        if direct != constructive:
            raise VerificationFailure(
                f"interior faces of Delta({self.word}, {self.target}) disagree between characterizations",
                witness=sorted(sorted(p) for p in direct ^ constructive),
            )
        self._interior = sorted(direct, key=lambda p: (len(p), sorted(p)))
        return self._interior

    def _demazure_subwords(self) -> Iterator[FrozenSet[int]]:
        letters = self.word.letters
        goal = self.target_length()
        if len(self.target.trimmed()) > self.word.rank():
            return

        def search(pos: int, u: _Perm, chosen: List[int]) -> Iterator[FrozenSet[int]]:
            if pos == len(letters):
                if u == self._target:
                    yield frozenset(chosen)
                return
            if goal - _length(u) > len(letters) - pos:
                return
            i = letters[pos]
            grown = _swap(u, i) if u[i - 1] < u[i] else u
            if _is_right_prefix(grown, self._target, goal):
                chosen.append(pos)
                yield from search(pos + 1, grown, chosen)
                chosen.pop()
            yield from search(pos + 1, u, chosen)

        yield from search(0, _identity(self.rank), [])

    def interior_faces(self) -> List[Face]:
        everything = self.positions
        return [everything - chosen for chosen in self.interior_complements()]

    def as_simplicial_complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.facets(), self.positions)

    def crosses(self, chosen: Iterable[int]) -> Tuple[Box, ...]:
        return tuple(sorted(self.word.positions[j] for j in chosen))

    def pipe_dream(self, chosen: Iterable[int], k: int, N: int) -> PipeDream:
        return PipeDream(k=k, N=N, crosses=self.crosses(chosen))


def facets(complex_: SubwordComplex) -> List[Face]:
    found = complex_.facets()
    if not found:
        logger.info("Delta(%s, %s) is empty", complex_.word, complex_.target)
    return found


def interior_faces(complex_: SubwordComplex) -> List[Face]:
    return complex_.interior_faces()


def z_of_position(word: Word) -> Dict[int, VariableId]:
    return {j: z(box.row, box.col) for j, box in enumerate(word.positions)}


def stanley_reisner(complex_: Union[SubwordComplex, SimplicialComplex],
                    vertex_to_variable: Mapping[object, VariableId]) -> Ideal:
    """Squarefree monomial ideal of non-faces, as the intersection of the facet primes."""
    if isinstance(complex_, SubwordComplex):
        complex_ = complex_.as_simplicial_complex()
    return complex_.stanley_reisner(lambda v: vertex_to_variable[v])


# ============================================================================
# GAMMA_PI
# ============================================================================

def gamma_data(perm: Permutation) -> Tuple[Permutation, int, int]:
    """(pi~, k, N): the Grassmannian top of the chain, its descent and its group size."""
    chain, k, size = grassmannianize(perm)
    return chain[0], k, size


def gamma_complex(perm: Permutation, budget: EngineBudget = DEFAULT_BUDGET) -> SubwordComplex:
    """Gamma_pi = Delta(Q, pi~) with Q the word of mu(pi)."""
    top, _, _ = gamma_data(perm)
    return SubwordComplex(word_of_mu(perm), top, budget)


def restrict_to_shape(generators: Iterable[Monomial], shape: Partition) -> List[Monomial]:
    """Set every z-variable outside the Ferrers shape to 1 and minimalize."""
    kept = []
    for m in generators:
        kept.append(tuple((v, e) for v, e in m if v.kind != "z" or shape.contains(Box(v.i, v.j))))
    return minimalize(kept)


# ============================================================================
# PIPES
# ============================================================================

PipeLabel = Tuple[str, int]


def trace_pipes(pd: PipeDream) -> Dict[Box, Tuple[PipeLabel, PipeLabel]]:
    """
    Follow every pipe through the grid; pipes enter at the left of each row ("h", row)
    and at the top of each column ("v", col) and travel east or south.

    A cross passes west to east and north to south; an elbow turns west to south and
    north to east.

    Returns:
        for each cross, the pipes passing it horizontally and vertically
    """
    crosses = pd.cross_set()
    horizontal: Dict[Box, PipeLabel] = {}
    vertical: Dict[Box, PipeLabel] = {}
    starts = [(("h", r), r, 1, "W") for r in range(1, pd.k + 1)] + [(("v", c), 1, c, "N") for c in range(1, pd.N + 1)]
    for label, r, c, side in starts:
        while 1 <= r <= pd.k and 1 <= c <= pd.N:
            box = Box(r, c)
            if box in crosses:
                if side == "W":
                    horizontal[box] = label
                    c += 1
                else:
                    vertical[box] = label
                    r += 1
            elif side == "W":
                r, side = r + 1, "N"
            else:
                c, side = c + 1, "W"
    return {box: (horizontal[box], vertical[box]) for box in crosses}


# ============================================================================
# SHELLINGS
# ============================================================================

def is_shelling(order: Sequence[Face]) -> bool:
    """Every facet meets the union of the earlier ones in a pure codimension-one complex."""
    for j, current in enumerate(order):
        if not _extends(order[:j], current):
            return False
    return True


def _extends(previous: Sequence[Face], current: Face) -> bool:
    for earlier in previous:
        meet = earlier & current
        if not any(meet <= (other & current) and len(other & current) == len(current) - 1 for other in previous):
            return False
    return True


def _search_shelling(remaining: List[Face], order: List[Face]) -> Optional[List[Face]]:
    if not remaining:
        return list(order)
    for idx, candidate in enumerate(remaining):
        if _extends(order, candidate):
            order.append(candidate)
            found = _search_shelling(remaining[:idx] + remaining[idx + 1:], order)
            if found is not None:
                return found
            order.pop()
    return None


def _shell_by_boxes(perm: Permutation, chosen_sets: List[FrozenSet[Box]]) -> Optional[List[FrozenSet[Box]]]:
    """Deletion then cone at the southeast accessible box, recursing into pi_P and pi_C."""
    if len(chosen_sets) <= 1:
        return list(chosen_sets)
    box = southeast_accessible_box(perm)
    if box is None:
        return None
    perm_p, perm_c = descend_PC(perm, box)
    with_cross = [s for s in chosen_sets if box in s]
    without = [s for s in chosen_sets if box not in s]
    first = _shell_by_boxes(perm_p, with_cross) if with_cross else []
    second = _shell_by_boxes(perm_c, without) if without else []
    if first is None or second is None:
        return None
    return first + second


def vertex_decompose(complex_: SubwordComplex, perm: Optional[Permutation] = None) -> List[Face]:
    """
    A shelling order of the facets.

    With a vexillary `perm` (complex_ = Gamma_pi) facets are split at the vertex of the
    southeast accessible box: facets with a cross there (the deletion) come first,
    then the cone over the link, each part ordered recursively through pi_P and pi_C.
    Otherwise, or when that order does not verify, a backtracking search is used.

    Raises:
        VerificationFailure: no shelling exists
    """
    found = complex_.facets()
    everything = complex_.positions
    if perm is not None and is_vexillary(perm) and complex_.word.positions:
        index = complex_.word.position_index()
        by_boxes = _shell_by_boxes(perm, [frozenset(complex_.crosses(everything - f)) for f in found])
        if by_boxes is not None:
            order = [everything - frozenset(index[b] for b in crosses) for crosses in by_boxes]
            if is_shelling(order):
                return order
            logger.info("vertex-decomposition order for %s is not a shelling; searching", perm)
    order = _search_shelling(found, [])
    if order is None:
        raise VerificationFailure(f"no shelling of Delta({complex_.word}, {complex_.target})")
    return order
