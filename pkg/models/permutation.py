from typing import NamedTuple, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from utils.errors import InvalidPermutationError


class Box(NamedTuple):
    """1-indexed grid position, rows increasing downward."""
    row: int
    col: int

    def __str__(self) -> str:
        return f"({self.row},{self.col})"


class Permutation(BaseModel):
    """Permutation in one-line notation; position i holds pi(i)."""
    model_config = ConfigDict(frozen=True)

    one_line: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_bijection(self):
        if sorted(self.one_line) != list(range(1, len(self.one_line) + 1)):
            raise ValueError(f"{list(self.one_line)} is not a bijection on 1..{len(self.one_line)}")
        return self

    @classmethod
    def of(cls, values: Sequence[int]) -> "Permutation":
        """Build from a sequence, raising InvalidPermutationError instead of a pydantic error."""
        values = tuple(int(v) for v in values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise InvalidPermutationError(f"{list(values)} is not a bijection on 1..{len(values)}")
        return cls(one_line=values)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(one_line=tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.one_line)

    def __call__(self, i: int) -> int:
        if 1 <= i <= self.n:
            return self.one_line[i - 1]
        return i

    def trimmed(self) -> Tuple[int, ...]:
        """One-line notation with trailing fixed points removed."""
        values = list(self.one_line)
        while values and values[-1] == len(values):
            values.pop()
        return tuple(values)

    # Equality and hashing ignore trailing fixed points so S_n and S_{n+1} copies agree.
    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.trimmed() == other.trimmed()

    def __hash__(self) -> int:
        return hash(self.trimmed())

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.one_line)


class Partition(BaseModel):
    """Weakly decreasing sequence of positive parts; empty for the identity."""
    model_config = ConfigDict(frozen=True)

    parts: Tuple[int, ...] = ()

    @model_validator(mode="after")
    def _check_parts(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError(f"partition parts must be positive: {list(self.parts)}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"partition must be weakly decreasing: {list(self.parts)}")
        return self

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def boxes(self) -> Tuple[Box, ...]:
        """Boxes in row-major order."""
        return tuple(Box(r, c) for r, part in enumerate(self.parts, start=1) for c in range(1, part + 1))

    def contains(self, box: Box) -> bool:
        return 1 <= box.row <= len(self.parts) and 1 <= box.col <= self.parts[box.row - 1]

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


class Flag(BaseModel):
    """Upper bound on the entries of each row of a partition."""
    model_config = ConfigDict(frozen=True)

    bounds: Tuple[int, ...] = ()

    @model_validator(mode="after")
    def _check_bounds(self):
        if any(b <= 0 for b in self.bounds):
            raise ValueError(f"flag bounds must be positive: {list(self.bounds)}")
        return self

    def __len__(self) -> int:
        return len(self.bounds)


class RankArray(BaseModel):
    """r[p][q] = number of dots in the northwest p x q subarray (stored 0-indexed)."""
    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def at(self, p: int, q: int) -> int:
        """1-indexed lookup with r[0][*] = r[*][0] = 0 and the identity extension beyond the grid."""
        if p <= 0 or q <= 0:
            return 0
        n = self.n
        if p > n or q > n:
            # Outside the grid every extra row and column holds exactly one dot on the diagonal.
            inner = self.at(min(p, n), min(q, n))
            return inner + max(0, min(p, q) - n)
        return self.entries[p - 1][q - 1]


class EssentialBox(NamedTuple):
    """An essential box paired with the rank condition it carries."""
    box: Box
    rank: int
