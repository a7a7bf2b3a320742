from typing import Dict, FrozenSet, Iterator, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from models.permutation import Box, Partition


class Word(BaseModel):
    """A word in simple reflections s_i, optionally tied to grid positions for drawing."""
    model_config = ConfigDict(frozen=True)

    letters: Tuple[int, ...] = ()
    positions: Tuple[Box, ...] = ()

    @model_validator(mode="after")
    def _check_letters(self):
        if any(i < 1 for i in self.letters):
            raise ValueError("reflection indices start at 1")
        if self.positions:
            if len(self.positions) != len(self.letters):
                raise ValueError("positions must run parallel to letters")
            if len(set(self.positions)) != len(self.positions):
                raise ValueError("word positions must be distinct")
        return self

    def __len__(self) -> int:
        return len(self.letters)

    def rank(self) -> int:
        """Size m of the symmetric group S_m the letters live in."""
        return max(self.letters, default=0) + 1

    def position_index(self) -> Dict[Box, int]:
        return {box: idx for idx, box in enumerate(self.positions)}

    def __str__(self) -> str:
        return "(" + ",".join(f"s{i}" for i in self.letters) + ")"


class PipeDream(BaseModel):
    """Crosses in a k x N grid; every other tile is an elbow."""
    model_config = ConfigDict(frozen=True)

    k: int
    N: int
    crosses: Tuple[Box, ...] = ()

    @field_validator("crosses", mode="after")
    @classmethod
    def _sort_crosses(cls, value):
        return tuple(sorted(set(Box(*b) for b in value)))

    @model_validator(mode="after")
    def _check_grid(self):
        for box in self.crosses:
            if not (1 <= box.row <= self.k and 1 <= box.col <= self.N):
                raise ValueError(f"cross {box} lies outside the {self.k}x{self.N} grid")
        return self

    def cross_set(self) -> FrozenSet[Box]:
        return frozenset(self.crosses)

    def __len__(self) -> int:
        return len(self.crosses)

    def __contains__(self, box) -> bool:
        return Box(*box) in self.cross_set()

    def without(self, box: Box) -> "PipeDream":
        return PipeDream(k=self.k, N=self.N, crosses=tuple(b for b in self.crosses if b != box))


Entry = Tuple[int, ...]


class SetValuedTableau(BaseModel):
    """
    A semistandard filling of a Young diagram by nonempty sets of positive integers.

    Every element of a box is <= every element of the box to its right and strictly
    less than every element of the box below.
    """
    model_config = ConfigDict(frozen=True)

    shape: Tuple[int, ...]
    rows: Tuple[Tuple[Entry, ...], ...]

    @model_validator(mode="after")
    def _check_semistandard(self):
        Partition(parts=self.shape)
        if tuple(len(row) for row in self.rows) != self.shape:
            raise ValueError(f"rows do not match shape {list(self.shape)}")
        for r, row in enumerate(self.rows):
            for c, entry in enumerate(row):
                if not entry or any(v < 1 for v in entry):
                    raise ValueError(f"box ({r + 1},{c + 1}) needs a nonempty set of positive integers")
                if any(a >= b for a, b in zip(entry, entry[1:])):
                    raise ValueError(f"box ({r + 1},{c + 1}) must list its entries strictly increasing")
                if c > 0 and row[c - 1][-1] > entry[0]:
                    raise ValueError(f"row weakness fails at ({r + 1},{c + 1})")
                if r > 0 and self.rows[r - 1][c][-1] >= entry[0]:
                    raise ValueError(f"column strictness fails at ({r + 1},{c + 1})")
        return self

    @classmethod
    def from_entries(cls, shape: Partition, entries: Dict[Box, Entry]) -> "SetValuedTableau":
        rows = tuple(
            tuple(tuple(sorted(entries[Box(r, c)])) for c in range(1, part + 1))
            for r, part in enumerate(shape.parts, start=1)
        )
        return cls(shape=shape.parts, rows=rows)

    @property
    def partition(self) -> Partition:
        return Partition(parts=self.shape)

    def entry(self, box: Box) -> Entry:
        return self.rows[box.row - 1][box.col - 1]

    def items(self) -> Iterator[Tuple[Box, Entry]]:
        for r, row in enumerate(self.rows, start=1):
            for c, entry in enumerate(row, start=1):
                yield Box(r, c), entry

    @property
    def size(self) -> int:
        """|tau|: the total number of entries."""
        return sum(len(entry) for row in self.rows for entry in row)

    def is_ordinary(self) -> bool:
        return self.size == sum(self.shape)

    def row_max(self, row: int) -> int:
        return max(entry[-1] for entry in self.rows[row - 1])

    def max_entry(self) -> int:
        return max((entry[-1] for row in self.rows for entry in row), default=0)


class Diagonal(BaseModel):
    """A chain of boxes strictly increasing in both row and column."""
    model_config = ConfigDict(frozen=True)

    boxes: Tuple[Box, ...]

    @model_validator(mode="after")
    def _check_chain(self):
        for a, b in zip(self.boxes, self.boxes[1:]):
            if not (a.row < b.row and a.col < b.col):
                raise ValueError(f"{a} and {b} are not strictly increasing")
        return self

    def __len__(self) -> int:
        return len(self.boxes)


class MinorSpec(BaseModel):
    """A square minor of the generic matrix inside the northwest corner x corner block."""
    model_config = ConfigDict(frozen=True)

    corner: Box
    size: int
    row_set: Tuple[int, ...]
    col_set: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_minor(self):
        if self.size > min(self.corner.row, self.corner.col):
            raise ValueError(f"a {self.size}x{self.size} minor does not fit in {self.corner}")
        if len(self.row_set) != self.size or len(self.col_set) != self.size:
            raise ValueError("row and column sets must have the minor's size")
        for indices, bound in ((self.row_set, self.corner.row), (self.col_set, self.corner.col)):
            if any(a >= b for a, b in zip(indices, indices[1:])) or any(not 1 <= i <= bound for i in indices):
                raise ValueError("minor indices must increase strictly inside the corner block")
        return self

    def diagonal(self) -> Diagonal:
        """Main diagonal, whose product is the leading term under a diagonal order."""
        return Diagonal(boxes=tuple(Box(r, c) for r, c in zip(self.row_set, self.col_set)))
