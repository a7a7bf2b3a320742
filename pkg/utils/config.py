"""
config.py

Resource budgets and term-order selection. There are no configuration files:
the CLI builds an EngineBudget from flags and passes it down explicitly.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from utils.errors import ParseError


class EngineBudget(BaseModel):
    """Caps shared by the Groebner engine and the face enumerators."""
    model_config = ConfigDict(frozen=True)

    max_pairs: int = Field(default=20000, ge=1, description="S-pairs processed by one Buchberger run")
    max_poly_terms: int = Field(default=5000, ge=1, description="terms in any intermediate polynomial")
    max_word_length: int = Field(default=24, ge=0, description="longest word whose subword complex is enumerated")
    max_verify_n: int = Field(default=6, ge=1, description="largest n accepted by verify-all")
    random_orders: int = Field(default=5, ge=0, description="randomized diagonal orders sampled per check")
    seed: int = Field(default=0, description="seed for every sampled order")
    workers: Optional[int] = Field(default=None, ge=1, description="processes used by verify-all (default: one per CPU)")


DEFAULT_BUDGET = EngineBudget()


class OrderChoice(BaseModel):
    """Parsed value of the --order flag."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["diagonal", "antidiagonal", "seed"] = "diagonal"
    seed: Optional[int] = None

    @classmethod
    def parse(cls, text: str) -> "OrderChoice":
        """
        Parse `diagonal`, `antidiagonal` or `seed:<int>`.

        A seeded choice means a randomized diagonal order drawn with that seed.
        """
        text = text.strip()
        if text in ("diagonal", "antidiagonal"):
            return cls(kind=text)
        if text.startswith("seed:"):
            try:
                return cls(kind="seed", seed=int(text[len("seed:"):]))
            except ValueError:
                raise ParseError("seed must be an integer", text)
        raise ParseError("order must be diagonal, antidiagonal or seed:<int>", text)

    def label(self) -> str:
        return f"seed:{self.seed}" if self.kind == "seed" else self.kind
