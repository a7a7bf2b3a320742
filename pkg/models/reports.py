from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from models.permutation import Box


class SPairWitness(BaseModel):
    """An S-pair whose remainder is nonzero, in polynomial text form."""
    first: str
    second: str
    s_polynomial: str
    remainder: str


class GroebnerCheck(BaseModel):
    """Result of checking every S-pair of a generating set."""
    is_groebner: bool
    pairs_checked: int = 0
    witness: Optional[SPairWitness] = None


class GbVerdict(BaseModel):
    """Diagonal Groebner-basis verdict for the essential minors of one permutation."""
    perm: List[int]
    vexillary: bool
    diagonal_gb: bool
    witness_spair: Optional[SPairWitness] = None
    initial_ideal: List[str] = Field(default_factory=list)
    stanley_reisner_match: Optional[bool] = None
    orders_checked: List[str] = Field(default_factory=list)


class PoisonCertificate(BaseModel):
    """A poisoning of the essential minors with fewer crosses than the length."""
    perm: List[int]
    length: int
    poison_crosses: List[Box]
    codim: int
    contains_diagonal_terms: bool = True


class MinimalityResult(BaseModel):
    is_minimal: bool
    removable_cross: Optional[Box] = None


class GvdStepRecord(BaseModel):
    box: Box
    perm_P: List[int]
    perm_C: List[int]
    is_gvd: Optional[bool] = None
    hilbert_equal: Optional[bool] = None


class GvdTrace(BaseModel):
    """Recursive degeneration steps of a Schubert determinantal ideal."""
    perm: List[int]
    steps: List[GvdStepRecord] = Field(default_factory=list)
    monomial_ideal: List[str] = Field(default_factory=list)


class HilbertComparison(BaseModel):
    """h_{R/I} against h_{R/P} + s h_{R/C}, each as a canonical rational function string."""
    ideal_series: str
    projection_series: str
    cone_series: str
    equal: bool


class ProductTerm(BaseModel):
    """One signed product of linear (or 1 - x/y) factors, each in polynomial text."""
    model_config = ConfigDict(frozen=True)

    sign: int = 1
    factors: Tuple[str, ...] = ()


class PermInfo(BaseModel):
    perm: List[int]
    length: int
    descents: List[int]
    diagram: List[Box]
    essential_set: List[Tuple[Box, int]]
    vexillary: bool
    shape_lambda: List[int]
    shape_mu: Optional[List[int]] = None
    flag: Optional[List[int]] = None
    accessible: List[Box] = Field(default_factory=list)


CheckStatus = Literal["verified", "refuted", "skipped", "error"]


class CheckRow(BaseModel):
    """One line of the verify-all battery."""
    perm: str
    check: str
    status: CheckStatus
    detail: str = ""


class Command(BaseModel):
    """A parsed CLI invocation: the verb, its action and the remaining options."""
    verb: Literal["perm", "pipedreams", "tableaux", "poly", "groebner", "gvd", "poison", "verify-all"]
    action: Optional[str] = None
    options: Dict[str, Any] = Field(default_factory=dict)


class Outcome(BaseModel):
    """What a CLI handler hands back: the exit status and the document in every format."""
    exit_code: int = 0
    payload: Any = None
    text: str = ""
    latex: str = ""
