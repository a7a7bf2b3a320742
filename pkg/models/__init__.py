from models.permutation import Box, EssentialBox, Flag, Partition, Permutation, RankArray
from models.combinatorics import Diagonal, MinorSpec, PipeDream, SetValuedTableau, Word
from models.reports import (
    CheckRow,
    Command,
    GbVerdict,
    GroebnerCheck,
    GvdStepRecord,
    GvdTrace,
    HilbertComparison,
    MinimalityResult,
    Outcome,
    PermInfo,
    PoisonCertificate,
    ProductTerm,
    SPairWitness,
)

# models.algebra wraps engine objects (Ideal, GroebnerBasis); import it directly.

__all__ = [
    "Box",
    "EssentialBox",
    "Flag",
    "Partition",
    "Permutation",
    "RankArray",
    "Diagonal",
    "MinorSpec",
    "PipeDream",
    "SetValuedTableau",
    "Word",
    "CheckRow",
    "Command",
    "GbVerdict",
    "GroebnerCheck",
    "GvdStepRecord",
    "GvdTrace",
    "HilbertComparison",
    "MinimalityResult",
    "Outcome",
    "PermInfo",
    "PoisonCertificate",
    "ProductTerm",
    "SPairWitness",
]
