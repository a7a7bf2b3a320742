"""
The verify-all battery: every invariant the engines assert, run over all of S_n and
collected into one DataFrame row per permutation and check.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, List, Optional, Tuple, Union

import pandas as pd

from components.document import json_document
from models.permutation import Permutation
from models.reports import CheckRow, Command, GbVerdict, Outcome
from utils.config import EngineBudget, OrderChoice
from utils.detideal import verify_diagonal_gb
from utils.errors import BudgetExhausted, ParseError, PreconditionError, VerificationFailure, VexGvdError
from utils.formats import format_polynomial, verbatim_latex
from utils.gvd import gvd_step_schubert
from utils.invariants import cross_validate
from utils.permcore import (
    accessible_boxes,
    all_permutations,
    contains_2143,
    diagram,
    is_vexillary,
    length,
    rank_array,
    reconstruct_from_rank,
)
from utils.poison import cross_diagram, diagonal_divisibility, is_minimal_poisoning, sharpness_certificate
from utils.subword import gamma_complex, is_shelling, vertex_decompose

logger = logging.getLogger(__name__)

# A check returns True/False, or a (verdict, detail) pair.
CheckResult = Union[bool, Tuple[bool, str]]

STATUS_ORDER = ["verified", "refuted", "skipped", "error"]


def _run_check(perm: Permutation, name: str, check: Callable[[], CheckResult]) -> CheckRow:
    """
    Run one check. A budget cap gives a skipped row and a failed assertion a refuted
    one; any other engine error is unexpected for a check that is already gated on its
    preconditions, so it becomes an error row.
    """
    label = " ".join(str(v) for v in perm.one_line)
    try:
        result = check()
    except BudgetExhausted as exc:
        logger.warning("%s %s skipped: %s", label, name, exc)
        return CheckRow(perm=label, check=name, status="skipped", detail=str(exc))
    except VerificationFailure as exc:
        return CheckRow(perm=label, check=name, status="refuted", detail=f"{exc} (witness: {exc.witness})")
    except VexGvdError as exc:
        logger.error("%s %s raised %s: %s", label, name, type(exc).__name__, exc)
        return CheckRow(perm=label, check=name, status="error", detail=f"{type(exc).__name__}: {exc}")
    verdict, detail = result if isinstance(result, tuple) else (result, "")
    return CheckRow(perm=label, check=name, status="verified" if verdict else "refuted", detail=detail)


def _gvd_steps(perm: Permutation, budget: EngineBudget) -> Tuple[bool, str]:
    boxes = sorted(accessible_boxes(perm))
    for box in boxes:
        _, record = gvd_step_schubert(perm, box, budget)
        if record.hilbert_equal is False:
            return False, f"Hilbert series unequal at {box}"
    return True, f"{len(boxes)} accessible boxes"


def _agreement(perm: Permutation, kind: str, budget: EngineBudget) -> Tuple[bool, str]:
    return True, format_polynomial(cross_validate(perm, kind, budget))


def _shelling(perm: Permutation, budget: EngineBudget) -> Tuple[bool, str]:
    if not perm.trimmed():
        return True, "Gamma is the empty word"
    order = vertex_decompose(gamma_complex(perm, budget), perm)
    return is_shelling(order), f"{len(order)} facets"


def _stanley_reisner_match(verdict: GbVerdict, budget: EngineBudget) -> bool:
    if verdict.stanley_reisner_match is None:
        raise BudgetExhausted("subword complex word length", budget.max_word_length)
    return verdict.stanley_reisner_match


def _sharpness(perm: Permutation) -> Tuple[bool, str]:
    cert = sharpness_certificate(perm)
    return cert.codim < cert.length, f"{cert.codim} crosses against length {cert.length}"


def _vexillarity(perm: Permutation, avoids_2143: bool) -> Tuple[bool, str]:
    return is_vexillary(perm) == avoids_2143, "vexillary" if avoids_2143 else "contains 2143"


def checks_for(perm: Permutation, budget: EngineBudget) -> List[CheckRow]:
    """Run the battery for one permutation, in a fixed check order."""
    vexillary = not contains_2143(perm)
    verdicts = {}

    def verdict():
        if "gb" not in verdicts:
            verdicts["gb"] = verify_diagonal_gb(perm, budget)
        return verdicts["gb"]

    plan: List[Tuple[str, Callable[[], CheckResult]]] = [
        ("vexillarity", lambda: _vexillarity(perm, vexillary)),
        ("diagram length", lambda: len(diagram(perm)) == length(perm)),
        ("rank reconstruction", lambda: reconstruct_from_rank(rank_array(perm)) == perm),
        ("diagonal groebner verdict", lambda: verdict().diagonal_gb == vexillary),
        ("schubert agreement", lambda: _agreement(perm, "schubert", budget)),
        ("grothendieck agreement", lambda: _agreement(perm, "grothendieck", budget)),
        ("minimal poisoning", lambda: is_minimal_poisoning(cross_diagram(perm), perm).is_minimal == vexillary),
        ("diagonal divisibility", lambda: diagonal_divisibility(perm)),
    ]
    if vexillary:
        plan += [
            ("initial ideal is stanley-reisner of gamma", lambda: _stanley_reisner_match(verdict(), budget)),
            ("gvd steps", lambda: _gvd_steps(perm, budget)),
            ("shelling", lambda: _shelling(perm, budget)),
        ]
    else:
        plan.append(("sharpness certificate", lambda: _sharpness(perm)))
    return [_run_check(perm, name, check) for name, check in plan]


def verify_all(n: int, budget: EngineBudget) -> pd.DataFrame:
    """
    Run the battery over S_n, one permutation per task.

    budget.workers == 1 runs in-process; otherwise the permutations fan out over a
    process pool whose map keeps them in all_permutations order.

    Returns:
        one row per (permutation, check) in permutation order

    Raises:
        PreconditionError: n is outside 1..budget.max_verify_n
    """
    if not 1 <= n <= budget.max_verify_n:
        raise PreconditionError(f"verify-all accepts 1 <= n <= {budget.max_verify_n}, got {n}")
    perms = list(all_permutations(n))
    run_one = partial(checks_for, budget=budget)
    if budget.workers == 1:
        batches = list(map(run_one, perms))
    else:
        with ProcessPoolExecutor(max_workers=budget.workers) as pool:
            batches = list(pool.map(run_one, perms, chunksize=max(1, len(perms) // 64)))
    rows: List[CheckRow] = []
    for perm, found in zip(perms, batches):
        logger.info("%s: %s", perm, ", ".join(f"{r.check}={r.status}" for r in found))
        rows.extend(found)
    return pd.DataFrame([row.model_dump() for row in rows], columns=list(CheckRow.model_fields))


def summarize(frame: pd.DataFrame) -> pd.Series:
    counts = frame.groupby("status").size() if not frame.empty else pd.Series(dtype=int)
    return counts.reindex(STATUS_ORDER, fill_value=0)


def run_verify_all(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    """verify-all --n N"""
    raw: Optional[object] = command.options.get("n")
    if raw is None:
        raise ParseError("verify-all needs --n")
    frame = verify_all(int(raw), budget)
    summary = summarize(frame)
    vexillary_count = int(frame[(frame["check"] == "vexillarity") & (frame["detail"] == "vexillary")].shape[0])
    payload = {
        "n": int(raw),
        "permutations": int(frame["perm"].nunique()),
        "vexillary": vexillary_count,
        "summary": {status: int(count) for status, count in summary.items()},
        "rows": frame.to_dict(orient="records"),
    }
    text = frame.to_string(index=False) + "\n\n" + json_document(payload["summary"])
    exit_code = 1 if summary["refuted"] or summary["error"] else 0
    return Outcome(exit_code=exit_code, payload=payload, text=text, latex=verbatim_latex(text, f"verify-all n={raw}"))
