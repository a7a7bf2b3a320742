import logging
from typing import List

from components.document import require_perm
from models.combinatorics import SetValuedTableau
from models.reports import Command, Outcome
from models.permutation import Permutation
from utils.config import EngineBudget, OrderChoice
from utils.errors import ParseError, VerificationFailure
from utils.formats import latex_tableau, render_pipe_dream, render_tableau
from utils.subword import gamma_data
from utils.tableaux import check_omega_structure, fst, ft, omega_inverse

logger = logging.getLogger(__name__)


def _listing(title: str, tableaux: List[SetValuedTableau]) -> Outcome:
    text = "\n\n".join([f"{title}: {len(tableaux)}"] + [render_tableau(t) for t in tableaux])
    latex = "\n".join(f"{latex_tableau(t)}\\quad" for t in tableaux)
    return Outcome(payload={"count": len(tableaux), "tableaux": tableaux}, text=text, latex=latex)


def _omega_round_trip(perm: Permutation) -> Outcome:
    """Send every tableau of FT(pi) through omega, check its structure, and invert it."""
    top, k, size = gamma_data(perm)
    pairs, blocks = [], []
    for tableau in ft(perm):
        pd = check_omega_structure(tableau, k, size)
        back = omega_inverse(pd, perm)
        if back != tableau:
            raise VerificationFailure("omega_inverse does not undo omega", witness=tableau.rows)
        pairs.append({"tableau": tableau, "pipe_dream": pd})
        blocks.append(render_tableau(tableau) + "\n->\n" + render_pipe_dream(pd))
    text = "\n\n".join([f"Omega on FT({perm}) into {k}x{size} pipe dreams for {top}"] + blocks)
    return Outcome(payload={"perm": list(perm.one_line), "k": k, "N": size, "pairs": pairs}, text=text)


def run_tableaux(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    """tableaux ft | fst | omega"""
    perm = require_perm(command.options)
    action = command.action or "ft"
    logger.info("tableaux %s %s", action, perm)
    if action == "ft":
        return _listing(f"FT({perm})", ft(perm))
    if action == "fst":
        return _listing(f"FST({perm})", fst(perm))
    if action == "omega":
        return _omega_round_trip(perm)
    raise ParseError("tableaux actions are ft, fst, omega", action)
