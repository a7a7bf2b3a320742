import logging

from components.document import key_value_text, refuted, require_perm
from models.reports import Command, Outcome
from utils.config import EngineBudget, OrderChoice
from utils.errors import ParseError
from utils.formats import render_pipe_dream
from utils.poison import cross_diagram, diagonal_divisibility, is_minimal_poisoning, sharpness_certificate

logger = logging.getLogger(__name__)


def run_poison(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    """poison diagram | minimal | divisibility | certificate"""
    perm = require_perm(command.options)
    action = command.action or "minimal"
    logger.info("poison %s %s", action, perm)
    if action == "diagram":
        pd = cross_diagram(perm)
        return Outcome(payload=pd, text=render_pipe_dream(pd))
    if action == "minimal":
        result = is_minimal_poisoning(cross_diagram(perm), perm)
        if not result.is_minimal:
            return refuted(f"the cross diagram of {perm} is not a minimal poisoning",
                           witness=result.removable_cross, payload={"result": result})
        return Outcome(payload=result, text=f"the cross diagram of {perm} is a minimal poisoning")
    if action == "divisibility":
        if not diagonal_divisibility(perm):
            return refuted(f"some diagonal term of B_{perm} has no divisor among A_{perm}")
        return Outcome(payload={"perm": list(perm.one_line), "divisible": True},
                       text=f"every diagonal term of B_{perm} is divisible by one of A_{perm}")
    if action == "certificate":
        cert = sharpness_certificate(perm)
        text = key_value_text({"perm": perm, "length": cert.length, "codim": cert.codim,
                               "poison": " ".join(str(b) for b in cert.poison_crosses)})
        return Outcome(payload=cert, text=text)
    raise ParseError("poison actions are diagram, minimal, divisibility, certificate", action)
