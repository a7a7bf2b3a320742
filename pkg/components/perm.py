import logging

from components.document import boxes_text, key_value_text, parse_box, require_perm
from models.reports import Command, Outcome, PermInfo
from models.permutation import Permutation
from utils.config import EngineBudget, OrderChoice
from utils.errors import ParseError, PreconditionError
from utils.formats import verbatim_latex
from utils.permcore import (
    accessible_boxes,
    descend_PC,
    descents,
    diagram,
    essential_set,
    flag,
    is_vexillary,
    length,
    shape_lambda,
    shape_mu,
    southeast_accessible_box,
)
from utils.subword import gamma_data, word_of_mu

logger = logging.getLogger(__name__)


def perm_info(perm: Permutation) -> PermInfo:
    """Diagram, essential set, shapes and (for vexillary perms) flag and accessible boxes."""
    vexillary = is_vexillary(perm)
    return PermInfo(
        perm=list(perm.one_line),
        length=length(perm),
        descents=sorted(descents(perm)),
        diagram=sorted(diagram(perm)),
        essential_set=[(e.box, e.rank) for e in sorted(essential_set(perm))],
        vexillary=vexillary,
        shape_lambda=list(shape_lambda(perm).parts),
        shape_mu=list(shape_mu(perm).parts),
        flag=list(flag(perm).bounds) if vexillary else None,
        accessible=sorted(accessible_boxes(perm)) if vexillary else [],
    )


def _info(perm: Permutation) -> Outcome:
    info = perm_info(perm)
    text = key_value_text({
        "perm": perm,
        "length": info.length,
        "descents": info.descents,
        "diagram": boxes_text(info.diagram),
        "essential": " ".join(f"{box}:{rank}" for box, rank in info.essential_set) or "(none)",
        "vexillary": info.vexillary,
        "lambda": tuple(info.shape_lambda),
        "mu": tuple(info.shape_mu or ()),
        "flag": tuple(info.flag) if info.flag is not None else "-",
        "accessible": boxes_text(info.accessible),
    })
    return Outcome(payload=info, text=text, latex=verbatim_latex(text, f"perm info {perm}"))


def _descend(perm: Permutation, box_text) -> Outcome:
    box = parse_box(box_text) or southeast_accessible_box(perm)
    if box is None:
        raise PreconditionError(f"{perm} has no accessible box")
    perm_p, perm_c = descend_PC(perm, box)
    payload = {"perm": list(perm.one_line), "box": box, "perm_P": list(perm_p.one_line), "perm_C": list(perm_c.one_line)}
    text = key_value_text({"perm": perm, "box": box, "pi_P": perm_p, "pi_C": perm_c})
    return Outcome(payload=payload, text=text)


def _gamma(perm: Permutation) -> Outcome:
    top, k, size = gamma_data(perm)
    word = word_of_mu(perm)
    payload = {"perm": list(perm.one_line), "grassmannian": list(top.one_line), "k": k, "N": size,
               "word": list(word.letters)}
    text = key_value_text({"perm": perm, "pi~": top, "k": k, "N": size, "Q": word})
    return Outcome(payload=payload, text=text)


def run_perm(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    """perm info | descend [--box p,q] | gamma"""
    perm = require_perm(command.options)
    action = command.action or "info"
    logger.info("perm %s %s", action, perm)
    if action == "info":
        return _info(perm)
    if action == "descend":
        return _descend(perm, command.options.get("box"))
    if action == "gamma":
        return _gamma(perm)
    raise ParseError("perm actions are info, descend, gamma", action)
