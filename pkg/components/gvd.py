import logging

from components.document import key_value_text, parse_box, refuted, require_perm
from components.groebner import read_ideal
from models.reports import Command, Outcome
from utils.config import EngineBudget, OrderChoice
from utils.errors import ParseError
from utils.formats import parse_ring
from utils.gvd import gvd_step_schubert, hilbert_check, iterate_gvd, split_CP

logger = logging.getLogger(__name__)


def _split(command: Command, budget: EngineBudget) -> Outcome:
    ideal = read_ideal(command.options)
    names = parse_ring(command.options.get("y") or "")
    if len(names) != 1:
        raise ParseError("--y names exactly one variable", command.options.get("y"))
    split = split_CP(ideal, names[0], budget=budget)
    payload = split.summary()
    if ideal.is_homogeneous():
        payload["hilbert"] = hilbert_check(ideal, split)
    text = key_value_text({k: v for k, v in payload.items() if k != "hilbert"})
    if not split.is_gvd:
        return refuted(f"I' differs from C meet P at {split.y}", payload=payload)
    return Outcome(payload=payload, text=text)


def _step(command: Command, budget: EngineBudget) -> Outcome:
    perm = require_perm(command.options)
    split, record = gvd_step_schubert(perm, parse_box(command.options.get("box")), budget)
    payload = {"step": record, "split": split.summary()}
    text = key_value_text({"perm": perm, "box": record.box, "pi_P": record.perm_P, "pi_C": record.perm_C,
                           "gvd": record.is_gvd, "hilbert equal": record.hilbert_equal})
    return Outcome(payload=payload, text=text)


def _trace(command: Command, budget: EngineBudget) -> Outcome:
    perm = require_perm(command.options)
    seed = command.options.get("seed")
    trace = iterate_gvd(perm, budget, certify=True, seed=seed)
    lines = [f"{len(trace.steps)} steps for {perm}"]
    lines += [f"  {s.box}: P {s.perm_P}  C {s.perm_C}" for s in trace.steps]
    lines.append("limit: <" + ", ".join(trace.monomial_ideal) + ">")
    return Outcome(payload=trace, text="\n".join(lines))


def run_gvd(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    """gvd split --ideal-file F --y v | step <perm> [--box p,q] | trace <perm> [--seed s]"""
    action = command.action or "trace"
    logger.info("gvd %s", action)
    if action == "split":
        return _split(command, budget)
    if action == "step":
        return _step(command, budget)
    if action == "trace":
        return _trace(command, budget)
    raise ParseError("gvd actions are split, step, trace", action)
