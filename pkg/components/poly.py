import logging
from typing import Optional

from components.document import key_value_text, refuted, require_perm
from models.reports import Command, Outcome
from models.permutation import Partition
from utils.config import EngineBudget, OrderChoice
from utils.errors import ParseError
from utils.formats import format_polynomial, format_product_sum, latex_polynomial, latex_product_sum
from utils.invariants import (
    buch_tableau_sum,
    cross_validate,
    grassmannian_single_grothendieck,
    grothendieck,
    lowest_degree_schubert,
    product_terms,
    schubert,
)

logger = logging.getLogger(__name__)

_PRODUCT_METHODS = {"schubert": ("tableau", "pipedream"), "grothendieck": ("tableau", "interior_faces")}
_DEFAULT_METHOD = {"schubert": "divided_difference", "grothendieck": "demazure"}


def _polynomial(command: Command, kind: str, budget: EngineBudget) -> Outcome:
    perm = require_perm(command.options)
    method = command.options.get("method") or _DEFAULT_METHOD[kind]
    compute = schubert if kind == "schubert" else grothendieck
    value = compute(perm, method, budget)
    payload = {"perm": list(perm.one_line), "kind": kind, "method": method, "polynomial": format_polynomial(value)}
    text = format_polynomial(value)
    latex = latex_polynomial(value)
    if method in _PRODUCT_METHODS[kind]:
        terms = product_terms(perm, kind, method, budget)
        payload["terms"] = terms
        text = format_product_sum(terms) + "\n= " + text
        latex = latex_product_sum(terms)
    if kind == "grothendieck":
        payload["lowest_degree"] = format_polynomial(lowest_degree_schubert(value))
    return Outcome(payload=payload, text=text, latex=latex)


def _cross_validate(command: Command, budget: EngineBudget) -> Outcome:
    perm = require_perm(command.options)
    kind = command.options.get("kind") or "schubert"
    if kind not in _DEFAULT_METHOD:
        raise ParseError("kind is schubert or grothendieck", kind)
    value = cross_validate(perm, kind, budget)
    payload = {"perm": list(perm.one_line), "kind": kind, "agree": True, "polynomial": format_polynomial(value)}
    return Outcome(payload=payload, text=f"all {kind} methods agree for {perm}:\n{format_polynomial(value)}",
                   latex=latex_polynomial(value))


def _parse_shape(text: Optional[str]) -> Partition:
    if text is None:
        raise ParseError("buch needs --shape")
    tokens = [t for t in text.replace(",", " ").split() if t]
    if not all(t.isdigit() for t in tokens):
        raise ParseError("shape parts must be nonnegative integers", text)
    return Partition(parts=tuple(int(t) for t in tokens if int(t) > 0))


def _buch(command: Command) -> Outcome:
    shape = _parse_shape(command.options.get("shape"))
    k = int(command.options.get("k") or max(len(shape), 1))
    tableau_sum = buch_tableau_sum(shape, k)
    specialized = grassmannian_single_grothendieck(shape, k)
    payload = {"shape": list(shape.parts), "k": k, "tableau_sum": format_polynomial(tableau_sum),
               "grothendieck": format_polynomial(specialized)}
    if tableau_sum != specialized:
        return refuted(f"tableau sum differs from G for shape {shape}, k = {k}", payload=payload)
    text = key_value_text({"shape": shape, "k": k, "G": format_polynomial(specialized)})
    return Outcome(payload={**payload, "agree": True}, text=text, latex=latex_polynomial(specialized))


def run_poly(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    """poly schubert | grothendieck [--method m] | cross-validate [--kind k] | buch --shape ... --k ..."""
    action = command.action or "schubert"
    logger.info("poly %s", action)
    if action in ("schubert", "grothendieck"):
        return _polynomial(command, action, budget)
    if action == "cross-validate":
        return _cross_validate(command, budget)
    if action == "buch":
        return _buch(command)
    raise ParseError("poly actions are schubert, grothendieck, cross-validate, buch", action)
