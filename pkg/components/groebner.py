import logging
from pathlib import Path

from components.document import key_value_text, refuted, require_perm
from models.reports import Command, Outcome
from utils.config import EngineBudget, OrderChoice
from utils.detideal import diagonal_initial_ideal, order_for, schubert_ideal, verify_diagonal_gb
from utils.errors import ParseError
from utils.formats import format_ideal_text, format_polynomial, parse_ideal_text, verbatim_latex
from utils.groebner import Ideal, buchberger, format_monomials, is_groebner_basis
from utils.polyring import default_order

logger = logging.getLogger(__name__)


def read_ideal(options) -> Ideal:
    path = options.get("ideal_file")
    if not path:
        raise ParseError("this action needs --ideal-file")
    return parse_ideal_text(Path(path).read_text())


def _z_size(ideal: Ideal) -> int:
    """n when the ring is exactly the n x n generic matrix, else 0."""
    zs = [v for v in ideal.ring if v.kind == "z"]
    n = max((max(v.i, v.j) for v in zs), default=0)
    return n if zs and len(zs) == len(ideal.ring) == n * n else 0


def _verify(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    perm = require_perm(command.options)
    if order.kind == "diagonal":
        verdict = verify_diagonal_gb(perm, budget)
        if not verdict.diagonal_gb:
            return refuted(f"essential minors of {perm} are not a diagonal Groebner basis",
                           witness=verdict.witness_spair, payload={"verdict": verdict})
        text = key_value_text({"perm": perm, "diagonal_gb": True, "orders": ", ".join(verdict.orders_checked),
                               "initial ideal": ", ".join(verdict.initial_ideal)})
        return Outcome(payload=verdict, text=text, latex=verbatim_latex(text))
    term_order = order_for(order, perm.n)
    check = is_groebner_basis(list(schubert_ideal(perm).generators), term_order, budget)
    if not check.is_groebner:
        return refuted(f"essential minors of {perm} are not a Groebner basis under {term_order.name}",
                       witness=check.witness, payload={"check": check})
    return Outcome(payload=check, text=f"essential minors of {perm} form a Groebner basis under {term_order.name}")


def _basis(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    ideal = read_ideal(command.options)
    n = _z_size(ideal)
    term_order = order_for(order, n) if n else default_order(ideal.ring)
    basis = buchberger(ideal, term_order, budget)
    reduced = Ideal(basis.elements, ideal.ring)
    payload = {"order": term_order.name, "basis": [format_polynomial(g) for g in basis.elements],
               "initial_ideal": format_monomials(basis.initial_ideal().monomials())}
    return Outcome(payload=payload, text=format_ideal_text(reduced))


def _initial(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    perm = require_perm(command.options)
    term_order = order_for(order, perm.n)
    init = diagonal_initial_ideal(perm, term_order, budget)
    monomials = format_monomials(init.monomials())
    payload = {"perm": list(perm.one_line), "order": term_order.name, "initial_ideal": monomials}
    return Outcome(payload=payload, text="<" + ", ".join(monomials) + ">")


def run_groebner(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    """groebner verify <perm> | initial <perm> | basis --ideal-file F"""
    action = command.action or "verify"
    logger.info("groebner %s under %s", action, order.label())
    if action == "verify":
        return _verify(command, budget, order)
    if action == "initial":
        return _initial(command, budget, order)
    if action == "basis":
        return _basis(command, budget, order)
    raise ParseError("groebner actions are verify, initial, basis", action)
