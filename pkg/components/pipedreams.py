import logging
from typing import List

from components.document import require_perm
from models.combinatorics import PipeDream
from models.reports import Command, Outcome
from models.permutation import Permutation
from utils.config import EngineBudget, OrderChoice
from utils.errors import ParseError
from utils.formats import render_pipe_dream, verbatim_latex
from utils.permcore import require_vexillary, shape_mu
from utils.subword import SubwordComplex, gamma_complex, staircase_word, vertex_decompose

logger = logging.getLogger(__name__)


def reduced_pipe_dreams(perm: Permutation, budget: EngineBudget) -> List[PipeDream]:
    """Reduced pipe dreams of perm: complements of the facets of the staircase subword complex."""
    n = max(perm.n, 2)
    complex_ = SubwordComplex(staircase_word(n), perm, budget)
    everything = complex_.positions
    return [complex_.pipe_dream(everything - face, n, n) for face in complex_.facets()]


def _gamma_pipe_dreams(perm: Permutation, budget: EngineBudget, interior: bool, shelling: bool) -> List[PipeDream]:
    require_vexillary(perm, "pipedreams")
    mu = shape_mu(perm)
    rows, cols = max(len(mu), 1), max(mu.parts[0] if mu.parts else 0, 1)
    complex_ = gamma_complex(perm, budget)
    everything = complex_.positions
    if interior:
        faces = complex_.interior_faces()
    elif shelling:
        faces = vertex_decompose(complex_, perm)
    else:
        faces = complex_.facets()
    return [complex_.pipe_dream(everything - face, rows, cols) for face in faces]


def _listing(title: str, dreams: List[PipeDream]) -> Outcome:
    blocks = [f"{title}: {len(dreams)}"] + [render_pipe_dream(pd) for pd in dreams]
    text = "\n\n".join(blocks)
    return Outcome(payload={"count": len(dreams), "pipe_dreams": dreams}, text=text,
                   latex=verbatim_latex(text, title))


def run_pipedreams(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    """pipedreams reduced | gamma | interior | shelling"""
    perm = require_perm(command.options)
    action = command.action or "reduced"
    logger.info("pipedreams %s %s", action, perm)
    if action == "reduced":
        return _listing(f"reduced pipe dreams of {perm}", reduced_pipe_dreams(perm, budget))
    if action == "gamma":
        return _listing(f"facets of Gamma_{perm}", _gamma_pipe_dreams(perm, budget, False, False))
    if action == "interior":
        return _listing(f"interior faces of Gamma_{perm}", _gamma_pipe_dreams(perm, budget, True, False))
    if action == "shelling":
        return _listing(f"shelling of Gamma_{perm}", _gamma_pipe_dreams(perm, budget, False, True))
    raise ParseError("pipedreams actions are reduced, gamma, interior, shelling", action)
