import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from components.document import render
from components.groebner import run_groebner
from components.gvd import run_gvd
from components.perm import run_perm
from components.pipedreams import run_pipedreams
from components.poison import run_poison
from components.poly import run_poly
from components.tableaux import run_tableaux
from components.verify_all import run_verify_all
from models.reports import Command, Outcome
from utils.config import DEFAULT_BUDGET, EngineBudget, OrderChoice
from utils.errors import (
    BudgetExhausted,
    InvalidPermutationError,
    ParseError,
    PreconditionError,
    VerificationFailure,
)
from utils.logs import configure_logging

logger = logging.getLogger("app")

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

Handler = Callable[[Command, EngineBudget, OrderChoice], Outcome]

HANDLERS: Dict[str, Handler] = {
    "perm": run_perm,
    "pipedreams": run_pipedreams,
    "tableaux": run_tableaux,
    "poly": run_poly,
    "groebner": run_groebner,
    "gvd": run_gvd,
    "poison": run_poison,
    "verify-all": run_verify_all,
}

# verb -> (actions, default action)
ACTIONS = {
    "perm": (["info", "descend", "gamma"], "info"),
    "pipedreams": (["reduced", "gamma", "interior", "shelling"], "reduced"),
    "tableaux": (["ft", "fst", "omega"], "ft"),
    "poly": (["schubert", "grothendieck", "cross-validate", "buch"], "schubert"),
    "groebner": (["verify", "initial", "basis"], "verify"),
    "gvd": (["split", "step", "trace"], "trace"),
    "poison": (["diagram", "minimal", "divisibility", "certificate"], "minimal"),
}

GLOBAL_OPTIONS = ("order", "format", "max_pairs", "max_poly_terms", "out", "verbose", "verb", "action")


# ================ #
# Argument parsing #
# ================ #

def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", default="diagonal", help="diagonal | antidiagonal | seed:<int> (default: diagonal)")
    common.add_argument("--format", default="json", choices=["json", "latex", "text"], help="output document format")
    common.add_argument("--max-pairs", type=int, default=None,
                        help=f"S-pair budget per Buchberger run (default: {DEFAULT_BUDGET.max_pairs})")
    common.add_argument("--max-poly-terms", type=int, default=None,
                        help=f"term budget per intermediate polynomial (default: {DEFAULT_BUDGET.max_poly_terms})")
    common.add_argument("--out", default=None, help="write the document here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="vexgvd", description="Vexillary Schubert determinantal ideals toolkit")
    verbs = parser.add_subparsers(dest="verb", required=True)

    for verb, (actions, default) in ACTIONS.items():
        sub = verbs.add_parser(verb, parents=[common])
        sub.add_argument("action", nargs="?", default=default, choices=actions)
        sub.add_argument("perm", nargs="?", default=None, help='one-line notation, e.g. "4 1 3 2 5"')
        if verb in ("perm", "gvd"):
            sub.add_argument("--box", default=None, help="accessible box as row,col")
        if verb == "poly":
            sub.add_argument("--method", default=None)
            sub.add_argument("--kind", default=None, choices=["schubert", "grothendieck"])
            sub.add_argument("--shape", default=None, help='partition for buch, e.g. "2 1"')
            sub.add_argument("--k", type=int, default=None)
        if verb in ("groebner", "gvd"):
            sub.add_argument("--ideal-file", default=None, help="ideal file: ring header and one polynomial per line")
        if verb == "gvd":
            sub.add_argument("--y", default=None, help="variable to degenerate along, e.g. z3_2")
            sub.add_argument("--seed", type=int, default=None, help="choose accessible boxes at random")

    verify = verbs.add_parser("verify-all", parents=[common])
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--workers", type=int, default=None, help="worker processes (default: one per CPU; 1 runs in-process)")
    return parser


# ======== #
# Dispatch #
# ======== #

def build_budget(args: argparse.Namespace) -> EngineBudget:
    overrides = {
        field: getattr(args, field)
        for field in ("max_pairs", "max_poly_terms", "workers")
        if getattr(args, field, None) is not None
    }
    return EngineBudget(**{**DEFAULT_BUDGET.model_dump(), **overrides})


def run(command: Command, budget: EngineBudget, order: OrderChoice) -> Outcome:
    """Route one command to its handler and map engine errors onto exit codes."""
    handler = HANDLERS[command.verb]
    try:
        return handler(command, budget, order)
    except VerificationFailure as exc:
        logger.error("verification failed: %s", exc)
        payload = {"status": "refuted", "message": str(exc), "witness": exc.witness}
        return Outcome(exit_code=EXIT_REFUTED, payload=payload, text=f"REFUTED: {exc}\nwitness: {exc.witness}")
    except BudgetExhausted as exc:
        logger.warning("%s", exc)
        payload = {"status": "budget_exhausted", "resource": exc.resource, "limit": exc.limit}
        return Outcome(exit_code=EXIT_BUDGET, payload=payload, text=str(exc))
    except (InvalidPermutationError, ParseError, PreconditionError) as exc:
        logger.error("%s", exc)
        payload = {"status": "usage_error", "message": str(exc)}
        return Outcome(exit_code=EXIT_USAGE, payload=payload, text=f"error: {exc}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    try:
        order = OrderChoice.parse(args.order)
        budget = build_budget(args)
    except (ParseError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    options = {k: v for k, v in vars(args).items() if k not in GLOBAL_OPTIONS}
    command = Command(verb=args.verb, action=getattr(args, "action", None), options=options)
    outcome = run(command, budget, order)
    document = render(outcome, args.format)

    if args.out:
        Path(args.out).write_text(document)
    else:
        sys.stdout.write(document)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
