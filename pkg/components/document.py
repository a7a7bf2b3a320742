from typing import Any, Dict, Iterable, List, Literal, Optional

from pydantic_core import to_json

from models.permutation import Box, Permutation
from models.reports import Outcome
from utils.errors import ParseError
from utils.formats import parse_permutation, verbatim_latex

OutputFormat = Literal["json", "latex", "text"]


def json_document(payload: Any) -> str:
    """Deterministic JSON for models, dicts and lists; unknown objects fall back to str()."""
    return to_json(payload, indent=2, fallback=str).decode() + "\n"


def render(outcome: Outcome, fmt: OutputFormat) -> str:
    """
    Pick the document for the requested format.

    Args:
        outcome: handler result carrying every rendering
        fmt: json, latex or text

    Returns:
        the document, newline terminated
    """
    if fmt == "json":
        return json_document(outcome.payload)
    if fmt == "latex":
        body = outcome.latex or verbatim_latex(outcome.text)
        return body if body.endswith("\n") else body + "\n"
    return outcome.text if outcome.text.endswith("\n") else outcome.text + "\n"


def key_value_text(fields: Dict[str, Any]) -> str:
    width = max((len(k) for k in fields), default=0)
    return "\n".join(f"{k.ljust(width)} : {v}" for k, v in fields.items())


def parse_box(text: Optional[str]) -> Optional[Box]:
    """`3,2` or `(3,2)` into a Box; None passes through."""
    if text is None:
        return None
    tokens = [t for t in text.strip().strip("()[]").replace(" ", "").split(",") if t]
    if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
        raise ParseError("a box is written row,col", text)
    return Box(int(tokens[0]), int(tokens[1]))


def require_perm(options: Dict[str, Any]) -> Permutation:
    text = options.get("perm")
    if not text:
        raise ParseError("this action needs a permutation argument")
    return parse_permutation(text)


def boxes_text(boxes: Iterable[Box]) -> str:
    return " ".join(str(b) for b in sorted(boxes)) or "(none)"


def refuted(message: str, witness: Any = None, payload: Optional[Dict[str, Any]] = None) -> Outcome:
    """A claim that was checked and found false: exit 1 with its witness."""
    document: Dict[str, Any] = {"status": "refuted", "message": message, "witness": witness}
    if payload:
        document.update(payload)
    text = f"REFUTED: {message}"
    if witness is not None:
        text += f"\nwitness: {witness}"
    return Outcome(exit_code=1, payload=document, text=text)


def as_rows(items: Iterable[Any]) -> List[Any]:
    return [item.model_dump(mode="json") if hasattr(item, "model_dump") else item for item in items]
