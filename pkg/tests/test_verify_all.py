import pytest

from app import EXIT_REFUTED, main
from components import verify_all as battery
from components.verify_all import _run_check, checks_for, summarize, verify_all
from models.permutation import Permutation
from models.reports import CheckRow
from utils.config import EngineBudget
from utils.errors import BudgetExhausted, PreconditionError, VerificationFailure
from utils.permcore import all_permutations


def P(*values):
    return Permutation.of(values)


def raiser(exc):
    def check():
        raise exc
    return check


@pytest.mark.parametrize("exc, status", [
    (BudgetExhausted("S-pairs", 1), "skipped"),
    (VerificationFailure("lemma part (c) fails", witness=(2, 2)), "refuted"),
    (PreconditionError("descend_PC needs a vexillary permutation"), "error"),
])
def test_run_check_statuses(exc, status):
    row = _run_check(P(2, 1), "some check", raiser(exc))
    assert row.status == status
    assert row.perm == "2 1"


def test_run_check_verdicts():
    assert _run_check(P(2, 1), "plain", lambda: True).status == "verified"
    row = _run_check(P(2, 1), "with detail", lambda: (False, "unequal"))
    assert (row.status, row.detail) == ("refuted", "unequal")


def test_rows_follow_permutation_order():
    pooled = verify_all(3, EngineBudget(workers=2))
    inline = verify_all(3, EngineBudget(workers=1))
    labels = [" ".join(map(str, perm.one_line)) for perm in all_permutations(3)]
    assert list(pooled["perm"].unique()) == labels
    assert pooled.equals(inline)


def test_disagreeing_vexillarity_is_a_refuted_row(monkeypatch):
    def disagree(perm):
        raise VerificationFailure("characterizations disagree", witness=perm)

    monkeypatch.setattr(battery, "is_vexillary", disagree)
    rows = checks_for(P(1, 2), EngineBudget(workers=1))
    assert rows[0].check == "vexillarity"
    assert rows[0].status == "refuted"
    assert {row.status for row in rows[1:]} <= {"verified", "skipped"}


def test_summary_counts_errors():
    frame = verify_all(2, EngineBudget(workers=1))
    assert list(summarize(frame).index) == ["verified", "refuted", "skipped", "error"]
    assert summarize(frame)["error"] == 0


def test_error_rows_fail_the_run(monkeypatch, capsys):
    def broken(perm, budget):
        return [CheckRow(perm=str(perm), check="gvd steps", status="error", detail="PreconditionError: x")]

    monkeypatch.setattr(battery, "checks_for", broken)
    assert main(["verify-all", "--n", "2", "--workers", "1"]) == EXIT_REFUTED
