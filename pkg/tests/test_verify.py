import csv
import io
import json

import pytest

from lecture_hall.verify import (
    CSV_HEADER,
    SUITES,
    Check,
    VerificationReport,
    emit_table,
    poset_corpus,
    random_s_corpus,
    run_all,
    run_suite,
)


def test_empty_report_csv_is_header_only():
    text = emit_table(VerificationReport("empty"), "csv")
    assert text.strip().split("\n") == [",".join(CSV_HEADER)]


def test_json_roundtrip():
    report = VerificationReport("x", [Check("a", {"n": 2}, [0, 1], [0, 1], True)], 5)
    again = VerificationReport.from_json(emit_table(report, "json"))
    assert again == report


def test_checks_are_sorted_and_pass_state():
    report = VerificationReport(
        "x", [Check("b", {}, 1, 2, False), Check("a", {}, 1, 1, True)]
    )
    assert [c.id for c in report.checks] == ["a", "b"]
    assert not report.passed
    assert [c.id for c in report.failures] == ["b"]


def test_csv_rows_parse_back():
    report = run_suite("remark")
    rows = list(csv.reader(io.StringIO(emit_table(report, "csv"))))
    assert rows[0] == CSV_HEADER
    assert len(rows) == len(report.checks) + 1
    assert all(row[-1] == "true" for row in rows[1:])
    assert json.loads(rows[1][4]) == report.checks[0].actual


def test_unknown_format_and_suite():
    with pytest.raises(ValueError):
        emit_table(VerificationReport("x"), "xml")
    with pytest.raises(KeyError):
        run_suite("nope")


def test_corpora_are_deterministic():
    assert random_s_corpus(20, 4, 5, seed=3) == random_s_corpus(20, 4, 5, seed=3)
    assert random_s_corpus(20, 4, 5, seed=3) != random_s_corpus(20, 4, 5, seed=4)
    corpus = poset_corpus(3, 2, 3, seed=1)
    assert len(corpus) == 2 * (1 + 2 + 5)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_suites_pass(name):
    report = run_suite(name, max_n=3, max_entry=3)
    assert report.checks
    assert report.passed, report.failures[:3]


def test_reports_are_deterministic():
    a = run_suite("recursion", max_n=4, max_entry=4, seed=7)
    b = run_suite("recursion", max_n=4, max_entry=4, seed=7)
    assert a.checks == b.checks


def test_run_all_small():
    report = run_all(max_n=3, max_entry=3)
    assert report.passed
    assert {c.id.split("/")[0] for c in report.checks} == set(SUITES)


def test_failures_are_reported():
    from lecture_hall.verify import _check

    c = _check("x", {}, [1, 2], [1, 3])
    assert not c.passed
