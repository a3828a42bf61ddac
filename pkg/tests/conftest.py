"""Session-level reporting: one PASS/FAIL line per acceptance criterion."""

import re

CRITERIA = {
    1: "oracle equivalence of retrieve() vs brute-force scan",
    2: "expansion monotonicity (set inclusion, scores never decrease)",
    3: "expansion constraints (threshold, cap, stop words, delta weights)",
    4: "weighted tf-idf hand values (2.810930, 0.8)",
    5: "embedding sanity (co-occurrence ordering, bit-identical retrain)",
    6: "seasonal drift (per-month top-1 neighbors match design)",
    7: "recall-increase arithmetic (4 -> 13, 225.0%; empty -> 0.0)",
    8: "format round trips and malformed-input errors",
}

_results: dict[int, str] = {}
_PATTERN = re.compile(r"test_acceptance.*test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    match = _PATTERN.search(report.nodeid)
    if match is None:
        return
    number = int(match.group(1))
    if report.when == "call":
        _results[number] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and report.failed:
        _results[number] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        status = _results.get(number, "NOT RUN")
        terminalreporter.write_line(f"criterion {number} ({CRITERIA[number]}): {status}")
