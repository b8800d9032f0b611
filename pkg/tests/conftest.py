from collections import defaultdict

CRITERIA = {
    1: "catalog reproduction",
    2: "minimal good sets at r=5, n=10",
    3: "threshold n >= 2r+2 for r in 2..5",
    4: "counterexample formulas for 23k and 3j",
    5: "oracle equivalence of the counting formula",
    6: "description bijection at n = 2r+2",
    7: "property suites",
}

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion k")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    for key, value in report.user_properties:
        if key != "criterion":
            continue
        if report.when == "call" or (report.when == "setup" and not report.passed):
            _outcomes[value].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        runs = _outcomes.get(k)
        status = "NOT RUN" if not runs else ("PASS" if all(runs) else "FAIL")
        terminalreporter.write_line(f"criterion {k} ({CRITERIA[k]}): {status}")
