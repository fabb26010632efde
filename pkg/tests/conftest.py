import pytest

CRITERIA = {
    1: "R21 example: critical {-2, 2}, no inflexion",
    2: "R12 example: critical {-8, 8}, inflexion {-20}",
    3: "R12 complex: (9,64) and (286,7^6)",
    4: "R22 examples",
    5: "three-inflexion table reproduction by search",
    6: "three-inflexion parametric families",
    7: "R31 examples and complex variant",
    8: "R32 integer form (2,3,8,18)",
    9: "(x^3+165x^2+10566x+476280)/(x^2+110x)",
    10: "(x^3+77x^2+292018x-3891096)/(x^2+154x)",
    11: "(p,q)=(4,3) pipeline",
    12: "elliptic curve discovery rerun for (41,13)",
    13: "property suites",
    14: "condition/oracle agreement audit",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(mark.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = _outcomes.get(n)
        if results is None:
            continue
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {status}  {CRITERIA[n]} ({len(results)} checks)")
