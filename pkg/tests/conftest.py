import time
from collections import defaultdict

import pytest

CRITERIA = {
    1: "minimum indegree score equals the face count",
    2: "minimisers are exactly the good orientations",
    3: "shellings and good orientations convert into each other",
    4: "labelled octahedron: shelling order and 2-system",
    5: "uniqueness oracle returns the vertex-star 2-system",
    6: "round-trip reconstruction on all fixtures",
    7: "reconstruction is independent of the good orientation",
    8: "good orientations partition the face poset",
    9: "peel independence, system predicates, frame accounting",
}

_outcomes: dict[int, list[str]] = defaultdict(list)
_durations: dict[int, float] = defaultdict(float)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_runtest_logreport(report):
    number = getattr(report, "criterion", None)
    if number is None:
        return
    _durations[number] += report.duration
    if report.when == "call" or report.outcome != "passed":
        _outcomes[number].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        results = _outcomes[number]
        ok = all(r == "passed" for r in results)
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'}  "
            f"({results.count('passed')}/{len(results)} checks, {_durations[number]:.1f}s)  {CRITERIA[number]}"
        )


@pytest.fixture
def within():
    """Context manager factory asserting a block finishes under a wall-time limit."""

    class _Limit:
        def __init__(self, seconds):
            self.seconds = seconds

        def __enter__(self):
            self.start = time.perf_counter()
            return self

        def __exit__(self, *exc):
            self.elapsed = time.perf_counter() - self.start
            if exc[0] is None:
                assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, limit {self.seconds}s"

    return _Limit
