from fractions import Fraction
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_criteria: dict[int, dict] = {}


def pytest_addoption(parser):
    parser.addoption(
        "--slow",
        action="store_true",
        default=False,
        help="also run the second-prime and rational cross-checks",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: cross-checks that take minutes; enabled by --slow")
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "failed": [], "passed": 0, "skipped": 0})
    if report.when == "call" or (report.when == "setup" and not report.passed):
        if report.failed:
            entry["failed"].append(item.name)
        elif report.skipped:
            entry["skipped"] += 1
        elif report.when == "call":
            entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        status = "FAIL" if e["failed"] else ("PASS" if e["passed"] else "SKIP")
        line = f"criterion {number:2d} {status}  {e['title']}"
        if e["failed"]:
            line += f"  (failed: {', '.join(e['failed'])})"
        terminalreporter.write_line(line)


def _cell(text):
    return Fraction(text)


def load_signs(name):
    """A grid of ``+``, ``-`` and ``.`` as lists of ints."""
    rows = (DATA / name).read_text().split()
    return [[{"+": 1, "-": -1, ".": 0}[c] for c in r] for r in rows]


def load_grid(name):
    lines = (DATA / name).read_text().strip().splitlines()
    return [[_cell(x) for x in ln.split()] for ln in lines]


def load_words(name):
    return (DATA / name).read_text().split()


@pytest.fixture(scope="session")
def checkpoint_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("checkpoints")
