import sys
from pathlib import Path

import pytest

from formclust import load_vectors, read_tokens

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def micro_vocab():
    return load_vectors(DATA / "micro.vec", 1000)


@pytest.fixture
def micro_tokens():
    return read_tokens(DATA / "micro.conllu")


@pytest.fixture
def synthetic_vocab():
    return load_vectors(DATA / "synthetic200.vec", 1000)


@pytest.fixture
def write_vec(tmp_path):
    """Write a .vec file from (form, values) rows; returns its path."""

    def write(rows, header=None, name="v.vec"):
        path = tmp_path / name
        dim = len(rows[0][1]) if rows else 2
        lines = [header if header is not None else f"{len(rows)} {dim}"]
        lines += [form + " " + " ".join(str(x) for x in vals) for form, vals in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return write


# One summary line per acceptance criterion, aggregated over its tests.
_criteria: dict[int, dict] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    keywords = report.keywords
    if "criterion" not in keywords:
        return
    item = _criterion_of.get(report.nodeid)
    if item is None:
        return
    number, title = item
    entry = _criteria.setdefault(number, {"title": title, "passed": 0, "failed": 0})
    entry["passed" if report.passed else "failed"] += 1


_criterion_of: dict[str, tuple[int, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            _criterion_of[item.nodeid] = tuple(marker.args)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["failed"] == 0 else "FAIL"
        counts = f"{entry['passed']} passed, {entry['failed']} failed"
        terminalreporter.write_line(f"AC{number} {status}  {entry['title']}  ({counts})")
