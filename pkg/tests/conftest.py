import numpy as np
import pytest

from subkmeans import _backend


@pytest.fixture(params=_backend.available())
def backend(request, monkeypatch):
    """Run a test once per importable kernel backend."""
    monkeypatch.setattr(_backend, "kernels", _backend.load(request.param))
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion.

    Call the returned function with the criterion label (and later with a
    detail string); the outcome is filled in from the test report.
    """
    entry = {"node": request.node.nodeid, "label": None, "detail": ""}

    def record(label, detail=""):
        if entry["label"] is None:
            _ACCEPTANCE.append(entry)
        entry["label"], entry["detail"] = label, detail

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        for entry in _ACCEPTANCE:
            if entry["node"] == item.nodeid:
                entry["outcome"] = rep.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    names = {"passed": "PASS", "failed": "FAIL", "skipped": "UNVERIFIED"}
    for entry in _ACCEPTANCE:
        tag = names.get(entry.get("outcome"), "?")
        terminalreporter.write_line(f"{tag:10s} {entry['label']}: {entry['detail']}")
