from __future__ import annotations

import pytest

from lyness_mirror import mirrorscan, tropical


@pytest.fixture(scope="session")
def dp5_space():
    return tropical.builtin_dp5_space()


@pytest.fixture(scope="session")
def v12_space():
    return tropical.builtin_v12_space()


@pytest.fixture(scope="session")
def reflexive_classes():
    return tropical.classify_reflexive_dp5()


@pytest.fixture(scope="session")
def survey_report():
    return mirrorscan.survey(10, mirrorscan.load_fixture())


_ACCEPTANCE: dict[int, tuple[bool, float, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call ``criterion(n, ok, seconds, note)``."""

    def record(number: int, ok: bool, seconds: float, note: str = "") -> bool:
        prev = _ACCEPTANCE.get(number)
        if prev is not None:
            ok = ok and prev[0]
            seconds += prev[1]
            note = "; ".join(x for x in (prev[2], note) if x)
        _ACCEPTANCE[number] = (ok, seconds, note)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({seconds:.2f} s) {note}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, seconds, note = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{number:>2} {'PASS' if ok else 'FAIL'} {seconds:8.2f} s  {note}")
