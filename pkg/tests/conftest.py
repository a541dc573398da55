from __future__ import annotations

import pytest

from markoff_kfib.oracle import enumerate_markoff_range

DESK_BOUND = 10**6
DESK_M_MAX = 200


@pytest.fixture(scope="session")
def desk_enumeration():
    """All ordered m-triples, 0 <= m <= 200, largest component <= 10^6."""
    return enumerate_markoff_range(0, DESK_M_MAX, DESK_BOUND)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per criterion, then fail the test if needed."""

    def report(number: int, title: str, failures: list[str], known: dict[str, str] | None = None) -> None:
        """``known`` maps a documented, expected failure to its explanation.

        If the failures are exactly the known ones the test is an xfail; any
        other failure fails it outright.
        """
        status = "PASS" if not failures else "FAIL"
        line = f"criterion {number:2d} {status}: {title}"
        if failures:
            line += " | " + "; ".join(failures)
        ACCEPTANCE_LINES.append(line)
        print(line)
        if failures and known and set(failures) == set(known):
            pytest.xfail(" / ".join(sorted(set(known.values()))))
        assert not failures, line

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
