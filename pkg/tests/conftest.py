from __future__ import annotations

import pytest

from orbks.covergroup import cover_from_strings

# the standard covers: g_alpha, g_beta the obvious generators
STANDARD = [
    ("Z2", "1", "1"),
    ("Z3", "1", "1"),
    ("Z4", "1", "1"),
    ("Z2xZ2", "1,0", "0,1"),
    ("Z2xZ4", "1,0", "0,1"),
    ("Z3xZ3", "1,0", "0,1"),
]


@pytest.fixture(params=STANDARD, ids=[s[0] for s in STANDARD])
def cover(request):
    return cover_from_strings(*request.param)


@pytest.fixture
def z2():
    return cover_from_strings("Z2", "1", "1")


@pytest.fixture
def z3():
    return cover_from_strings("Z3", "1", "1")


@pytest.fixture
def trivial():
    return cover_from_strings("Z1", "", "")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if results[n] else 'FAIL'}")
