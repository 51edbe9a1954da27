import itertools

import pytest
from hypothesis import settings

from lorenzlinks.symbolic import Word, check_admissible, find_violation

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

# L < 0 < R becomes a < b < c, so plain string order is the finite order
_FINITE = str.maketrans("L0R", "abc")


def finite_key(s: str) -> str:
    return (s + "0").translate(_FINITE)


def naive_admissible(x: str, y: str) -> bool:
    if x[0] != "L" or y[0] != "R":
        return False
    for z in (x, y):
        for i in range(1, len(z)):
            if z[i] == "L" and not finite_key(z[i:]) < finite_key(x):
                return False
            if z[i] == "R" and not finite_key(z[i:]) > finite_key(y):
                return False
    return True


def all_words(max_len: int, first: str | None = None):
    for k in range(1, max_len + 1):
        for t in itertools.product("LR", repeat=k):
            s = "".join(t)
            if first is None or s[0] == first:
                yield s


def small_pairs(max_len: int, nondegenerate: bool = True):
    out = []
    for x in all_words(max_len, "L"):
        for y in all_words(max_len, "R"):
            if find_violation(Word(x), Word(y)) is None:
                p = check_admissible(Word(x), Word(y))
                if not (nondegenerate and p.degenerate):
                    out.append(p)
    return out


@pytest.fixture(scope="session")
def pairs5():
    return small_pairs(5)


_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.failed):
        name = report.nodeid.split("::")[-1]
        if report.failed or name not in _acceptance:
            _acceptance[name] = "FAIL" if report.failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda n: int(n.split("_")[2])):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")
