import sys
from pathlib import Path

import pytest

from cfgsimp import GenConfig, Grammar, random_grammar, random_nonempty_grammar

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN = Path(__file__).parent / "golden"

AB_TEXT = """\
start: S'
terminals: a b
nonterminals: S' A B
S' -> a S'
S' -> b
"""


def ab() -> Grammar:
    """The a*b grammar; A and B are declared but have no rules."""
    return Grammar.build("S'", ["S'", "A", "B"], ["a", "b"], [("S'", "a S'"), ("S'", "b")])


@pytest.fixture
def ab_grammar():
    return ab()


def corpus(count, nonempty=False, **kw):
    make = random_nonempty_grammar if nonempty else random_grammar
    return [make(GenConfig(seed=seed, **kw)) for seed in range(count)]


# acceptance bookkeeping: one summary line per criterion
_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title = mark.args
    if rep.when == "setup" and rep.passed:
        return
    _acceptance[number] = (title, rep.passed, round(rep.duration, 2))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, passed, secs = _acceptance[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {title} ({secs}s)")
