import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import ACCEPTANCE  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, name, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n}. {name}: {detail}")


@pytest.fixture(scope="session")
def scenarios_dir():
    from importlib.resources import files

    return Path(str(files("moto") / "scenarios"))


@pytest.fixture(scope="session")
def corpus_dir(scenarios_dir):
    return scenarios_dir / "corpus"
