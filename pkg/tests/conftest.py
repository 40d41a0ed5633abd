import random

import pytest

from locekr.setfamily import Family, GroundParams, kset, ksets

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def random_family(rng: random.Random, n: int, k: int, p: float = 0.5, core=(),
                  nonempty: bool = True) -> Family:
    """Each k-set containing `core` is kept independently with probability p."""
    core_mask = kset(core)
    pool = [m for m in ksets(n, k) if m & core_mask == core_mask]
    while True:
        chosen = [m for m in pool if rng.random() < p]
        if chosen or not nonempty:
            return Family.from_masks(GroundParams(n, k), chosen)


@pytest.fixture
def rng():
    return random.Random(20261019)


@pytest.fixture
def record_criterion():
    def record(name: str, ok: bool, detail: str = ""):
        _ACCEPTANCE.append((name, ok, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
