from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from wmwauc import _pykernels

try:
    from wmwauc import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels is not None else [])


@pytest.fixture(params=BACKENDS, ids=lambda k: k.BACKEND)
def backend(request):
    return request.param


# Values from a small integer pool collide often, which injects ties.
tied_values = st.integers(-4, 4).map(float)
cont_values = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
mixed_values = st.one_of(tied_values, cont_values)


def samples(min_size=1, max_size=30, elements=mixed_values):
    return st.lists(elements, min_size=min_size, max_size=max_size)


def random_pair(rng: np.random.Generator, n1: int, n2: int, ties: bool):
    if ties:
        return rng.integers(0, max(2, (n1 + n2) // 4), n1).astype(float), rng.integers(
            0, max(2, (n1 + n2) // 4), n2
        ).astype(float)
    return rng.normal(size=n1), rng.normal(size=n2)


# -- acceptance reporting ---------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_criterion():
    def record(label: str, passed: bool, detail: str = "") -> None:
        line = f"[{'PASS' if passed else 'FAIL'}] {label}"
        if detail:
            line += f"  ({detail})"
        ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
