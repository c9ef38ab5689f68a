import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from walk_kernel.arith import Rat  # noqa: E402
from walk_kernel.model import builtin_model, builtin_names, check_a1, check_a2  # noqa: E402

T_SAMPLES = (Rat(1, 7), Rat(1, 3), Rat(9, 10))


def builtin_models():
    return [builtin_model(n) for n in builtin_names()]


def a1_a2_models():
    return [w for w in builtin_models() if check_a1(w) and check_a2(w)]


@pytest.fixture(params=builtin_names())
def any_builtin(request):
    return builtin_model(request.param)


ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, text = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
