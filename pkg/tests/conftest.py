import sys

import numpy as np
import pytest

from kotelwave.transform import TransformPlan

DB4 = np.array([
    0.23037781330885523,
    0.7148465705525415,
    0.6308807679295904,
    -0.02798376941698385,
    -0.18703481171888114,
    0.030841381835986965,
    0.032883011666982945,
    -0.010597401784997278,
])


@pytest.fixture
def plan():
    return TransformPlan.default()


@pytest.fixture
def db4_taps_file(tmp_path):
    path = tmp_path / "db4.txt"
    lines = ["# db4 lowpass, sum = sqrt(2)"] + [repr(float(h)) for h in DB4]
    path.write_text("\n".join(lines) + "\n")
    return path


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        passed, title, detail = results[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if passed else 'FAIL'}  {title}  ({detail})")
