"""Acceptance criteria 1-10.

Criteria 1-9 run the shared battery in-process and also enforce the stated
runtime budgets; criterion 10 runs the CLI suite twice in subprocesses.
One PASS/FAIL line per criterion is printed in the terminal summary (and
directly when run as a script).
"""

import json
import re
import subprocess
import sys
import time

import pytest

from cliffinv.battery import CRITERIA, run_criterion

SEED = 42
BUDGET_S = {1: 10, 2: 60, 4: 60, 7: 300}
RESULTS: dict = {}


def record(number, ok, detail):
    RESULTS[number] = (ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    title, _ = CRITERIA[number]
    start = time.perf_counter()
    checks = run_criterion(number, SEED)
    elapsed = time.perf_counter() - start
    failed = [c for c in checks if c["status"] != "pass"]
    budget = BUDGET_S.get(number)
    in_budget = budget is None or elapsed < budget
    detail = f"{title}: {len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.1f} s"
    if budget is not None:
        detail += f" (budget {budget} s)"
    record(number, not failed and in_budget, detail)
    assert not failed, failed
    assert in_budget, f"took {elapsed:.1f} s, budget {budget} s"


def _suite_once():
    proc = subprocess.run([sys.executable, "-m", "cliffinv", "suite", "--seed", str(SEED), "--json"],
                          capture_output=True, text=True, timeout=1800)
    return proc.returncode, proc.stdout


def test_criterion_10_cli_determinism():
    (code1, out1), (code2, out2) = _suite_once(), _suite_once()
    strip = lambda text: re.sub(r'"elapsed_ms": \d+', '"elapsed_ms": 0', text)  # noqa: E731
    identical = strip(out1) == strip(out2)
    report = json.loads(out1)
    all_pass = all(c["status"] == "pass" for c in report["checks"])
    status_ok = (code1 == 0) == all_pass and code1 == code2
    totals = report["outputs"]["totals"]
    record(10, identical and status_ok,
           f"CLI suite determinism: identical={identical}, exit={code1}, "
           f"checks {totals['passed']} passed / {totals['failed']} failed")
    assert identical
    assert status_ok
    assert report["schema"] == "report/1" and report["seed"] == SEED


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
