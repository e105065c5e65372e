"""End-to-end acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line and the collected lines are repeated in
the terminal summary."""

import time

import pytest

from mobsym import verify

RESULTS: dict[int, str] = {}

# criterion -> (title, suite, wall-clock budget in seconds or None)
CRITERIA = {
    1: ("n=4 cross-ratio table", "n4", 1.0),
    2: ("five-point classification rows", "n5", 17.0),
    3: ("six-point classification rows", "n6", 26.0),
    4: ("orbit censuses", "orbits", 1.0),
    5: ("tetrahedral decomposition identities", "decomposition", None),
    6: ("character dual pipeline", "characters", 30.0),
    7: ("multiplicity tables", "multvec-tables", 120.0),
    8: ("conjugation invariance", "conjugation", None),
    9: ("combining corollaries", "corollaries", None),
    10: ("witness configurations", "witnesses", None),
    11: ("action laws and closed forms", "action", None),
    12: ("sparsity of the restricted trace", "sparsity", None),
}


@pytest.fixture(scope="module")
def character_rows():
    t = time.perf_counter()
    rows = verify.character_pairs()
    return rows, time.perf_counter() - t


def _record(num, checks, elapsed):
    title, _, budget = CRITERIA[num]
    failed = [c for c in checks if not c.ok]
    over = budget is not None and elapsed > budget
    ok = bool(checks) and not failed and not over
    line = (f"{'PASS' if ok else 'FAIL'} criterion {num}: {title} "
            f"({len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.2f} s)")
    if over:
        line += f" over budget {budget:.0f} s"
    RESULTS[num] = line
    print(line)
    return ok, failed


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num, character_rows):
    _, suite, _ = CRITERIA[num]
    t = time.perf_counter()
    if suite in ("characters", "sparsity"):
        rows, build = character_rows
        checks = verify.SUITES[suite](rows=rows)
        elapsed = time.perf_counter() - t + build
    else:
        checks = verify.run_suite(suite)
        elapsed = time.perf_counter() - t
    ok, failed = _record(num, checks, elapsed)
    assert ok, [c.as_dict() for c in failed] or RESULTS[num]
