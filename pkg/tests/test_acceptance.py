"""Acceptance criteria, one test per criterion (sub-checks where a criterion has parts).

Every criterion records a PASS/FAIL line; the lines are printed at the end of
the pytest run and when this file is executed directly.  Known failures are
strict xfails: the checks are run unweakened and are expected to fail.
"""

import os
import subprocess
import sys
import time

import pytest

from nilpotent_as import checks
from nilpotent_as.presentation import (char0_presentation, char0_setup, reference_simplest_relations,
                                       reference_zeta_group_relations, relations_mod_C3)

RESULTS = []


def record(label, passed, elapsed, limit, detail=""):
    ok = passed and elapsed <= limit
    RESULTS.append(f"{'PASS' if ok else 'FAIL'} criterion {label}  ({elapsed:.1f}s, limit {limit}s)"
                   + (f"  {detail}" if detail and not ok else ""))
    return ok


def timed(fn, *args, **kw):
    start = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - start


def failures(results):
    return "; ".join(f"{c.name} [{c.detail}]" for c in results if not c.passed)


def test_criterion_1_ch_axioms():
    res, dt = timed(checks.suite_ch_axioms, seed=0, count=200)
    assert record("1 CH group axioms", all(c.passed for c in res), dt, 30, failures(res)), failures(res)


def test_criterion_2_enveloping():
    res, dt = timed(checks.suite_enveloping, seed=0, count=50)
    assert record("2 enveloping-algebra oracle", all(c.passed for c in res), dt, 30, failures(res))


@pytest.fixture(scope="module")
def splitting():
    return timed(checks.suite_splitting, seed=0, count=100)


def test_criterion_3_splitting_identity(splitting):
    res, dt = splitting
    part = [c for c in res if "identity" in c.name or "S^2" in c.name]
    assert record("3a splitting identity and S^2 = S", all(c.passed for c in part), dt, 10, failures(part))


@pytest.mark.xfail(strict=True, reason="SR and RS do not vanish for the termwise S and R (see README)")
def test_criterion_3_SR_RS(splitting):
    res, dt = splitting
    part = [c for c in res if "SR" in c.name or "RS" in c.name]
    assert record("3b RS = SR = 0", all(c.passed for c in part), dt, 10, failures(part))


def test_criterion_4_iteration():
    res, dt = timed(checks.suite_iteration)
    assert record("4 iteration law", all(c.passed for c in res), dt, 5, failures(res))


def test_criterion_5_recurrence_vs_closed_form():
    res, dt = timed(checks.suite_recurrence)
    assert record("5 recurrence vs closed forms", all(c.passed for c in res), dt, 120, failures(res))


def _example_lists(setup):
    lie = relations_mod_C3(setup)
    d1 = checks.relation_differences(lie.relations, reference_simplest_relations(setup))
    z = char0_setup(5, 2, 1, (1, 0), {(0, 0): 1}, window=setup.window)
    grp = char0_presentation(z, "group")
    d2 = checks.relation_differences(grp.relations, reference_zeta_group_relations(z), group=True)
    return setup, z, d1, d2


@pytest.fixture(scope="module")
def examples():
    return timed(_example_lists, checks.simplest_setup(5))


@pytest.mark.xfail(strict=True, reason="the reference lists omit the sigma^(-n) terms and, in the group list, "
                                       "the alpha = 0 terms of R0(2) (see README)")
def test_criterion_6_example_reproduction(examples):
    (_, _, d1, d2), dt = examples
    detail = f"char-p list differs at {sorted(d1)}; group list differs at {sorted(d2)}"
    assert record("6 example reproduction", not d1 and not d2, dt, 60, detail)


def test_criterion_6_differences_are_the_omitted_families(examples):
    (setup, z, d1, d2), dt = examples
    assert d1 == checks.reference_list_omissions(setup)
    assert d2 == checks.reference_list_omissions(z, group=True)


def test_criterion_7_commutator():
    res, dt = timed(checks.suite_commutator, box3=1)
    assert record("7 commutator l[1,2] = 0 mod C3 and mod C4", all(c.passed for c in res), dt, 120, failures(res))


def test_criterion_8_scope():
    res, dt = timed(checks.suite_scope)
    assert record("8 scope sensitivity", all(c.passed for c in res), dt, 60, failures(res))


def _cli_json(preset, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "nilpotent_as", "--preset", preset, "--format", "json"],
                          capture_output=True, env=env, check=True).stdout


def test_criterion_9_determinism():
    start = time.perf_counter()
    same = all(_cli_json(name, 1) == _cli_json(name, 2) for name in ("q_p-zeta-x", "simplest-char-p"))
    assert record("9 determinism", same, time.perf_counter() - start, 60)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
