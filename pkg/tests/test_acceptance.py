"""End-to-end acceptance criteria; the summary prints one PASS/FAIL line each."""

import json
import os
import subprocess
import sys

import pytest

from acceptance_runs import CRITERIA, LIMITS, digests

pytestmark = pytest.mark.acceptance

_OUTCOMES = {}


def _check(n, record_property):
    res = CRITERIA[n]()
    _OUTCOMES[n] = res
    record_property("detail", f"{res.detail} [{res.seconds:.1f} s]")
    assert res.ok, res.detail
    assert res.seconds < LIMITS[n], f"took {res.seconds:.1f} s, limit {LIMITS[n]:.0f} s"


@pytest.mark.criterion(1)
def test_criterion_1_alternating_identities(record_property):
    _check(1, record_property)


@pytest.mark.criterion(2)
@pytest.mark.xfail(strict=True, reason="P_4 x P_6 x P_9 is not simple: n+1 = 5 and 10 share the prime 5, e.g. "
                                       "2cos(pi/5) + 2cos(4pi/10) = 2cos(2pi/5) + 2cos(2pi/10)")
def test_criterion_2_simple_spectra(record_property):
    _check(2, record_property)


@pytest.mark.criterion(3)
def test_criterion_3_cospectrality_oracle(record_property):
    _check(3, record_property)


@pytest.mark.criterion(4)
def test_criterion_4_witness_families(record_property):
    _check(4, record_property)


@pytest.mark.criterion(5)
def test_criterion_5_classifier_vs_engine(record_property):
    _check(5, record_property)


@pytest.mark.criterion(6)
def test_criterion_6_laplacian_corners(record_property):
    _check(6, record_property)


@pytest.mark.criterion(7)
def test_criterion_7_walk_dynamics(record_property):
    _check(7, record_property)


@pytest.mark.criterion(8)
def test_criterion_8_determinism(record_property):
    for n, fn in CRITERIA.items():
        if n not in _OUTCOMES:
            _OUTCOMES[n] = fn()
    here = digests(_OUTCOMES)
    tests_dir = os.path.dirname(__file__)
    fresh = subprocess.run([sys.executable, os.path.join(tests_dir, "acceptance_runs.py")], cwd=tests_dir,
                           capture_output=True, text=True, check=True)
    again = json.loads(fresh.stdout)
    differing = sorted(k for k in here if here[k] != again.get(k))
    record_property("detail", f"{len(here)} artifacts compared across two interpreters, {len(differing)} differ")
    assert set(here) == set(again)
    assert not differing, differing
