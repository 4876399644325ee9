import json

import pytest

from grext.config import Config, Limits
from grext.suites import ANCHORS, SUITES, freeze_goldens, goldens, run_suite, suite_checks

NO_TIMING = Config(timing=False)


@pytest.mark.parametrize("name", SUITES)
def test_suite_passes_with_known_anchors(name):
    report = run_suite(name, NO_TIMING)
    failed = [c.claim_id for c in report.checks if not c.passed]
    assert report.passed, failed
    assert report.checks and all(c.anchor in ANCHORS for c in report.checks)
    ids = [c.claim_id for c in report.checks]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)


def test_reports_are_deterministic():
    a = json.dumps(run_suite("symmetric", NO_TIMING).to_json())
    b = json.dumps(run_suite("symmetric", NO_TIMING).to_json())
    assert a == b


def test_parallel_runner_matches_serial():
    serial = run_suite("rational", NO_TIMING).to_json()
    parallel = run_suite("rational", Config(timing=False, jobs=2)).to_json()
    assert serial == parallel


def test_resource_limit_becomes_failure():
    report = run_suite("rational", Config(limits=Limits(max_module_dim=3), timing=False))
    assert not report.passed
    assert all("error" in c.computed for c in report.checks if not c.passed)
    assert "FAIL" in report.to_text()


def test_unknown_suite():
    with pytest.raises(KeyError):
        suite_checks("nope")


def test_frozen_values_reproduce():
    fresh = freeze_goldens()
    stored = goldens()
    for section in ("ext", "ext_passi", "rational"):
        assert fresh[section] == stored[section]
