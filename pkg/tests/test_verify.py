# tests/test_verify.py
import pytest

from lsl.combinatorics import SubsetIndex, dual_subset, epsilon_sign
from lsl.config import settings
from lsl.errors import LimitNotResolvedError, SpectralGapError
from lsl.verify import (
    EXCLUDED,
    Suite,
    _run_case,
    build_cases,
    case_rng,
    flipped_sign_rule,
    run_suite,
    run_verification,
    shuffle_signature,
)


def test_shuffle_signature_matches_epsilon():
    n = 5
    for mask in range(1 << n):
        I = SubsetIndex(n=n, mask=mask)
        J = dual_subset(I)
        assert shuffle_signature(I.members, J.members) == epsilon_sign(I, J)


def test_flipped_sign_rule():
    one = SubsetIndex.of(3, [1])
    assert flipped_sign_rule(one, dual_subset(one)) == -epsilon_sign(one, dual_subset(one))
    two = SubsetIndex.of(3, [2])
    assert flipped_sign_rule(two, dual_subset(two)) == epsilon_sign(two, dual_subset(two))


def test_case_rng_is_reproducible():
    a = case_rng(3, Suite.MORSE, 2, 7).random(4)
    b = case_rng(3, Suite.MORSE, 2, 7).random(4)
    c = case_rng(3, Suite.MORSE, 2, 8).random(4)
    assert (a == b).all()
    assert not (a == c).all()


def test_case_ids_are_unique():
    for suite in Suite:
        if suite == Suite.TUNNELLING:
            continue
        cases = build_cases(suite, 2, 0, 2, 4, settings.tolerances, epsilon_sign)
        ids = [case_id for case_id, _ in cases]
        assert len(ids) == len(set(ids))
        assert all(case_id.startswith(suite.value + "/") for case_id in ids)


@pytest.mark.parametrize(
    "suite",
    [Suite.COMBINATORICS, Suite.MATRICES, Suite.CHARTS, Suite.MORSE, Suite.RING, Suite.SPECTRAL],
)
def test_small_suites_pass(suite):
    report, results = run_suite(suite, 2, seed=1, samples=3)
    assert report.failures == 0, report.failed_cases
    assert report.cases == len(results) > 0
    assert [r.case_id for r in results] == sorted(r.case_id for r in results)


def test_classification_and_tunnelling():
    report, _ = run_suite(Suite.CLASSIFICATION, 2, seed=4, samples=4)
    assert report.failures == 0, report.failed_cases
    report, results = run_suite(Suite.TUNNELLING, 1, seed=4, budget=8)
    assert report.failures == 0, report.failed_cases
    assert len(results) == 4


def test_sign_flip_is_caught():
    report, _ = run_suite(Suite.RING, 2, seed=0, samples=2, inject_sign_flip=True)
    assert "ring/n1/pairing-unimodularity" in report.failed_cases
    assert "ring/n2/pairing-unimodularity" in report.failed_cases


def test_run_verification_is_deterministic():
    suites = [Suite.RING, Suite.SPECTRAL]
    first, _ = run_verification(2, 11, suites=suites, samples=2)
    second, _ = run_verification(2, 11, suites=suites, samples=2, threads=2)
    assert first == second
    assert first.passed
    assert [s.suite for s in first.suites] == ["ring", "spectral"]


def test_only_spectral_gap_excludes_classification_samples():
    def gap():
        raise SpectralGapError()

    def unresolved():
        raise LimitNotResolvedError()

    excluded = _run_case(("classification/n2/generic000", gap))
    assert excluded.passed and excluded.detail.startswith(EXCLUDED)
    failed = _run_case(("classification/n2/generic001", unresolved))
    assert not failed.passed
    assert not failed.detail.startswith(EXCLUDED)
    assert not _run_case(("morse/n2/gap", gap)).passed
