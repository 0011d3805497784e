"""End-to-end acceptance suite; one test per headline criterion."""

import pytest

from morsify.accept import CHECKS


@pytest.mark.parametrize("label,check", CHECKS, ids=[c[0] for c in CHECKS])
def test_acceptance(label, check):
    result = check()
    assert result.passed, f"{result.label} {result.title}: {result.detail}"
