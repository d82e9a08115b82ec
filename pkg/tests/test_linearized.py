"""Framed boundary-limit transport for the nilpotent model connection."""

import mpmath
import pytest

from cyclokzb.numeric.linearized import linearized_transport_check


@pytest.fixture(scope="module")
def residuals():
    return linearized_transport_check(128)


class TestLinearizedTransport:
    def test_nonlinear_limit_matches_closed_form(self, residuals):
        assert residuals["linearized"] < mpmath.mpf("1e-10")

    def test_commuting_model_is_exact(self, residuals):
        assert residuals["commuting"] < mpmath.mpf("1e-25")

    def test_frame_scale_matters(self, residuals):
        # limits at different frame scales must not coincide, otherwise
        # the framing would be spurious
        assert residuals["lambda_split"] > mpmath.mpf("0.1")
