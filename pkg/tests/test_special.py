"""Tests for the gamma function and the singular kernel moments."""

from __future__ import annotations

import math
import random

import pytest

from caputo_lk.special import FractionalOrder, KernelMoment, gamma, kernel_moment


def moment(t, a, b, c, q, alpha):
    return kernel_moment(KernelMoment(t=t, a=a, b=b, c=c, q=q, alpha=FractionalOrder(alpha)))


class TestGamma:
    def test_against_stdlib(self):
        for x in [0.1, 0.3, 0.5, 0.7, 0.9, 1.0, 1.5, 2.0, 3.7, 5.25, 6.9]:
            assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-13)

    def test_half_integer_anchor(self):
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_factorials(self):
        for n in range(1, 9):
            assert gamma(float(n)) == pytest.approx(math.factorial(n - 1), rel=1e-13)

    def test_recurrence(self):
        rng = random.Random(11)
        for _ in range(100):
            x = rng.uniform(0.05, 7.0)
            assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-12)

    def test_frozen_value(self):
        # pinned from an independent high-precision evaluation
        assert gamma(0.7) == pytest.approx(1.2980553326475577, rel=1e-13)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            gamma(0.0)
        with pytest.raises(ValueError):
            gamma(-1.5)


class TestFractionalOrder:
    def test_accepts_interior(self):
        assert FractionalOrder(0.5).alpha == 0.5

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.2, 1.7])
    def test_rejects_boundary(self, bad):
        with pytest.raises(ValueError):
            FractionalOrder(bad)


class TestKernelMoment:
    def test_constant_closed_form(self):
        """q = 0 has the elementary antiderivative
        ((t-a)^(1-alpha) - (t-b)^(1-alpha)) / (1-alpha)."""
        rng = random.Random(5)
        for _ in range(50):
            alpha = rng.uniform(0.05, 0.95)
            t = rng.uniform(0.5, 2.0)
            a = rng.uniform(0.0, 0.8) * t
            b = rng.uniform(a, t)
            want = ((t - a) ** (1 - alpha) - (t - b) ** (1 - alpha)) / (1 - alpha)
            assert moment(t, a, b, 0.0, 0, alpha) == pytest.approx(want, rel=1e-12)

    def test_empty_window_is_zero(self):
        assert moment(1.0, 0.5, 0.5, 0.25, 3, 0.4) == 0.0

    def test_frozen_interior_window(self):
        # int_0.25^0.5 (1-s)^-0.3 (s-0.25)^2 ds, pinned from adaptive
        # Gauss-Kronrod quadrature of the raw integrand
        got = moment(1.0, 0.25, 0.5, 0.25, 2, 0.3)
        assert got == pytest.approx(0.006198138677198917, rel=1e-12)

    def test_frozen_singular_endpoint(self):
        # window ending at the singularity s = t; pinned from quadrature
        # after the substitution w = (t-s)^(1-alpha)
        got = moment(1.0, 0.875, 1.0, 0.875, 1, 0.7)
        assert got == pytest.approx(0.171758567714149, rel=1e-12)

    def test_frozen_far_field(self):
        # expansion center far from the singularity exercises the series
        # evaluation path; pinned from raw-integrand quadrature
        got = moment(2.0, 0.0, 0.125, 0.0, 4, 0.5)
        assert got == pytest.approx(4.4329609507138325e-06, rel=1e-11)

    def test_window_additivity(self):
        rng = random.Random(23)
        for _ in range(40):
            alpha = rng.uniform(0.05, 0.95)
            t = rng.uniform(0.5, 2.0)
            a = rng.uniform(0.0, 0.6) * t
            b = rng.uniform(a / t + 1e-3, 0.999) * t
            mid = rng.uniform(a, b)
            c = rng.uniform(0.0, b)
            q = rng.randrange(0, 7)
            whole = moment(t, a, b, c, q, alpha)
            split = moment(t, a, mid, c, q, alpha) + moment(t, mid, b, c, q, alpha)
            assert whole == pytest.approx(split, rel=1e-9, abs=1e-18)

    def test_recentring_identity(self):
        """Recentring the monomial is a binomial combination of lower
        moments; the two evaluation paths must agree on it."""
        rng = random.Random(31)
        for _ in range(30):
            alpha = rng.uniform(0.05, 0.95)
            t = rng.uniform(0.5, 2.0)
            a = rng.uniform(0.0, 0.5) * t
            b = rng.uniform(a / t + 1e-3, 0.99) * t
            c = rng.uniform(0.0, b)
            cp = rng.uniform(0.0, b)
            q = rng.randrange(0, 6)
            lhs = moment(t, a, b, cp, q, alpha)
            rhs = math.fsum(
                math.comb(q, j) * (c - cp) ** (q - j) * moment(t, a, b, c, j, alpha)
                for j in range(q + 1)
            )
            assert lhs == pytest.approx(rhs, rel=1e-8, abs=1e-18)

    def test_positive_when_integrand_positive(self):
        # c at or left of the window keeps (s-c)^q >= 0
        assert moment(1.0, 0.5, 0.75, 0.5, 3, 0.6) > 0.0
        assert moment(1.0, 0.5, 0.75, 0.25, 2, 0.6) > 0.0

    def test_rejects_bad_window(self):
        with pytest.raises(ValueError):
            moment(1.0, 0.75, 0.5, 0.0, 1, 0.5)
        with pytest.raises(ValueError):
            moment(1.0, 0.5, 1.25, 0.0, 1, 0.5)
