import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixbound import spectral as sp
from mixbound.errors import EmptySubset, RadiusInapplicable, RadiusOutOfRange, SpaceTooLarge
from mixbound.fourier import coordinate_table
from mixbound.oracle import max_code
from mixbound.space import ball_size, make_profile, means, sphere_sizes

from conftest import sizes_strategy


def degree(p):
    return float(p.n * (means(p).q_a - 1))


@pytest.mark.parametrize("sizes", [(2,), (2, 3), (2, 2, 2), (3, 4, 5), (2, 3, 5, 7)])
def test_whole_space_is_regular(sizes):
    p = make_profile(sizes)
    res = sp.lambda_exact(p, np.asarray(coordinate_table(p.sizes)))
    assert res.lam == pytest.approx(degree(p), abs=1e-9)
    assert res.lam_lower <= degree(p) + 1e-9 <= res.lam_upper + 2e-9


def test_single_point():
    p = make_profile((2, 3))
    res = sp.lambda_exact(p, [(0, 0)])
    assert res.lam == 0 and res.lam_upper == 0


def test_empty_subset():
    with pytest.raises(EmptySubset):
        sp.lambda_exact(make_profile((2, 3)), [])


def test_subset_cap():
    p = make_profile((2,) * 6)
    with pytest.raises(SpaceTooLarge):
        sp.lambda_exact(p, np.asarray(coordinate_table(p.sizes)), cap=10)


def test_binary_ball_example():
    p = make_profile((2,) * 5)
    res = sp.lambda_ball(p, 2)
    # dense reference
    E = res.elements
    A = ((E[:, None, :] != E[None, :, :]).sum(axis=2) == 1).astype(float)
    assert res.lam == pytest.approx(np.linalg.eigvalsh(A).max(), abs=1e-10)
    assert res.residual() < 1e-9
    assert np.all(res.eigenfunction >= 0)


def test_lower_bound_examples():
    for n, r in [(9, 4), (10, 4), (16, 5)]:
        p = make_profile((2,) * n)
        lb = sp.lambda_ball_lower_bound(p, r)
        res = sp.lambda_ball(p, r)
        assert lb <= res.lam_lower
        assert lb > 0


def test_lower_bound_single_term():
    # n = 9, r = 4: M = 3 and the sum has the single term k = 3
    p = make_profile((2,) * 9)
    s = sphere_sizes(p).s
    k = 3
    term = k * math.sqrt(s[3] / s[2]) + 9 - k - (k + 1) * s[4] / s[3] + (k + 1) * math.sqrt(s[4] / s[3])
    assert sp.lambda_ball_lower_bound(p, 4) == pytest.approx(term / 3, rel=1e-14)


def test_lower_bound_inapplicable():
    with pytest.raises(RadiusInapplicable):
        sp.lambda_ball_lower_bound(make_profile((2,) * 8), 3)  # M = 2
    with pytest.raises(RadiusInapplicable):
        sp.lambda_ball_lower_bound(make_profile((2,) * 9), 3)  # r <= sqrt(n)


def test_lower_bound_leading_order_trend():
    ratios = []
    for n in (100, 400, 1600):
        p = make_profile((2, 3) * (n // 2))
        r = n // 2
        ratios.append(sp.lambda_ball_lower_bound(p, r) / sp.ball_eigenvalue_leading_order(p, r))
    assert ratios[0] < ratios[1] < ratios[2] < 1
    assert abs(1 - ratios[2]) < abs(1 - ratios[0])


def test_test_function_below_lambda():
    for sizes, r in [((2,) * 10, 4), ((2, 2, 2, 3, 3, 3, 3, 3, 4), 5)]:
        p = make_profile(sizes)
        _, f, rq = sp.ball_test_function(p, r)
        assert np.all(f >= 0)
        assert rq <= sp.lambda_ball(p, r).lam + 1e-9


@pytest.mark.parametrize("sizes", [(2, 3, 4), (3, 3, 5, 5), (2, 2, 2, 2, 3)])
def test_even_eigenfunction(sizes):
    p = make_profile(sizes)
    for r in range(p.n + 1):
        res = sp.lambda_ball(p, r)
        assert res.symmetric
        f = res.as_function()
        assert np.max(np.abs(f.values - f.reflected().values)) < 1e-9
        assert res.residual() < 1e-9


def test_asymmetric_subset_flagged():
    p = make_profile((3,))
    res = sp.lambda_exact(p, [(0,), (1,)])
    assert not res.symmetric
    assert res.lam == pytest.approx(1.0)


@settings(max_examples=30)
@given(sizes_strategy(max_n=5, max_q=5))
def test_nested_balls_monotone_and_bounded(sizes):
    p = make_profile(sizes)
    lams = [sp.lambda_ball(p, r).lam for r in range(p.n + 1)]
    assert lams[0] == 0
    assert all(a <= b + 1e-9 for a, b in zip(lams, lams[1:]))
    assert all(0 <= x <= degree(p) + 1e-9 for x in lams)
    assert lams[-1] == pytest.approx(degree(p), abs=1e-9)


def test_ball_elements_count_and_radius():
    p = make_profile((2, 3, 4))
    with pytest.raises(RadiusOutOfRange):
        sp.ball_elements(p, 4)
    for r in range(4):
        E = sp.ball_elements(p, r)
        assert len(E) == ball_size(sphere_sizes(p), r)
        assert np.count_nonzero(E, axis=1).max(initial=0) <= r
    with pytest.raises(SpaceTooLarge):
        sp.ball_elements(make_profile((2,) * 40), 20)


def test_ev_threshold():
    p = make_profile((2, 2, 2, 2))
    assert sp.ev_threshold(p, 3) == 5 - 6
    p = make_profile((2, 3, 5))
    assert sp.ev_threshold(p, 3) == 4 * Fraction(7, 3) - 10


def test_certificate_example():
    # d = 3 on the binary 4-cube leaves a negative coefficient: no certificate
    p = make_profile((2, 2, 2, 2))
    assert sp.bound_by_ev_certificate(p, 3, 2) is None
    # d = 2 fires from r = 1 on: lambda(B_1) = 2 >= 5 - 4
    assert sp.bound_by_ev_certificate(p, 2, 0) is None
    assert sp.bound_by_ev_certificate(p, 2, 1) == 4 * 5
    assert len(max_code(p, 2)) == 8 <= 20


def test_certificate_full_ball_symbolic():
    # r = n: lambda = n(q_a - 1), so the certificate fires iff
    # q_a - 1 <= sum of the d smallest q_i <= n(q_a - 1)
    for sizes in [(2,), (2, 3), (2, 100), (3, 3, 3), (2, 5, 9, 9), (2, 2, 9, 9, 9)]:
        p = make_profile(sizes)
        q_a = means(p).q_a
        for d in range(1, p.n + 1):
            fires = q_a - 1 <= sum(p.sizes[:d]) <= p.n * (q_a - 1)
            cert = sp.bound_by_ev_certificate(p, d, p.n)
            assert (cert is not None) == fires
            if fires:
                assert cert == p.n * p.order


def test_certificate_absent():
    p = make_profile((2, 2, 2, 2, 2, 2))
    assert sp.bound_by_ev_certificate(p, 2, 0) is None
    assert sp.bound_by_ev_certificate(p, 2, 0, lam=100.0) == 6


def test_certificate_needs_nonnegative_coefficient():
    # the even-weight code has 4 words at distance 2, while n|B_0| = 3
    p = make_profile((2, 2, 2))
    assert sp.ev_threshold(p, 2) == 0
    assert sp.bound_by_ev_certificate(p, 2, 0) is None
    assert len(max_code(p, 2)) == 4


def test_certificate_falls_back_to_closed_form():
    p = make_profile((2,) * 30)
    assert sp.bound_by_ev_certificate(p, 10, 15, cap=100) == 30 * ball_size(sphere_sizes(p), 15)
    assert sp.bound_by_ev_certificate(p, 2, 15, cap=100) is None  # 18.4 < 27
    assert sp.bound_by_ev_certificate(p, 10, 3, cap=100) is None  # lower bound inapplicable


@pytest.mark.parametrize("sizes", [(2, 2, 2), (2, 3, 3), (2, 2, 2, 2), (2, 2, 3, 4), (3, 3, 3, 3), (2, 2, 2, 2, 2, 2)])
def test_certificate_sound_against_oracle(sizes):
    p = make_profile(sizes)
    for d in range(1, p.n + 1):
        a = len(max_code(p, d))
        for r in range(p.n + 1):
            cert = sp.bound_by_ev_certificate(p, d, r)
            if cert is not None:
                assert a <= cert
