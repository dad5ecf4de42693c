import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixbound import fourier as fq
from mixbound.errors import EmptyCode, IndexOutOfRange, ProfileMismatch
from mixbound.space import make_profile
from mixbound.verify import FOURIER_TOLERANCES, fourier_profile_checks

from conftest import sizes_strategy

SMALL = [(2,), (5,), (2, 3), (2, 2, 2), (3, 4), (2, 3, 5), (2, 2, 3, 3)]


def rand(rng, N):
    return rng.normal(size=N) + 1j * rng.normal(size=N)


def test_index_examples():
    p = make_profile((2, 3))
    assert fq.index_encode(p, (0, 0)) == 0
    assert fq.index_encode(p, (1, 2)) == 5
    assert fq.index_decode(p, 5) == (1, 2)
    with pytest.raises(IndexOutOfRange):
        fq.index_encode(p, (2, 0))
    with pytest.raises(IndexOutOfRange):
        fq.index_decode(p, 6)
    with pytest.raises(ProfileMismatch):
        fq.index_encode(p, (0,))


@given(sizes_strategy(max_n=4, max_q=5), st.data())
def test_index_round_trip(sizes, data):
    p = make_profile(sizes)
    i = data.draw(st.integers(0, p.order - 1))
    assert fq.index_encode(p, fq.index_decode(p, i)) == i


@pytest.mark.parametrize("sizes", SMALL)
def test_character_sums(sizes):
    p = make_profile(sizes)
    X = fq.character_matrix(p.sizes)
    sums = X.sum(axis=1)
    expected = np.zeros(p.order)
    expected[0] = p.order
    assert np.max(np.abs(sums - expected)) < 1e-10
    assert np.allclose(X[:, 0], 1) and np.allclose(X[0, :], 1)


def test_character_eval_matches_matrix():
    p = make_profile((2, 3, 4))
    X = fq.character_matrix(p.sizes)
    for t in [(0, 0, 0), (1, 2, 3), (0, 1, 2)]:
        for x in [(0, 0, 0), (1, 1, 1), (1, 2, 3)]:
            chi = fq.CharacterIndex(p, t)
            g = fq.GroupElement(p, x)
            assert abs(fq.character_eval(chi, g) - X[chi.index, g.index]) < 1e-12
    assert fq.character_eval(fq.CharacterIndex(p, (0, 0, 0)), fq.GroupElement(p, (1, 2, 3))) == 1


@pytest.mark.parametrize("sizes", SMALL)
def test_transform_examples(sizes):
    p = make_profile(sizes)
    one = fq.function(p, np.ones(p.order))
    F = fq.fourier_transform(one).values
    assert abs(F[0] - 1) < 1e-12 and np.max(np.abs(F[1:]), initial=0) < 1e-12
    D = fq.fourier_transform(fq.delta_at_zero(p)).values
    assert np.max(np.abs(D - 1 / p.order)) < 1e-12
    assert np.max(np.abs(fq.dual_function_transform(fq.delta_at_zero(p)).values - 1)) < 1e-10
    c = fq.dual_function_transform(fq.function(p, 2.5 * np.ones(p.order))).values
    expected = np.zeros(p.order)
    expected[0] = 2.5 * p.order
    assert np.max(np.abs(c - expected)) < 1e-9


@pytest.mark.parametrize("sizes", SMALL)
def test_convolution_with_delta(sizes):
    p = make_profile(sizes)
    f = fq.function(p, rand(np.random.default_rng(1), p.order))
    g = fq.convolve(f, fq.delta_at_zero(p))
    assert np.max(np.abs(g.values - f.values / p.order)) < 1e-12


def test_L_hat_examples():
    p = make_profile((2, 3))
    L_hat = fq.fourier_transform(fq.L_function(p)).values
    assert abs(L_hat[0] - 3) < 1e-10
    chi = fq.index_encode(p, (0, 1))
    assert abs(L_hat[chi]) < 1e-10
    assert abs(L_hat[fq.index_encode(p, (1, 0))] - 1) < 1e-10


@pytest.mark.parametrize("sizes", SMALL)
def test_phi_trivial_codes(sizes):
    p = make_profile(sizes)
    phi = fq.phi_of_code(p, [0])
    auto = fq.autocorrelation(p, [0]).values
    assert np.max(np.abs(auto - fq.delta_at_zero(p).values / p.order)) < 1e-12
    ratio = fq.expectation(phi * phi).real / fq.expectation(phi).real ** 2
    assert ratio == pytest.approx(1, rel=1e-8)
    phi = fq.phi_of_code(p, range(p.order))
    ratio = fq.expectation(phi * phi).real / fq.expectation(phi).real ** 2
    assert ratio == pytest.approx(p.order, rel=1e-8)


def test_phi_empty_code():
    with pytest.raises(EmptyCode):
        fq.phi_of_code(make_profile((2, 3)), [])


def test_profile_mismatch():
    a = fq.delta_at_zero(make_profile((2, 3)))
    b = fq.delta_at_zero(make_profile((3, 2, 1 + 1)))
    with pytest.raises(ProfileMismatch):
        fq.convolve(a, b)
    with pytest.raises(ProfileMismatch):
        fq.function(make_profile((2, 3)), np.ones(5))


def test_tolerance_scaling():
    assert fq.default_atol(make_profile((6, 6, 6, 6))) == 1e-10
    assert fq.default_atol(make_profile((2,) * 12)) == pytest.approx(1e-10 * 4096 / 1296)


def test_dual_function_cross_check_raises():
    p = make_profile((2, 3))
    f = fq.function(p, rand(np.random.default_rng(0), p.order))
    fq.dual_function_transform(f)
    with pytest.raises(ArithmeticError):
        fq.dual_function_transform(f, atol=-1.0)


@pytest.mark.parametrize("sizes", SMALL + [(2, 3, 5, 7), (6, 6, 6)])
def test_identity_suite(sizes):
    errs = fourier_profile_checks(make_profile(sizes), np.random.default_rng(3))
    for name, e in errs.items():
        assert e <= FOURIER_TOLERANCES.get(name, 1e-9), (name, e)


@settings(max_examples=25)
@given(sizes_strategy(max_n=4, max_q=6), st.integers(0, 2**32 - 1))
def test_identity_suite_random(sizes, seed):
    errs = fourier_profile_checks(make_profile(sizes), np.random.default_rng(seed))
    for name, e in errs.items():
        assert e <= FOURIER_TOLERANCES.get(name, 1e-9), (name, e)


@settings(max_examples=25)
@given(sizes_strategy(max_n=4, max_q=5), st.data())
def test_phi_real_even_for_random_codes(sizes, data):
    p = make_profile(sizes)
    code = data.draw(st.sets(st.integers(0, p.order - 1), min_size=1))
    phi = fq.phi_of_code(p, sorted(code))
    assert phi.is_real(1e-9) and phi.is_even(1e-9)
    ratio = fq.expectation(phi * phi).real / fq.expectation(phi).real ** 2
    assert ratio == pytest.approx(len(code), rel=1e-8)
