import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mixbound.errors import DeltaOutOfRange, PreconditionViolated
from mixbound.johnson import below_johnson, constant_weight_bound, johnson_radius, list_size_bound
from mixbound.oracle import all_profiles, list_size_measure, max_code
from mixbound.space import make_profile, means


def test_radius_zero():
    assert johnson_radius(2, 0) == 0
    assert johnson_radius(Fraction(17, 4), 0) == 0


def test_radius_binary_edge():
    with pytest.raises(DeltaOutOfRange):
        johnson_radius(2, 0.5)
    assert johnson_radius(2, 0.5 - 1e-12) == pytest.approx(0.5, abs=1e-5)


def test_radius_4_25():
    j = johnson_radius(4.25, 0.3)
    assert 0.15 < j < 0.3


@given(st.floats(1.01, 64), st.floats(0, 0.999))
def test_radius_sandwich(q, t):
    delta = t * (1 - 1 / q)
    j = johnson_radius(q, delta)
    assert delta / 2 - 1e-12 <= j <= delta + 1e-12


def test_exact_condition_implies_denominator():
    # r < J n  implies  q r^2 > (q-1)(2r-d) n, on every small integer triple
    for q in (Fraction(2), Fraction(5, 2), Fraction(17, 4), Fraction(7)):
        for n in range(1, 13):
            for d in range(0, n + 1):
                if not Fraction(d, n) < 1 - 1 / q:
                    continue
                for r in range(0, n + 1):
                    if below_johnson(q, r, d, n):
                        assert q * r * r > (q - 1) * (2 * r - d) * n


def test_exact_condition_agrees_with_float():
    for q in (2, 3, 4.25):
        for n in range(2, 20):
            for d in range(1, n):
                if not Fraction(d, n) < 1 - 1 / Fraction(q):
                    continue
                jn = johnson_radius(q, d / n) * n
                for r in range(n + 1):
                    if abs(r - jn) > 1e-9:
                        assert below_johnson(Fraction(q), r, d, n) == (r < jn)


def test_constant_weight_examples():
    assert constant_weight_bound(make_profile([2, 2, 2, 2]), 1, 4) == Fraction(8, 5)
    assert constant_weight_bound(make_profile([2, 3]), 1, 2) == Fraction(12, 5)
    # d = 2r
    p = make_profile([2, 3, 5])
    q_a = means(p).q_a
    assert constant_weight_bound(p, 2, 4) == (q_a - 1) * 3 * 4 / (q_a * 4)


def test_constant_weight_precondition():
    with pytest.raises(PreconditionViolated):
        constant_weight_bound(make_profile([2, 2, 2, 2]), 2, 1)
    # beyond (1 - 1/q_a) n the lemma's monotonicity step fails: the 2-point
    # ball of (2,) would be bounded by 1
    with pytest.raises(PreconditionViolated):
        constant_weight_bound(make_profile([2]), 1, 1)


def test_constant_weight_dominates_oracle():
    checked = 0
    for sizes in all_profiles(200, max_n=6):
        p = make_profile(sizes)
        for d in range(1, p.n + 1):
            for r in range(0, p.n + 1):
                try:
                    bound = constant_weight_bound(p, r, d)
                except PreconditionViolated:
                    continue
                a = max_code(p, d, "ball", r, budget_seconds=5)
                assert a.exact
                assert len(a) <= bound
                checked += 1
    assert checked > 100


def test_list_size_examples():
    p = make_profile([2, 3, 5, 7])
    assert list_size_bound(p, 2, 0) == 26
    p = make_profile([2] * 7)
    assert list_size_bound(p, 3, 1) == 21
    p = make_profile([2, 3, 4])
    assert list_size_bound(p, 1, 0) == math.ceil((means(p).q_a - 1) * 3)


def test_list_size_preconditions():
    p = make_profile([2, 2, 2, 2])
    with pytest.raises(PreconditionViolated):
        list_size_bound(p, 2, 0)  # d not below (1 - 1/q_a) n = 2
    p = make_profile([2] * 6)
    with pytest.raises(PreconditionViolated):
        list_size_bound(p, 1, 3)
    with pytest.raises(PreconditionViolated):
        list_size_bound(p, 3, 1)  # d = (1 - 1/q_a) n is not strictly below


def test_list_size_against_codes():
    p = make_profile([2] * 7)
    bound = list_size_bound(p, 3, 1)
    best = max_code(p, 3)
    assert list_size_measure(p, best, 1) <= bound
    rng = np.random.default_rng(3)
    from mixbound.fourier import coordinate_table

    pts = coordinate_table(p.sizes)
    for _ in range(20):
        order = rng.permutation(len(pts))
        code = []
        for i in order:
            if all((pts[i] != c).sum() >= 3 for c in code):
                code.append(pts[i])
        code = [tuple(int(v) for v in c) for c in code]
        assert list_size_measure(p, code, 1) <= bound


def test_list_size_measure_trivia():
    p = make_profile([2, 2, 2])
    rep = [(0, 0, 0), (1, 1, 1)]
    assert list_size_measure(p, rep, 3) == 2
    assert list_size_measure(p, rep, 0) == 1
    assert list_size_measure(p, rep, 1) == 1
