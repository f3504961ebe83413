"""Degree/support bound formulas: pinned values, growth, and input checking."""

from fractions import Fraction

import pytest

from nullcert import (
    bezout_algdeg_bound,
    bound_cor12,
    bound_cor21,
    bound_cor22,
    bound_main_lemma,
    bound_thm1,
    bound_thm2,
    bound_thm21,
    bound_thm22,
    bound_thm3,
    bound_thm31,
    bound_thm32,
    bound_thm4,
    bound_thm_cm,
)


def test_identity_support_bound_pinned_values():
    r = bound_thm1(2, 2, 2)
    assert r.support.dilation == 64            # n^(n+3) * U = 32 * 2
    assert r.support.shift_dilation is None
    assert r.exponent_D == 1
    assert r.degree_bound is None
    assert bound_thm1(3, 3, 3).support.dilation == 2187   # 3^6 * 3


def test_identity_support_bound_with_degree_data():
    r = bound_thm1(2, 2, 2, d=3)
    assert r.degree_bound == 192               # n^(n+3) * d * U
    assert r.support.dilation == 64


def test_localized_support_bound_pinned_values():
    r = bound_thm2(2, 2, 1)
    assert r.support.dilation == 128           # n^(2n+3) * U^2
    assert r.support.shift_dilation == 128
    assert r.exponent_D == 16                  # n^(n+2) * U
    r2 = bound_thm2(2, 2, 2)
    assert (r2.support.dilation, r2.exponent_D) == (512, 32)
    r3 = bound_thm2(3, 3, 3)
    assert (r3.support.dilation, r3.exponent_D) == (177147, 729)


def test_degree_product_bound_pinned_values():
    assert bound_thm3([2, 2], 2).degree_bound == 8
    assert bound_thm3([4, 3, 2], 3).degree_bound == 48    # 2 * 2 * (4*3)
    assert bound_thm3([5], 1).degree_bound == 10
    assert bound_thm3([3, 2], 5).degree_bound == 12       # min(n,s) = s = 2


def test_degree_product_bound_all_quadrics_row():
    for n in range(2, 11):
        r = bound_thm3([2] * n, n)
        assert r.degree_bound == 2 ** (n + 1)
        assert r.degree_bound < n * 2 ** (n + 2)


def test_localized_degree_product_variant():
    r = bound_thm31([4, 3, 2], 3)
    assert r.exponent_D == 48
    assert r.degree_bound is None


def test_algebraic_degree_refinement_pinned_values():
    assert bound_thm4(3, 3, 3, 2).degree_bound == 54      # min(n,s)^2 * d * delta
    assert bound_thm4(3, 3, 4, 2).degree_bound == 72
    assert bound_thm4(2, 5, 3, 1).degree_bound == 12
    assert bound_thm32(3, 3, 4, 2).exponent_D == 72


def test_dimension_degree_bounds():
    assert bound_main_lemma(2, 3, 5).exponent_D == 20     # min(r,s)^2 * deg
    assert bound_main_lemma(4, 2, 3).exponent_D == 12
    assert bound_thm_cm(2, 3, 1).exponent_D == 36          # r^2 * d^r * deg
    assert bound_thm_cm(3, 2, 2).exponent_D == 144
    assert bound_cor12(2, 3, 1).exponent_D == 243          # (r+1)^2 * d^(r+1) * deg


def test_volume_based_bounds_pinned_values():
    r = bound_thm21(2, 2, 1, 0)
    assert r.exponent_D == 8                   # n! * min(n+1,s)^2 * vol
    assert r.support.dilation == 8
    r2 = bound_thm21(3, 2, 2, 1)
    assert r2.exponent_D == 48
    assert r2.support.dilation == 96           # times (1 + deg p)
    assert bound_cor21(2, 2, 1, 1, 2).degree_bound == 32


def test_sparse_volume_bounds_pinned_values():
    r = bound_thm22(2, 2, 2, 1)
    assert r.exponent_D == 8                   # rho! * m^2 * vol
    assert r.support.dilation == 16            # (rho! * m * vol)^2
    assert r.support.shift_dilation == 16
    r2 = bound_thm22(3, 9, 1, 2)
    assert (r2.exponent_D, r2.support.dilation) == (32, 64)
    assert bound_cor22(2, 2, 2, 1, 1, 2).degree_bound == 128


def test_volume_bounds_accept_fractional_euclidean_volume():
    # vol enters linearly, so a Fraction input must give the exact product
    r = bound_thm21(2, 2, Fraction(3, 2), 0)
    assert r.exponent_D == 12
    r2 = bound_thm22(2, 2, 2, Fraction(1, 2))
    assert r2.exponent_D == 4
    assert r2.support.dilation == 4


def test_bezout_style_algdeg_bound():
    assert bezout_algdeg_bound([4, 3, 2], 3) == 8   # d_s * prod of first min-2
    assert bezout_algdeg_bound([2, 2], 2) == 2
    assert bezout_algdeg_bound([4, 4, 4], 3) == 16
    assert bezout_algdeg_bound([3], 1) == 3
    assert isinstance(bezout_algdeg_bound([4, 3, 2], 3), int)


def test_reports_carry_human_readable_context():
    r = bound_thm3([4, 3, 2], 3)
    assert r.theorem_id == "Thm3"
    assert r.formula
    assert r.inputs["n"] == 3
    r2 = bound_thm1(2, 2, 2)
    assert "newton" in r2.support.base


def test_bounds_grow_monotonically():
    dil = [bound_thm1(n, n, 1).support.dilation for n in range(2, 7)]
    assert dil == [n ** (n + 3) for n in range(2, 7)]
    # grows much faster than any fixed exponential
    assert all(b > 20 * a for a, b in zip(dil, dil[1:]))
    assert bound_thm1(2, 2, 3).support.dilation > bound_thm1(2, 2, 2).support.dilation


def test_input_validation():
    with pytest.raises(ValueError):
        bound_thm1(0, 2, 1)
    with pytest.raises(ValueError):
        bound_thm1(2, 2, 0)
    with pytest.raises(ValueError):
        bound_thm3([2, 3], 2)        # must be sorted descending
    with pytest.raises(ValueError):
        bound_thm3([], 2)
    with pytest.raises(ValueError):
        bound_thm3([2, -1], 2)
    with pytest.raises(ValueError):
        bound_thm4(3, 3, 3, -1)      # delta may be 0 but never negative
    with pytest.raises(ValueError):
        bound_main_lemma(0, 3, 1)
    with pytest.raises(ValueError):
        bound_thm21(2, 2, 0, 0)      # empty volume
    with pytest.raises(ValueError):
        bezout_algdeg_bound([1, 2], 2)
