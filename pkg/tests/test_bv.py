"""Bounded-variation wrappers, the boundedness bound, the seminorm
shortcut, and the symmetric two-norm."""

from __future__ import annotations

import math

import pytest

from bivar import (
    BVFunction,
    CompositionError,
    Interval,
    RefineConfig,
    VariationNotConverged,
    bv_linear_combine,
    bv_scale,
    bv_two_norm_2G,
    estimate_variation,
    eval_pairing,
    is_2k_bounded,
    modulus_seminorm,
    parse_constant_vector,
    resolve_function,
    seminorm_product,
    variation_via_seminorm,
    vec,
)

SQRT5 = math.sqrt(5.0)


@pytest.fixture
def linear_bv(euclid, k_sqrt2):
    spec = resolve_function("linear_ii", domain=Interval(1.0, 2.0))
    return BVFunction.build(spec, euclid, k_sqrt2)


class TestBVConstruction:
    def test_converged_function_is_admitted(self, linear_bv):
        assert linear_bv.variation.status == "converged"
        assert linear_bv.variation.value == pytest.approx(2.0, abs=1e-9)

    def test_diverging_function_is_rejected(self, modprod, k_one):
        spec = resolve_function("xsin_inv_x")
        with pytest.raises(VariationNotConverged):
            BVFunction.build(spec, modprod, k_one)

    def test_budget_exhaustion_is_rejected_too(self, modprod, k_one):
        spec = resolve_function("x2sin_inv_x")
        with pytest.raises(VariationNotConverged):
            BVFunction.build(spec, modprod, k_one, RefineConfig(max_points=16))


class TestIs2kBounded:
    def test_linear_report(self, euclid, k_sqrt2):
        spec = resolve_function("linear_ii")
        rep = is_2k_bounded(spec, euclid, k_sqrt2, sigma=2.0, n_samples=1000)
        assert rep.holds
        assert rep.sup_sample == pytest.approx(2.0, rel=1e-9)
        assert rep.bound == pytest.approx(4.0, rel=1e-9)
        assert rep.samples == 1000

    def test_constant_report(self, euclid, k_sqrt2):
        spec = resolve_function("const_c")
        rep = is_2k_bounded(spec, euclid, k_sqrt2, sigma=0.0, n_samples=100)
        norm_c = eval_pairing(euclid, vec(1, 1), k_sqrt2)
        assert rep.holds
        assert rep.sup_sample == pytest.approx(norm_c, rel=1e-12)
        assert rep.bound == pytest.approx(2 * norm_c, rel=1e-12)

    def test_adversary_values_stay_under_sup(self, euclid):
        # the two image values under k = -i/2: sqrt(5)/2 and 0
        k = vec(-0.5j)
        hi = eval_pairing(euclid, vec(2j, -1j), k)
        lo = eval_pairing(euclid, vec(0, 0), k)
        assert max(hi, lo) == pytest.approx(SQRT5 / 2, rel=1e-12)


class TestLinearCombine:
    def test_scalar_multiple(self, linear_bv):
        zero = bv_linear_combine(0, linear_bv, 0, linear_bv)
        tripled = bv_linear_combine(3, linear_bv, 0, zero)
        assert tripled.variation.value == pytest.approx(6.0, rel=1e-9)

    def test_cancellation(self, linear_bv):
        gone = bv_linear_combine(1, linear_bv, -1, linear_bv)
        assert gone.variation.value == 0.0

    def test_subadditivity_equality_case(self, linear_bv):
        doubled = bv_linear_combine(1, linear_bv, 1, linear_bv)
        vf, vh = linear_bv.variation.value, linear_bv.variation.value
        assert doubled.variation.value == pytest.approx(4.0, rel=1e-9)
        assert doubled.variation.value <= vf + vh + max(1e-12, 1e-9 * (vf + vh))

    def test_mismatched_domains_rejected(self, euclid, k_sqrt2, linear_bv):
        other = BVFunction.build(
            resolve_function("linear_ii", domain=Interval(0.0, 1.0)), euclid, k_sqrt2
        )
        with pytest.raises(CompositionError):
            bv_linear_combine(1, linear_bv, 1, other)

    def test_mismatched_k_rejected(self, euclid, k_sqrt2, linear_bv):
        other = BVFunction.build(linear_bv.spec, euclid, vec(1))
        with pytest.raises(CompositionError):
            bv_linear_combine(1, linear_bv, 1, other)


class TestBvScale:
    def test_exact_scaling(self, linear_bv):
        scaled = bv_scale(-2j, linear_bv)
        assert scaled.variation.value == 2.0 * linear_bv.variation.value
        assert all(
            s.sum == 2.0 * t.sum
            for s, t in zip(scaled.variation.trace, linear_bv.variation.trace)
        )

    def test_zero_scale(self, linear_bv):
        assert bv_scale(0, linear_bv).variation.value == 0.0


class TestVariationViaSeminorm:
    def test_monotone_shortcut(self, modprod):
        spec = resolve_function("monotone_id")
        got = variation_via_seminorm(spec, modulus_seminorm(), vec(5), modulus_seminorm())
        assert got == pytest.approx(5.0, rel=1e-9)

    def test_reference_vector_in_kernel(self):
        spec = resolve_function("monotone_id")
        got = variation_via_seminorm(spec, modulus_seminorm(), vec(0), modulus_seminorm())
        assert got == 0.0

    def test_constant_function(self, modprod):
        spec = resolve_function("monotone_id")
        from bivar import scale_spec

        const = scale_spec(0, spec)
        got = variation_via_seminorm(const, modulus_seminorm(), vec(5), modulus_seminorm())
        assert got == 0.0

    @pytest.mark.parametrize("fn_id,k_val", [("monotone_id", 5.0), ("x2sin_inv_x", 1.0)])
    def test_agrees_with_product_pairing(self, fn_id, k_val):
        spec = resolve_function(fn_id)
        cfg = RefineConfig(max_points=2 ** 12)
        k = vec(k_val)
        shortcut = variation_via_seminorm(spec, modulus_seminorm(), k, modulus_seminorm(), cfg)
        product = seminorm_product(modulus_seminorm(), modulus_seminorm())
        direct = estimate_variation(spec, product, k, cfg).value
        assert shortcut == pytest.approx(direct, rel=1e-6)


class TestTwoNorm2G:
    def test_self_pairing_golden(self, linear_bv):
        assert bv_two_norm_2G(linear_bv, linear_bv) == pytest.approx(8.0, abs=1e-9)

    def test_zero_function(self, linear_bv):
        zero = bv_linear_combine(1, linear_bv, -1, linear_bv)
        assert bv_two_norm_2G(zero, linear_bv) == 0.0

    def test_scaled_pair_and_symmetry(self, linear_bv):
        doubled = bv_scale(2, linear_bv)
        forward = bv_two_norm_2G(linear_bv, doubled)
        backward = bv_two_norm_2G(doubled, linear_bv)
        assert forward == pytest.approx(16.0, rel=1e-9)
        assert forward == backward

    def test_wider_interval(self, euclid, k_sqrt2):
        spec = resolve_function("linear_ii", domain=Interval(2.0, 5.0))
        f = BVFunction.build(spec, euclid, k_sqrt2)
        # variation 2*(5-2) = 6, left-end norm ||(2i,2i), sqrt2|| = 4
        assert bv_two_norm_2G(f, f) == pytest.approx(48.0, abs=1e-9)

    def test_mismatch_rejected(self, euclid, k_sqrt2, linear_bv, modprod):
        mono = BVFunction.build(resolve_function("monotone_id"), modprod, vec(1))
        with pytest.raises(CompositionError):
            bv_two_norm_2G(linear_bv, mono)
