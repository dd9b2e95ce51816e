"""Pairing and seminorm behavior: golden values, errors, and the axioms
as hypothesis properties."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bivar import (
    DimensionMismatch,
    MembershipError,
    TwoNormPairing,
    Vec,
    coordinate_seminorm,
    euclidean_modulus,
    euclidean_seminorm,
    eval_pairing,
    modulus_product,
    modulus_seminorm,
    pairing_by_name,
    reverse_triangle_gap,
    seminorm_product,
    vec,
)

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)


def complexes(mag=10.0):
    reals = st.floats(min_value=-mag, max_value=mag, allow_nan=False)
    return st.builds(complex, reals, reals)


def vectors(dim, mag=10.0):
    return st.builds(lambda cs: Vec(tuple(cs)),
                     st.lists(complexes(mag), min_size=dim, max_size=dim))


class TestVec:
    def test_arithmetic_is_componentwise(self):
        a, b = vec(1, 2j), vec(3, -1)
        assert (a + b).components == (4 + 0j, -1 + 2j)
        assert (a - b).components == (-2 + 0j, 1 + 2j)
        assert (2j * a).components == (2j, -4 + 0j)
        assert (-a).components == (-1 + 0j, -2j)

    def test_empty_vector_rejected(self):
        with pytest.raises(DimensionMismatch):
            Vec(())

    def test_mixed_dims_rejected(self):
        with pytest.raises(DimensionMismatch):
            vec(1, 2) + vec(1)


class TestEuclideanModulus:
    def test_three_four_five(self, euclid):
        assert eval_pairing(euclid, vec(3, 4), vec(1)) == 5.0

    def test_half_sqrt5(self, euclid):
        # ||(2i, -i), -i/2|| = sqrt(5)/2
        got = eval_pairing(euclid, vec(2j, -1j), vec(-0.5j))
        assert got == pytest.approx(SQRT5 / 2, rel=1e-12)

    def test_zero_second_slot(self, euclid):
        assert eval_pairing(euclid, vec(3 + 1j, -2), vec(0)) == 0.0

    def test_unit_imag_pair(self, euclid):
        assert eval_pairing(euclid, vec(1j, 1j), vec(SQRT2)) == pytest.approx(2.0, rel=1e-12)

    def test_zero_first_slot(self, euclid):
        assert eval_pairing(euclid, vec(0, 0), vec(5 - 2j)) == 0.0

    @given(alpha=complexes())
    def test_first_slot_homogeneity(self, euclid, alpha):
        base = eval_pairing(euclid, vec(1, 0), vec(1))
        scaled = eval_pairing(euclid, alpha * vec(1, 0), vec(1))
        assert scaled == pytest.approx(abs(alpha) * base, rel=1e-9, abs=1e-12)

    def test_dimension_mismatch(self, euclid):
        with pytest.raises(DimensionMismatch):
            eval_pairing(euclid, vec(1), vec(1))
        with pytest.raises(DimensionMismatch):
            eval_pairing(euclid, vec(1, 2), vec(1, 2))


class TestSeminormProduct:
    def test_moduli(self):
        p = modulus_product()
        assert eval_pairing(p, vec(2), vec(3j)) == 6.0
        assert eval_pairing(p, vec(0), vec(4 + 3j)) == 0.0

    def test_genuine_seminorm_kernel(self):
        # first-coordinate seminorm ignores the second component entirely
        p = seminorm_product(coordinate_seminorm(2, 0), modulus_seminorm())
        assert eval_pairing(p, vec(0, 7), vec(5)) == 0.0
        assert eval_pairing(p, vec(2j, 99), vec(5)) == 10.0

    def test_euclidean_seminorm_values(self):
        s = euclidean_seminorm(3)
        assert s(vec(1, 2, 2)) == pytest.approx(3.0, rel=1e-12)
        assert s(vec(0, 0, 0)) == 0.0


class TestMembership:
    def test_restricted_pairs_rejected(self):
        p = TwoNormPairing(
            name="restricted",
            dim_a=1,
            dim_b=1,
            raw=lambda a, b: abs(a[0]) * abs(b[0]),
            in_w=lambda a, b: a.components[0].real >= 0,
        )
        assert eval_pairing(p, vec(2), vec(3)) == 6.0
        with pytest.raises(MembershipError):
            eval_pairing(p, vec(-2), vec(3))

    def test_unknown_pairing_name(self):
        with pytest.raises(MembershipError):
            pairing_by_name("no-such-pairing")


class TestReverseTriangle:
    def test_equal_vectors(self, euclid):
        assert reverse_triangle_gap(euclid, vec(3, 4), vec(3, 4), vec(1)) == (0.0, 0.0)

    def test_orthogonal_case(self, euclid):
        # ||a,c|| = ||b,c|| = 2, and ||a-b, c|| = 2*sqrt(2)
        gap, bound = reverse_triangle_gap(euclid, vec(1, 0), vec(0, 1), vec(2))
        assert gap == 0.0
        assert bound == pytest.approx(2 * SQRT2, rel=1e-12)

    def test_collinear_equality(self, euclid):
        gap, bound = reverse_triangle_gap(euclid, vec(2, 0), vec(1, 0), vec(1))
        assert gap == pytest.approx(1.0, rel=1e-12)
        assert bound == pytest.approx(1.0, rel=1e-12)

    @given(a=vectors(2), b=vectors(2), c=vectors(1))
    @settings(max_examples=300)
    def test_gap_never_exceeds_bound(self, euclid, a, b, c):
        gap, bound = reverse_triangle_gap(euclid, a, b, c)
        scale = max(gap, bound)
        assert gap <= bound + max(1e-12, 1e-12 * scale), (
            f"reverse triangle violated: {gap} > {bound} for a={a}, b={b}, c={c}"
        )


def _axiom_pairings():
    return [
        euclidean_modulus(),
        modulus_product(),
        seminorm_product(coordinate_seminorm(2, 0), modulus_seminorm()),
    ]


class TestPairingAxiomsProperty:
    """G1-G3 as hypothesis properties over all built-in pairings."""

    @given(data=st.data(), alpha=complexes())
    @settings(max_examples=300)
    def test_g1_homogeneity_both_slots(self, data, alpha):
        for p in _axiom_pairings():
            a = data.draw(vectors(p.dim_a))
            b = data.draw(vectors(p.dim_b))
            base = p.evaluate(a, b)
            left = p.evaluate(alpha * a, b)
            right = p.evaluate(a, alpha * b)
            want = abs(alpha) * base
            tol = max(1e-12, 1e-9 * max(want, left, right))
            assert abs(left - want) <= tol, f"{p.name}: G1 first slot"
            assert abs(right - want) <= tol, f"{p.name}: G1 second slot"

    @given(data=st.data())
    @settings(max_examples=300)
    def test_g2_second_slot_triangle(self, data):
        for p in _axiom_pairings():
            a = data.draw(vectors(p.dim_a))
            b = data.draw(vectors(p.dim_b))
            c = data.draw(vectors(p.dim_b))
            lhs = p.evaluate(a, b + c)
            rhs = p.evaluate(a, b) + p.evaluate(a, c)
            assert lhs <= rhs + max(1e-12, 1e-12 * max(lhs, rhs)), f"{p.name}: G2"

    @given(data=st.data())
    @settings(max_examples=300)
    def test_g3_first_slot_triangle(self, data):
        for p in _axiom_pairings():
            a = data.draw(vectors(p.dim_a))
            b = data.draw(vectors(p.dim_a))
            c = data.draw(vectors(p.dim_b))
            lhs = p.evaluate(a + b, c)
            rhs = p.evaluate(a, c) + p.evaluate(b, c)
            assert lhs <= rhs + max(1e-12, 1e-12 * max(lhs, rhs)), f"{p.name}: G3"

    @given(a=vectors(1), b=vectors(1))
    @settings(max_examples=200)
    def test_modulus_product_symmetry(self, a, b):
        p = modulus_product()
        assert p.evaluate(a, b) == p.evaluate(b, a)
