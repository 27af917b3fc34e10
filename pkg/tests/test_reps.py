import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sliceshear import (
    CyclicGroup,
    RepError,
    VirtualRep,
    constant_C,
    line_L,
    regular_rep,
    rho_bar,
    tau,
)
from helpers import fixed_dim_oracle, random_rep, restrict_oracle


def C(n: int) -> CyclicGroup:
    return CyclicGroup(n)


groups = st.integers(min_value=0, max_value=6).map(CyclicGroup)


@st.composite
def reps(draw, max_exponent=6):
    group = CyclicGroup(draw(st.integers(0, max_exponent)))
    n = group.exponent
    coeffs = draw(
        st.tuples(*[st.integers(-8, 8) for _ in range(1 if n == 0 else n + 1)])
    )
    return VirtualRep(group, coeffs)


class TestGroup:
    def test_order_and_subgroups(self):
        g = C(3)
        assert g.order == 8
        assert g.subgroup(0) == C(0)
        assert g.subgroup(3) == g
        assert g.quotient(2) == C(1)
        with pytest.raises(RepError):
            g.subgroup(4)
        with pytest.raises(RepError):
            CyclicGroup(-1)

    def test_str(self):
        assert str(C(0)) == "C1"
        assert str(C(4)) == "C16"


class TestDimension:
    def test_zero(self):
        assert VirtualRep.zero(C(3)).dimension == 0

    def test_reduced_regular(self):
        # 2^(n-1) lambda_n + ... + lambda_1 + sigma over C_(2^(n+1))
        for n in range(0, 5):
            assert rho_bar(n + 1).dimension == (1 << (n + 1)) - 1

    def test_cancelling(self):
        v = VirtualRep.of(C(2), triv=2, sigma=-2)
        assert v.dimension == 0


class TestFixedPoints:
    def test_sigma_over_c4(self):
        v = VirtualRep.of(C(2), sigma=1)
        w = v.fixed_points(1)
        assert w == VirtualRep.of(C(1), sigma=1)
        assert w.dimension == fixed_dim_oracle(v, 1)

    def test_lambda1_over_c4_is_killed(self):
        v = VirtualRep.of(C(2), lam={1: 1})
        w = v.fixed_points(1)
        assert w.is_zero
        assert fixed_dim_oracle(v, 1) == 0

    @given(reps())
    def test_k0_is_identity(self, v):
        assert v.fixed_points(0) == v

    def test_exhaustive_oracle_small(self):
        # full-rep oracle equality on random virtual reps (irreducible case is
        # covered exhaustively in the acceptance suite)
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(0, 6)
            v = random_rep(rng, C(n))
            for k in range(n + 1):
                assert v.fixed_points(k).dimension == fixed_dim_oracle(v, k)


class TestPullback:
    def test_sigma_to_c8(self):
        v = VirtualRep.of(C(1), sigma=1)
        assert v.pullback_to(C(3)) == VirtualRep.of(C(3), sigma=1)

    def test_zero(self):
        assert VirtualRep.zero(C(1)).pullback_to(C(4)).is_zero

    def test_lambda_round_trip(self):
        v = VirtualRep.of(C(2), lam={1: 1})
        w = v.pullback_to(C(3))
        assert w == VirtualRep.of(C(3), lam={1: 1})
        assert w.fixed_points(1) == v

    def test_smaller_target_rejected(self):
        v = VirtualRep.zero(C(3))
        with pytest.raises(RepError):
            v.pullback_to(C(2))

    @given(reps(max_exponent=5), st.integers(0, 3))
    def test_round_trip(self, v, k):
        big = CyclicGroup(v.group.exponent + k)
        assert v.pullback_to(big).fixed_points(k) == v


class TestRestrict:
    def test_regular_rep_scaling(self):
        for n in range(1, 6):
            for m in range(0, n + 1):
                got = regular_rep(C(n)).restrict(m)
                want = (1 << (n - m)) * regular_rep(C(m))
                assert got == want
                assert got == restrict_oracle(regular_rep(C(n)), m)

    def test_sigma_to_c2(self):
        v = VirtualRep.of(C(2), sigma=1)
        assert v.restrict(1) == VirtualRep.of(C(1), triv=1)
        assert v.restrict(1) == restrict_oracle(v, 1)

    @given(reps())
    def test_identity(self, v):
        assert v.restrict(v.group.exponent) == v

    def test_oracle_random(self):
        rng = random.Random(11)
        for _ in range(200):
            n = rng.randint(0, 5)
            v = random_rep(rng, C(n))
            for m in range(n + 1):
                assert v.restrict(m) == restrict_oracle(v, m)


class TestTau:
    def test_zero_rep(self):
        z = VirtualRep.zero(C(3))
        for k in range(4):
            assert tau(z, k) == 0

    def test_k0(self):
        rng = random.Random(3)
        for _ in range(50):
            v = random_rep(rng, C(rng.randint(0, 5)))
            assert tau(v, 0) == 0

    def test_two_sigma_over_c4(self):
        v = VirtualRep.of(C(2), sigma=2)
        assert tau(v, 1) == max(0, v.fixed_points(1).dimension * 2 - 2)
        assert tau(v, 1) == 2

    def test_monotone_in_k(self):
        rng = random.Random(5)
        for _ in range(100):
            n = rng.randint(1, 6)
            v = random_rep(rng, C(n))
            values = [tau(v, k) for k in range(n + 1)]
            assert values == sorted(values)

    def test_out_of_range(self):
        with pytest.raises(RepError):
            tau(VirtualRep.zero(C(1)), 2)


class TestLineL:
    def test_slope_one_through_origin(self):
        line = line_L(VirtualRep.zero(C(2)), 1)
        assert line.slope == 1 and line.intercept == 0
        assert line.on_or_above(3, 3)
        assert not line.on_or_above(3, 2)

    def test_horizontal(self):
        line = line_L(VirtualRep.zero(C(2)), 0)
        assert line.slope == 0 and line.intercept == 0
        assert line.equation() == "s = 0"

    def test_two_sigma_intercept(self):
        line = line_L(VirtualRep.of(C(2), sigma=2), 1)
        assert line.slope == 1 and line.intercept == 2


class TestConstantC:
    def test_zero_rep(self):
        assert constant_C(VirtualRep.zero(C(3)), 2) == 0

    def test_pulled_back_dimension_zero(self):
        # anything pulled back from the quotient by C_{2^k} with dim 0
        rng = random.Random(13)
        for _ in range(100):
            n = rng.randint(1, 5)
            k = rng.randint(1, n)
            small = random_rep(rng, C(n + 1 - k))
            small = small - VirtualRep.of(C(n + 1 - k), triv=small.dimension)
            assert small.dimension == 0
            v = small.pullback_to(C(n + 1))
            assert constant_C(v, k) == 0
            assert tau(v, k) == 0

    def test_sigma_over_c4(self):
        assert constant_C(VirtualRep.of(C(2), sigma=1), 1) == 0

    def test_non_negative(self):
        rng = random.Random(17)
        for _ in range(300):
            n = rng.randint(1, 6)
            v = random_rep(rng, C(n))
            for k in range(1, n):
                assert constant_C(v, k) >= 0

    def test_can_be_fractional_and_positive(self):
        v = VirtualRep.of(C(2), lam={1: 1})
        assert constant_C(v, 1) == Fraction(1)
        w = VirtualRep.of(C(3), lam={2: 1})
        assert constant_C(w, 2) == Fraction(1, 2)


class TestRhoBar:
    def test_full_reduced_regular(self):
        v = rho_bar(4)
        assert v == VirtualRep.of(C(4), sigma=1, lam={1: 1, 2: 2, 3: 4})
        assert v + VirtualRep.of(C(4), triv=1) == regular_rep(C(4))

    def test_lambda_coefficients(self):
        for k in range(0, 4):
            v = rho_bar(5, k)
            assert v.c_sigma == 1 and v.c_triv == 0
            for m in range(1, 5):
                want = (1 << (m - 1)) if m <= 4 - k else 0
                assert v.c_lambda(m) == want
            assert v.dimension == (1 << (5 - k)) - 1

    def test_difference_is_upper_lambda_block(self):
        # rho_bar(k+j) - rho_bar(k+j, k) = sum_{m=j}^{k+j-1} 2^(m-1) lambda_m
        for k in range(1, 4):
            for j in range(1, 4):
                diff = rho_bar(k + j) - rho_bar(k + j, k)
                want = VirtualRep.of(
                    C(k + j), lam={m: 1 << (m - 1) for m in range(j, k + j)}
                )
                assert diff == want

    def test_out_of_range(self):
        with pytest.raises(RepError):
            rho_bar(3, 3)


class TestRepFormat:
    @given(reps())
    def test_str_is_nonempty(self, v):
        assert str(v)

    def test_examples(self):
        assert str(VirtualRep.of(C(2), triv=2, sigma=-2)) == "2-2s"
        assert str(VirtualRep.of(C(2), triv=10, sigma=-2, lam={1: -4})) == "10-2s-4l1"
        assert str(VirtualRep.zero(C(1))) == "0"
        assert str(VirtualRep.of(C(2), sigma=1)) == "s"
