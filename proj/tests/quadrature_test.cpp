// Copyright 2026 The ballexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <ballexp/quadrature.hpp>

#include <chrono>

#include <gtest/gtest.h>

using namespace ballexp;

namespace
{

Precision digits(unsigned d)
{
    Precision p;
    p.digits = d;
    return p;
}

} // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly)
{
    ScopedDigits guard(40);
    const auto &rule = gauss_legendre(16, 40);
    auto f = [](const Real &x) { return Real(pow(x, 30)); };
    const Real q = apply_rule(rule, f, Real(0), Real(1));
    EXPECT_LT(abs(q - Real(1) / 31), Real("1e-38"));
}

TEST(HurwitzZeta, MatchesZetaTwo)
{
    ScopedDigits guard(40);
    const auto z = hurwitz_zeta(2, Real(1), 40);
    EXPECT_LT(abs(z.value - pi() * pi() / 6), Real("1e-38"));
    const auto shifted = hurwitz_zeta(4, Real(3), 40);
    // zeta(4, 3) = pi^4/90 - 1 - 1/16
    EXPECT_LT(abs(shifted.value - (pow(pi(), 4) / 90 - 1 - Real(1) / 16)), Real("1e-38"));
}

TEST(SincIntegral, ClosedForms)
{
    const Precision p = digits(30);
    ScopedDigits guard(40);
    const Real expected2 = pi() / sqrt(Real(2));
    const Real expected3 = 3 * sqrt(Real(3)) * pi() / 8;
    const Real expected4 = 2 * pi() / 3;
    for (auto [n, expected] : {std::pair{2, expected2}, std::pair{3, expected3}, std::pair{4, expected4}}) {
        const auto q = sinc_integral_signed(n, p);
        const Real err = abs(q.value - expected);
        EXPECT_LT(err, Real("1e-29")) << n;
        EXPECT_LE(err, q.abs_err_bound) << n;
    }
}

TEST(SincIntegral, EvenPowersIgnoreSign)
{
    const Precision p = digits(30);
    ScopedDigits guard(40);
    const Real expected2 = pi() / sqrt(Real(2));
    const Real expected4 = 2 * pi() / 3;
    for (auto [n, expected] : {std::pair{2, expected2}, std::pair{4, expected4}}) {
        const auto q = sinc_integral(n, p);
        EXPECT_LE(abs(q.value - expected), q.abs_err_bound) << n;
        EXPECT_LT(q.abs_err_bound, Real("1e-29")) << n;
    }
}

TEST(SincIntegral, OddPowerUsesAbsoluteValue)
{
    // sqrt(3) int |sinc|^3: direct lobe quadrature to 4000 pi with the
    // 4/(3 pi) mean-value estimate of the remaining tail (about 2.3e-9).
    const auto q = sinc_integral(3, digits(30));
    ScopedDigits guard(40);
    EXPECT_LT(abs(q.value - Real("2.0930867689")), Real("1e-9"));
    EXPECT_GT(q.value, 3 * sqrt(Real(3)) * pi() / 8 + Real("0.05"));
}

TEST(SincIntegral, FoldedAndBoundedTailsAgree)
{
    const Precision p = digits(25);
    QuadConfig wide;
    wide.max_lobes = 200;
    const auto folded = sinc_integral(12, p);
    const auto bounded = sinc_integral(12, p, wide);
    ScopedDigits guard(35);
    EXPECT_LE(abs(folded.value - bounded.value), folded.abs_err_bound + bounded.abs_err_bound);
    EXPECT_GT(folded.tail_added, 0);
    EXPECT_EQ(bounded.tail_added, 0);
}

TEST(SincIntegral, Deterministic)
{
    const auto a = sinc_integral(7, digits(30));
    const auto b = sinc_integral(7, digits(30));
    EXPECT_EQ(a.value.str(0), b.value.str(0));
    EXPECT_EQ(a.abs_err_bound.str(0), b.abs_err_bound.str(0));
}

TEST(SincIntegral, RejectsBadInput)
{
    EXPECT_THROW(sinc_integral(1), std::domain_error);
    Precision p;
    p.digits = 10;
    EXPECT_THROW(sinc_integral(5, p), std::invalid_argument);
}

TEST(BesselEval, HalfOrderIsSinc)
{
    const Nu half(Rat(1, 2));
    ScopedDigits guard(40);
    for (double t : {0.1, 1.0, 3.0, 17.5, 60.0}) {
        const auto f = bessel_j_normalized(half, Real(t));
        EXPECT_LT(abs(f.value - sin(Real(t)) / Real(t)), Real("1e-35")) << t;
    }
}

TEST(BesselEval, BoundedByOneAndFirstZero)
{
    const Nu one(Rat(1));
    ScopedDigits guard(40);
    for (int i = 1; i <= 400; ++i) {
        const Real t = Real(i) / 4;
        EXPECT_LE(abs(bessel_j_normalized(one, t).value), 1) << i;
    }
    const auto zeros = bessel_zeros(one, Real(10), 40, QuadConfig{});
    ASSERT_EQ(zeros.size(), 2U);
    EXPECT_LT(abs(zeros[0] - Real("3.8317059702075123156144358863")), Real("1e-25"));
    EXPECT_THROW(bessel_j_normalized(one, Real(101)), std::domain_error);
}

TEST(BesselIntegral, HalfOrderMatchesSinc)
{
    const Precision p = digits(20);
    const auto b = bessel_integral(Nu(Rat(1, 2)), 5, p);
    const auto s = sinc_integral(5, p);
    ScopedDigits guard(30);
    // f_{1/2} = sinc and 5^{1/2} times the same integral
    EXPECT_LE(abs(b.value - s.value), b.abs_err_bound + s.abs_err_bound);
}

TEST(BesselIntegral, SquareIntegralClosedForm)
{
    // n = 2, nu = 1: the full integral is 4.
    const auto q = bessel_integral(Nu(Rat(1)), 2, digits(20));
    ScopedDigits guard(30);
    EXPECT_LT(abs(q.value - 4), Real("1e-18"));
    EXPECT_LE(abs(q.value - 4), q.abs_err_bound);
}

TEST(BesselIntegral, CutoffConsistency)
{
    const Nu nu(Rat(3, 2));
    const Precision p = digits(15);
    const auto a = bessel_integral(nu, 8, p, 2.0);
    const auto b = bessel_integral(nu, 8, p, 4.0);
    ScopedDigits guard(25);
    EXPECT_LE(abs(a.value - b.value), a.abs_err_bound + b.abs_err_bound);
    EXPECT_THROW(bessel_integral(nu, 8, p, 0.5), std::domain_error);
    EXPECT_THROW(bessel_integral(nu, 8, p, 100.0), std::domain_error);
}

TEST(RemainderFit, SincDecaySlope)
{
    const std::vector<int> grid{100, 200, 400, 800};
    const auto fit = remainder_decay_fit(Pipeline::sinc(), 3, grid, digits(30));
    EXPECT_NEAR(fit.slope, -4.0, 0.1);
}

TEST(CoefficientFit, RecoversC3)
{
    const auto known = sinc_expansion(2).coeffs;
    const std::vector<int> grid{40, 50, 60, 80, 100, 150, 200, 300, 400};
    const auto fit = coefficient_fit(Pipeline::sinc(), known, grid, digits(40), 4);
    const Rat c3 = sinc_expansion(3).coeffs[3];
    EXPECT_TRUE(fit.consistent_with(c3)) << fit.estimate << " +- " << fit.uncertainty;
    EXPECT_LT(fit.uncertainty, Real("1e-7"));
}
