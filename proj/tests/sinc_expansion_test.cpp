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

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include <ballexp/sinc_expansion.hpp>

using ballexp::EvenPoly;
using ballexp::InvNSeries;
using ballexp::Rat;
using ballexp::Real;

namespace
{

std::vector<ballexp::FixtureEntry> load_fixture()
{
    std::ifstream in(std::string(BALLEXP_DATA_DIR) + "/appendix_a.txt");
    EXPECT_TRUE(in.good());
    return ballexp::parse_fixture(in);
}

const ballexp::Erratum *find_erratum(int row, int exponent)
{
    for (const auto &e : ballexp::appendix_errata()) {
        if (e.row == row && e.exponent == exponent) {
            return &e;
        }
    }
    return nullptr;
}

// Coefficient of t^{2j} in exp(t^2/6) * sin(t)/t by a truncated series product
// built here from scratch.
Rat exp_sinc_coefficient(int j)
{
    EvenPoly e;
    EvenPoly s;
    for (int i = 0; i <= j; ++i) {
        e.set(2 * i, Rat(ballexp::BigInt(1), ballexp::factorial(i) * boost::multiprecision::pow(ballexp::BigInt(6), i)));
        s.set(2 * i, Rat(ballexp::BigInt(i % 2 == 0 ? 1 : -1), ballexp::factorial(2 * i + 1)));
    }
    return ballexp::mul_trunc(e, s, 2 * j).coeff(2 * j);
}

} // namespace

TEST(SincPartialSum, LowOrders)
{
    EXPECT_EQ(ballexp::sinc_partial_sum(0), EvenPoly::constant(Rat(1)));
    EvenPoly t1 = EvenPoly::constant(Rat(1));
    t1.set(2, Rat(-1, 6));
    EXPECT_EQ(ballexp::sinc_partial_sum(1), t1);
    t1.set(4, Rat(1, 120));
    EXPECT_EQ(ballexp::sinc_partial_sum(2), t1);
    EXPECT_THROW(ballexp::sinc_partial_sum(-1), std::invalid_argument);
}

TEST(SincAj, KnownValues)
{
    for (int k = 1; k <= 6; ++k) {
        EXPECT_EQ(ballexp::sinc_aj(0, k), Rat(1));
        EXPECT_EQ(ballexp::sinc_aj(1, k), Rat(0));
    }
    for (int k = 2; k <= 6; ++k) {
        EXPECT_EQ(ballexp::sinc_aj(2, k), Rat(-1, 180));
    }
    for (int k = 3; k <= 6; ++k) {
        EXPECT_EQ(ballexp::sinc_aj(3, k), Rat(-1, 2835));
    }
}

TEST(SincAj, A4AgainstSeriesProduct)
{
    const Rat oracle = exp_sinc_coefficient(4);
    EXPECT_EQ(oracle, Rat(-1, 90720));
    for (int k = 4; k <= 8; ++k) {
        EXPECT_EQ(ballexp::sinc_aj(4, k), oracle);
    }
    // appendix t^8 / n^3 coefficient
    EXPECT_EQ(oracle - Rat(1, 2) * ballexp::pow(Rat(-1, 180), 2), Rat(-1, 37800));
}

TEST(SincAj, MatchesSeriesProductForAllJUpToK)
{
    for (int j = 0; j <= 14; ++j) {
        EXPECT_EQ(ballexp::sinc_aj(j, 14), exp_sinc_coefficient(j)) << "j=" << j;
    }
}

TEST(SincExpansion, OrderZero)
{
    const auto e = ballexp::sinc_expansion(0);
    ASSERT_EQ(e.coeffs.size(), 1U);
    EXPECT_EQ(e.coeffs[0], Rat(1));
    EXPECT_EQ(e.k, 1);
}

TEST(SincExpansion, PublishedConstants)
{
    const auto e = ballexp::sinc_expansion(7);
    ASSERT_EQ(e.coeffs.size(), 8U);
    EXPECT_EQ(e.coeffs[0], Rat(1));
    EXPECT_EQ(e.coeffs[1], Rat(-3, 20));
    EXPECT_EQ(e.coeffs[2], Rat(-13, 1120));
    EXPECT_EQ(e.coeffs[3], Rat(27, 3200));
    EXPECT_EQ(e.coeffs[4], Rat(52791, 3942400));
    EXPECT_EQ(e.coeffs[6], Rat::parse("-124996631/10035200000"));
    EXPECT_EQ(e.coeffs[7], Rat::parse("-5270328789/136478720000"));
    // The printed c5 repeats c7; the engine value is validated numerically
    // in the quadrature and acceptance suites.
    EXPECT_EQ(e.coeffs[5], Rat::parse("482427/66560000"));
    EXPECT_NE(e.coeffs[5], ballexp::constant_errata().front().printed);
}

TEST(SincExpansion, HandDerivedLowOrders)
{
    const Rat a2(-1, 180);
    const Rat a3(-1, 2835);
    const Rat c1 = a2 * Rat(9) * Rat(3);
    const Rat c2 = a3 * Rat(27) * Rat(15) + Rat(1, 2) * a2 * a2 * Rat(81) * Rat(105);
    EXPECT_EQ(a3 * Rat(27) * Rat(15), Rat(-1, 7));
    EXPECT_EQ(Rat(1, 2) * a2 * a2 * Rat(81) * Rat(105), Rat(21, 160));
    const auto e = ballexp::sinc_expansion(2);
    EXPECT_EQ(e.coeffs[1], c1);
    EXPECT_EQ(e.coeffs[2], c2);
}

TEST(SincExpansion, StableInK)
{
    for (int m = 0; m <= 5; ++m) {
        const auto base = ballexp::sinc_expansion(m);
        for (int k = m + 2; k <= m + 4; ++k) {
            EXPECT_EQ(ballexp::sinc_expansion(m, k).coeffs, base.coeffs) << "m=" << m << " k=" << k;
        }
    }
}

TEST(SincExpansion, TruncationTooShort)
{
    EXPECT_THROW(ballexp::sinc_expansion(3, 3), ballexp::truncation_too_short);
    EXPECT_THROW(ballexp::sinc_expansion(3, 1), ballexp::truncation_too_short);
}

TEST(SincExpansion, RuntimeOrderSeven)
{
    const auto start = std::chrono::steady_clock::now();
    (void)ballexp::sinc_expansion(7, 8);
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(secs, 10.0);
}

TEST(SincExpansion, LeadingTermsInUnits)
{
    ballexp::ScopedDigits guard(40);
    const Real unit = sqrt(3 * ballexp::pi() / 2);
    const auto e = ballexp::sinc_expansion(1);
    EXPECT_LT(abs(ballexp::to_real(e.coeffs[0]) * unit - Real("2.170803763674803")), Real("1e-15"));
    EXPECT_LT(abs(ballexp::to_real(e.coeffs[1]) * unit + Real("0.3256205645512205")), Real("1e-15"));
}

TEST(SincTailBound, Values)
{
    EXPECT_NEAR(static_cast<double>(ballexp::sinc_tail_bound(2).bound), 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(static_cast<double>(ballexp::sinc_tail_bound(10).bound), std::sqrt(60.0) / 7776.0 / 9.0, 1e-18);
    EXPECT_NEAR(static_cast<double>(ballexp::sinc_tail_bound(10).bound), 1.1068e-4, 1e-8);
    EXPECT_LT(ballexp::sinc_tail_bound(50).bound, Real("1e-18"));
    EXPECT_THROW(ballexp::sinc_tail_bound(1), std::domain_error);
}

TEST(SincTailBound, StrictlyDecreasing)
{
    Real prev = ballexp::sinc_tail_bound(2).bound;
    for (int n = 3; n <= 80; ++n) {
        const Real b = ballexp::sinc_tail_bound(n).bound;
        ASSERT_GT(b, 0);
        ASSERT_LT(b, prev) << "n=" << n;
        prev = b;
    }
}

TEST(AppendixTable, ListedEntries)
{
    const InvNSeries t = ballexp::appendix_table();
    ASSERT_EQ(t.order(), 7);
    EXPECT_EQ(t.row(1), EvenPoly::monomial(4, Rat(-1, 180)));
    EXPECT_EQ(t.coeff(3, 12), Rat(-1, 34992000));
    EXPECT_EQ(t.coeff(5, 12), Rat(-691, 3831077250LL));
    EXPECT_EQ(t.row(7).degree(), 28);
}

TEST(AppendixTable, LowRowsIndependentOfK)
{
    const InvNSeries t = ballexp::appendix_table();
    for (int k : {8, 10, 14}) {
        const InvNSeries full = ballexp::appendix_polynomial(k);
        ASSERT_EQ(full.order(), 13);
        for (int i = 0; i <= 7; ++i) {
            EXPECT_EQ(full.row(i), t.row(i)) << "k=" << k << " row " << i;
        }
    }
}

TEST(AppendixFixture, MatchesEngineModuloErrata)
{
    const auto fixture = load_fixture();
    const InvNSeries low = ballexp::appendix_table();
    const InvNSeries full = ballexp::appendix_polynomial(14);
    std::set<std::pair<int, int>> seen;
    int errata_hit = 0;
    for (const auto &entry : fixture) {
        seen.emplace(entry.row, entry.exponent);
        const Rat engine = entry.row <= 7 ? low.coeff(entry.row, entry.exponent) : full.coeff(entry.row, entry.exponent);
        if (const auto *e = find_erratum(entry.row, entry.exponent)) {
            EXPECT_EQ(e->printed, entry.value);
            EXPECT_NE(engine, entry.value) << e->id;
            ++errata_hit;
        } else {
            EXPECT_EQ(engine, entry.value) << "row " << entry.row << " t^" << entry.exponent;
        }
    }
    EXPECT_EQ(errata_hit, static_cast<int>(ballexp::appendix_errata().size()));
    // every engine monomial of the degree-28 polynomial is transcribed
    for (int i = 0; i <= full.order(); ++i) {
        for (const auto &[e, c] : full.row(i).terms()) {
            EXPECT_TRUE(seen.count({i, e}) == 1) << "missing row " << i << " t^" << e;
        }
    }
    EXPECT_EQ(seen.size(), fixture.size());
}

TEST(AppendixFixture, TruncatedTkDiffersAboveOrderSeven)
{
    // Rows past the m = 7 cut depend on how many sinc terms are kept.
    const InvNSeries k8 = ballexp::appendix_polynomial(8);
    const InvNSeries k14 = ballexp::appendix_polynomial(14);
    EXPECT_NE(k8.row(13), k14.row(13));
    EXPECT_EQ(k14.coeff(13, 28), Rat::parse("-3392780147/3952575621190533915703125"));
}

TEST(AppendixFixture, ParserRejectsMalformed)
{
    EXPECT_NO_THROW(ballexp::parse_fixture("# comment\n\n1 4 -1/180\n"));
    EXPECT_EQ(ballexp::parse_fixture("1 4 -1/180 # trailing\n").size(), 1U);
    EXPECT_THROW(ballexp::parse_fixture("1 4 -1/0\n"), ballexp::invalid_operand);
    EXPECT_THROW(ballexp::parse_fixture("1 4 -1/18x0\n"), ballexp::invalid_operand);
    EXPECT_THROW(ballexp::parse_fixture("1 4\n"), ballexp::invalid_operand);
    EXPECT_THROW(ballexp::parse_fixture("1 5 1/2\n"), ballexp::invalid_operand);
    EXPECT_THROW(ballexp::parse_fixture("1 4 1/2 7\n"), ballexp::invalid_operand);
    EXPECT_THROW(ballexp::parse_fixture("x 4 1/2\n"), ballexp::invalid_operand);
    EXPECT_THROW(ballexp::parse_fixture("1.5 4 1/2\n"), ballexp::invalid_operand);
}

TEST(Bracketing, Examples)
{
    ballexp::ScopedDigits guard(40);
    const auto r = ballexp::bracketing_check(1, {Real(1)});
    ASSERT_TRUE(r.all_ok());
    EXPECT_EQ(ballexp::sinc_partial_sum(1).evaluate(Rat(1)), Rat(5, 6));
    EXPECT_EQ(ballexp::sinc_partial_sum(2).evaluate(Rat(1)), Rat(101, 120));
    EXPECT_NEAR(static_cast<double>(r.samples[0].sinc), std::sin(1.0), 1e-15);

    const auto near0 = ballexp::bracketing_check(1, {Real("1e-20")});
    EXPECT_LT(abs(near0.samples[0].lower - 1), Real("1e-30"));
    EXPECT_LT(abs(near0.samples[0].upper - 1), Real("1e-30"));
    EXPECT_TRUE(near0.all_ok());

    EXPECT_TRUE(ballexp::bracketing_check(3, {Real(2)}).all_ok());
}

TEST(Bracketing, DenseGrid)
{
    ballexp::ScopedDigits guard(40);
    std::vector<Real> samples;
    for (int i = 1; i < 245; ++i) {
        samples.emplace_back(Real(i) / 100);
    }
    for (int k : {1, 3, 5, 7}) {
        EXPECT_TRUE(ballexp::bracketing_check(k, samples).all_ok()) << "k=" << k;
    }
}

TEST(Bracketing, DomainErrors)
{
    EXPECT_THROW(ballexp::bracketing_check(1, {Real(0)}), std::domain_error);
    EXPECT_THROW(ballexp::bracketing_check(1, {Real(3)}), std::domain_error);
    EXPECT_THROW(ballexp::bracketing_check(2, {Real(1)}), std::invalid_argument);
}

TEST(Remainder, BoundedByConstantTimesT30OverN15)
{
    const InvNSeries poly = ballexp::appendix_polynomial(8);
    std::vector<std::pair<Real, int>> samples;
    {
        ballexp::ScopedDigits guard(80);
        for (int n : {10, 100}) {
            const Real top = sqrt(Real(6 * n));
            for (int i = 1; i <= 40; ++i) {
                samples.emplace_back(top * i / 40, n);
            }
        }
    }
    const Real c = ballexp::remainder_constant(poly, 28, 8, samples);
    EXPECT_GT(c, 0);
    EXPECT_LT(c, 10);
}
