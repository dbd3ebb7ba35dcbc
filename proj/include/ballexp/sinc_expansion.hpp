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

#ifndef BALLEXP_SINC_EXPANSION_HPP
#define BALLEXP_SINC_EXPANSION_HPP

#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <ballexp/even_poly.hpp>
#include <ballexp/inv_n_series.hpp>
#include <ballexp/rational.hpp>
#include <ballexp/real.hpp>

namespace ballexp
{

/// Raised when the Maclaurin truncation index cannot bracket the requested order.
class truncation_too_short : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Degree-2k Maclaurin partial sum of sin(t)/t.
inline EvenPoly sinc_partial_sum(int k)
{
    if (k < 0) {
        throw std::invalid_argument("sinc_partial_sum: k must be >= 0");
    }
    EvenPoly p;
    for (int j = 0; j <= k; ++j) {
        const Rat c(BigInt(j % 2 == 0 ? 1 : -1), factorial(static_cast<unsigned>(2 * j + 1)));
        p.set(2 * j, c);
    }
    return p;
}

/// Coefficient of t^{2j} in exp(t^2/6) * T_k(t), i.e. of t^{2j}/n^j in
/// exp(t^2/(6n)) T_k(t/sqrt(n)).
inline Rat sinc_aj(int j, int k)
{
    if (j < 0 || k < 1) {
        throw std::invalid_argument("sinc_aj: need j >= 0 and k >= 1");
    }
    Rat sum(0);
    // i indexes the exponential series, j - i the sinc partial sum.
    for (int i = std::max(0, j - k); i <= j; ++i) {
        const int s = j - i;
        const BigInt exp_den = factorial(static_cast<unsigned>(i)) * boost::multiprecision::pow(BigInt(6), static_cast<unsigned>(i));
        const BigInt sinc_den = factorial(static_cast<unsigned>(2 * s + 1));
        sum += Rat(BigInt(s % 2 == 0 ? 1 : -1), exp_den * sinc_den);
    }
    return sum;
}

inline std::map<int, Rat> sinc_a_coefficients(int max_j, int k)
{
    std::map<int, Rat> a;
    for (int j = 2; j <= max_j; ++j) {
        a.emplace(j, sinc_aj(j, k));
    }
    return a;
}

/// int_0^inf e^{-t^2/6} t^{2j} dt in units of the j = 0 integral: 3^j (2j-1)!!.
inline Rat sinc_moment_ratio(int j)
{
    return pow(Rat(3), static_cast<unsigned>(j)) * double_factorial(j);
}

/// Coefficients c_0..c_m of I(n) = sqrt(3 pi / 2) sum_j c_j / n^j + O(n^{-m-1}).
struct SincExpansion {
    static constexpr std::string_view unit = "sqrt(3*pi/2)";

    int m = 0;
    int k = 1;
    std::vector<Rat> coeffs;
};

/// Integrates each row of an InvNSeries against exp(-t^2/6) over [0, inf),
/// in units of sqrt(3 pi / 2).
inline std::vector<Rat> sinc_gaussian_moments(const InvNSeries &series)
{
    std::vector<Rat> out;
    out.reserve(series.rows().size());
    for (const auto &row : series.rows()) {
        Rat c(0);
        for (const auto &[e, coeff] : row.terms()) {
            c += coeff * sinc_moment_ratio(e / 2);
        }
        out.push_back(c);
    }
    return out;
}

/// Exact expansion coefficients of order m from the truncation T_k, k >= m+1.
/// k = 0 selects the default k = m + 1.
inline SincExpansion sinc_expansion(int m, int k = 0)
{
    if (m < 0) {
        throw std::invalid_argument("sinc_expansion: m must be >= 0");
    }
    if (k == 0) {
        k = m + 1;
    }
    if (k <= m) {
        throw truncation_too_short("truncation too short: need k >= m+1 (m = " + std::to_string(m)
                                   + ", k = " + std::to_string(k) + ")");
    }
    const InvNSeries series = binomial_power(sinc_a_coefficients(2 * m, k), m);
    return SincExpansion{m, k, sinc_gaussian_moments(series)};
}

/// Bound on sqrt(n) int_A^inf |sin t / t|^n dt from |sin t| <= 1:
/// sqrt(n) A^{1-n} / (n-1).
inline Real sinc_tail_bound_at(int n, const Real &cutoff)
{
    if (n < 2) {
        throw std::domain_error("sinc tail bound needs n >= 2");
    }
    return sqrt(Real(n)) * pow(cutoff, 1 - n) / Real(n - 1);
}

struct TailBoundSinc {
    int n = 2;
    Real bound;
};

/// The bound at cutoff sqrt(6): sqrt(6n) 6^{-n/2} / (n-1).
inline TailBoundSinc sinc_tail_bound(int n, unsigned digits = 30)
{
    if (n < 2) {
        throw std::domain_error("sinc_tail_bound: n must be >= 2");
    }
    ScopedDigits guard(digits + 10);
    return TailBoundSinc{n, sinc_tail_bound_at(n, sqrt(Real(6)))};
}

/// The m = 7 collected expansion built from T_8.
inline InvNSeries appendix_table()
{
    return binomial_power(sinc_a_coefficients(14, 8), 7);
}

/// The full degree-28 polynomial in t with every 1/n power that occurs,
/// built from T_k. Rows up to 7 do not depend on k >= 8; higher rows settle
/// once k >= 14.
inline InvNSeries appendix_polynomial(int k = 14)
{
    return binomial_power_to_degree(sinc_a_coefficients(14, k), 28);
}

// ---------------------------------------------------------------------------
// Bracketing T_k <= sinc <= T_{k+1} on (0, sqrt 6) for odd k.

struct BracketSample {
    Real t;
    Real lower;
    Real sinc;
    Real upper;
    bool ok = false;
};

struct BracketReport {
    int k = 1;
    std::vector<BracketSample> samples;

    [[nodiscard]] bool all_ok() const
    {
        for (const auto &s : samples) {
            if (!s.ok) {
                return false;
            }
        }
        return true;
    }
};

/// Checks 0 <= T_k(t) <= sin(t)/t <= T_{k+1}(t) at each sample. The working
/// precision per sample is raised until it resolves the gap, which shrinks
/// like t^{2k+2} / (2k+3)! near 0.
inline BracketReport bracketing_check(int k, const std::vector<Real> &samples, unsigned digits = 40)
{
    if (k < 1 || k % 2 == 0) {
        throw std::invalid_argument("bracketing_check: k must be odd and >= 1");
    }
    const EvenPoly lower = sinc_partial_sum(k);
    const EvenPoly upper = sinc_partial_sum(k + 1);
    const double log10_fact = std::lgamma(2.0 * k + 4.0) / std::log(10.0);
    BracketReport report{k, {}};
    for (const Real &t_in : samples) {
        const double td = static_cast<double>(t_in);
        if (!(t_in > 0 && td * td < 6.0 && t_in * t_in < 6)) {
            throw std::domain_error("bracketing_check: sample " + t_in.str(10) + " outside (0, sqrt 6)");
        }
        const double small = std::max(0.0, -std::log10(td));
        ScopedDigits guard(digits + static_cast<unsigned>(std::ceil((2.0 * k + 2.0) * small + log10_fact)) + 5);
        Real t = t_in;
        t.precision(Real::default_precision());
        BracketSample s{t, lower.evaluate(t), sin(t) / t, upper.evaluate(t), false};
        s.ok = s.lower >= 0 && s.lower <= s.sinc && s.sinc <= s.upper;
        report.samples.push_back(std::move(s));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Appendix fixture: one "row exponent rational" triple per line, '#' starts
// a comment.

struct FixtureEntry {
    int row = 0;
    int exponent = 0;
    Rat value;
};

inline std::vector<FixtureEntry> parse_fixture(std::istream &in)
{
    std::vector<FixtureEntry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string row_s;
        std::string exp_s;
        std::string val_s;
        std::string extra;
        if (!(fields >> row_s)) {
            continue;
        }
        auto fail = [&](const std::string &why) {
            return invalid_operand("fixture line " + std::to_string(lineno) + ": " + why);
        };
        if (!(fields >> exp_s >> val_s) || (fields >> extra)) {
            throw fail("expected three fields");
        }
        FixtureEntry e;
        try {
            std::size_t used = 0;
            e.row = std::stoi(row_s, &used);
            if (used != row_s.size()) {
                throw fail("bad row index");
            }
            e.exponent = std::stoi(exp_s, &used);
            if (used != exp_s.size()) {
                throw fail("bad exponent");
            }
        } catch (const std::logic_error &) {
            throw fail("bad integer field");
        }
        if (e.row < 0 || e.exponent < 0 || e.exponent % 2 != 0) {
            throw fail("row must be >= 0 and exponent even");
        }
        e.value = Rat::parse(val_s);
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<FixtureEntry> parse_fixture(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_fixture(in);
}

// ---------------------------------------------------------------------------
// Printed values known to disagree with the exact engine.

struct Erratum {
    std::string id;
    int row = 0;      // 1/n power, or the index j for a constant c_j
    int exponent = -1; // t exponent for appendix monomials, -1 for c_j
    Rat printed;
    std::string note;
};

inline const std::vector<Erratum> &appendix_errata()
{
    static const std::vector<Erratum> ledger{
        {"appendix:n^-8:t^26", 8, 26, Rat::parse("-7241/155918667199680000000"),
         "denominator carries an extra factor 10"},
        {"appendix:n^-11:t^28", 11, 28, Rat::parse("-570787478291/4095982412843923600200000000"),
         "denominator carries an extra factor 10"},
    };
    return ledger;
}

inline const std::vector<Erratum> &constant_errata()
{
    static const std::vector<Erratum> ledger{
        {"c5", 5, -1, Rat::parse("-5270328789/136478720000"), "printed value duplicates c7"},
    };
    return ledger;
}

/// Published constants c_j that are expected to match the engine exactly.
inline const std::map<int, Rat> &published_constants()
{
    static const std::map<int, Rat> values{
        {0, Rat(1)},
        {1, Rat::parse("-3/20")},
        {2, Rat::parse("-13/1120")},
        {3, Rat::parse("27/3200")},
        {4, Rat::parse("52791/3942400")},
        {6, Rat::parse("-124996631/10035200000")},
        {7, Rat::parse("-5270328789/136478720000")},
    };
    return values;
}

// ---------------------------------------------------------------------------
// Remainder of the degree-28 truncation.

/// Largest observed |[e^{t^2/6n} T_k(t/sqrt n)]^n - P(t, n)| / (t^{D+2} / n^{D/2+1})
/// over the given (t, n) samples, where P is `poly` of t-degree D. Samples with
/// t = 0 are skipped.
inline Real remainder_constant(const InvNSeries &poly, int degree, int k, const std::vector<std::pair<Real, int>> &samples,
                               unsigned digits = 80)
{
    ScopedDigits guard(digits);
    const EvenPoly tk = sinc_partial_sum(k);
    Real worst = 0;
    for (const auto &[t, n] : samples) {
        if (t == 0) {
            continue;
        }
        const Real nn(n);
        const Real s = t / sqrt(nn);
        const Real exact = pow(exp(t * t / (6 * nn)) * tk.evaluate(s), n);
        const Real approx = poly.evaluate(t, nn);
        const Real scale = pow(t, degree + 2) / pow(nn, degree / 2 + 1);
        const Real ratio = abs(exact - approx) / scale;
        if (ratio > worst) {
            worst = ratio;
        }
    }
    return worst;
}

} // namespace ballexp

#endif
