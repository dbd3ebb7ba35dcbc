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

#ifndef BALLEXP_BESSEL_EXPANSION_HPP
#define BALLEXP_BESSEL_EXPANSION_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <ballexp/even_poly.hpp>
#include <ballexp/inv_n_series.hpp>
#include <ballexp/rational.hpp>
#include <ballexp/real.hpp>
#include <ballexp/sinc_expansion.hpp>

namespace ballexp
{

/// Bessel order, rational and at least 1/2.
class Nu
{
public:
    explicit Nu(const Rat &value) : m_value(value)
    {
        if (value < Rat(1, 2)) {
            throw std::domain_error("nu must be >= 1/2, got " + value.str());
        }
    }
    static Nu parse(std::string_view text)
    {
        return Nu(Rat::parse(text));
    }

    [[nodiscard]] const Rat &value() const noexcept
    {
        return m_value;
    }
    [[nodiscard]] bool is_integer() const
    {
        return m_value.is_integer();
    }
    [[nodiscard]] bool is_half_integer() const
    {
        return !m_value.is_integer() && (m_value * Rat(2)).is_integer();
    }
    [[nodiscard]] long long as_integer() const
    {
        if (!is_integer()) {
            throw std::domain_error("nu = " + m_value.str() + " is not an integer");
        }
        return m_value.num().convert_to<long long>();
    }

    friend bool operator==(const Nu &, const Nu &) = default;

private:
    Rat m_value;
};

/// Gamma(x) for rational x > 0 at the current working precision. Integers and
/// half-integers go through the exact recurrences from Gamma(1) and
/// Gamma(1/2) = sqrt(pi).
inline Real gamma_of(const Rat &x)
{
    if (x.sign() <= 0) {
        throw std::domain_error("gamma_of: argument must be positive");
    }
    if (x.is_integer()) {
        return Real(factorial(x.num().convert_to<unsigned>() - 1));
    }
    const Rat twice = x * Rat(2);
    if (twice.is_integer()) {
        // Gamma(m + 1/2) = sqrt(pi) (2m-1)!! / 2^m
        const int m = (twice.num().convert_to<int>() - 1) / 2;
        return sqrt(pi()) * to_real(double_factorial(m)) / pow(Real(2), m);
    }
    return tgamma(to_real(x));
}

/// Degree-2k Maclaurin partial sum of the normalized Bessel function
/// 2^nu Gamma(nu+1) J_nu(t) / t^nu.
inline EvenPoly bessel_partial_sum(const Nu &nu, int k)
{
    if (k < 0) {
        throw std::invalid_argument("bessel_partial_sum: k must be >= 0");
    }
    EvenPoly p;
    const Rat quarter(-1, 4);
    for (int j = 0; j <= k; ++j) {
        const Rat c = pow(quarter, static_cast<unsigned>(j))
                      / (Rat(factorial(static_cast<unsigned>(j))) * rising_factorial(nu.value() + Rat(1), j));
        p.set(2 * j, c);
    }
    return p;
}

/// Coefficient of w^j, w = t^2/(4n), in exp(w/(nu+1)) T_k(t/sqrt n).
inline Rat bessel_aj(const Nu &nu, int j, int k)
{
    if (j < 0 || k < 1) {
        throw std::invalid_argument("bessel_aj: need j >= 0 and k >= 1");
    }
    const Rat nu1 = nu.value() + Rat(1);
    Rat sum(0);
    for (int i = 0; i <= std::min(j, k); ++i) {
        const Rat den = Rat(factorial(static_cast<unsigned>(i))) * rising_factorial(nu1, i)
                        * pow(nu1, static_cast<unsigned>(j - i)) * Rat(factorial(static_cast<unsigned>(j - i)));
        sum += Rat(i % 2 == 0 ? 1 : -1) / den;
    }
    return sum;
}

/// M_j / M_0 for M_j = int_0^inf exp(-t^2/(4(nu+1))) t^{2j} t^{2nu-1} dt,
/// i.e. (4(nu+1))^j nu(nu+1)...(nu+j-1).
inline Rat bessel_moment_ratio(const Nu &nu, int j)
{
    if (j < 0) {
        throw std::invalid_argument("bessel_moment_ratio: j must be >= 0");
    }
    return pow(Rat(4) * (nu.value() + Rat(1)), static_cast<unsigned>(j)) * rising_factorial(nu.value(), j);
}

/// Leading constant c_0 = 4^nu/2 (nu+1)^nu Gamma(nu), split into its factors.
struct C0Descriptor {
    std::string four_pow_nu_over_2; // "4^(nu)/2"
    std::string nu1_pow_nu;         // "(nu+1)^(nu)"
    std::string gamma_nu;           // "Gamma(nu)"
    std::optional<Rat> exact;       // set when nu is a positive integer
    std::string decimal;
};

/// Expansion I_nu(n) = c_0 sum_j gamma_j / n^j + O(n^{-m-1}), gamma_j = c_j / c_0.
struct BesselExpansion {
    Nu nu;
    int m = 0;
    int k = 1;
    std::vector<Rat> gamma;
    C0Descriptor c0;
};

inline std::optional<Rat> c0_exact(const Nu &nu)
{
    if (!nu.is_integer()) {
        return std::nullopt;
    }
    const auto v = static_cast<unsigned>(nu.as_integer());
    return pow(Rat(4), v) / Rat(2) * pow(Rat(v + 1), v) * Rat(factorial(v - 1));
}

/// c_0 at `digits` significant digits (computed with guard digits).
inline Real c0_value(const Nu &nu, unsigned digits)
{
    if (digits < 1) {
        throw std::invalid_argument("c0_value: digits must be >= 1");
    }
    ScopedDigits guard(digits + 10);
    if (auto exact = c0_exact(nu)) {
        return to_real(*exact);
    }
    const Real v = to_real(nu.value());
    return pow(Real(4), v) / 2 * pow(v + 1, v) * gamma_of(nu.value());
}

inline C0Descriptor describe_c0(const Nu &nu, unsigned digits)
{
    const std::string s = nu.value().str();
    C0Descriptor d{"4^(" + s + ")/2", "(" + (nu.value() + Rat(1)).str() + ")^(" + s + ")", "Gamma(" + s + ")", c0_exact(nu), {}};
    d.decimal = to_decimal(c0_value(nu, digits), digits);
    return d;
}

/// Exact gamma_0..gamma_m from the truncation T_k, k >= m+1 (k = 0 selects m+1).
inline BesselExpansion bessel_expansion(const Nu &nu, int m, int k = 0, unsigned digits = 30)
{
    if (m < 0) {
        throw std::invalid_argument("bessel_expansion: m must be >= 0");
    }
    if (k == 0) {
        k = m + 1;
    }
    if (k <= m) {
        throw truncation_too_short("truncation too short: need k >= m+1 (m = " + std::to_string(m)
                                   + ", k = " + std::to_string(k) + ")");
    }
    std::map<int, Rat> a;
    for (int j = 2; j <= 2 * m; ++j) {
        a.emplace(j, bessel_aj(nu, j, k));
    }
    // EvenPoly variable s with s^2 = t^2/4, so s^{2J} carries (t^2/4)^J.
    const InvNSeries series = binomial_power(a, m);
    std::vector<Rat> gamma;
    gamma.reserve(static_cast<std::size_t>(m + 1));
    for (const auto &row : series.rows()) {
        Rat g(0);
        for (const auto &[e, c] : row.terms()) {
            const int j = e / 2;
            g += c * bessel_moment_ratio(nu, j) / pow(Rat(4), static_cast<unsigned>(j));
        }
        gamma.push_back(g);
    }
    return BesselExpansion{nu, m, k, std::move(gamma), describe_c0(nu, digits)};
}

/// I_nu(2) = 2^{3nu-1} nu! (nu-1)! for positive integer nu, together with the
/// comparison against c_0.
struct INuAt2 {
    Rat value;
    Rat c0;
    bool below_c0 = false;
};

inline INuAt2 i_nu_at_2(const Nu &nu)
{
    if (!nu.is_integer()) {
        throw std::domain_error("i_nu_at_2: only positive integer nu is supported");
    }
    const auto v = static_cast<unsigned>(nu.as_integer());
    const Rat value = pow(Rat(2), 3 * v - 1) * Rat(factorial(v)) * Rat(factorial(v - 1));
    const Rat c0 = *c0_exact(nu);
    return INuAt2{value, c0, value < c0};
}

// ---------------------------------------------------------------------------
// Tail bound from |J_nu(t)| <= c t^{-1/3}.

/// Landau's constant, last printed digit rounded up so the bound stays an
/// upper bound.
inline Real landau_constant()
{
    return Real("0.7857468705");
}

struct TailBoundBessel {
    Nu nu;
    int n = 2;
    Real cutoff;
    Real bound;
};

/// Smallest admissible cutoff 2^nu Gamma(nu+1).
inline Real bessel_min_cutoff(const Nu &nu)
{
    return pow(Real(2), to_real(nu.value())) * gamma_of(nu.value() + Rat(1));
}

/// n^nu (2^nu Gamma(nu+1) c)^n X^{-(nu+1/3)n+2nu} / ((nu+1/3)n - 2nu), evaluated
/// at the current working precision.
inline TailBoundBessel bessel_tail_bound(const Nu &nu, int n, const Real &cutoff)
{
    const Rat decay = (nu.value() + Rat(1, 3)) * Rat(n) - Rat(2) * nu.value();
    if (n < 2 || decay.sign() <= 0) {
        throw std::domain_error("bessel_tail_bound: need n >= 2 and (nu+1/3)n > 2nu");
    }
    const Real x0 = bessel_min_cutoff(nu);
    // Small slack so a cutoff computed as mult * x0 with mult = 1 is accepted.
    if (cutoff < x0 * (1 - Real("1e-30"))) {
        throw std::domain_error("bessel_tail_bound: cutoff below 2^nu Gamma(nu+1)");
    }
    const Real v = to_real(nu.value());
    const Real p = to_real(decay);
    const Real log_bound = v * log(Real(n)) + n * log(x0 * landau_constant()) - p * log(cutoff) - log(p);
    return TailBoundBessel{nu, n, cutoff, exp(log_bound)};
}

} // namespace ballexp

#endif
