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

#ifndef BALLEXP_INV_N_SERIES_HPP
#define BALLEXP_INV_N_SERIES_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <ballexp/even_poly.hpp>
#include <ballexp/rational.hpp>

namespace ballexp
{

/// Raised when a caller does not supply enough a_j coefficients for the
/// requested order.
class insufficient_input : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Truncated expansion sum_i rows[i](t) / n^i, with t-polynomial rows.
class InvNSeries
{
public:
    InvNSeries() = default;
    explicit InvNSeries(std::vector<EvenPoly> rows) : m_rows(std::move(rows)) {}

    /// Highest 1/n power kept; -1 for an empty series.
    [[nodiscard]] int order() const noexcept
    {
        return static_cast<int>(m_rows.size()) - 1;
    }
    [[nodiscard]] const EvenPoly &row(int i) const
    {
        return m_rows.at(static_cast<std::size_t>(i));
    }
    [[nodiscard]] const std::vector<EvenPoly> &rows() const noexcept
    {
        return m_rows;
    }

    /// Coefficient of t^exponent / n^i.
    [[nodiscard]] Rat coeff(int i, int exponent) const
    {
        if (i < 0 || i > order()) {
            return Rat(0);
        }
        return row(i).coeff(exponent);
    }

    /// Substitutes a concrete n, collapsing the rows into one polynomial in t.
    [[nodiscard]] EvenPoly at(const Rat &n) const
    {
        EvenPoly out;
        const Rat inv = Rat(1) / n;
        Rat scale(1);
        for (const auto &r : m_rows) {
            out += r * scale;
            scale *= inv;
        }
        return out;
    }

    [[nodiscard]] Real evaluate(const Real &t, const Real &n) const
    {
        Real acc = 0;
        for (auto it = m_rows.rbegin(); it != m_rows.rend(); ++it) {
            acc = acc / n + it->evaluate(t);
        }
        return acc;
    }

    friend bool operator==(const InvNSeries &, const InvNSeries &) = default;

private:
    std::vector<EvenPoly> m_rows;
};

/// Coefficients of the falling factorial n(n-1)...(n-l+1)/l! as a
/// polynomial in n; entry p multiplies n^p.
inline std::vector<Rat> binomial_in_n(int l)
{
    std::vector<Rat> poly{Rat(1)};
    for (int i = 0; i < l; ++i) {
        // multiply by (n - i) / (i + 1)
        std::vector<Rat> next(poly.size() + 1, Rat(0));
        const Rat inv(1, i + 1);
        for (std::size_t p = 0; p < poly.size(); ++p) {
            next[p + 1] += poly[p] * inv;
            next[p] -= poly[p] * Rat(i) * inv;
        }
        poly = std::move(next);
    }
    return poly;
}

namespace detail
{

inline InvNSeries binomial_power_impl(const std::map<int, Rat> &a, int max_row, int t_cap, int required)
{
    for (const auto &kv : a) {
        if (kv.first < 2) {
            throw std::invalid_argument("binomial_power: a_j is only defined for j >= 2");
        }
    }
    for (int j = 2; j <= required; ++j) {
        if (a.find(j) == a.end()) {
            throw insufficient_input("insufficient input coefficients: a_" + std::to_string(j) + " missing (need j <= "
                                     + std::to_string(required) + ")");
        }
    }

    // Inside [.]^l the power of 1/n equals half the t-exponent, so a single
    // EvenPoly in t carries it. binom(n, l) has n-powers 1..l, so t^{2J} from
    // [.]^l lands in rows J - l ... J - 1.
    EvenPoly base;
    for (const auto &[j, aj] : a) {
        if (2 * j <= t_cap) {
            base.set(2 * j, aj);
        }
    }

    std::vector<EvenPoly> out(static_cast<std::size_t>(max_row + 1));
    out[0] = EvenPoly::constant(Rat(1));

    EvenPoly power = EvenPoly::constant(Rat(1));
    for (int l = 1; 4 * l <= t_cap; ++l) {
        power = mul_trunc(power, base, t_cap);
        if (power.is_zero()) {
            break;
        }
        const auto falling = binomial_in_n(l);
        for (const auto &[e, c] : power.terms()) {
            for (int p = 1; p <= l; ++p) {
                const auto &f = falling[static_cast<std::size_t>(p)];
                const int row = e / 2 - p;
                if (!f.is_zero() && row >= 0 && row <= max_row) {
                    out[static_cast<std::size_t>(row)].add_to(e, c * f);
                }
            }
        }
    }
    return InvNSeries(std::move(out));
}

} // namespace detail

/// Collects [1 + sum_j a_j t^{2j} / n^j]^n by powers of 1/n via Newton's
/// binomial formula (term l contributes binom(n, l) [sum_j ...]^l), keeping
/// every monomial whose net power of 1/n is at most `order`.
///
/// `a` maps j -> a_j for j >= 2 and must contain every j in [2, 2*order].
/// Row i then has degree at most 4i in t.
inline InvNSeries binomial_power(const std::map<int, Rat> &a, int order)
{
    if (order < 0) {
        throw std::invalid_argument("binomial_power: negative order");
    }
    return detail::binomial_power_impl(a, order, 4 * order, 2 * order);
}

/// Same expansion, cut by degree in t instead of by order in 1/n: every
/// monomial t^e / n^i with e <= max_degree is kept, whatever i is. Requires
/// a_j for every j in [2, max_degree/2].
inline InvNSeries binomial_power_to_degree(const std::map<int, Rat> &a, int max_degree)
{
    if (max_degree < 0 || max_degree % 2 != 0) {
        throw std::invalid_argument("binomial_power_to_degree: max_degree must be even and nonnegative");
    }
    const int half = max_degree / 2;
    return detail::binomial_power_impl(a, std::max(0, half - 1), max_degree, half);
}

} // namespace ballexp

#endif
