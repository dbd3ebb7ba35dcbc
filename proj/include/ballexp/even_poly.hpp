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

#ifndef BALLEXP_EVEN_POLY_HPP
#define BALLEXP_EVEN_POLY_HPP

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include <ballexp/rational.hpp>
#include <ballexp/real.hpp>

namespace ballexp
{

/// Polynomial in t containing only even powers, with exact coefficients.
///
/// Storage is sparse and canonical: a map from the exponent 2j to a nonzero
/// coefficient. Absent exponents are zero, so two polynomials are equal iff
/// their maps are equal.
class EvenPoly
{
public:
    using map_type = std::map<int, Rat>;

    EvenPoly() = default;

    static EvenPoly constant(const Rat &c)
    {
        EvenPoly p;
        p.set(0, c);
        return p;
    }
    static EvenPoly monomial(int exponent, const Rat &c)
    {
        EvenPoly p;
        p.set(exponent, c);
        return p;
    }

    /// Coefficient of t^exponent (zero when absent or odd).
    [[nodiscard]] Rat coeff(int exponent) const
    {
        const auto it = m_terms.find(exponent);
        return it == m_terms.end() ? Rat(0) : it->second;
    }

    void set(int exponent, const Rat &c)
    {
        check_exponent(exponent);
        if (c.is_zero()) {
            m_terms.erase(exponent);
        } else {
            m_terms[exponent] = c;
        }
    }

    void add_to(int exponent, const Rat &c)
    {
        check_exponent(exponent);
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(exponent, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                m_terms.erase(it);
            }
        }
    }

    [[nodiscard]] const map_type &terms() const noexcept
    {
        return m_terms;
    }
    [[nodiscard]] bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    /// Highest exponent present; 0 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept
    {
        return m_terms.empty() ? 0 : m_terms.rbegin()->first;
    }

    /// Drops every term with exponent above max_degree.
    [[nodiscard]] EvenPoly truncated(int max_degree) const
    {
        EvenPoly r;
        for (const auto &[e, c] : m_terms) {
            if (e > max_degree) {
                break;
            }
            r.m_terms.emplace(e, c);
        }
        return r;
    }

    EvenPoly &operator+=(const EvenPoly &o)
    {
        for (const auto &[e, c] : o.m_terms) {
            add_to(e, c);
        }
        return *this;
    }
    EvenPoly &operator*=(const Rat &s)
    {
        if (s.is_zero()) {
            m_terms.clear();
            return *this;
        }
        for (auto &kv : m_terms) {
            kv.second *= s;
        }
        return *this;
    }
    friend EvenPoly operator+(EvenPoly a, const EvenPoly &b)
    {
        return a += b;
    }
    friend EvenPoly operator*(EvenPoly a, const Rat &s)
    {
        return a *= s;
    }

    [[nodiscard]] Rat evaluate(const Rat &t) const
    {
        const Rat t2 = t * t;
        Rat acc(0);
        int prev = degree();
        // Horner over the sparse exponents, highest first.
        for (auto it = m_terms.rbegin(); it != m_terms.rend(); ++it) {
            acc *= pow(t2, static_cast<unsigned>((prev - it->first) / 2));
            acc += it->second;
            prev = it->first;
        }
        return acc * pow(t2, static_cast<unsigned>(prev / 2));
    }

    [[nodiscard]] Real evaluate(const Real &t) const
    {
        const Real t2 = t * t;
        Real acc = 0;
        int prev = degree();
        for (auto it = m_terms.rbegin(); it != m_terms.rend(); ++it) {
            acc *= pow(t2, (prev - it->first) / 2);
            acc += to_real(it->second);
            prev = it->first;
        }
        return acc * pow(t2, prev / 2);
    }

    friend bool operator==(const EvenPoly &, const EvenPoly &) = default;

    friend std::ostream &operator<<(std::ostream &os, const EvenPoly &p)
    {
        if (p.is_zero()) {
            return os << "0";
        }
        bool first = true;
        for (const auto &[e, c] : p.m_terms) {
            if (!first) {
                os << " + ";
            }
            first = false;
            os << '(' << c << ')';
            if (e != 0) {
                os << "*t^" << e;
            }
        }
        return os;
    }

private:
    static void check_exponent(int exponent)
    {
        if (exponent < 0 || exponent % 2 != 0) {
            throw invalid_operand("EvenPoly exponent must be even and nonnegative, got " + std::to_string(exponent));
        }
    }

    map_type m_terms;
};

/// Product p*q with every exponent above max_degree discarded.
inline EvenPoly mul_trunc(const EvenPoly &p, const EvenPoly &q, int max_degree)
{
    if (max_degree < 0) {
        throw invalid_operand("mul_trunc: negative max_degree");
    }
    EvenPoly r;
    for (const auto &[ep, cp] : p.terms()) {
        if (ep > max_degree) {
            break;
        }
        for (const auto &[eq, cq] : q.terms()) {
            if (ep + eq > max_degree) {
                break;
            }
            r.add_to(ep + eq, cp * cq);
        }
    }
    return r;
}

} // namespace ballexp

#endif
