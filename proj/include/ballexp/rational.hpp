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

#ifndef BALLEXP_RATIONAL_HPP
#define BALLEXP_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/gmp.hpp>

namespace ballexp
{

/// Raised when an arithmetic operand is outside the operation's domain
/// (division by zero, malformed rational literal).
class invalid_operand : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

using BigInt = boost::multiprecision::mpz_int;

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator, so structural equality is value equality.
class Rat
{
public:
    using value_type = boost::multiprecision::mpq_rational;

    Rat() = default;
    Rat(long long n) : m_value(n) {} // NOLINT(google-explicit-constructor)
    Rat(const BigInt &n) : m_value(n) {} // NOLINT(google-explicit-constructor)
    Rat(const BigInt &num, const BigInt &den)
    {
        if (den == 0) {
            throw invalid_operand("rational with zero denominator");
        }
        m_value = value_type(num, den); // canonicalised by GMP
    }
    Rat(long long num, long long den) : Rat(BigInt(num), BigInt(den)) {}

    /// Parses "p", "-p" or "p/q" (q > 0, decimal digits only, no blanks).
    static Rat parse(std::string_view text)
    {
        auto digits_only = [](std::string_view s) {
            if (s.empty()) {
                return false;
            }
            for (char c : s) {
                if (c < '0' || c > '9') {
                    return false;
                }
            }
            return true;
        };
        std::string_view body = text;
        bool negative = false;
        if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
            negative = body.front() == '-';
            body.remove_prefix(1);
        }
        const auto slash = body.find('/');
        std::string_view num_part = body.substr(0, slash);
        std::string_view den_part = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
        if (!digits_only(num_part) || !digits_only(den_part)) {
            throw invalid_operand("malformed rational: '" + std::string(text) + "'");
        }
        BigInt num{std::string(num_part)};
        BigInt den{std::string(den_part)};
        if (den == 0) {
            throw invalid_operand("malformed rational (zero denominator): '" + std::string(text) + "'");
        }
        if (negative) {
            num = -num;
        }
        return Rat(num, den);
    }

    [[nodiscard]] const value_type &value() const noexcept
    {
        return m_value;
    }
    [[nodiscard]] BigInt num() const
    {
        return boost::multiprecision::numerator(m_value);
    }
    [[nodiscard]] BigInt den() const
    {
        return boost::multiprecision::denominator(m_value);
    }
    [[nodiscard]] bool is_zero() const
    {
        return m_value.is_zero();
    }
    [[nodiscard]] int sign() const
    {
        return m_value.sign();
    }
    [[nodiscard]] bool is_integer() const
    {
        return den() == 1;
    }

    /// Canonical "p/q" rendering; "/q" is omitted when q = 1.
    [[nodiscard]] std::string str() const
    {
        std::string out = num().str();
        if (!is_integer()) {
            out += '/';
            out += den().str();
        }
        return out;
    }

    Rat operator-() const
    {
        Rat r;
        r.m_value = -m_value;
        return r;
    }
    Rat &operator+=(const Rat &o)
    {
        m_value += o.m_value;
        return *this;
    }
    Rat &operator-=(const Rat &o)
    {
        m_value -= o.m_value;
        return *this;
    }
    Rat &operator*=(const Rat &o)
    {
        m_value *= o.m_value;
        return *this;
    }
    Rat &operator/=(const Rat &o)
    {
        if (o.is_zero()) {
            throw invalid_operand("rational division by zero");
        }
        m_value /= o.m_value;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat &b)
    {
        return a += b;
    }
    friend Rat operator-(Rat a, const Rat &b)
    {
        return a -= b;
    }
    friend Rat operator*(Rat a, const Rat &b)
    {
        return a *= b;
    }
    friend Rat operator/(Rat a, const Rat &b)
    {
        return a /= b;
    }

    friend bool operator==(const Rat &a, const Rat &b)
    {
        return a.m_value == b.m_value;
    }
    friend std::strong_ordering operator<=>(const Rat &a, const Rat &b)
    {
        if (a.m_value < b.m_value) {
            return std::strong_ordering::less;
        }
        return a.m_value == b.m_value ? std::strong_ordering::equal : std::strong_ordering::greater;
    }

    friend std::ostream &operator<<(std::ostream &os, const Rat &r)
    {
        return os << r.str();
    }

private:
    value_type m_value{0};
};

inline Rat pow(Rat base, unsigned exponent)
{
    Rat result(1);
    while (exponent != 0) {
        if ((exponent & 1U) != 0) {
            result *= base;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            base *= base;
        }
    }
    return result;
}

inline Rat abs(const Rat &r)
{
    return r.sign() < 0 ? -r : r;
}

inline BigInt factorial(unsigned n)
{
    BigInt f(1);
    for (unsigned i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

/// (2j-1)!! = (2j-1)(2j-3)...3*1, with (-1)!! = 1 for j = 0.
inline Rat double_factorial(int j)
{
    if (j < 0) {
        throw invalid_operand("double_factorial: negative index");
    }
    BigInt p(1);
    for (int f = 2 * j - 1; f > 1; f -= 2) {
        p *= f;
    }
    return Rat(p);
}

/// Rising factorial x(x+1)...(x+j-1); equals 1 for j = 0.
inline Rat rising_factorial(const Rat &x, int j)
{
    Rat p(1);
    for (int i = 0; i < j; ++i) {
        p *= x + Rat(i);
    }
    return p;
}

inline Rat binomial(int n, int k)
{
    if (k < 0 || k > n) {
        return Rat(0);
    }
    return Rat(factorial(static_cast<unsigned>(n)), factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(n - k)));
}

} // namespace ballexp

#endif
