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

#ifndef BALLEXP_REAL_HPP
#define BALLEXP_REAL_HPP

#include <cmath>
#include <ios>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include <ballexp/rational.hpp>

namespace ballexp
{

/// Variable-precision binary floating point used by every numerical path.
using Real = boost::multiprecision::mpfr_float;

/// Sets the default working precision (decimal digits) for newly created
/// Real values on this thread, restoring the previous value on exit.
class ScopedDigits
{
public:
    explicit ScopedDigits(unsigned digits) : m_saved(Real::default_precision())
    {
        Real::default_precision(digits);
    }
    ~ScopedDigits()
    {
        Real::default_precision(m_saved);
    }
    ScopedDigits(const ScopedDigits &) = delete;
    ScopedDigits &operator=(const ScopedDigits &) = delete;

private:
    unsigned m_saved;
};

inline Real to_real(const Rat &r)
{
    Real num(r.num());
    Real den(r.den());
    return num / den;
}

inline Real pi()
{
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

/// Decimal rendering with `digits` significant digits, scientific notation
/// only when the magnitude leaves the [1e-5, 1e15) window.
inline std::string to_decimal(const Real &x, unsigned digits)
{
    if (x == 0) {
        return "0";
    }
    const Real ax = abs(x);
    const bool sci = ax < Real("1e-5") || ax >= Real("1e15");
    if (sci) {
        return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
    }
    // Fixed notation: digits after the point = significant digits minus the
    // integer-part width.
    const long exp10 = static_cast<long>(std::floor(static_cast<double>(log10(ax))));
    const long decimals = static_cast<long>(digits) - 1 - exp10;
    return x.str(static_cast<std::streamsize>(decimals < 0 ? 0 : decimals), std::ios_base::fixed);
}

inline std::string to_decimal(const Rat &r, unsigned digits)
{
    ScopedDigits guard(digits + 10);
    return to_decimal(to_real(r), digits);
}

} // namespace ballexp

#endif
