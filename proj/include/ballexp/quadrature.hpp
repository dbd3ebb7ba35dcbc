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

#ifndef BALLEXP_QUADRATURE_HPP
#define BALLEXP_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <ballexp/bessel_expansion.hpp>
#include <ballexp/rational.hpp>
#include <ballexp/real.hpp>
#include <ballexp/sinc_expansion.hpp>

namespace ballexp
{

/// Quadrature could not reach the requested accuracy. Carries the best
/// estimate obtained before giving up.
class precision_failure : public std::runtime_error
{
public:
    precision_failure(const std::string &what, std::string best_estimate)
        : std::runtime_error(what), m_best(std::move(best_estimate))
    {
    }
    [[nodiscard]] const std::string &best_estimate() const noexcept
    {
        return m_best;
    }

private:
    std::string m_best;
};

class insufficient_data : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Precision {
    /// Requested decimal digits; the target absolute error defaults to 10^-digits.
    unsigned digits = 30;
    /// Overrides the target as 10^target_exponent when nonzero.
    int target_exponent = 0;
    unsigned guard = 10;

    [[nodiscard]] unsigned working_digits() const
    {
        validate();
        return digits + guard;
    }
    [[nodiscard]] int target_exp10() const
    {
        return target_exponent != 0 ? target_exponent : -static_cast<int>(digits);
    }
    /// Evaluated at the current working precision.
    [[nodiscard]] Real target_abs_err() const
    {
        return pow(Real(10), target_exp10());
    }
    void validate() const
    {
        if (digits < 15) {
            throw std::invalid_argument("precision: at least 15 digits required");
        }
        if (guard < 10) {
            throw std::invalid_argument("precision: at least 10 guard digits required");
        }
        if (-target_exp10() > static_cast<int>(digits)) {
            throw std::invalid_argument("precision: target finer than the requested digits");
        }
    }
};

struct QuadConfig {
    unsigned start_order = 16;
    unsigned max_doublings = 5;
    double t_max = 100.0;
    /// Lobes of the sinc integrand integrated one by one before the remaining
    /// tail is summed in closed form.
    int max_lobes = 32;
    double zero_grid_step = 0.25;
};

/// value approximates the integral; abs_err_bound covers the quadrature error
/// plus whatever part of the tail is not in value.
struct QuadEstimate {
    Real value;
    Real abs_err_bound;
    Real cutoff_used;
    int pieces = 0;
    /// Analytic tail bound beyond cutoff_used (included in abs_err_bound),
    /// zero when the tail was summed instead.
    Real tail_bound;
    /// Tail contribution summed into value (zero when only bounded).
    Real tail_added;
    unsigned working_digits = 0;
};

// ---------------------------------------------------------------------------
// Gauss-Legendre rules

struct GaussRule {
    /// Positive nodes on (0, 1) and matching weights; the rule is symmetric.
    std::vector<Real> nodes;
    std::vector<Real> weights;
};

namespace detail
{

inline GaussRule make_gauss_rule(unsigned order, unsigned digits)
{
    ScopedDigits guard(digits + 5);
    GaussRule rule;
    const Real eps = pow(Real(10), -static_cast<int>(digits) - 2);
    auto legendre = [order](const auto &x) {
        using T = std::decay_t<decltype(x)>;
        T p0 = 1;
        T p1 = x;
        for (unsigned k = 2; k <= order; ++k) {
            T p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = std::move(p1);
            p1 = std::move(p2);
        }
        T deriv = order * (x * p1 - p0) / (x * x - 1);
        return std::make_pair(p1, deriv);
    };
    const long double pi_ld = 3.141592653589793238462643383279502884L;
    for (unsigned i = 1; i <= order / 2; ++i) {
        long double xl = std::cos(pi_ld * (i - 0.25L) / (order + 0.5L));
        for (int it = 0; it < 8; ++it) {
            const auto [p, dp] = legendre(xl);
            xl -= p / dp;
        }
        Real x(static_cast<double>(xl));
        x += Real(static_cast<double>(xl - static_cast<long double>(static_cast<double>(xl))));
        for (int it = 0; it < 20; ++it) {
            const auto [p, dp] = legendre(x);
            const Real dx = p / dp;
            x -= dx;
            if (abs(dx) < eps) {
                break;
            }
        }
        const auto [p, dp] = legendre(x);
        rule.nodes.push_back(x);
        rule.weights.push_back(2 / ((1 - x * x) * dp * dp));
    }
    return rule;
}

} // namespace detail

/// Cached Gauss-Legendre rule of even order, accurate to `digits` digits.
inline const GaussRule &gauss_legendre(unsigned order, unsigned digits)
{
    if (order < 2 || order % 2 != 0) {
        throw std::invalid_argument("gauss_legendre: order must be even and >= 2");
    }
    static std::mutex mutex;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto &slot = cache[{order, digits}];
    if (!slot) {
        slot = std::make_unique<GaussRule>(detail::make_gauss_rule(order, digits));
    }
    return *slot;
}

template <class F>
Real apply_rule(const GaussRule &rule, F &f, const Real &a, const Real &b)
{
    const Real mid = (a + b) / 2;
    const Real half = (b - a) / 2;
    Real sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const Real dx = half * rule.nodes[i];
        sum += rule.weights[i] * (f(Real(mid + dx)) + f(Real(mid - dx)));
    }
    return sum * half;
}

struct PieceResult {
    Real value;
    Real error;
    unsigned order = 0;
};

/// Integrates a smooth piece, doubling the rule order until successive
/// estimates agree to `tol`. The error estimate is the last difference plus
/// a rounding allowance.
template <class F>
PieceResult integrate_piece(F &&f, const Real &a, const Real &b, const Real &tol, unsigned digits, const QuadConfig &cfg)
{
    unsigned order = cfg.start_order;
    Real prev = apply_rule(gauss_legendre(order, digits), f, a, b);
    const Real rounding_unit = pow(Real(10), 2 - static_cast<int>(digits));
    for (unsigned d = 0; d < cfg.max_doublings; ++d) {
        order *= 2;
        Real next = apply_rule(gauss_legendre(order, digits), f, a, b);
        const Real diff = abs(next - prev);
        const Real rounding = (abs(next) + abs(b - a)) * rounding_unit;
        if (diff <= tol) {
            return PieceResult{next, diff + rounding, order};
        }
        prev = std::move(next);
    }
    throw precision_failure("quadrature did not converge on [" + a.str(12) + ", " + b.str(12) + "] at order "
                                + std::to_string(order),
                            prev.str(static_cast<std::streamsize>(digits)));
}

namespace detail
{

/// Runs `compute(working_digits)`, raising the working precision once by half
/// if the first attempt fails to converge.
template <class Compute>
QuadEstimate with_escalation(Compute &&compute, const Precision &prec)
{
    const unsigned wd = prec.working_digits();
    try {
        return compute(wd);
    } catch (const precision_failure &) {
        try {
            return compute(wd + wd / 2);
        } catch (const precision_failure &e) {
            throw precision_failure(std::string("precision escalation exhausted: ") + e.what(), e.best_estimate());
        }
    }
}

inline Real rounded(Real x, unsigned digits)
{
    x.precision(digits);
    return x;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Hurwitz zeta for the folded sinc tail

/// Exact Bernoulli numbers B_0..B_max (B_1 = -1/2).
inline const std::vector<Rat> &bernoulli_numbers(int max_index)
{
    static std::mutex mutex;
    static std::vector<Rat> table{Rat(1)};
    std::lock_guard<std::mutex> lock(mutex);
    for (int m = static_cast<int>(table.size()); m <= max_index; ++m) {
        if (m > 1 && m % 2 == 1) {
            table.emplace_back(0);
            continue;
        }
        Rat sum(0);
        for (int k = 0; k < m; ++k) {
            if (!table[static_cast<std::size_t>(k)].is_zero()) {
                sum += binomial(m + 1, k) * table[static_cast<std::size_t>(k)];
            }
        }
        table.push_back(-sum / Rat(m + 1));
    }
    return table;
}

struct ZetaValue {
    Real value;
    Real error;
};

/// Hurwitz zeta sum_{k >= 0} (a + k)^{-s} for integer s >= 2, a > 0, by
/// Euler-Maclaurin after enough direct terms. The error is twice the first
/// omitted correction term.
inline ZetaValue hurwitz_zeta(int s, const Real &a, unsigned digits)
{
    if (s < 2 || !(a > 0)) {
        throw std::domain_error("hurwitz_zeta: need integer s >= 2 and a > 0");
    }
    const double start = 0.4 * digits + s + 10.0;
    const Real tol = pow(Real(10), -static_cast<int>(digits) - 5);
    Real sum = 0;
    Real x = a;
    while (x < start) {
        sum += pow(x, -s);
        x += 1;
    }
    sum += pow(x, 1 - s) / (s - 1) + pow(x, -s) / 2;
    const int max_j = 120;
    const auto &bern = bernoulli_numbers(2 * max_j + 2);
    // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
    Real rising = s; // s(s+1)...(s+2j-2) for j = 1
    Real fact = 2;   // (2j)!
    const Real inv_x2 = 1 / (x * x);
    Real xpow = pow(x, -s - 1);
    Real omitted = 0;
    for (int j = 1; j <= max_j + 1; ++j) {
        const Real term = to_real(bern[static_cast<std::size_t>(2 * j)]) / fact * rising * xpow;
        if (abs(term) < tol * abs(sum) || j == max_j + 1) {
            omitted = abs(term);
            break;
        }
        sum += term;
        rising *= Real(s + 2 * j - 1) * (s + 2 * j);
        fact *= Real(2 * j + 1) * (2 * j + 2);
        xpow *= inv_x2;
    }
    return ZetaValue{sum, 2 * omitted};
}

// ---------------------------------------------------------------------------
// sinc

namespace detail
{

/// int_{K pi}^inf |sin t|^n t^{-n} dt = pi^{-n} int_0^pi sin^n(s) zeta(n, K + s/pi) ds.
/// For the signed integrand with odd n the lobes alternate, and the sum over
/// lobes becomes a difference of two zeta values at half the argument.
inline PieceResult folded_sinc_tail(int n, int lobes, bool absolute, const Real &tol, unsigned wd, const QuadConfig &cfg)
{
    const Real p = pi();
    const Real scale = pow(p, -n);
    const bool alternating = !absolute && n % 2 == 1;
    const int lobe_sign = (alternating && lobes % 2 == 1) ? -1 : 1;
    Real worst_zeta_err = 0;
    auto f = [&](const Real &s) {
        const Real a = lobes + s / p;
        ZetaValue z;
        if (alternating) {
            const ZetaValue even = hurwitz_zeta(n, a / 2, wd);
            const ZetaValue odd = hurwitz_zeta(n, (a + 1) / 2, wd);
            const Real half_pow = pow(Real(2), -n);
            z.value = lobe_sign * half_pow * (even.value - odd.value);
            z.error = half_pow * (even.error + odd.error);
        } else {
            z = hurwitz_zeta(n, a, wd);
        }
        if (z.error > worst_zeta_err) {
            worst_zeta_err = z.error;
        }
        return Real(pow(sin(s), n) * z.value * scale);
    };
    PieceResult r = integrate_piece(f, Real(0), p, tol, wd, cfg);
    r.error += p * scale * worst_zeta_err;
    return r;
}

inline QuadEstimate sinc_integral_at(int n, bool absolute, const Precision &prec, const QuadConfig &cfg, unsigned wd)
{
    ScopedDigits guard(wd);
    const Real target = prec.target_abs_err();
    const Real p = pi();
    const Real root_n = sqrt(Real(n));

    // Cutoff where the |sin t| <= 1 envelope bound drops below target/2.
    Real cutoff = pow(2 * root_n / ((n - 1) * target), Real(1) / (n - 1));
    cutoff = max(cutoff, sqrt(Real(6)));
    const bool fold = cutoff > cfg.max_lobes * p;
    const Real end = fold ? Real(cfg.max_lobes * p) : cutoff;

    std::vector<Real> breaks{Real(0)};
    // Inside the first lobe the integrand is close to exp(-n t^2/6).
    const Real width = 6 * sqrt(Real(3) / n);
    const Real first_lobe_end = min(p, end);
    for (Real b = width; b < first_lobe_end; b += width) {
        breaks.push_back(b);
    }
    for (int k = 1; k * p < end; ++k) {
        breaks.push_back(k * p);
    }
    breaks.push_back(end);

    const auto pieces = static_cast<int>(breaks.size()) - 1;
    const Real piece_tol = target / (4 * root_n * pieces);
    auto integrand = [n, absolute](const Real &t) {
        const Real x = sin(t) / t;
        return absolute ? Real(pow(abs(x), n)) : Real(pow(x, n));
    };

    Real value = 0;
    Real err = 0;
    for (int i = 0; i < pieces; ++i) {
        const auto r = integrate_piece(integrand, breaks[static_cast<std::size_t>(i)], breaks[static_cast<std::size_t>(i + 1)],
                                       piece_tol, wd, cfg);
        value += r.value;
        err += r.error;
    }

    QuadEstimate est;
    est.cutoff_used = end;
    est.pieces = pieces;
    est.working_digits = wd;
    if (fold) {
        const auto tail = folded_sinc_tail(n, cfg.max_lobes, absolute, target / (4 * root_n), wd, cfg);
        est.tail_added = root_n * tail.value;
        est.tail_bound = 0;
        value += tail.value;
        err += tail.error;
        est.pieces += 1;
    } else {
        est.tail_added = 0;
        est.tail_bound = sinc_tail_bound_at(n, end);
    }
    est.value = root_n * value;
    est.abs_err_bound = root_n * err + est.tail_bound;
    return est;
}

} // namespace detail

/// sqrt(n) int_0^inf |sin t / t|^n dt, integrated lobe by lobe.
inline QuadEstimate sinc_integral(int n, const Precision &prec = {}, const QuadConfig &cfg = {})
{
    if (n < 2) {
        throw std::domain_error("sinc_integral: n must be >= 2");
    }
    prec.validate();
    return detail::with_escalation([&](unsigned wd) { return detail::sinc_integral_at(n, true, prec, cfg, wd); }, prec);
}

/// sqrt(n) int_0^inf (sin t / t)^n dt without the absolute value. Equal to
/// sinc_integral for even n; for odd n it is the classical signed integral.
inline QuadEstimate sinc_integral_signed(int n, const Precision &prec = {}, const QuadConfig &cfg = {})
{
    if (n < 2) {
        throw std::domain_error("sinc_integral_signed: n must be >= 2");
    }
    prec.validate();
    return detail::with_escalation([&](unsigned wd) { return detail::sinc_integral_at(n, false, prec, cfg, wd); }, prec);
}

// ---------------------------------------------------------------------------
// Normalized Bessel function

struct BesselEval {
    Nu nu;
    Real t;
    Real value;
    Real err_bound;
};

namespace detail
{

struct SeriesValue {
    Real value;
    Real error;
};

/// sum_j (-t^2/4)^j / (j! (nu+1)_j) for real nu >= 0, at wd digits plus
/// the cancellation allowance 2t/ln 10.
inline SeriesValue normalized_bessel_series(const Real &nu, const Real &t, unsigned wd)
{
    const double td = static_cast<double>(t);
    const auto extra = static_cast<unsigned>(std::ceil(2.0 * td / std::log(10.0))) + 5;
    const unsigned inner = wd + extra;
    SeriesValue out;
    {
        ScopedDigits guard(inner);
        Real v = nu;
        v.precision(inner);
        Real x = t;
        x.precision(inner);
        x = -(x * x) / 4;
        Real term = 1;
        Real sum = 1;
        Real biggest = 1;
        const Real stop = pow(Real(10), -static_cast<int>(wd) - 3);
        const double turn = td / 2 + 1;
        long j = 1;
        Real next_abs = 0;
        for (;; ++j) {
            term *= x / (j * (v + j));
            const Real a = abs(term);
            if (j > turn && a < stop) {
                next_abs = a;
                break;
            }
            sum += term;
            if (a > biggest) {
                biggest = a;
            }
        }
        out.value = sum;
        out.error = next_abs + biggest * (j + 1) * pow(Real(10), 1 - static_cast<int>(inner));
    }
    out.value.precision(wd);
    out.error.precision(wd);
    return out;
}

} // namespace detail

/// f_nu(t) = 2^nu Gamma(nu+1) J_nu(t) / t^nu from the alternating Maclaurin
/// series.
inline BesselEval bessel_j_normalized(const Nu &nu, const Real &t, const Precision &prec = {}, const QuadConfig &cfg = {})
{
    if (t < 0) {
        throw std::domain_error("bessel_j_normalized: t must be >= 0");
    }
    if (t > cfg.t_max) {
        throw std::domain_error("bessel_j_normalized: t = " + t.str(8) + " exceeds t_max");
    }
    const unsigned wd = prec.working_digits();
    ScopedDigits guard(wd);
    const auto s = detail::normalized_bessel_series(to_real(nu.value()), t, wd);
    return BesselEval{nu, detail::rounded(t, wd), s.value, s.error};
}

/// Sign changes of f_nu on (0, limit): a grid of step cfg.zero_grid_step
/// brackets each zero, then bisection narrows it to working precision.
inline std::vector<Real> bessel_zeros(const Nu &nu, const Real &limit, unsigned wd, const QuadConfig &cfg)
{
    static std::mutex mutex;
    static std::map<std::tuple<std::string, std::string, unsigned, double>, std::vector<Real>> cache;
    const auto key = std::make_tuple(nu.value().str(), limit.str(30), wd, cfg.zero_grid_step);
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    ScopedDigits guard(wd);
    const Real v = to_real(nu.value());
    auto f = [&](const Real &t) { return detail::normalized_bessel_series(v, t, wd).value; };
    const Real step(cfg.zero_grid_step);
    const Real eps = pow(Real(10), -static_cast<int>(wd));
    std::vector<Real> zeros;
    Real a = step;
    Real fa = f(a);
    while (a < limit) {
        Real b = min(Real(a + step), limit);
        Real fb = f(b);
        if (fa == 0) {
            zeros.push_back(a);
        } else if (fa * fb < 0) {
            Real lo = a;
            Real hi = b;
            Real flo = fa;
            while (hi - lo > eps * hi) {
                const Real mid = (lo + hi) / 2;
                const Real fm = f(mid);
                if (fm == 0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            zeros.push_back((lo + hi) / 2);
        }
        a = std::move(b);
        fa = std::move(fb);
    }
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, zeros);
    return zeros;
}

namespace detail
{

/// int_X^inf J_nu(t)^2 / t dt for integer nu >= 1, from
/// d/dt [J_{m-1}^2 + J_m^2] = -2m J_m^2/t + 2(m-1) J_{m-1}^2/t.
inline SeriesValue bessel_square_tail(long nu, const Real &x, unsigned wd)
{
    std::vector<SeriesValue> j;
    for (long m = 0; m <= nu; ++m) {
        auto s = normalized_bessel_series(Real(m), x, wd);
        const Real scale = pow(x / 2, m) / Real(factorial(static_cast<unsigned>(m)));
        j.push_back(SeriesValue{s.value * scale, s.error * scale});
    }
    Real tail = 0;
    Real err = 0;
    for (long m = 1; m <= nu; ++m) {
        const auto &a = j[static_cast<std::size_t>(m - 1)];
        const auto &b = j[static_cast<std::size_t>(m)];
        tail = (a.value * a.value + b.value * b.value) / (2 * m) + Real(m - 1) / m * tail;
        err = (2 * abs(a.value) * a.error + 2 * abs(b.value) * b.error) / (2 * m) + Real(m - 1) / m * err;
    }
    return SeriesValue{tail, err};
}

inline QuadEstimate bessel_integral_at(const Nu &nu, int n, const Precision &prec, std::optional<double> cutoff_mult,
                                       const QuadConfig &cfg, unsigned wd)
{
    ScopedDigits guard(wd);
    const Real target = prec.target_abs_err();
    const Real v = to_real(nu.value());
    const Real x0 = bessel_min_cutoff(nu);
    const Real t_max(cfg.t_max);

    Real cutoff;
    if (cutoff_mult) {
        if (*cutoff_mult < 1) {
            throw std::domain_error("bessel_integral: cutoff_mult must be >= 1");
        }
        cutoff = x0 * Real(*cutoff_mult);
        if (cutoff > t_max) {
            throw std::domain_error("bessel_integral: cutoff exceeds t_max");
        }
    } else {
        // Smallest cutoff whose tail bound is below target/2, within [x0, t_max].
        const Real decay = to_real((nu.value() + Rat(1, 3)) * Rat(n) - Rat(2) * nu.value());
        const Real b0 = bessel_tail_bound(nu, n, x0).bound;
        cutoff = x0 * pow(b0 / (target / 2), 1 / decay);
        cutoff = min(max(cutoff, x0), t_max);
    }

    const auto zeros = bessel_zeros(nu, cutoff, wd, cfg);
    std::vector<Real> breaks{Real(0)};
    const Real first_end = zeros.empty() ? cutoff : min(zeros.front(), cutoff);
    // exp(-n t^2 / (4(nu+1))) scale inside the first lobe
    const Real width = 6 * sqrt(2 * (v + 1) / n);
    for (Real b = width; b < first_end; b += width) {
        breaks.push_back(b);
    }
    for (const auto &z : zeros) {
        if (z < cutoff) {
            breaks.push_back(z);
        }
    }
    breaks.push_back(cutoff);

    const Rat power_rat = Rat(2) * nu.value() - Rat(1);
    const Real power = to_real(power_rat);
    const bool integer_power = power_rat.is_integer();
    const long power_int = integer_power ? power_rat.num().convert_to<long>() : 0;
    // t = u^q on the first piece makes t^{2nu-1} dt polynomial in u.
    const long q = power_rat.den().convert_to<long>();

    Real worst_eval_err = 0;
    auto integrand = [&](const Real &t) {
        const auto s = normalized_bessel_series(v, t, wd);
        if (s.error > worst_eval_err) {
            worst_eval_err = s.error;
        }
        const Real base = pow(abs(s.value), n);
        return Real(integer_power ? Real(base * pow(t, power_int)) : Real(base * pow(t, power)));
    };
    auto first_piece = [&](const Real &u) {
        const Real t = pow(u, q);
        return Real(integrand(t) * q * pow(u, q - 1));
    };

    const auto pieces = static_cast<int>(breaks.size()) - 1;
    const Real scale = pow(Real(n), v);
    const Real piece_tol = target / (4 * scale * pieces);
    Real value = 0;
    Real err = 0;
    for (int i = 0; i < pieces; ++i) {
        const Real &a = breaks[static_cast<std::size_t>(i)];
        const Real &b = breaks[static_cast<std::size_t>(i + 1)];
        PieceResult r = (i == 0 && q > 1) ? integrate_piece(first_piece, Real(0), Real(pow(b, Real(1) / q)), piece_tol, wd, cfg)
                                          : integrate_piece(integrand, a, b, piece_tol, wd, cfg);
        value += r.value;
        err += r.error;
    }
    // |d(|f|^n)| <= n |df| since |f| <= 1 on the integration range
    err += n * worst_eval_err * pow(cutoff, 2 * v) / (2 * v);

    QuadEstimate est;
    est.cutoff_used = cutoff;
    est.pieces = pieces;
    est.working_digits = wd;
    if (n == 2 && nu.is_integer()) {
        const long m = nu.as_integer();
        const auto tail = bessel_square_tail(m, cutoff, wd);
        const Real prefactor = pow(Real(2), m) * pow(Real(4), m) * pow(Real(factorial(static_cast<unsigned>(m))), 2);
        est.tail_added = prefactor * tail.value;
        est.tail_bound = 0;
        est.value = scale * value + est.tail_added;
        est.abs_err_bound = scale * err + prefactor * tail.error;
    } else {
        est.tail_added = 0;
        est.tail_bound = bessel_tail_bound(nu, n, cutoff).bound;
        est.value = scale * value;
        est.abs_err_bound = scale * err + est.tail_bound;
    }
    return est;
}

} // namespace detail

/// n^nu int_0^X |f_nu(t)|^n t^{2nu-1} dt split at the zeros of J_nu, with
/// X = cutoff_mult * 2^nu Gamma(nu+1) (or the smallest X whose tail bound
/// meets the target, capped at t_max, when cutoff_mult is absent).
inline QuadEstimate bessel_integral(const Nu &nu, int n, const Precision &prec = {}, std::optional<double> cutoff_mult = std::nullopt,
                                    const QuadConfig &cfg = {})
{
    if (n < 2) {
        throw std::domain_error("bessel_integral: n must be >= 2");
    }
    prec.validate();
    return detail::with_escalation(
        [&](unsigned wd) { return detail::bessel_integral_at(nu, n, prec, cutoff_mult, cfg, wd); }, prec);
}

// ---------------------------------------------------------------------------
// Remainder analysis against the exact expansions

/// Which integral family: sinc (unit sqrt(3 pi/2)) or Bessel of order nu
/// (unit c_0(nu)).
struct Pipeline {
    std::optional<Nu> nu;

    static Pipeline sinc()
    {
        return {};
    }
    static Pipeline bessel(const Nu &nu)
    {
        return Pipeline{nu};
    }
    [[nodiscard]] bool is_sinc() const
    {
        return !nu.has_value();
    }
    [[nodiscard]] std::string name() const
    {
        return is_sinc() ? "sinc" : "bessel(" + nu->value().str() + ")";
    }
    /// Evaluated at the current working precision.
    [[nodiscard]] Real unit() const
    {
        if (is_sinc()) {
            return sqrt(3 * pi() / 2);
        }
        return c0_value(*nu, Real::default_precision());
    }
    [[nodiscard]] std::vector<Rat> coefficients(int m) const
    {
        return is_sinc() ? sinc_expansion(m).coeffs : bessel_expansion(*nu, m).gamma;
    }
};

/// Memoised quadrature of the pipeline integral; evaluation is deterministic,
/// so reuse is invisible to callers.
inline QuadEstimate pipeline_integral(const Pipeline &pipeline, int n, const Precision &prec, const QuadConfig &cfg = {})
{
    static std::mutex mutex;
    static std::map<std::string, QuadEstimate> cache;
    const std::string key = pipeline.name() + "|" + std::to_string(n) + "|" + std::to_string(prec.digits) + "|"
                            + std::to_string(prec.target_exp10()) + "|" + std::to_string(prec.guard) + "|"
                            + std::to_string(cfg.start_order) + "|" + std::to_string(cfg.max_doublings) + "|"
                            + std::to_string(cfg.max_lobes) + "|" + std::to_string(cfg.t_max);
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    QuadEstimate est = pipeline.is_sinc() ? sinc_integral(n, prec, cfg) : bessel_integral(*pipeline.nu, n, prec, std::nullopt, cfg);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, est);
    return est;
}

struct RemainderPoint {
    int n = 0;
    /// I(n)/unit - sum_{j <= m} c_j / n^j
    Real remainder;
    /// Quadrature error bound in the same unit.
    Real error;
    bool usable = false;
};

/// Normalized remainders after subtracting the expansion through `known`.
inline std::vector<RemainderPoint> remainder_values(const Pipeline &pipeline, const std::vector<Rat> &known,
                                                    const std::vector<int> &grid, const Precision &prec,
                                                    const QuadConfig &cfg = {})
{
    std::vector<RemainderPoint> out;
    for (int n : grid) {
        const QuadEstimate q = pipeline_integral(pipeline, n, prec, cfg);
        ScopedDigits guard(q.working_digits);
        const Real unit = pipeline.unit();
        Real partial = 0;
        for (std::size_t j = 0; j < known.size(); ++j) {
            partial += to_real(known[j]) / pow(Real(n), static_cast<int>(j));
        }
        RemainderPoint p;
        p.n = n;
        p.remainder = q.value / unit - partial;
        p.error = q.abs_err_bound / unit;
        p.usable = p.error <= abs(p.remainder) / 1000;
        out.push_back(std::move(p));
    }
    return out;
}

struct DecayFit {
    double slope = 0;
    double intercept = 0;
    std::vector<double> residuals;
    std::vector<RemainderPoint> points;
};

/// Least-squares slope of log|r(n)| against log n, r(n) being the remainder
/// after the order-m expansion. Grid points whose quadrature error is not
/// well below |r(n)| are dropped.
inline DecayFit remainder_decay_fit(const Pipeline &pipeline, int m, const std::vector<int> &grid, const Precision &prec,
                                    const QuadConfig &cfg = {}, std::optional<std::vector<Rat>> coefficients = std::nullopt)
{
    const std::vector<Rat> known = coefficients ? *coefficients : pipeline.coefficients(m);
    DecayFit fit;
    fit.points = remainder_values(pipeline, known, grid, prec, cfg);
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto &p : fit.points) {
        if (p.usable) {
            xs.push_back(std::log(static_cast<double>(p.n)));
            ys.push_back(static_cast<double>(log(abs(p.remainder))));
        }
    }
    if (xs.size() < 3) {
        throw insufficient_data("remainder_decay_fit: fewer than 3 usable grid points");
    }
    const double k = static_cast<double>(xs.size());
    double sx = 0;
    double sy = 0;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / k;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fit.residuals.push_back(ys[i] - (fit.intercept + fit.slope * xs[i]));
    }
    return fit;
}

struct CoefficientFit {
    int j = 0;
    Real estimate;
    /// Shift of the intercept between fits of degree d and d+1.
    Real uncertainty;
    Real rms;

    /// Whether `value` lies within twice the fit uncertainty.
    [[nodiscard]] bool consistent_with(const Rat &value) const
    {
        ScopedDigits guard(static_cast<unsigned>(estimate.precision()));
        return abs(estimate - to_real(value)) <= 2 * uncertainty;
    }
};

namespace detail
{

/// Least-squares coefficients of y ~ sum_{p <= degree} beta_p x^p.
inline std::vector<Real> polyfit(const std::vector<Real> &x, const std::vector<Real> &y, int degree)
{
    const auto cols = static_cast<std::size_t>(degree + 1);
    std::vector<std::vector<Real>> a(cols, std::vector<Real>(cols + 1, Real(0)));
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<Real> powers(cols);
        powers[0] = 1;
        for (std::size_t p = 1; p < cols; ++p) {
            powers[p] = powers[p - 1] * x[i];
        }
        for (std::size_t r = 0; r < cols; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                a[r][c] += powers[r] * powers[c];
            }
            a[r][cols] += powers[r] * y[i];
        }
    }
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < cols; ++r) {
            if (abs(a[r][c]) > abs(a[pivot][c])) {
                pivot = r;
            }
        }
        std::swap(a[c], a[pivot]);
        for (std::size_t r = 0; r < cols; ++r) {
            if (r != c) {
                const Real factor = a[r][c] / a[c][c];
                for (std::size_t k = c; k <= cols; ++k) {
                    a[r][k] -= factor * a[c][k];
                }
            }
        }
    }
    std::vector<Real> beta(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        beta[c] = a[c][cols] / a[c][c];
    }
    return beta;
}

} // namespace detail

/// Numerical estimate of the coefficient c_j from quadrature: fits
/// n^j (I(n)/unit - sum_{i<j} c_i/n^i) by a polynomial in 1/n and reads off the
/// constant term. `known` supplies c_0..c_{j-1}.
inline CoefficientFit coefficient_fit(const Pipeline &pipeline, const std::vector<Rat> &known, const std::vector<int> &grid,
                                      const Precision &prec, int degree = 3, const QuadConfig &cfg = {})
{
    const int j = static_cast<int>(known.size());
    if (static_cast<int>(grid.size()) < degree + 3) {
        throw insufficient_data("coefficient_fit: grid too small for the requested degree");
    }
    const auto points = remainder_values(pipeline, known, grid, prec, cfg);
    ScopedDigits guard(prec.working_digits());
    std::vector<Real> x;
    std::vector<Real> y;
    for (const auto &p : points) {
        x.emplace_back(Real(1) / p.n);
        y.emplace_back(p.remainder * pow(Real(p.n), j));
    }
    const auto low = detail::polyfit(x, y, degree);
    const auto high = detail::polyfit(x, y, degree + 1);
    Real ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Real model = 0;
        for (auto it = high.rbegin(); it != high.rend(); ++it) {
            model = model * x[i] + *it;
        }
        ss += (y[i] - model) * (y[i] - model);
    }
    CoefficientFit fit;
    fit.j = j;
    fit.estimate = high[0];
    fit.uncertainty = abs(high[0] - low[0]);
    fit.rms = sqrt(ss / x.size());
    return fit;
}

} // namespace ballexp

#endif
