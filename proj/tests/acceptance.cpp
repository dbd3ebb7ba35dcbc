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

// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <ballexp/bessel_expansion.hpp>
#include <ballexp/quadrature.hpp>
#include <ballexp/sinc_expansion.hpp>
#include <ballexp/verify.hpp>

using namespace ballexp;

namespace
{

struct Outcome {
    bool pass = false;
    std::string detail;
};

Precision digits(unsigned d)
{
    Precision p;
    p.digits = d;
    return p;
}

std::string sci(const Real &x)
{
    return Real(x).str(3, std::ios_base::scientific);
}

// 1. Published sinc constants, exact.
Outcome exact_constants()
{
    const auto ex = sinc_expansion(7, 8);
    const std::vector<std::pair<int, const char *>> expected{{0, "1"},           {1, "-3/20"},         {2, "-13/1120"},
                                                             {3, "27/3200"},     {4, "52791/3942400"}, {6, "-124996631/10035200000"}};
    Outcome o{true, {}};
    for (const auto &[j, text] : expected) {
        const Rat got = ex.coeffs[static_cast<std::size_t>(j)];
        if (got != Rat::parse(text)) {
            o.pass = false;
            o.detail += "c" + std::to_string(j) + "=" + got.str() + " (expected " + text + ") ";
        }
    }
    if (o.pass) {
        o.detail = "c0..c4, c6 exact";
    }
    return o;
}

// 2. Appendix table regression with numerically cross-validated errata.
Outcome appendix_regression()
{
    const auto appendix = verify_appendix(default_fixture_path(), true);
    const auto constants = verify_published_constants();
    Outcome o{true, {}};
    int matched = 0;
    int errata = 0;
    for (const auto *suite : {&appendix, &constants}) {
        for (const auto &r : suite->reports) {
            if (r.status == Status::pass) {
                ++matched;
            } else if (r.status == Status::erratum) {
                ++errata;
                std::cout << "    erratum " << r.id << ": " << r.notes << '\n';
            } else {
                o.pass = false;
                std::cout << "    mismatch " << r.id << ": expected " << r.expected << ", engine " << r.computed << '\n';
            }
        }
    }
    o.detail = std::to_string(matched) + " exact matches, " + std::to_string(errata) + " errata confirmed by quadrature";
    return o;
}

// 3. Richardson limit of n^2 r(n) toward -13/1120.
Outcome open_problem_limit()
{
    const Precision p = digits(50);
    auto f = [&](int n) {
        const auto q = sinc_integral(n, p);
        ScopedDigits guard(q.working_digits);
        const Real unit = sqrt(3 * pi() / 2);
        const Real r = q.value - unit * (1 - Real(3) / (20 * n));
        return Real(n * n * r / unit);
    };
    const Real f200 = f(200);
    const Real f400 = f(400);
    ScopedDigits guard(60);
    const Real limit = 2 * f400 - f200;
    const Real target = -Real(13) / 1120;
    const Real diff = abs(limit - target);
    return {diff <= Real("1e-4"), "extrapolated " + limit.str(10) + " vs -13/1120 = " + target.str(10) + ", |diff| = " + sci(diff)};
}

// 4. Closed-form quadrature oracles at 30 digits.
Outcome closed_forms()
{
    const Precision p = digits(30);
    ScopedDigits guard(p.working_digits());
    const std::vector<std::pair<int, Real>> cases{{2, pi() / sqrt(Real(2))},
                                                  {3, 3 * sqrt(Real(3)) * pi() / 8},
                                                  {4, 2 * pi() / 3}};
    Outcome o{true, {}};
    std::ostringstream os;
    for (const auto &[n, truth] : cases) {
        const auto q = sinc_integral(n, p);
        const Real diff = abs(q.value - truth);
        const bool ok = diff <= q.abs_err_bound && q.abs_err_bound <= Real("1e-20");
        o.pass = o.pass && ok;
        os << "n=" << n << (ok ? " ok" : " MISMATCH") << " (|diff| " << sci(diff) << ", bound " << sci(q.abs_err_bound) << ") ";
        if (!ok) {
            const auto s = sinc_integral_signed(n, p);
            std::cout << "    n=" << n << ": I(n) = " << q.value.str(25) << "; reference " << truth.str(25)
                      << " is reproduced by the signed integrand: " << s.value.str(25) << " (|diff| "
                      << sci(abs(s.value - truth)) << ")\n";
        }
    }
    o.detail = os.str();
    return o;
}

// 5. Bessel pipeline at nu = 1/2 reduces to the sinc pipeline.
Outcome reduction_identity()
{
    Outcome o{true, {}};
    const Nu half(Rat(1, 2));
    for (int m = 0; m <= 4; ++m) {
        if (bessel_expansion(half, m).gamma != sinc_expansion(m).coeffs) {
            o.pass = false;
            o.detail += "m=" + std::to_string(m) + " differs ";
        }
    }
    ScopedDigits guard(50);
    const Real diff = abs(c0_value(half, 40) - sqrt(3 * pi() / 2));
    o.pass = o.pass && diff <= Real("1e-30");
    o.detail += "gamma(1/2) = sinc for m=0..4; |c0(1/2) - sqrt(3 pi/2)| = " + sci(diff);
    return o;
}

// 6. Published Bessel closed forms as rational identities in nu.
Outcome bessel_closed_forms()
{
    auto a2 = [](const Rat &v) { return Rat(-1) / (Rat(2) * pow(v + Rat(1), 2) * (v + Rat(2))); };
    auto a3 = [](const Rat &v) { return Rat(-2) / (Rat(3) * pow(v + Rat(1), 3) * (v + Rat(2)) * (v + Rat(3))); };
    auto a4 = [](const Rat &v) {
        return (v - Rat(5)) / (Rat(8) * pow(v + Rat(1), 4) * (v + Rat(2)) * (v + Rat(3)) * (v + Rat(4)));
    };
    // gamma_j = c_j / c_0 with Gamma(nu+2) / Gamma(nu) = nu (nu+1).
    auto g1 = [](const Rat &v) { return -v * (v + Rat(1)) / (Rat(2) * (v + Rat(2))); };
    auto g2 = [](const Rat &v) {
        return Rat(1, 8) * v * (v + Rat(1)) * (Rat(3) * v * v + Rat(2) * v - Rat(5)) / (Rat(3) * (v + Rat(2)) * (v + Rat(3)));
    };
    auto g3 = [](const Rat &v) {
        return -Rat(1, 8) * v * pow(v + Rat(1), 2) * (v * v * v - v * v - Rat(4) * v - Rat(8))
               / (Rat(6) * pow(v + Rat(2), 2) * (v + Rat(4)));
    };
    Outcome o{true, {}};
    const std::vector<Rat> samples{Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(5, 2), Rat(3)};
    for (const auto &v : samples) {
        const Nu nu(v);
        const auto e = bessel_expansion(nu, 3);
        const bool ok = bessel_aj(nu, 2, 5) == a2(v) && bessel_aj(nu, 3, 5) == a3(v) && bessel_aj(nu, 4, 5) == a4(v)
                        && e.gamma[1] == g1(v) && e.gamma[2] == g2(v) && e.gamma[3] == g3(v);
        if (!ok) {
            o.pass = false;
            o.detail += "nu=" + v.str() + " differs ";
        }
    }
    if (o.pass) {
        o.detail = "a2, a3, a4, gamma1..gamma3 exact at nu = 1/2, 1, 3/2, 2, 5/2, 3";
    }
    return o;
}

// 7. I_1(2) = 4, I_1(n) <= 4, and agreement with the gamma series.
Outcome bessel_endpoints()
{
    const Precision p = digits(30);
    const Nu one(Rat(1));
    Outcome o{true, {}};
    std::ostringstream os;
    ScopedDigits guard(p.working_digits());
    {
        const auto q = bessel_integral(one, 2, p);
        const Real diff = abs(q.value - 4);
        const bool ok = diff <= Real("1e-8");
        o.pass = o.pass && ok;
        os << "I_1(2)-4 = " << sci(diff) << (ok ? "" : " FAIL") << "; ";
    }
    int above = 0;
    for (int n = 2; n <= 20; ++n) {
        const auto q = bessel_integral(one, n, p);
        if (q.value > 4 + q.abs_err_bound) {
            ++above;
            std::cout << "    I_1(" << n << ") = " << q.value.str(20) << " exceeds 4\n";
        }
    }
    o.pass = o.pass && above == 0;
    os << "I_1(n) <= 4 for n=2..20" << (above ? " FAIL" : "") << "; ";
    // The series through the published c_0..c_3, with twice the first
    // omitted term as truncation allowance.
    const int m = 3;
    const auto gamma = bessel_expansion(one, m + 1).gamma;
    const Real c0 = 4;
    for (int n : {10, 20, 40}) {
        const auto q = bessel_integral(one, n, p);
        Real series = 0;
        for (int j = 0; j <= m; ++j) {
            series += c0 * to_real(gamma[static_cast<std::size_t>(j)]) / pow(Real(n), j);
        }
        const Real allowance = 2 * abs(c0 * to_real(gamma[static_cast<std::size_t>(m + 1)]) / pow(Real(n), m + 1));
        const Real diff = abs(q.value - series);
        const bool ok = diff <= q.abs_err_bound + allowance;
        o.pass = o.pass && ok;
        os << "n=" << n << " |I-series| " << sci(diff) << " <= " << sci(Real(q.abs_err_bound + allowance)) << (ok ? "" : " FAIL")
           << "; ";
    }
    o.detail = os.str();
    return o;
}

// 8. Remainder decay order.
Outcome decay_order()
{
    Outcome o{true, {}};
    std::ostringstream os;
    for (int m = 0; m <= 2; ++m) {
        const auto fit = remainder_decay_fit(Pipeline::sinc(), m, {50, 100, 200, 400}, digits(30));
        const bool ok = std::abs(fit.slope + (m + 1)) <= 0.15;
        o.pass = o.pass && ok;
        os << "m=" << m << " slope " << fit.slope << (ok ? "" : " FAIL") << "; ";
    }
    o.detail = os.str();
    return o;
}

// 9. Ball's inequality for n = 2..40.
Outcome ball_inequality()
{
    const Precision p = digits(30);
    ScopedDigits guard(p.working_digits());
    const Real bound = sqrt(Real(2)) * pi();
    const Real slack("1e-12");
    Outcome o{true, {}};
    Real worst_gap = bound;
    for (int n = 2; n <= 40; ++n) {
        const Real lhs = 2 * sinc_integral(n, p).value;
        if (n == 2) {
            const Real diff = abs(lhs - bound);
            if (diff > slack) {
                o.pass = false;
            }
            o.detail = "n=2 |2I-sqrt2 pi| = " + sci(diff) + "; ";
        } else {
            if (lhs > bound + slack) {
                o.pass = false;
                std::cout << "    n=" << n << ": 2I(n) = " << lhs.str(20) << " exceeds sqrt(2) pi\n";
            }
            worst_gap = min(worst_gap, Real(bound - lhs));
        }
    }
    o.detail += "smallest gap for n=3..40: " + sci(worst_gap);
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char *name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "published sinc constants", 10, exact_constants},
        {2, "appendix regression", 60, appendix_regression},
        {3, "n^2 r(n) limit", 300, open_problem_limit},
        {4, "closed-form quadrature", 30, closed_forms},
        {5, "nu=1/2 reduction", 60, reduction_identity},
        {6, "Bessel closed forms", 60, bessel_closed_forms},
        {7, "I_1 endpoints", 300, bessel_endpoints},
        {8, "decay order", 300, decay_order},
        {9, "Ball inequality", 300, ball_inequality},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::ostringstream t;
        t.precision(2);
        t << std::fixed << secs;
        std::cout << "criterion " << c.id << " [" << c.name << "]: " << (pass ? "PASS" : "FAIL") << "  " << o.detail << " ("
                  << t.str() << " s" << (in_time ? "" : ", over budget") << ")\n";
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criterion(s) failed") << '\n';
    return failures == 0 ? 0 : 1;
}
