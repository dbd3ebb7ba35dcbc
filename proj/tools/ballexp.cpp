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

// ballexp: exact expansion tables, quadrature and verification from the
// command line.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 precision failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <ballexp/quadrature.hpp>
#include <ballexp/report.hpp>
#include <ballexp/verify.hpp>

namespace
{

using namespace ballexp;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_precision = 3;

class usage_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

Format parse_format(const std::string &s)
{
    if (s == "json") {
        return Format::json;
    }
    if (s == "csv") {
        return Format::csv;
    }
    return Format::text;
}

Nu parse_nu(const std::string &text)
{
    try {
        return Nu::parse(text);
    } catch (const std::exception &e) {
        throw usage_error(std::string("--nu: ") + e.what());
    }
}

struct Options {
    int order = 2;
    int k = 0;
    std::string nu;
    int n = 0;
    unsigned digits = 30;
    std::optional<double> cutoff_mult;
    QuadConfig quad;
    std::string format = "text";
    bool no_cache = false;
    std::string pipeline;
    std::string suite;
    std::string fixture;
    std::string report_file;
    bool numeric = false;
};

std::unique_ptr<CoeffCache> make_cache(const Options &o)
{
    if (o.no_cache) {
        return nullptr;
    }
    return std::make_unique<CoeffCache>(CoeffCache::default_dir());
}

int cmd_sinc_coeffs(const Options &o)
{
    if (o.order < 0 || o.order > 12) {
        throw usage_error("--order must be in [0, 12]");
    }
    if (o.k != 0 && o.k <= o.order) {
        throw usage_error("--k must exceed --order");
    }
    const int k = o.k == 0 ? o.order + 1 : o.k;
    const auto cache = make_cache(o);
    const auto coeffs = expansion_coefficients(std::nullopt, o.order, k, cache.get());
    std::cout << render(make_coeff_table(std::nullopt, o.order, k, coeffs, o.digits), parse_format(o.format));
    return exit_ok;
}

int cmd_bessel_coeffs(const Options &o)
{
    const Nu nu = parse_nu(o.nu);
    if (o.order < 0 || o.order > 8) {
        throw usage_error("--order must be in [0, 8]");
    }
    if (o.k != 0 && o.k <= o.order) {
        throw usage_error("--k must exceed --order");
    }
    const int k = o.k == 0 ? o.order + 1 : o.k;
    const auto cache = make_cache(o);
    const auto coeffs = expansion_coefficients(nu, o.order, k, cache.get());
    std::cout << render(make_coeff_table(nu, o.order, k, coeffs, o.digits), parse_format(o.format));
    return exit_ok;
}

int cmd_eval(const Options &o)
{
    if (o.n < 2) {
        throw usage_error("--n must be >= 2");
    }
    if (o.digits < 15) {
        throw usage_error("--digits must be >= 15");
    }
    Precision prec;
    prec.digits = o.digits;
    EvalRecord rec;
    rec.pipeline = o.pipeline;
    rec.n = o.n;
    rec.digits = o.digits;
    try {
        if (o.pipeline == "sinc") {
            if (!o.nu.empty() || o.cutoff_mult) {
                throw usage_error("--nu and --cutoff-mult apply to the bessel pipeline only");
            }
            rec.estimate = sinc_integral(o.n, prec, o.quad);
        } else {
            if (o.nu.empty()) {
                throw usage_error("bessel pipeline needs --nu");
            }
            const Nu nu = parse_nu(o.nu);
            rec.nu = nu.value();
            rec.estimate = bessel_integral(nu, o.n, prec, o.cutoff_mult, o.quad);
        }
    } catch (const std::domain_error &e) {
        throw usage_error(e.what());
    }
    std::cout << render(rec, parse_format(o.format));
    return exit_ok;
}

int finish_suite(const SuiteResult &result, const Options &o)
{
    std::cout << render(result, parse_format(o.format));
    const std::string path = o.report_file.empty() ? "ballexp-verify-" + result.suite + ".json" : o.report_file;
    std::ofstream out(path);
    if (!out) {
        std::cerr << "ballexp: cannot write report file " << path << '\n';
    } else {
        out << to_json(result).dump(2) << '\n';
    }
    return result.ok() ? exit_ok : exit_verify_failed;
}

int cmd_verify(const Options &o)
{
    const std::filesystem::path fixture = o.fixture.empty() ? default_fixture_path() : std::filesystem::path(o.fixture);
    return finish_suite(run_suite(o.suite, o.digits, fixture), o);
}

int cmd_appendix_check(const Options &o)
{
    const std::filesystem::path fixture = o.fixture.empty() ? default_fixture_path() : std::filesystem::path(o.fixture);
    if (!std::filesystem::exists(fixture)) {
        throw usage_error("fixture not found: " + fixture.string());
    }
    return finish_suite(verify_appendix(fixture, o.numeric), o);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact asymptotic expansions of sinc and Bessel power integrals"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::string> formats{"text", "json", "csv"};

    auto add_format = [&](CLI::App *cmd) {
        cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    };

    auto *sinc = app.add_subcommand("sinc-coeffs", "Exact c_j of the sinc expansion, in units of sqrt(3*pi/2)");
    sinc->add_option("--order", o.order, "Expansion order m (0..12)");
    sinc->add_option("--k", o.k, "Truncation index of the sinc series (default m+1)");
    sinc->add_option("--digits", o.digits, "Digits in decimal renderings");
    sinc->add_flag("--no-cache", o.no_cache, "Bypass the coefficient cache");
    add_format(sinc);

    auto *bessel = app.add_subcommand("bessel-coeffs", "Exact gamma_j of the Bessel expansion, in units of c0(nu)");
    bessel->add_option("--nu", o.nu, "Order nu >= 1/2 as p/q")->required();
    bessel->add_option("--order", o.order, "Expansion order m (0..8)");
    bessel->add_option("--k", o.k, "Truncation index of the Bessel series (default m+1)");
    bessel->add_option("--digits", o.digits, "Digits in decimal renderings");
    bessel->add_flag("--no-cache", o.no_cache, "Bypass the coefficient cache");
    add_format(bessel);

    auto *eval = app.add_subcommand("eval", "High-precision quadrature of I(n) or I_nu(n)");
    eval->add_option("pipeline", o.pipeline, "sinc or bessel")->required()->check(CLI::IsMember({"sinc", "bessel"}));
    eval->add_option("--n", o.n, "Power n >= 2")->required();
    eval->add_option("--nu", o.nu, "Bessel order nu >= 1/2 as p/q");
    eval->add_option("--digits", o.digits, "Requested digits (>= 15)");
    eval->add_option("--cutoff-mult", o.cutoff_mult, "Bessel cutoff as a multiple of 2^nu Gamma(nu+1)");
    eval->add_option("--max-doublings", o.quad.max_doublings, "Rule-order doublings per piece before giving up")
        ->capture_default_str();
    eval->add_option("--t-max", o.quad.t_max, "Largest argument for the Bessel series")->capture_default_str();
    add_format(eval);

    auto *verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", o.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--digits", o.digits, "Quadrature digits");
    verify->add_option("--fixture", o.fixture, "Appendix fixture file");
    verify->add_option("--report-file", o.report_file, "Where to write the JSON report");
    add_format(verify);

    auto *appendix = app.add_subcommand("appendix-check", "Compare a transcribed appendix table with the engine");
    appendix->add_option("--fixture", o.fixture, "Fixture file (row exponent rational per line)");
    appendix->add_option("--report-file", o.report_file, "Where to write the JSON report");
    appendix->add_flag("--numeric", o.numeric, "Cross-check ledgered errata by quadrature");
    add_format(appendix);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (sinc->parsed()) {
            return cmd_sinc_coeffs(o);
        }
        if (bessel->parsed()) {
            return cmd_bessel_coeffs(o);
        }
        if (eval->parsed()) {
            return cmd_eval(o);
        }
        if (verify->parsed()) {
            return cmd_verify(o);
        }
        return cmd_appendix_check(o);
    } catch (const usage_error &e) {
        std::cerr << "ballexp: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "ballexp: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error &e) {
        std::cerr << "ballexp: " << e.what() << '\n';
        return exit_usage;
    } catch (const precision_failure &e) {
        std::cerr << "ballexp: precision failure: " << e.what() << "; best estimate " << e.best_estimate() << '\n';
        return exit_precision;
    } catch (const std::exception &e) {
        std::cerr << "ballexp: " << e.what() << '\n';
        return exit_verify_failed;
    }
}
