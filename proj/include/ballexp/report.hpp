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

#ifndef BALLEXP_REPORT_HPP
#define BALLEXP_REPORT_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <ballexp/bessel_expansion.hpp>
#include <ballexp/quadrature.hpp>
#include <ballexp/rational.hpp>
#include <ballexp/real.hpp>
#include <ballexp/sinc_expansion.hpp>

namespace ballexp
{

/// Bumped whenever a change could alter cached coefficient tables.
inline constexpr std::string_view code_version = "ballexp-coeffs-1";

enum class Format { text, json, csv };

// ---------------------------------------------------------------------------
// Coefficient tables

struct CoeffRecord {
    std::string pipeline;
    std::optional<Rat> nu;
    int j = 0;
    std::string rational;
    /// rational times the unit, at the requested number of digits.
    std::string decimal;
    std::string unit;
};

struct CoeffTable {
    std::string pipeline;
    std::optional<Rat> nu;
    int order = 0;
    int k = 0;
    std::string unit;
    std::vector<CoeffRecord> records;
    std::optional<C0Descriptor> c0;
};

inline CoeffTable make_coeff_table(const std::optional<Nu> &nu, int order, int k, const std::vector<Rat> &coeffs,
                                   unsigned digits)
{
    CoeffTable table;
    table.pipeline = nu ? "bessel" : "sinc";
    table.order = order;
    table.k = k;
    table.unit = nu ? "c0(nu)" : std::string(SincExpansion::unit);
    if (nu) {
        table.nu = nu->value();
        table.c0 = describe_c0(*nu, digits);
    }
    ScopedDigits guard(digits + 10);
    const Real unit_value = nu ? c0_value(*nu, digits) : Real(sqrt(3 * pi() / 2));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        CoeffRecord r;
        r.pipeline = table.pipeline;
        r.nu = table.nu;
        r.j = static_cast<int>(j);
        r.rational = coeffs[j].str();
        r.decimal = to_decimal(Real(to_real(coeffs[j]) * unit_value), digits);
        r.unit = table.unit;
        table.records.push_back(std::move(r));
    }
    return table;
}

inline nlohmann::ordered_json to_json(const CoeffTable &t)
{
    nlohmann::ordered_json out;
    out["kind"] = "coefficients";
    out["pipeline"] = t.pipeline;
    out["nu"] = t.nu ? nlohmann::ordered_json(t.nu->str()) : nlohmann::ordered_json(nullptr);
    out["order"] = t.order;
    out["k"] = t.k;
    out["unit"] = t.unit;
    if (t.c0) {
        nlohmann::ordered_json c0;
        c0["four_pow_nu_over_2"] = t.c0->four_pow_nu_over_2;
        c0["nu1_pow_nu"] = t.c0->nu1_pow_nu;
        c0["gamma_nu"] = t.c0->gamma_nu;
        c0["exact"] = t.c0->exact ? nlohmann::ordered_json(t.c0->exact->str()) : nlohmann::ordered_json(nullptr);
        c0["decimal"] = t.c0->decimal;
        out["c0"] = c0;
    }
    out["coefficients"] = nlohmann::ordered_json::array();
    for (const auto &r : t.records) {
        out["coefficients"].push_back({{"j", r.j}, {"rational", r.rational}, {"decimal", r.decimal}});
    }
    return out;
}

inline std::string render(const CoeffTable &t, Format format)
{
    std::ostringstream os;
    switch (format) {
    case Format::json:
        os << to_json(t).dump(2) << '\n';
        break;
    case Format::csv:
        for (const auto &r : t.records) {
            os << r.j << ',' << r.rational << ',' << r.decimal << '\n';
        }
        break;
    case Format::text:
        os << "pipeline: " << t.pipeline;
        if (t.nu) {
            os << "  nu = " << t.nu->str();
        }
        os << "\norder: " << t.order << "  (truncation k = " << t.k << ")\nunit: " << t.unit << '\n';
        if (t.c0) {
            os << "c0 = " << t.c0->four_pow_nu_over_2 << " * " << t.c0->nu1_pow_nu << " * " << t.c0->gamma_nu;
            if (t.c0->exact) {
                os << " = " << t.c0->exact->str();
            }
            os << " = " << t.c0->decimal << '\n';
        }
        for (const auto &r : t.records) {
            os << "  j=" << r.j << "  " << r.rational << "  " << r.decimal << '\n';
        }
        break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Quadrature estimates

struct EvalRecord {
    std::string pipeline;
    std::optional<Rat> nu;
    int n = 0;
    unsigned digits = 0;
    QuadEstimate estimate;
};

inline nlohmann::ordered_json to_json(const EvalRecord &e)
{
    const auto digits = static_cast<std::streamsize>(e.digits);
    nlohmann::ordered_json out;
    out["kind"] = "eval";
    out["pipeline"] = e.pipeline;
    out["nu"] = e.nu ? nlohmann::ordered_json(e.nu->str()) : nlohmann::ordered_json(nullptr);
    out["n"] = e.n;
    out["digits"] = e.digits;
    out["value"] = to_decimal(e.estimate.value, e.digits);
    out["abs_err_bound"] = e.estimate.abs_err_bound.str(3, std::ios_base::scientific);
    out["cutoff"] = e.estimate.cutoff_used.str(digits > 20 ? 20 : digits);
    out["pieces"] = e.estimate.pieces;
    out["tail_bound"] = e.estimate.tail_bound.str(3, std::ios_base::scientific);
    out["tail_added"] = e.estimate.tail_added.str(3, std::ios_base::scientific);
    return out;
}

inline std::string render(const EvalRecord &e, Format format)
{
    const auto j = to_json(e);
    std::ostringstream os;
    switch (format) {
    case Format::json:
        os << j.dump(2) << '\n';
        break;
    case Format::csv:
        os << "pipeline,nu,n,value,abs_err_bound,cutoff,pieces\n"
           << e.pipeline << ',' << (e.nu ? e.nu->str() : "") << ',' << e.n << ',' << j["value"].get<std::string>() << ','
           << j["abs_err_bound"].get<std::string>() << ',' << j["cutoff"].get<std::string>() << ',' << e.estimate.pieces
           << '\n';
        break;
    case Format::text:
        os << e.pipeline;
        if (e.nu) {
            os << " nu=" << e.nu->str();
        }
        os << " n=" << e.n << '\n'
           << "value         " << j["value"].get<std::string>() << '\n'
           << "abs_err_bound " << j["abs_err_bound"].get<std::string>() << '\n'
           << "cutoff        " << j["cutoff"].get<std::string>() << '\n'
           << "pieces        " << e.estimate.pieces << '\n';
        if (e.estimate.tail_added != 0) {
            os << "tail_added    " << j["tail_added"].get<std::string>() << '\n';
        }
        break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Verification reports

enum class Status { pass, fail, erratum };

inline std::string to_string(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::erratum:
        return "erratum";
    }
    return "fail";
}

struct VerifyReport {
    std::string id;
    std::string expected;
    std::string computed;
    std::string tolerance;
    Status status = Status::fail;
    /// "paper" (published value), "derived" (independent oracle) or "trivial".
    std::string provenance;
    std::string notes;
};

struct SuiteResult {
    std::string suite;
    std::vector<VerifyReport> reports;

    [[nodiscard]] bool ok() const
    {
        for (const auto &r : reports) {
            if (r.status == Status::fail) {
                return false;
            }
        }
        return true;
    }
};

inline nlohmann::ordered_json to_json(const SuiteResult &s)
{
    nlohmann::ordered_json out;
    out["kind"] = "verify";
    out["suite"] = s.suite;
    out["ok"] = s.ok();
    out["reports"] = nlohmann::ordered_json::array();
    for (const auto &r : s.reports) {
        out["reports"].push_back({{"id", r.id},
                                  {"expected", r.expected},
                                  {"computed", r.computed},
                                  {"tolerance", r.tolerance},
                                  {"status", to_string(r.status)},
                                  {"provenance", r.provenance},
                                  {"notes", r.notes}});
    }
    return out;
}

inline std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

inline std::string render(const SuiteResult &s, Format format)
{
    std::ostringstream os;
    switch (format) {
    case Format::json:
        os << to_json(s).dump(2) << '\n';
        break;
    case Format::csv:
        os << "id,expected,computed,tolerance,status,provenance,notes\n";
        for (const auto &r : s.reports) {
            os << csv_field(r.id) << ',' << csv_field(r.expected) << ',' << csv_field(r.computed) << ','
               << csv_field(r.tolerance) << ',' << to_string(r.status) << ',' << r.provenance << ',' << csv_field(r.notes)
               << '\n';
        }
        break;
    case Format::text:
        for (const auto &r : s.reports) {
            os << '[' << to_string(r.status) << "] " << r.id << ": expected " << r.expected << ", computed " << r.computed;
            if (!r.tolerance.empty()) {
                os << " (tol " << r.tolerance << ')';
            }
            if (!r.notes.empty()) {
                os << " -- " << r.notes;
            }
            os << '\n';
        }
        os << s.suite << ": " << (s.ok() ? "ok" : "FAILED") << '\n';
        break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Coefficient cache. Only exact rationals are stored; decimals are always
// re-rendered, so cached and fresh output are identical.

inline std::uint64_t fnv1a(std::string_view text)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

class CoeffCache
{
public:
    static constexpr const char *env_var = "BALLEXP_CACHE_DIR";

    /// $BALLEXP_CACHE_DIR, else $XDG_CACHE_HOME/ballexp, else ~/.cache/ballexp.
    static std::filesystem::path default_dir()
    {
        if (const char *dir = std::getenv(env_var); dir != nullptr && *dir != '\0') {
            return dir;
        }
        if (const char *xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
            return std::filesystem::path(xdg) / "ballexp";
        }
        if (const char *home = std::getenv("HOME"); home != nullptr && *home != '\0') {
            return std::filesystem::path(home) / ".cache" / "ballexp";
        }
        return std::filesystem::temp_directory_path() / "ballexp-cache";
    }

    explicit CoeffCache(std::filesystem::path dir) : m_dir(std::move(dir))
    {
    }

    static std::string key_text(const std::string &pipeline, const std::optional<Rat> &nu, int m, int k)
    {
        return pipeline + "|" + (nu ? nu->str() : "-") + "|" + std::to_string(m) + "|" + std::to_string(k) + "|"
               + std::string(code_version);
    }

    [[nodiscard]] std::filesystem::path path_for(const std::string &key) const
    {
        std::ostringstream name;
        name << std::hex << fnv1a(key) << ".coeffs";
        return m_dir / name.str();
    }

    /// Cached coefficients, or nothing on a miss or an unreadable entry.
    [[nodiscard]] std::optional<std::vector<Rat>> load(const std::string &key) const
    {
        std::ifstream in(path_for(key));
        if (!in) {
            return std::nullopt;
        }
        std::string header;
        if (!std::getline(in, header) || header != "# " + key) {
            return std::nullopt;
        }
        std::vector<Rat> out;
        int j = 0;
        std::string value;
        while (in >> j >> value) {
            if (j != static_cast<int>(out.size())) {
                return std::nullopt;
            }
            try {
                out.push_back(Rat::parse(value));
            } catch (const invalid_operand &) {
                return std::nullopt;
            }
        }
        if (!in.eof() || out.empty()) {
            return std::nullopt;
        }
        return out;
    }

    /// Best effort: a cache that cannot be written is simply skipped.
    void store(const std::string &key, const std::vector<Rat> &coeffs) const
    {
        std::error_code ec;
        std::filesystem::create_directories(m_dir, ec);
        if (ec) {
            return;
        }
        const auto target = path_for(key);
        auto tmp = target;
        tmp += ".tmp" + std::to_string(std::random_device{}());
        {
            std::ofstream out(tmp);
            if (!out) {
                return;
            }
            out << "# " << key << '\n';
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
                out << j << ' ' << coeffs[j].str() << '\n';
            }
            if (!out) {
                return;
            }
        }
        std::filesystem::rename(tmp, target, ec);
        if (ec) {
            std::filesystem::remove(tmp, ec);
        }
    }

    [[nodiscard]] const std::filesystem::path &dir() const
    {
        return m_dir;
    }

private:
    std::filesystem::path m_dir;
};

/// Expansion coefficients (sinc when nu is empty), going through `cache` if
/// one is given.
inline std::vector<Rat> expansion_coefficients(const std::optional<Nu> &nu, int m, int k, const CoeffCache *cache)
{
    const std::string key = CoeffCache::key_text(nu ? "bessel" : "sinc", nu ? std::optional<Rat>(nu->value()) : std::nullopt, m, k);
    if (cache != nullptr) {
        if (auto hit = cache->load(key); hit && static_cast<int>(hit->size()) == m + 1) {
            return *hit;
        }
    }
    std::vector<Rat> coeffs = nu ? bessel_expansion(*nu, m, k).gamma : sinc_expansion(m, k).coeffs;
    if (cache != nullptr) {
        cache->store(key, coeffs);
    }
    return coeffs;
}

} // namespace ballexp

#endif
