#ifndef HYPERQUAD_REPORT_HPP
#define HYPERQUAD_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "certificates.hpp"
#include "map.hpp"
#include "nonwandering.hpp"

#ifndef HYPERQUAD_VERSION
#define HYPERQUAD_VERSION "0.1.0"
#endif

namespace hyperquad {

using json = nlohmann::json;

inline std::string format_double(double v)
{
    if (!std::isfinite(v))
        return "null";
    if (v == 0.0)
        return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void write_json(std::ostream& os, const json& j)
{
    switch (j.type()) {
    case json::value_t::object: {
        os << '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                os << ',';
            first = false;
            os << json(it.key()).dump() << ':';
            write_json(os, it.value());
        }
        os << '}';
        break;
    }
    case json::value_t::array: {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i)
                os << ',';
            write_json(os, j[i]);
        }
        os << ']';
        break;
    }
    case json::value_t::number_float:
        os << format_double(j.get<double>());
        break;
    default:
        os << j.dump();
    }
}

} // namespace detail

/// Compact JSON with sorted keys and every float at 17 significant digits,
/// so equal inputs give byte-identical text.
inline std::string to_canonical_json(const json& j)
{
    std::ostringstream os;
    detail::write_json(os, j);
    return os.str();
}

inline json to_json(const MapParams& m)
{
    return {{"c", m.c()},           {"k", m.k()},
            {"p_plus", m.p_plus()}, {"p_minus", m.p_minus()},
            {"alpha", m.alpha()},   {"sqrt_k", m.sqrt_k()},
            {"regime", std::string(to_string(m.regime()))}};
}

inline json to_json(const CantorApprox& a)
{
    json comps = json::array();
    for (const Interval& c : a.components)
        comps.push_back(json::array({c.lo(), c.hi()}));
    return {{"depth", a.depth}, {"components", std::move(comps)}};
}

inline std::string to_csv(const CantorApprox& a)
{
    std::ostringstream os;
    os << "# depth,count\n# " << a.depth << ',' << a.components.size() << '\n';
    for (const Interval& c : a.components)
        os << format_double(c.lo()) << ',' << format_double(c.hi()) << '\n';
    return os.str();
}

inline json to_json(const Check& c)
{
    return {{"x", c.x}, {"n", c.n}, {"lhs", c.lhs}, {"rhs", c.rhs}};
}

/// Summary of a verdict; the full list of tested pairs stays in memory and
/// is represented here by its size.
inline json to_json(const HyperbolicityVerdict& v)
{
    json j = {{"method", std::string(to_string(v.method))},
              {"status", std::string(to_string(v.status))},
              {"lambda", v.lambda},
              {"prefactor", v.prefactor},
              {"verified_n", v.verified_n},
              {"sample_count", v.sample_count},
              {"skipped", v.skipped},
              {"checks", v.checks.size()},
              {"stable_bundle", v.stable_bundle},
              {"unstable_bundle", v.unstable_bundle},
              {"witness", v.witness}};
    j["argmin_x"] = v.argmin_x ? json(*v.argmin_x) : json(nullptr);
    j["falsification"] = v.falsification ? to_json(*v.falsification) : json(nullptr);
    return j;
}

inline json to_json(const MethodACertificate& c, const HyperbolicityVerdict& v)
{
    json j = to_json(v);
    j["Lambda"] = c.Lambda.value;
    j["Lambda_argmin"] = json::array({c.Lambda.argmin_x, c.Lambda.argmin_y});
    j["Lambda_grid"] = c.Lambda.grid;
    j["Lambda_refined"] = c.refined;
    j["c_A"] = c.c_A;
    j["I_L"] = json::array({c.I_L.lo(), c.I_L.hi()});
    j["I_R"] = json::array({c.I_R.lo(), c.I_R.hi()});
    return j;
}

inline json to_json(const MethodBCertificate& c, const HyperbolicityVerdict& v)
{
    json j = to_json(v);
    j["M"] = c.M;
    j["ratio_alpha"] = c.ratio_alpha;
    j["lambda_B"] = c.lambda_B;
    j["omega_lo"] = c.omega_lo;
    j["omega_hi"] = c.omega_hi;
    return j;
}

inline json to_json(const DensityResult& d)
{
    return {{"max_gap", d.max_gap}, {"pass", d.pass}, {"points", d.points}};
}

inline json to_json(const NonHypWitness& w)
{
    json rows = json::array();
    for (std::size_t i = 0; i < w.expanding_derivatives.size(); ++i)
        rows.push_back({{"n", i + 1},
                        {"Df_n_at_0", w.zero_derivatives[i]},
                        {"abs_Df_n_at_minus_2", w.expanding_derivatives[i]},
                        {"four_pow_n", std::ldexp(1.0, static_cast<int>(2 * (i + 1)))}});
    json j = to_json(w.verdict);
    j["orbit"] = w.orbit;
    j["table"] = std::move(rows);
    j["exact_powers_of_four"] = w.exact_powers_of_four;
    j["density_evidence"] = to_json(w.density_evidence);
    return j;
}

inline json to_json(const LyapunovScan& s)
{
    json rows = json::array();
    for (const auto& r : s.per_n)
        rows.push_back({{"n", r.n}, {"min_rate", r.min_rate}, {"max_rate", r.max_rate}});
    return {{"min_rate", s.min_rate}, {"max_rate", s.max_rate}, {"per_n", std::move(rows)},
            {"used", s.used}, {"skipped", s.skipped}};
}

enum class ReportStatus { ok, falsified, error };

inline constexpr std::string_view to_string(ReportStatus s) noexcept
{
    switch (s) {
    case ReportStatus::ok: return "ok";
    case ReportStatus::falsified: return "falsified";
    case ReportStatus::error: return "error";
    }
    return "error";
}

struct Report {
    std::string command;
    json params = json::object();
    json results = json::object();
    ReportStatus status = ReportStatus::ok;

    std::string dump() const
    {
        json j = {{"tool_version", HYPERQUAD_VERSION},
                  {"command", command},
                  {"params", params},
                  {"results", results},
                  {"status", std::string(to_string(status))}};
        return to_canonical_json(j);
    }
};

} // namespace hyperquad

#endif
