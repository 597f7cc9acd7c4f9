// hyperquad: command-line front end for the hyperbolicity verifier.
//
// Exit codes: 0 ok/verified, 1 falsified check, 2 usage error,
// 3 unsupported parameter or inapplicable method.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <hyperquad/hyperquad.hpp>

namespace hq = hyperquad;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupported = 3;

struct Options {
    double c = 0.0;
    std::size_t depth = 12;
    std::size_t n = 12;
    std::size_t grid = 512;
    std::string method = "all";
    std::string word;
    double x = 0.0;
    std::string format = "json";
    std::string out;
    double tol = 1e-8;
    unsigned threads = 0;
    std::string quantity = "mu";
};

int exit_code_for(hq::errc e)
{
    switch (e) {
    case hq::errc::unsupported_parameter:
    case hq::errc::wrong_regime:
    case hq::errc::not_monotone:
        return kExitUnsupported;
    case hq::errc::escalation_failed:
        return kExitFalsified;
    default:
        return kExitUsage;
    }
}

void emit(const hq::Report& r) { std::cout << r.dump() << '\n'; }

bool write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        return false;
    f << text;
    return static_cast<bool>(f);
}

hq::json base_params(const Options& o) { return {{"c", o.c}}; }

int cmd_analyze(const Options& o)
{
    const hq::MapParams m = hq::analyze(o.c);
    hq::Report r{"analyze", base_params(o)};
    r.results = hq::to_json(m);
    r.results["easy_gap_threshold"] = hq::kEasyGapThreshold;
    emit(r);
    return kExitOk;
}

int cmd_nw(const Options& o)
{
    const hq::MapParams m = hq::analyze(o.c);
    if (m.is_boundary())
        throw hq::error(hq::errc::unsupported_parameter,
                        "at c = -2 the non-wandering set is [-2, 2]; run `witness --c -2` instead");
    const hq::CantorApprox a = hq::build(m, o.depth, hq::kDefaultDepthCap, o.threads);
    const std::string data = o.format == "csv" ? hq::to_csv(a) : hq::to_canonical_json(hq::to_json(a)) + "\n";
    if (o.out.empty()) {
        std::cout << data;
        return kExitOk;
    }
    if (!write_file(o.out, data))
        throw hq::error(hq::errc::domain_error, "cannot write " + o.out);

    const double p = m.p_plus();
    const double alpha = m.alpha();
    const double span = p - alpha;
    const double d = static_cast<double>(a.depth);
    double max_len = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        max_len = std::max(max_len, a.components[i].length());
        if (i > 0)
            min_gap = std::min(min_gap, a.components[i].lo() - a.components[i - 1].hi());
    }
    hq::Report r{"nw", base_params(o)};
    r.params["depth"] = o.depth;
    r.params["format"] = o.format;
    r.params["out"] = o.out;
    r.results = {{"depth", a.depth},
                 {"count", a.components.size()},
                 {"total_length", a.total_length()},
                 {"total_length_bound", 2.0 * span * std::pow(alpha, -d)},
                 {"max_component_length", max_len},
                 {"component_length_bound", span * std::pow(2.0 * alpha, -d)},
                 {"min_gap", min_gap}};
    emit(r);
    return kExitOk;
}

int cmd_certify(const Options& o)
{
    const hq::MapParams m = hq::analyze(o.c);
    const bool all = o.method == "all";
    hq::Report r{"certify", base_params(o)};
    r.params["method"] = o.method;
    r.params["depth"] = o.depth;
    r.params["n"] = o.n;
    r.params["grid"] = o.grid;

    auto inapplicable = [&](const std::string& name, const std::string& why) {
        if (!all)
            throw hq::error(hq::errc::wrong_regime, why);
        r.results[name] = {{"method", name}, {"status", "Inapplicable"}, {"reason", why}};
    };

    if (m.is_boundary()) {
        if (!all)
            throw hq::error(hq::errc::wrong_regime, "no hyperbolicity certificate applies at c = -2");
        r.results["note"] = "c = -2 is not hyperbolic; run `witness --c -2`";
        r.status = hq::ReportStatus::error;
        emit(r);
        return kExitUnsupported;
    }

    const hq::CantorApprox a = hq::build(m, o.depth, hq::kDefaultDepthCap, o.threads);
    bool falsified = false;
    bool any = false;

    if (all || o.method == "gap") {
        if (m.regime() == hq::Regime::EasyGap) {
            const auto v = hq::certify_gap(m, a, o.n, o.threads);
            r.results["gap"] = hq::to_json(v);
            falsified = falsified || v.status == hq::Status::Falsified;
            any = true;
        } else {
            inapplicable("gap", "gap certificate needs alpha > 1/2");
        }
    }
    if (all || o.method == "metric") {
        const auto [cert, v] = hq::certify_method_a(m, a, o.grid, o.n, o.threads);
        r.results["metric"] = hq::to_json(cert, v);
        falsified = falsified || v.status == hq::Status::Falsified;
        any = true;
    }
    if (all || o.method == "weight") {
        if (m.regime() == hq::Regime::HardGap) {
            const std::size_t M = hq::choose_M(m, a);
            const auto [cert, v] = hq::certify_method_b(m, a, M, o.n, o.threads);
            r.results["weight"] = hq::to_json(cert, v);
            falsified = falsified || v.status == hq::Status::Falsified;
            any = true;
        } else {
            inapplicable("weight", "weighted-norm exponent selection applies to 0 < alpha <= 1/2");
        }
    }
    if (!any) {
        r.status = hq::ReportStatus::error;
        emit(r);
        return kExitUnsupported;
    }
    r.results["lyapunov"] = hq::to_json(hq::lyapunov_scan(m, a, o.n, o.threads));
    r.results["regime"] = std::string(hq::to_string(m.regime()));
    r.status = falsified ? hq::ReportStatus::falsified : hq::ReportStatus::ok;
    emit(r);
    return falsified ? kExitFalsified : kExitOk;
}

int cmd_itinerary(const Options& o)
{
    const hq::MapParams m = hq::analyze(o.c);
    const hq::Word w = hq::itinerary(m, o.x, o.n);
    hq::Report r{"itinerary", base_params(o)};
    r.params["x"] = o.x;
    r.params["n"] = o.n;
    r.results = {{"word", w.str()}, {"boundary_ambiguous", w.boundary_ambiguous()}};
    emit(r);
    return kExitOk;
}

int cmd_decode(const Options& o)
{
    const hq::MapParams m = hq::analyze(o.c);
    const hq::Word w(o.word);
    const hq::Decoded d = hq::decode(m, w, o.tol);
    hq::Report r{"decode", base_params(o)};
    r.params["word"] = o.word;
    r.params["tol"] = o.tol;
    r.results = {{"bracket", hq::json::array({d.bracket.lo(), d.bracket.hi()})},
                 {"point", d.point},
                 {"width", d.width},
                 {"depth", d.depth},
                 {"converged", d.converged}};
    emit(r);
    return kExitOk;
}

int cmd_witness(const Options& o)
{
    const hq::MapParams m = hq::analyze(o.c);
    const hq::NonHypWitness w = hq::nonhyperbolicity_witness(m, o.n, o.threads);
    hq::Report r{"witness", base_params(o)};
    r.params["n"] = o.n;
    r.results = hq::to_json(w);
    const bool ok = w.verdict.status == hq::Status::Verified;
    r.status = ok ? hq::ReportStatus::ok : hq::ReportStatus::falsified;
    emit(r);
    return ok ? kExitOk : kExitFalsified;
}

int cmd_plot(const Options& o)
{
    const hq::MapParams m = hq::analyze(o.c);
    if (m.is_boundary())
        throw hq::error(hq::errc::unsupported_parameter, "plot quantities are defined for c < -2");
    std::string tsv;
    hq::Report r{"plot", base_params(o)};
    r.params["quantity"] = o.quantity;
    r.params["grid"] = o.grid;
    r.params["out"] = o.out;

    if (o.quantity == "cantor") {
        const hq::CantorApprox a = hq::build(m, o.depth, hq::kDefaultDepthCap, o.threads);
        r.params["depth"] = o.depth;
        tsv = "lo\thi\n";
        for (const auto& c : a.components)
            tsv += hq::format_double(c.lo()) + '\t' + hq::format_double(c.hi()) + '\n';
        r.results = {{"rows", a.components.size()}};
    } else {
        if (o.grid < 2)
            throw hq::error(hq::errc::domain_error, "--grid must be at least 2");
        std::size_t M = 0;
        if (o.quantity == "mu") {
            const hq::CantorApprox a = hq::build(m, o.depth, hq::kDefaultDepthCap, o.threads);
            M = hq::choose_M(m, a);
            r.results["M"] = M;
        }
        tsv = o.quantity == "mu" ? "x\tmu\n" : "x\tratio\n";
        const double lo = m.alpha();
        const double hi = m.p_plus();
        double best = std::numeric_limits<double>::infinity();
        double best_x = lo;
        for (std::size_t i = 0; i < o.grid; ++i) {
            const double x = i + 1 == o.grid ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(o.grid - 1);
            const double y = o.quantity == "mu" ? hq::weighted_expansion(m, x, M) : hq::G_ratio(m, x);
            if (y < best) {
                best = y;
                best_x = x;
            }
            tsv += hq::format_double(x) + '\t' + hq::format_double(y) + '\n';
        }
        r.results["rows"] = o.grid;
        r.results["min"] = best;
        r.results["argmin_x"] = best_x;
    }
    if (o.out.empty()) {
        std::cout << tsv;
        return kExitOk;
    }
    if (!write_file(o.out, tsv))
        throw hq::error(hq::errc::domain_error, "cannot write " + o.out);
    emit(r);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical hyperbolicity certificates for x^2 + c, c <= -2"};
    app.require_subcommand(1);
    Options o;

    auto add_c = [&](CLI::App* s) { s->add_option("--c", o.c, "map parameter (c <= -2)")->required(); };
    auto add_threads = [&](CLI::App* s) {
        s->add_option("--threads", o.threads, "worker threads, 0 = auto")->capture_default_str();
    };

    auto* analyze = app.add_subcommand("analyze", "fixed points, gap endpoint and regime");
    add_c(analyze);
    add_threads(analyze);

    auto* nw = app.add_subcommand("nw", "depth-n approximation of the non-wandering set");
    add_c(nw);
    nw->add_option("--depth", o.depth)->capture_default_str();
    nw->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    nw->add_option("--out", o.out, "data file; without it the data goes to stdout");
    add_threads(nw);

    auto* certify = app.add_subcommand("certify", "run hyperbolicity certificates");
    add_c(certify);
    certify->add_option("--method", o.method)
        ->check(CLI::IsMember({"gap", "metric", "weight", "all"}))
        ->capture_default_str();
    certify->add_option("--depth", o.depth)->capture_default_str();
    certify->add_option("--n", o.n)->capture_default_str();
    certify->add_option("--grid", o.grid)->capture_default_str();
    add_threads(certify);

    auto* itin = app.add_subcommand("itinerary", "0/1 itinerary of a point");
    add_c(itin);
    itin->add_option("--x", o.x)->required();
    itin->add_option("--n", o.n)->capture_default_str();
    add_threads(itin);

    auto* dec = app.add_subcommand("decode", "point with a given itinerary");
    add_c(dec);
    dec->add_option("--word", o.word)->required();
    dec->add_option("--tol", o.tol)->capture_default_str();
    add_threads(dec);

    auto* wit = app.add_subcommand("witness", "non-hyperbolicity witness at c = -2");
    add_c(wit);
    wit->add_option("--n", o.n)->capture_default_str();
    add_threads(wit);

    auto* plot = app.add_subcommand("plot", "TSV data for mu, ratio or cantor");
    add_c(plot);
    plot->add_option("--quantity", o.quantity)
        ->check(CLI::IsMember({"mu", "ratio", "cantor"}))
        ->capture_default_str();
    plot->add_option("--grid", o.grid)->capture_default_str();
    plot->add_option("--depth", o.depth)->capture_default_str();
    plot->add_option("--out", o.out);
    add_threads(plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (name == "analyze")
            return cmd_analyze(o);
        if (name == "nw")
            return cmd_nw(o);
        if (name == "certify")
            return cmd_certify(o);
        if (name == "itinerary")
            return cmd_itinerary(o);
        if (name == "decode")
            return cmd_decode(o);
        if (name == "witness")
            return cmd_witness(o);
        return cmd_plot(o);
    } catch (const hq::error& e) {
        hq::Report r{name, base_params(o)};
        r.results = {{"error", std::string(hq::to_string(e.kind()))}, {"message", e.what()}};
        r.status = hq::ReportStatus::error;
        emit(r);
        return exit_code_for(e.kind());
    }
}
