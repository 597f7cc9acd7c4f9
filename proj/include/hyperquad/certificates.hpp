#ifndef HYPERQUAD_CERTIFICATES_HPP
#define HYPERQUAD_CERTIFICATES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "interval.hpp"
#include "map.hpp"
#include "metric.hpp"
#include "nonwandering.hpp"
#include "parallel.hpp"
#include "symbolic.hpp"

namespace hyperquad {

/// Slack for every strict "> 1" comparison made by a certificate.
inline constexpr double kStrictTol = 1e-9;

enum class Method { Gap, MethodA, MethodB, NonHyperbolic };
enum class Status { Verified, Falsified, Inapplicable };

inline constexpr std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::Gap: return "gap";
    case Method::MethodA: return "metric";
    case Method::MethodB: return "weight";
    case Method::NonHyperbolic: return "nonhyperbolic";
    }
    return "unknown";
}

inline constexpr std::string_view to_string(Status s) noexcept
{
    switch (s) {
    case Status::Verified: return "Verified";
    case Status::Falsified: return "Falsified";
    case Status::Inapplicable: return "Inapplicable";
    }
    return "Unknown";
}

/// One tested inequality lhs (>|>=) rhs at sample x after n steps.
struct Check {
    double x;
    std::size_t n;
    double lhs;
    double rhs;
};

/// Outcome of a certificate in the form |Df^n(x)| >= prefactor * lambda^n.
///
/// In one dimension the splitting is total: an expanding verdict means
/// E^u = R and E^s = {0} at every point of the set.
struct HyperbolicityVerdict {
    explicit HyperbolicityVerdict(Method m = Method::Gap) : method(m) {}

    Method method;
    double lambda = 0.0;
    double prefactor = 0.0;
    std::size_t verified_n = 0;
    Status status = Status::Inapplicable;
    std::string witness;
    std::size_t sample_count = 0;
    /// Samples whose orbit left [-p, -alpha] u [alpha, p] before step n.
    std::size_t skipped = 0;
    std::vector<Check> checks;
    std::optional<Check> falsification;
    std::optional<double> argmin_x;
    std::string stable_bundle = "{0}";
    std::string unstable_bundle = "R";
};

namespace detail {

/// |Df^n(x)| for n = 1, 2, ... as long as x_0 .. x_{n-1} stay in the hull,
/// capped at N.
inline std::vector<double> expansion_profile(const MapParams& m, double x, std::size_t N)
{
    std::vector<double> out;
    out.reserve(N);
    TrackedOrbit orbit(m, x);
    double d = 1.0;
    for (std::size_t n = 1; n <= N; ++n) {
        if (!orbit.in_hull())
            break;
        d *= std::abs(2.0 * orbit.x());
        out.push_back(d);
        orbit.step();
    }
    return out;
}

inline std::vector<std::vector<double>> expansion_table(const MapParams& m, const std::vector<double>& samples,
                                                        std::size_t N, unsigned threads)
{
    return parallel_map<std::vector<double>>(samples.size(), threads,
                                             [&](std::size_t i) { return expansion_profile(m, samples[i], N); });
}

enum class Compare { at_least, strictly_above };

/// Runs lhs = |Df^n(x)| against rhs = bound(n) over the whole table. Fills
/// `checks`, `skipped` and the first falsifying pair in (x, n) order.
template <class Bound>
void sweep(HyperbolicityVerdict& v, const std::vector<double>& samples,
           const std::vector<std::vector<double>>& table, std::size_t N, Compare cmp, Bound&& bound)
{
    v.checks.clear();
    v.falsification.reset();
    v.skipped = 0;
    v.sample_count = samples.size();
    v.verified_n = N;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& row = table[i];
        if (row.size() < N)
            ++v.skipped;
        for (std::size_t n = 1; n <= row.size(); ++n) {
            const double lhs = row[n - 1];
            const double rhs = bound(n);
            const bool ok = cmp == Compare::at_least ? lhs >= rhs * (1.0 - kStrictTol)
                                                     : lhs > rhs * (1.0 + kStrictTol);
            v.checks.push_back({samples[i], n, lhs, rhs});
            if (!ok && !v.falsification)
                v.falsification = Check{samples[i], n, lhs, rhs};
        }
    }
}

inline double pow_n(double base, std::size_t n) { return std::pow(base, static_cast<double>(n)); }

} // namespace detail

/// Expansion rate |Df^n(x)|^{1/n} along the computed orbit.
inline double expansion_rate(const MapParams& m, double x, std::size_t n)
{
    if (n == 0)
        throw error(errc::domain_error, "rate needs n >= 1");
    double d = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Evaluation e = evaluate(m, x);
        d *= std::abs(e.derivative);
        x = e.value;
    }
    return std::pow(d, 1.0 / static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// Gap certificate

/// alpha > 1/2: every point of the set has |2x| >= 2 alpha > 1, so
/// |Df^n(x)| >= (2 alpha)^n. Also tests the stronger-looking alpha 2^n.
inline HyperbolicityVerdict certify_gap(const MapParams& m, const CantorApprox& a, std::size_t N = 12,
                                        unsigned threads = 1)
{
    if (m.regime() != Regime::EasyGap)
        throw error(errc::wrong_regime, "gap certificate needs alpha > 1/2");
    const double alpha = m.alpha();
    HyperbolicityVerdict v(Method::Gap);
    v.lambda = 2.0 * alpha;
    v.prefactor = alpha;
    const auto samples = sample_points(a);
    const auto table = detail::expansion_table(m, samples, N, threads);
    detail::sweep(v, samples, table, N, detail::Compare::at_least, [&](std::size_t n) {
        return std::max(detail::pow_n(2.0 * alpha, n), alpha * detail::pow_n(2.0, n));
    });
    v.status = (v.lambda > 1.0 + kStrictTol && !v.falsification) ? Status::Verified : Status::Falsified;
    v.witness = v.falsification ? "sample violates |Df^n| >= max((2a)^n, a 2^n)"
                                : "per-step bound |2x| >= 2 alpha on [-p,-alpha] u [alpha,p]";
    return v;
}

// ---------------------------------------------------------------------------
// Hyperbolic-metric certificate

struct MethodACertificate {
    Interval I_L;
    Interval I_R;
    Interval J_hull;
    LambdaEstimate Lambda;
    double c_A;
    std::vector<Check> checks;
    /// Lambda was recomputed on a four times finer grid after a violation.
    bool refined = false;
};

/// c_A = alpha p / (2 (2p - alpha/2)^2).
inline double method_a_prefactor(const MapParams& m) noexcept
{
    const double alpha = m.alpha();
    const double p = m.p_plus();
    const double w = 2.0 * p - 0.5 * alpha;
    return alpha * p / (2.0 * w * w);
}

/// [alpha, p] sits compactly inside I_R = [alpha/2, 2p] where f is monotone
/// with negative Schwarzian, so f expands rho_{I_R} by at least Lambda per
/// step. Converting back to |Df^n| costs the distortion factor c_A.
inline std::pair<MethodACertificate, HyperbolicityVerdict>
certify_method_a(const MapParams& m, const CantorApprox& a, std::size_t grid = 512, std::size_t N = 12,
                 unsigned threads = 1)
{
    if (m.is_boundary())
        throw error(errc::wrong_regime, "at c = -2 the interval [alpha/2, 2p] touches the critical point");
    const double alpha = m.alpha();
    const double p = m.p_plus();
    MethodACertificate cert{Interval(-2.0 * p, -0.5 * alpha), Interval(0.5 * alpha, 2.0 * p), Interval(alpha, p),
                            LambdaEstimate{}, method_a_prefactor(m), {}, false};

    const auto samples = sample_points(a);
    const auto table = detail::expansion_table(m, samples, N, threads);

    HyperbolicityVerdict v(Method::MethodA);
    v.prefactor = cert.c_A;
    auto run = [&](std::size_t g) {
        cert.Lambda = inclusion_contraction(cert.J_hull, cert.I_R, g, threads);
        v.lambda = cert.Lambda.value;
        detail::sweep(v, samples, table, N, detail::Compare::strictly_above,
                      [&](std::size_t n) { return cert.c_A * detail::pow_n(cert.Lambda.value, n); });
    };
    run(grid);
    std::optional<Check> first_violation;
    if (v.falsification) {
        first_violation = v.falsification;
        cert.refined = true;
        run(4 * grid);
    }
    cert.checks = v.checks;
    v.argmin_x = cert.Lambda.argmin_x;

    if (!cert.Lambda.exceeds_one() || cert.Lambda.value <= 1.0 + kStrictTol) {
        v.status = Status::Falsified;
        v.witness = "grid minimum of rho_J/rho_T does not exceed 1 at (" + std::to_string(cert.Lambda.argmin_x)
                    + ", " + std::to_string(cert.Lambda.argmin_y) + ")";
    } else if (v.falsification) {
        v.status = Status::Falsified;
        v.witness = "|Df^n(x)| <= c_A Lambda^n persists after grid refinement";
    } else {
        v.status = Status::Verified;
        v.witness = first_violation ? "verified after refining the Lambda grid"
                                    : "|Df^n(x)| > c_A Lambda^n at every tested pair";
    }
    return {std::move(cert), std::move(v)};
}

// ---------------------------------------------------------------------------
// Weighted-norm certificate

/// G(x) = D((alpha, p), (x, sqrt k)), extended evenly to [-p, -alpha].
/// Diverges at +-alpha and +-p, vanishes at +-sqrt k.
inline double G_value(const MapParams& m, double x)
{
    const double ax = std::abs(x);
    const Interval T(m.alpha(), m.p_plus());
    if (ax == m.alpha() || ax == m.p_plus())
        throw error(errc::boundary_point, "G diverges at the ends of [alpha, p]");
    if (!T.contains_interior(ax))
        throw error(errc::domain_error, "G is defined on (alpha, p) and its mirror image");
    if (ax == m.sqrt_k())
        return 0.0;
    return cross_ratio(CrossRatioFrame(T, Interval::hull(ax, m.sqrt_k())));
}

/// R_G(x) = 2 (p - sqrt k) / (p - alpha) * (x + sqrt k) / (x + alpha).
///
/// This is the cross-ratio expansion of f on the frame ((alpha, p), (x, sqrt k))
/// after cancelling x^2 - k + p = (x - alpha)(x + alpha). The cancelled form is
/// continuous at x = alpha, and R_G(p) = 1.
inline double G_ratio(const MapParams& m, double x)
{
    const double ax = std::abs(x);
    if (ax < m.alpha() || ax > m.p_plus())
        throw error(errc::domain_error, "R_G is defined on [alpha, p] and its mirror image");
    const double p = m.p_plus();
    const double s = m.sqrt_k();
    const double a = m.alpha();
    return 2.0 * (p - s) / (p - a) * (ax + s) / (ax + a);
}

/// One-step expansion in the weighted norm, 2|x| R_G(x)^M.
inline double weighted_expansion(const MapParams& m, double x, std::size_t M)
{
    return 2.0 * std::abs(x) * detail::pow_n(G_ratio(m, x), M);
}

/// Smallest M with R_G(alpha)^M > 1/(2 alpha), then raised until
/// 2|x| R_G(x)^M > 1 at every sample.
inline std::size_t choose_M(const MapParams& m, const CantorApprox& a, std::size_t cap = 64)
{
    if (m.regime() != Regime::HardGap)
        throw error(errc::wrong_regime, "weight exponent selection applies to 0 < alpha <= 1/2");
    const double r_alpha = G_ratio(m, m.alpha());
    const double two_alpha = 2.0 * m.alpha();
    std::size_t M = 1;
    while (two_alpha * detail::pow_n(r_alpha, M) <= 1.0 + kStrictTol) {
        if (++M > cap)
            throw error(errc::escalation_failed, "R_G(alpha)^M never exceeds 1/(2 alpha) below the cap");
    }
    const auto samples = sample_points(a);
    for (; M <= cap; ++M) {
        const bool all = std::all_of(samples.begin(), samples.end(), [&](double x) {
            return weighted_expansion(m, x, M) > 1.0 + kStrictTol;
        });
        if (all)
            return M;
    }
    throw error(errc::escalation_failed, "no M up to " + std::to_string(cap) + " expands every sample");
}

struct MethodBCertificate {
    std::size_t M;
    double ratio_alpha;
    double lambda_B;
    double argmin_x;
    double omega_lo;
    double omega_hi;
    std::size_t samples;
};

/// Weighted norm |v|_w = G(x)^M |v|. The certificate is the one-step
/// condition 2|x| R_G(x)^M > 1; omega_lo / omega_hi are sampled on points
/// strictly inside (alpha, p) because G is unbounded at the ends.
inline std::pair<MethodBCertificate, HyperbolicityVerdict>
certify_method_b(const MapParams& m, const CantorApprox& a, std::size_t M, std::size_t N = 12,
                 unsigned threads = 1)
{
    if (m.is_boundary())
        throw error(errc::wrong_regime, "weighted norm needs c < -2");
    const auto samples = sample_points(a);
    const auto mu = detail::parallel_map<double>(samples.size(), threads,
                                                 [&](std::size_t i) { return weighted_expansion(m, samples[i], M); });
    std::size_t arg = 0;
    for (std::size_t i = 1; i < mu.size(); ++i)
        if (mu[i] < mu[arg])
            arg = i;

    double omega_lo = std::numeric_limits<double>::infinity();
    double omega_hi = 0.0;
    for (double x : samples) {
        const double ax = std::abs(x);
        if (!(ax > m.alpha() && ax < m.p_plus()))
            continue;
        const double w = detail::pow_n(G_value(m, x), M);
        omega_lo = std::min(omega_lo, w);
        omega_hi = std::max(omega_hi, w);
    }
    if (omega_hi == 0.0)
        throw error(errc::zero_value, "no interior sample with a positive weight");
    if (omega_lo == 0.0)
        throw error(errc::zero_value, "weight vanishes at a sample point");

    MethodBCertificate cert{M, G_ratio(m, m.alpha()), mu[arg], samples[arg], omega_lo, omega_hi, samples.size()};

    HyperbolicityVerdict v(Method::MethodB);
    v.lambda = cert.lambda_B;
    v.prefactor = omega_lo / omega_hi;
    v.argmin_x = cert.argmin_x;
    const auto table = detail::expansion_table(m, samples, N, threads);
    detail::sweep(v, samples, table, N, detail::Compare::at_least,
                  [&](std::size_t n) { return v.prefactor * detail::pow_n(v.lambda, n); });
    if (cert.lambda_B <= 1.0 + kStrictTol) {
        v.status = Status::Falsified;
        v.falsification = Check{cert.argmin_x, 1, cert.lambda_B, 1.0};
        v.witness = "2|x| R_G(x)^M <= 1 at the recorded argmin";
    } else if (v.falsification) {
        v.status = Status::Falsified;
        v.witness = "|Df^n(x)| < (omega_lo/omega_hi) lambda_B^n at a sample";
    } else {
        v.status = Status::Verified;
        v.witness = "2|x| R_G(x)^M > 1 at every sample; omega_lo/omega_hi taken over interior samples "
                    "only, G is unbounded at +-alpha and +-p";
    }
    return {cert, std::move(v)};
}

// ---------------------------------------------------------------------------
// c = -2

struct NonHypWitness {
    std::vector<double> orbit;
    /// Df^n(0), n = 1..N.
    std::vector<double> zero_derivatives;
    /// |Df^n(-2)|, n = 1..N.
    std::vector<double> expanding_derivatives;
    /// expanding_derivatives[n-1] == 4^n bit for bit.
    bool exact_powers_of_four;
    DensityResult density_evidence;
    HyperbolicityVerdict verdict;
};

/// 0 lies in the non-wandering set (the orbit of pi(dense_word(7)) is
/// 0.05-dense in [-2, 2]) and its derivative cocycle vanishes, while the next
/// point of its orbit, -2, expands like 4^n. No uniform splitting with
/// constants c, C > 0 and lambda > 1 can hold at both.
inline NonHypWitness nonhyperbolicity_witness(const MapParams& m, std::size_t N = 15, unsigned threads = 1)
{
    if (!m.is_boundary())
        throw error(errc::unsupported_parameter, "the non-hyperbolicity witness is for c = -2");
    if (N < 1)
        throw error(errc::domain_error, "witness needs N >= 1");
    NonHypWitness w;
    for (const auto& pt : orbit_with_cocycle(m, 0.0, 2))
        w.orbit.push_back(pt.x);
    const auto from_zero = orbit_with_cocycle(m, 0.0, N);
    const auto from_minus_two = orbit_with_cocycle(m, -2.0, N);
    w.exact_powers_of_four = true;
    bool zero_vanishes = true;
    for (std::size_t n = 1; n <= N; ++n) {
        w.zero_derivatives.push_back(from_zero[n].cumulative_derivative);
        const double e = std::abs(from_minus_two[n].cumulative_derivative);
        w.expanding_derivatives.push_back(e);
        zero_vanishes = zero_vanishes && from_zero[n].cumulative_derivative == 0.0;
        w.exact_powers_of_four = w.exact_powers_of_four && e == std::ldexp(1.0, static_cast<int>(2 * n));
    }
    w.density_evidence = density_check(m, dense_word(7), 0.05, 1e-8, threads);

    HyperbolicityVerdict& v = w.verdict;
    v.method = Method::NonHyperbolic;
    v.lambda = 4.0;
    v.prefactor = 0.0;
    v.verified_n = N;
    v.sample_count = 2;
    v.stable_bundle = "none";
    v.unstable_bundle = "none";
    const bool ok = zero_vanishes && w.exact_powers_of_four && w.density_evidence.pass;
    v.status = ok ? Status::Verified : Status::Falsified;
    v.witness = "0 is non-wandering with Df^n(0) = 0 for all n, so the splitting at 0 must be stable; "
                "Df(0) maps it to {0} at -2, yet |Df^n(-2)| = 4^n forces E^s(-2) = {0} and E^u(-2) = R. "
                "The cocycle at 0 cannot carry a nonzero stable direction into f(0) = -2, so no constants "
                "c, C > 0, lambda > 1 give a continuous invariant splitting on [-2, 2]";
    return w;
}

// ---------------------------------------------------------------------------
// Cross-validation

struct RateRow {
    std::size_t n;
    double min_rate;
    double max_rate;
};

struct LyapunovScan {
    double min_rate;
    double max_rate;
    std::vector<RateRow> per_n;
    std::size_t used;
    std::size_t skipped;
};

/// |Df^n(x)|^{1/n} over every sample whose first N iterates stay in the hull.
inline LyapunovScan lyapunov_scan(const MapParams& m, const CantorApprox& a, std::size_t N = 12,
                                  unsigned threads = 1)
{
    if (m.is_boundary())
        throw error(errc::wrong_regime, "lyapunov_scan needs c < -2");
    if (N < 1)
        throw error(errc::domain_error, "scan needs N >= 1");
    const auto samples = sample_points(a);
    const auto table = detail::expansion_table(m, samples, N, threads);
    LyapunovScan scan{std::numeric_limits<double>::infinity(), 0.0, {}, 0, 0};
    for (std::size_t n = 1; n <= N; ++n)
        scan.per_n.push_back({n, std::numeric_limits<double>::infinity(), 0.0});
    for (const auto& row : table) {
        if (row.size() < N) {
            ++scan.skipped;
            continue;
        }
        ++scan.used;
        for (std::size_t n = 1; n <= N; ++n) {
            const double r = std::pow(row[n - 1], 1.0 / static_cast<double>(n));
            auto& pr = scan.per_n[n - 1];
            pr.min_rate = std::min(pr.min_rate, r);
            pr.max_rate = std::max(pr.max_rate, r);
        }
    }
    for (const auto& pr : scan.per_n) {
        scan.min_rate = std::min(scan.min_rate, pr.min_rate);
        scan.max_rate = std::max(scan.max_rate, pr.max_rate);
    }
    return scan;
}

} // namespace hyperquad

#endif
