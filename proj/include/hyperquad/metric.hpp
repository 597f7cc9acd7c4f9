#ifndef HYPERQUAD_METRIC_HPP
#define HYPERQUAD_METRIC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "interval.hpp"
#include "map.hpp"
#include "parallel.hpp"

namespace hyperquad {

/// A subinterval J of T; L and R are the two pieces of T \ J.
class CrossRatioFrame {
public:
    CrossRatioFrame(Interval T, Interval J) : T_(T), J_(J)
    {
        if (!T.contains(J))
            throw error(errc::domain_error, "cross-ratio frame needs J inside T");
    }

    const Interval& T() const noexcept { return T_; }
    const Interval& J() const noexcept { return J_; }
    double left() const noexcept { return J_.lo() - T_.lo(); }
    double right() const noexcept { return T_.hi() - J_.hi(); }

private:
    Interval T_;
    Interval J_;
};

/// |J||T| / (|L||R|), extended to +inf when a side collapses and to 0 when J
/// does.
inline double cross_ratio(const CrossRatioFrame& f)
{
    const double j = f.J().length();
    const double l = f.left();
    const double r = f.right();
    if (j == 0.0 && (l == 0.0 || r == 0.0))
        throw error(errc::degenerate_frame, "cross-ratio is 0/0");
    if (l == 0.0 || r == 0.0)
        return std::numeric_limits<double>::infinity();
    return j * f.T().length() / (l * r);
}

/// Hyperbolic (Poincare) distance of x and y inside T,
/// log(|L u J| |J u R| / (|L| |R|)) = log(1 + D) with J the segment between
/// them. The log1p form keeps relative accuracy for nearby points.
inline double hyp_dist(const Interval& T, double x, double y)
{
    if (!T.contains_interior(x) || !T.contains_interior(y))
        throw error(errc::boundary_point, "hyperbolic distance needs points inside T");
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    const double l = lo - T.lo();
    const double r = T.hi() - hi;
    return std::log1p((hi - lo) * T.length() / (l * r));
}

/// Limit of rho_J(x, y) / rho_T(x, y) as y -> x: the ratio of the two
/// metric densities at x.
inline double hyp_density_ratio(const Interval& J, const Interval& T, double x)
{
    if (!T.contains(J))
        throw error(errc::domain_error, "density ratio needs J inside T");
    if (!J.contains_interior(x))
        throw error(errc::boundary_point, "density ratio needs x inside J");
    const double dj = J.length() / ((x - J.lo()) * (J.hi() - x));
    const double dt = T.length() / ((x - T.lo()) * (T.hi() - x));
    return dj / dt;
}

struct LambdaEstimate {
    double value;
    double argmin_x;
    double argmin_y;
    std::size_t grid;

    bool exceeds_one() const noexcept { return value > 1.0; }
};

namespace detail {

struct RatioSample {
    double value = std::numeric_limits<double>::infinity();
    double x = 0.0;
    double y = 0.0;

    bool better_than(const RatioSample& o) const noexcept
    {
        return std::tie(value, x, y) < std::tie(o.value, o.x, o.y);
    }
};

inline RatioSample metric_ratio(const Interval& J, const Interval& T, double x, double y)
{
    if (x > y)
        std::swap(x, y);
    if (x == y)
        return {hyp_density_ratio(J, T, x), x, y};
    return {hyp_dist(J, x, y) / hyp_dist(T, x, y), x, y};
}

} // namespace detail

/// Grid estimate of Lambda = min over x, y in J of rho_J(x, y) / rho_T(x, y).
///
/// Pairs are taken from `grid` cell midpoints of J, the diagonal through the
/// density ratio. The minimiser is then revisited on a ten times finer local
/// grid spanning one coarse cell around it. The result is an estimate, not a
/// bound; `exceeds_one()` reports whether the inclusion contracts.
inline LambdaEstimate inclusion_contraction(const Interval& J, const Interval& T, std::size_t grid = 512,
                                            unsigned threads = 1)
{
    if (!T.compactly_contains(J))
        throw error(errc::not_compactly_contained, "J must be compactly contained in T");
    if (grid < 2)
        throw error(errc::domain_error, "grid must have at least two points");
    const double h = J.length() / static_cast<double>(grid);
    std::vector<double> xs(grid);
    for (std::size_t i = 0; i < grid; ++i)
        xs[i] = J.lo() + h * (static_cast<double>(i) + 0.5);

    const auto rows = detail::parallel_map<detail::RatioSample>(grid, threads, [&](std::size_t i) {
        detail::RatioSample best;
        for (std::size_t j = i; j < grid; ++j) {
            const auto s = detail::metric_ratio(J, T, xs[i], xs[j]);
            if (s.better_than(best))
                best = s;
        }
        return best;
    });
    detail::RatioSample best;
    for (const auto& r : rows)
        if (r.better_than(best))
            best = r;

    constexpr int zoom = 10;
    const double step = h / zoom;
    const double x0 = best.x;
    const double y0 = best.y;
    for (int a = -zoom; a <= zoom; ++a) {
        const double u = x0 + a * step;
        if (!J.contains_interior(u))
            continue;
        for (int b = -zoom; b <= zoom; ++b) {
            const double v = y0 + b * step;
            if (!J.contains_interior(v) || v < u)
                continue;
            const auto s = detail::metric_ratio(J, T, u, v);
            if (s.better_than(best))
                best = s;
        }
    }
    return {best.value, best.x, best.y, grid};
}

/// B(g, T, J) = D(g(T), g(J)) / D(T, J) for a monotone g with derivative dg.
///
/// Written as the product of length-distortion quotients
///   (|gJ|/|J|) (|gT|/|T|) / ((|gL|/|L|) (|gR|/|R|)),
/// where a quotient over a collapsed piece is replaced by |dg| at that
/// point. This is the limit of B along intervals exhausting the frame.
template <class G, class DG>
double cross_ratio_distortion(G&& g, DG&& dg, const Interval& T, const Interval& J)
{
    const CrossRatioFrame frame(T, J);
    auto stretch = [&](double a, double b) {
        if (a == b)
            return std::abs(dg(a));
        return std::abs(g(b) - g(a)) / (b - a);
    };
    const double num = stretch(J.lo(), J.hi()) * stretch(T.lo(), T.hi());
    const double den = stretch(T.lo(), J.lo()) * stretch(J.hi(), T.hi());
    if (den == 0.0)
        return std::numeric_limits<double>::infinity();
    return num / den;
}

inline void require_monotone(const MapParams&, const Interval& T)
{
    if (T.contains_interior(0.0))
        throw error(errc::not_monotone, "f is not monotone on an interval containing 0 in its interior");
}

inline double map_cross_ratio_B(const MapParams& m, const Interval& T, const Interval& J)
{
    require_monotone(m, T);
    return cross_ratio_distortion([&](double x) { return evaluate(m, x).value; },
                                  [&](double x) { return evaluate(m, x).derivative; }, T, J);
}

/// Sf(x) = f'''/f' - 3/2 (f''/f')^2 = -3 / (2 x^2) for f(x) = x^2 + c.
inline double schwarzian(const MapParams&, double x)
{
    if (x == 0.0)
        throw error(errc::critical_point, "Schwarzian undefined at the critical point");
    return -1.5 / (x * x);
}

struct Lemma36Check {
    double lhs;
    double rhs;
    bool pass;
};

/// rho_{f(T)}(f(x), f(y)) >= rho_T(x, y) for f monotone on T.
inline Lemma36Check lemma36_check(const MapParams& m, const Interval& T, double x, double y)
{
    require_monotone(m, T);
    if (!T.contains_interior(x) || !T.contains_interior(y))
        throw error(errc::boundary_point, "points must lie inside T");
    if (x == y)
        return {0.0, 0.0, true};
    const Interval image = Interval::hull(evaluate(m, T.lo()).value, evaluate(m, T.hi()).value);
    const double lhs = hyp_dist(image, evaluate(m, x).value, evaluate(m, y).value);
    const double rhs = hyp_dist(T, x, y);
    return {lhs, rhs, lhs >= rhs - 1e-12};
}

} // namespace hyperquad

#endif
