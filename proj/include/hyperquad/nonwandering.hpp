#ifndef HYPERQUAD_NONWANDERING_HPP
#define HYPERQUAD_NONWANDERING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "error.hpp"
#include "interval.hpp"
#include "map.hpp"
#include "parallel.hpp"
#include "symbolic.hpp"

namespace hyperquad {

inline constexpr std::size_t kDefaultDepthCap = 24;

/// Depth-n outer approximation of the non-wandering set: the points of
/// J = [-p, -alpha] u [alpha, p] whose first n iterates stay in J, stored as
/// 2^{n+1} disjoint closed intervals in ascending order.
struct CantorApprox {
    std::size_t depth;
    std::vector<Interval> components;
    MapParams params;

    double total_length() const noexcept
    {
        return std::accumulate(components.begin(), components.end(), 0.0,
                               [](double s, const Interval& c) { return s + c.length(); });
    }
};

inline CantorApprox initial_cover(const MapParams& m)
{
    const PartitionSpec cells = partition(m);
    return {0, {cells.cell0, cells.cell1}, m};
}

/// One more level: the positive inverse branch of every component, plus its
/// mirror image for the negative branch.
inline CantorApprox refine(const CantorApprox& a, unsigned threads = 1)
{
    const MapParams& m = a.params;
    if (m.is_boundary())
        throw error(errc::unsupported_parameter, "refine needs c < -2");
    const double lo_bound = m.alpha();
    const double hi_bound = m.p_plus();
    const std::size_t n = a.components.size();
    std::vector<Interval> right = detail::parallel_map<Interval>(n, threads, [&](std::size_t i) {
        const Interval& y = a.components[i];
        const double lo = std::clamp(inverse_branch(m, y.lo(), Branch::positive), lo_bound, hi_bound);
        const double hi = std::clamp(inverse_branch(m, y.hi(), Branch::positive), lo_bound, hi_bound);
        return Interval(lo, hi);
    });
    std::vector<Interval> out;
    out.reserve(2 * n);
    for (std::size_t i = n; i-- > 0;)
        out.emplace_back(-right[i].hi(), -right[i].lo());
    out.insert(out.end(), right.begin(), right.end());
    return {a.depth + 1, std::move(out), m};
}

inline CantorApprox build(const MapParams& m, std::size_t depth, std::size_t depth_cap = kDefaultDepthCap,
                          unsigned threads = 1)
{
    if (m.is_boundary())
        throw error(errc::unsupported_parameter,
                    "at c = -2 the non-wandering set is all of [-2, 2]; use nw_full_interval");
    if (depth > depth_cap)
        throw error(errc::domain_error,
                    "depth " + std::to_string(depth) + " exceeds cap " + std::to_string(depth_cap));
    CantorApprox a = initial_cover(m);
    while (a.depth < depth)
        a = refine(a, threads);
    return a;
}

/// Component endpoints and midpoints, sorted and deduplicated.
inline std::vector<double> sample_points(const CantorApprox& a)
{
    std::vector<double> pts;
    pts.reserve(3 * a.components.size());
    for (const Interval& c : a.components) {
        pts.push_back(c.lo());
        pts.push_back(c.midpoint());
        pts.push_back(c.hi());
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

struct FullInterval {
    Interval interval;
    /// Orbit of the all-words point up to length 7 fills [-2, 2] to within 0.05.
    DensityResult evidence;
};

inline FullInterval nw_full_interval(const MapParams& m, unsigned threads = 1)
{
    if (!m.is_boundary())
        throw error(errc::unsupported_parameter, "nw_full_interval requires c = -2");
    return {Interval(-m.p_plus(), m.p_plus()), density_check(m, dense_word(7), 0.05, 1e-8, threads)};
}

} // namespace hyperquad

#endif
