#ifndef HYPERQUAD_INTERVAL_HPP
#define HYPERQUAD_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "error.hpp"

namespace hyperquad {

/// Closed real interval [lo, hi] with finite endpoints.
class Interval {
public:
    constexpr Interval() = default;

    Interval(double lo, double hi) : lo_(lo), hi_(hi)
    {
        if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
            throw error(errc::domain_error,
                        "invalid interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }

    /// Interval spanned by two points in either order.
    static Interval hull(double a, double b) { return Interval(std::min(a, b), std::max(a, b)); }

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }
    constexpr double length() const noexcept { return hi_ - lo_; }
    constexpr double midpoint() const noexcept { return lo_ + 0.5 * (hi_ - lo_); }

    constexpr bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    constexpr bool contains_interior(double x) const noexcept { return lo_ < x && x < hi_; }
    constexpr bool contains(const Interval& o) const noexcept { return lo_ <= o.lo_ && o.hi_ <= hi_; }

    /// Closure of `o` sits inside the open interior of this interval.
    constexpr bool compactly_contains(const Interval& o) const noexcept
    {
        return lo_ < o.lo_ && o.hi_ < hi_;
    }

    std::optional<Interval> intersect(const Interval& o) const
    {
        const double a = std::max(lo_, o.lo_);
        const double b = std::min(hi_, o.hi_);
        if (a > b)
            return std::nullopt;
        return Interval(a, b);
    }

    constexpr bool operator==(const Interval&) const = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

} // namespace hyperquad

#endif
