#ifndef HYPERQUAD_SYMBOLIC_HPP
#define HYPERQUAD_SYMBOLIC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "interval.hpp"
#include "map.hpp"
#include "parallel.hpp"

namespace hyperquad {

/// Finite itinerary over {0, 1}.
class Word {
public:
    explicit Word(std::string symbols, bool boundary_ambiguous = false)
        : symbols_(std::move(symbols)), ambiguous_(boundary_ambiguous)
    {
        if (symbols_.empty())
            throw error(errc::domain_error, "empty word");
        if (symbols_.find_first_not_of("01") != std::string::npos)
            throw error(errc::domain_error, "word symbols must be 0 or 1");
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    int operator[](std::size_t i) const noexcept { return symbols_[i] - '0'; }
    int back() const noexcept { return symbols_.back() - '0'; }
    const std::string& str() const noexcept { return symbols_; }
    bool boundary_ambiguous() const noexcept { return ambiguous_; }

    /// sigma^i applied to the word.
    Word shifted(std::size_t i) const
    {
        if (i >= symbols_.size())
            throw error(errc::domain_error, "shift past the end of the word");
        return Word(symbols_.substr(i), ambiguous_);
    }

    bool operator==(const Word& o) const noexcept { return symbols_ == o.symbols_; }

private:
    std::string symbols_;
    bool ambiguous_;
};

struct PartitionSpec {
    Interval cell0;
    Interval cell1;

    const Interval& cell(int symbol) const noexcept { return symbol == 0 ? cell0 : cell1; }
};

/// [-2, 0] | [0, 2] at c = -2, otherwise [-p, -alpha] | [alpha, p].
inline PartitionSpec partition(const MapParams& m)
{
    const double p = m.p_plus();
    const double a = m.alpha();
    return {Interval(-p, -a), Interval(a, p)};
}

/// Symbols of x_0 .. x_{n-1}. At c = -2 the shared boundary 0 is coded 1 and
/// the word is flagged.
inline Word itinerary(const MapParams& m, double x, std::size_t n)
{
    if (n == 0)
        throw error(errc::domain_error, "itinerary length must be positive");
    const PartitionSpec cells = partition(m);
    std::string symbols;
    symbols.reserve(n);
    bool ambiguous = false;
    detail::TrackedOrbit orbit(m, x);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = orbit.x();
        if (m.is_boundary() && xi == 0.0) {
            symbols.push_back('1');
            ambiguous = true;
        } else if (cells.cell1.contains(xi)) {
            symbols.push_back('1');
        } else if (cells.cell0.contains(xi)) {
            symbols.push_back('0');
        } else {
            throw error(errc::escaped_orbit,
                        "iterate " + std::to_string(i) + " left the coding cells");
        }
        if (i + 1 < n)
            orbit.step();
    }
    return Word(std::move(symbols), ambiguous);
}

struct Decoded {
    Interval bracket;
    double point;
    double width;
    /// Word length actually used, including the periodic tail.
    std::size_t depth;
    bool converged;
};

namespace detail {

inline Interval pull_back(const MapParams& m, const PartitionSpec& cells, int symbol, const Interval& y)
{
    double lo = std::sqrt(std::max(0.0, y.lo() - m.c()));
    double hi = std::sqrt(std::max(0.0, y.hi() - m.c()));
    if (symbol == 0) {
        lo = -lo;
        hi = -hi;
        std::swap(lo, hi);
    }
    const Interval& cell = cells.cell(symbol);
    lo = std::clamp(lo, cell.lo(), cell.hi());
    hi = std::clamp(hi, cell.lo(), cell.hi());
    return Interval(lo, hi);
}

} // namespace detail

/// Backward construction of the cylinder with itinerary `w`: start from the
/// cell of the last symbol and apply the inverse branches right to left.
/// When the bracket is still wider than `tol`, the word is extended with
/// copies of its last symbol, up to `depth_cap` symbols in total. Failure to
/// reach `tol` is reported through `converged`, never thrown.
inline Decoded decode(const MapParams& m, const Word& w, double tol = 1e-8, std::size_t depth_cap = 256)
{
    const PartitionSpec cells = partition(m);
    const int tail_symbol = w.back();
    Interval tail = cells.cell(tail_symbol);
    for (std::size_t extra = 0;; ++extra) {
        Interval bracket = tail;
        for (std::size_t i = w.size() - 1; i-- > 0;)
            bracket = detail::pull_back(m, cells, w[i], bracket);
        const std::size_t depth = w.size() + extra;
        const bool converged = bracket.length() <= tol;
        if (converged || depth >= depth_cap)
            return {bracket, bracket.midpoint(), bracket.length(), depth, converged};
        tail = detail::pull_back(m, cells, tail_symbol, tail);
    }
}

/// |f(pi(sigma^i w)) - pi(sigma^{i+1} w)| with both points decoded backward.
inline double semiconjugacy_defect(const MapParams& m, const Word& w, std::size_t i, double tol = 1e-8)
{
    if (i + 1 >= w.size())
        throw error(errc::domain_error, "shift index needs i + 1 < |w|");
    const double here = decode(m, w.shifted(i), tol).point;
    const double next = decode(m, w.shifted(i + 1), tol).point;
    return std::abs(evaluate(m, here).value - next);
}

/// Every word of length 1, 2, ..., L, length-major then lexicographic.
inline Word dense_word(std::size_t L)
{
    if (L == 0)
        throw error(errc::domain_error, "dense_word needs L >= 1");
    std::string out;
    for (std::size_t len = 1; len <= L; ++len) {
        const std::size_t count = std::size_t{1} << len;
        for (std::size_t v = 0; v < count; ++v)
            for (std::size_t b = len; b-- > 0;)
                out.push_back(((v >> b) & 1u) ? '1' : '0');
    }
    return Word(std::move(out));
}

struct DensityResult {
    double max_gap;
    bool pass;
    std::size_t points;
};

/// Largest gap in [-2, 2] left by the orbit of pi(w) under f_{-2}. Orbit
/// points are decoded one by one from the shifted words; forward iteration
/// is never used because it doubles errors at every step.
inline DensityResult density_check(const MapParams& m, const Word& w, double epsilon, double tol = 1e-8,
                                   unsigned threads = 1)
{
    if (!m.is_boundary())
        throw error(errc::unsupported_parameter, "density_check requires c = -2");
    std::vector<double> pts = detail::parallel_map<double>(
        w.size(), threads, [&](std::size_t i) { return decode(m, w.shifted(i), tol).point; });
    std::sort(pts.begin(), pts.end());
    const double lo = -m.p_plus();
    const double hi = m.p_plus();
    double gap = pts.front() - lo;
    for (std::size_t i = 1; i < pts.size(); ++i)
        gap = std::max(gap, pts[i] - pts[i - 1]);
    gap = std::max(gap, hi - pts.back());
    return {gap, gap < epsilon, pts.size()};
}

/// |f_{-2}(2 cos 2 pi t) - 2 cos 4 pi t|, zero up to rounding by the double-angle
/// identity.
inline double chebyshev_oracle(double t) noexcept
{
    const double x = 2.0 * std::cos(2.0 * std::numbers::pi * t);
    return std::abs((x * x - 2.0) - 2.0 * std::cos(4.0 * std::numbers::pi * t));
}

} // namespace hyperquad

#endif
