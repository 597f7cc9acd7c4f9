#ifndef HYPERQUAD_MAP_HPP
#define HYPERQUAD_MAP_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "interval.hpp"

namespace hyperquad {

enum class Regime { NonHypBoundary, HardGap, EasyGap };

inline constexpr std::string_view to_string(Regime r) noexcept
{
    switch (r) {
    case Regime::NonHypBoundary: return "NonHypBoundary";
    case Regime::HardGap: return "HardGap";
    case Regime::EasyGap: return "EasyGap";
    }
    return "Unknown";
}

/// Parameter below which the escape gap is wide enough (alpha > 1/2) that
/// every step expands by at least 2*alpha > 1.
inline const double kEasyGapThreshold = -(5.0 + 2.0 * std::sqrt(5.0)) / 4.0;

enum class Branch { negative, positive };

/// f_c(x) = x^2 + c for c <= -2 together with its structural constants.
///
/// Constructed only through `analyze`, which fixes every derived quantity in
/// closed form:
///   p_plus  = (1 + sqrt(1 + 4k)) / 2,  p_minus = (1 - sqrt(1 + 4k)) / 2
///   alpha   = sqrt(k - p_plus)   (so f(alpha) = -p_plus, f^2(alpha) = p_plus)
/// with k = -c. The escape gap (-alpha, alpha) and everything outside
/// [-p_plus, p_plus] leave for infinity.
class MapParams {
public:
    double c() const noexcept { return c_; }
    double k() const noexcept { return k_; }
    double p_plus() const noexcept { return p_plus_; }
    double p_minus() const noexcept { return p_minus_; }
    double alpha() const noexcept { return alpha_; }
    double sqrt_k() const noexcept { return sqrt_k_; }
    Regime regime() const noexcept { return regime_; }

    bool is_boundary() const noexcept { return regime_ == Regime::NonHypBoundary; }

    friend MapParams analyze(double c);

private:
    MapParams() = default;

    double c_ = 0.0;
    double k_ = 0.0;
    double p_plus_ = 0.0;
    double p_minus_ = 0.0;
    double alpha_ = 0.0;
    double sqrt_k_ = 0.0;
    Regime regime_ = Regime::NonHypBoundary;
};

inline MapParams analyze(double c)
{
    if (!std::isfinite(c) || c > -2.0)
        throw error(errc::unsupported_parameter,
                    "c = " + std::to_string(c) + " is outside the supported range c <= -2");
    MapParams m;
    m.c_ = c;
    m.k_ = -c;
    const double disc = std::sqrt(1.0 + 4.0 * m.k_);
    m.p_plus_ = 0.5 * (1.0 + disc);
    m.p_minus_ = 0.5 * (1.0 - disc);
    m.sqrt_k_ = std::sqrt(m.k_);
    if (c == -2.0) {
        m.alpha_ = 0.0;
        m.regime_ = Regime::NonHypBoundary;
    } else {
        m.alpha_ = std::sqrt(std::max(0.0, m.k_ - m.p_plus_));
        m.regime_ = m.alpha_ > 0.5 ? Regime::EasyGap : Regime::HardGap;
    }
    return m;
}

struct Evaluation {
    double value;
    double derivative;
};

inline Evaluation evaluate(const MapParams& m, double x) noexcept
{
    return {x * x + m.c(), 2.0 * x};
}

struct OrbitPoint {
    double x;
    /// Signed product of 2*x_j over j < i.
    double cumulative_derivative;
};

/// x_0 .. x_n with the derivative cocycle along the way (n + 1 entries).
/// Throws `overflow` once an iterate exceeds `escape_bound` in magnitude;
/// the default bound is p_plus + 1.
inline std::vector<OrbitPoint> orbit_with_cocycle(const MapParams& m, double x, std::size_t n,
                                                  std::optional<double> escape_bound = std::nullopt)
{
    if (n < 1)
        throw error(errc::domain_error, "orbit length must be at least 1");
    const double bound = escape_bound.value_or(m.p_plus() + 1.0);
    std::vector<OrbitPoint> out;
    out.reserve(n + 1);
    double d = 1.0;
    for (std::size_t i = 0;; ++i) {
        if (!(std::abs(x) <= bound))
            throw error(errc::overflow, "iterate " + std::to_string(i) + " left |x| <= "
                                            + std::to_string(bound));
        out.push_back({x, d});
        if (i == n)
            break;
        const Evaluation e = evaluate(m, x);
        d *= e.derivative;
        x = e.value;
    }
    return out;
}

inline double inverse_branch(const MapParams& m, double y, Branch b)
{
    if (!(y >= m.c()))
        throw error(errc::domain_error, "inverse branch needs y >= c");
    const double r = std::sqrt(y - m.c());
    return b == Branch::positive ? r : -r;
}

namespace detail {

/// Forward iteration that follows points of the invariant set without being
/// thrown off by rounding. A running bound on the accumulated forward error
/// is kept; whenever an iterate is within that bound of one of the landmark
/// points +-alpha, +-p_plus it is placed exactly on the landmark. Those
/// points close up into alpha -> -p -> p, so endpoint orbits stay exact.
class TrackedOrbit {
public:
    TrackedOrbit(const MapParams& m, double x)
        : m_(&m), x_(x), err_(eps * std::abs(x))
    {
        snap();
    }

    double x() const noexcept { return x_; }

    /// Iterate lies in [-p, -alpha] u [alpha, p].
    bool in_hull() const noexcept
    {
        const double a = std::abs(x_);
        return a >= m_->alpha() && a <= m_->p_plus();
    }

    void step() noexcept
    {
        err_ = 2.0 * std::abs(x_) * err_ + 2.0 * eps * (x_ * x_ + m_->k());
        x_ = x_ * x_ + m_->c();
        snap();
    }

private:
    static constexpr double eps = std::numeric_limits<double>::epsilon();

    void snap() noexcept
    {
        const double tol = std::max(8.0 * err_, 4.0 * eps * m_->p_plus());
        const double a = std::abs(x_);
        if (std::abs(a - m_->p_plus()) <= tol) {
            x_ = std::copysign(m_->p_plus(), x_);
            err_ = eps * m_->p_plus();
        } else if (std::abs(a - m_->alpha()) <= tol) {
            x_ = m_->alpha() == 0.0 ? 0.0 : std::copysign(m_->alpha(), x_);
            err_ = eps * m_->p_plus();
        }
    }

    const MapParams* m_;
    double x_;
    double err_;
};

} // namespace detail

struct EscapeResult {
    bool escaped = false;
    std::optional<std::size_t> steps;
};

/// Checks x_0 .. x_{n_max} for a landing in the open gap (-alpha, alpha) or
/// outside [-p, p].
inline EscapeResult escapes(const MapParams& m, double x, std::size_t n_max)
{
    detail::TrackedOrbit orbit(m, x);
    for (std::size_t i = 0; i <= n_max; ++i) {
        if (!orbit.in_hull())
            return {true, i};
        if (i < n_max)
            orbit.step();
    }
    return {};
}

} // namespace hyperquad

#endif
