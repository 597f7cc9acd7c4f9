// Independent reference computations used only by the tests. Nothing here
// calls into the closed forms it is used to check.
#ifndef HYPERQUAD_TESTS_ORACLES_HPP
#define HYPERQUAD_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <random>
#include <string>

namespace oracle {

/// Bisection on a sign change; runs until the bracket stops shrinking.
inline double bisect(const std::function<double(double)>& g, double lo, double hi)
{
    double glo = g(lo);
    for (int i = 0; i < 2000; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        const double gm = g(mid);
        if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Positive fixed point of x^2 + c by bisection on [1, 1 + |c|].
inline double fixed_point(double c)
{
    return bisect([c](double x) { return x * x + c - x; }, 1.0, 1.0 - c);
}

/// alpha in (0, sqrt(-c)) with f(f(alpha)) = p, found by bisection.
inline double gap_endpoint(double c)
{
    const double p = fixed_point(c);
    auto f = [c](double x) { return x * x + c; };
    return bisect([&](double x) { return f(f(x)) - p; }, 0.0, std::sqrt(-c));
}

/// D(T, J) straight from the four endpoints.
inline double cross_ratio(double t0, double j0, double j1, double t1)
{
    return (j1 - j0) * (t1 - t0) / ((j0 - t0) * (t1 - j1));
}

/// Central-difference Schwarzian with step h.
inline double schwarzian_fd(const std::function<double(double)>& g, double x, double h)
{
    const double f2p = g(x + 2 * h), f1p = g(x + h), f0 = g(x), f1m = g(x - h), f2m = g(x - 2 * h);
    const double d1 = (f1p - f1m) / (2 * h);
    const double d2 = (f1p - 2 * f0 + f1m) / (h * h);
    const double d3 = (f2p - 2 * f1p + 2 * f1m - f2m) / (2 * h * h * h);
    return d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
}

/// Period-2 orbit of x^2 + c: roots of x^2 + x + c + 1 = 0.
inline double period_two_point(double c, int sign)
{
    return 0.5 * (-1.0 + sign * std::sqrt(1.0 - 4.0 * (c + 1.0)));
}

inline std::string random_word(std::mt19937_64& rng, std::size_t n)
{
    std::string s(n, '0');
    std::bernoulli_distribution coin(0.5);
    for (auto& ch : s)
        ch = coin(rng) ? '1' : '0';
    return s;
}

} // namespace oracle

#endif
