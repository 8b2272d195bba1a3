#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Hoelder conjugate a* = a/(a-1), with 1* = inf and inf* = 1.
inline double holder_conjugate(double a)
{
    if (a == 1.0)
        return kInf;
    if (std::isinf(a))
        return 1.0;
    return a / (a - 1.0);
}

/// Compensated (Neumaier) accumulator.
class NeumaierSum
{
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Pairwise summation; the reduction tree depends only on the length.
inline double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v)
            s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline double mean(std::span<const double> v)
{
    if (v.empty())
        throw DomainError("mean of an empty range");
    return pairwise_sum(v) / static_cast<double>(v.size());
}

inline double max_abs(std::span<const double> x)
{
    double m = 0.0;
    for (double v : x)
        m = std::max(m, std::abs(v));
    return m;
}

/// l_q norm for q in [1, inf], computed with max-scaling.
inline double lp_norm(std::span<const double> x, double q)
{
    const double m = max_abs(x);
    if (m == 0.0 || std::isinf(q))
        return m;
    double s = 0.0;
    if (q == 2.0) {
        for (double v : x) {
            const double r = v / m;
            s += r * r;
        }
        return m * std::sqrt(s);
    }
    if (q == 1.0) {
        for (double v : x)
            s += std::abs(v);
        return s;
    }
    for (double v : x)
        s += std::pow(std::abs(v) / m, q);
    return m * std::pow(s, 1.0 / q);
}

inline double l2_norm(std::span<const double> x) { return lp_norm(x, 2.0); }

inline double dot(std::span<const double> a, std::span<const double> b)
{
    NeumaierSum s;
    for (std::size_t i = 0; i < a.size(); ++i)
        s.add(a[i] * b[i]);
    return s.value();
}

/// A unit vector w in the l_{q*} ball with <x, w> = |x|_q (the dual-norm witness).
inline std::vector<double> dual_witness(std::span<const double> x, double q)
{
    std::vector<double> w(x.size(), 0.0);
    const double nx = lp_norm(x, q);
    if (nx == 0.0)
        return w;
    if (std::isinf(q)) {
        const auto it = std::max_element(x.begin(), x.end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
        const auto j = static_cast<std::size_t>(it - x.begin());
        w[j] = *it > 0 ? 1.0 : -1.0;
        return w;
    }
    if (q == 1.0) {
        for (std::size_t i = 0; i < x.size(); ++i)
            w[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
        return w;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = std::abs(x[i]) / nx;
        w[i] = std::copysign(std::pow(r, q - 1.0), x[i]);
    }
    return w;
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t n)
{
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

/// Golden-section search for a maximum of f on [a, b]; returns (argmax, max).
template <class F>
std::pair<double, double> golden_section_max(F&& f, double a, double b, double rel_width = 1e-12,
                                             int max_iter = 300)
{
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > rel_width * std::max(std::abs(a), std::abs(b)); ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

/// Largest argument in (0, inf) at which the monotone predicate still holds, i.e.
/// sup{u > 0 : ok(u)} where ok is true on (0, u*] or (0, u*) and false above.
/// Bracketing starts at `start` and doubles/halves; bisection is geometric.
template <class Pred>
double monotone_sup(Pred&& ok, double start, double rel_tol, const char* what, int max_doublings = 1100)
{
    double lo, hi;
    if (ok(start)) {
        lo = start;
        hi = 2.0 * start;
        int k = 0;
        while (ok(hi)) {
            lo = hi;
            hi *= 2.0;
            if (++k > max_doublings || std::isinf(hi))
                throw NumericalError(std::string(what) + ": failed to bracket from above");
        }
    } else {
        hi = start;
        lo = 0.5 * start;
        int k = 0;
        while (!ok(lo)) {
            hi = lo;
            lo *= 0.5;
            if (++k > max_doublings || lo == 0.0)
                throw NumericalError(std::string(what) + ": failed to bracket from below");
        }
    }
    for (int it = 0; it < 400 && hi - lo > rel_tol * hi; ++it) {
        const double mid = std::sqrt(lo * hi);
        const double m = (mid > lo && mid < hi) ? mid : 0.5 * (lo + hi);
        if (ok(m))
            lo = m;
        else
            hi = m;
    }
    return lo;
}

} // namespace orlicz
