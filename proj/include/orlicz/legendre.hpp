#pragma once

#include <cmath>
#include <functional>

#include "extended_real.hpp"
#include "numeric.hpp"

namespace orlicz {

/// A one-dimensional function phi: [0, inf) -> [0, inf] with phi(0) = 0.
/// Values above `domain_bound` are +inf.
struct ScalarConvexFn
{
    std::function<double(double)> fn;
    double domain_bound = kInf;

    double operator()(double y) const { return y > domain_bound ? kInf : fn(y); }
};

struct LegendreOptions
{
    std::size_t resolution = 2048;
    double grid_lo = 1e-6;
    double grid_hi = 1e6;
    // Grids are extended by this many decades when the maximiser sits on an edge.
    double extend_decades = 12.0;
    double infinity_cap = 1e150;
};

/// sup_{y > 0} (t*y - phi(y)) by log-grid search and golden-section refinement.
inline ExtendedReal legendre_1d(const ScalarConvexFn& phi, double t, const LegendreOptions& opt = {})
{
    if (!(t >= 0.0) || std::isinf(t))
        throw DomainError("legendre_1d: t must be finite and non-negative");

    const auto objective = [&](double y) {
        const double v = phi(y);
        return std::isinf(v) ? -kInf : t * y - v;
    };

    double lo = opt.grid_lo;
    double hi = std::min(opt.grid_hi, phi.domain_bound);
    if (hi <= lo)
        lo = hi * 1e-12;
    const double step = std::pow(10.0, opt.extend_decades);

    for (int round = 0; round < 64; ++round) {
        const auto grid = log_grid(lo, hi, opt.resolution);
        std::size_t best = 0;
        double best_val = -kInf;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double v = objective(grid[i]);
            if (v > best_val) {
                best_val = v;
                best = i;
            }
        }
        const std::size_t last = grid.size() - 1;

        if (best == 0 && lo > 1e-300 && objective(grid[1]) <= best_val) {
            hi = grid[1];
            lo = std::max(lo / step, 1e-300);
            continue;
        }
        if (best == last && hi < phi.domain_bound) {
            if (hi >= opt.infinity_cap)
                return ExtendedReal::infinity();
            lo = grid[last - 1];
            hi = std::min(hi * step, phi.domain_bound);
            continue;
        }
        const double a = grid[best == 0 ? 0 : best - 1];
        const double b = grid[best == last ? last : best + 1];
        const auto [y, v] = golden_section_max(objective, a, b, 1e-12);
        (void)y;
        return ExtendedReal(std::max({0.0, best_val, v}));
    }
    throw NumericalError("legendre_1d: grid extension did not terminate");
}

} // namespace orlicz
