#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "errors.hpp"
#include "extended_real.hpp"
#include "legendre.hpp"
#include "numeric.hpp"
#include "psi.hpp"

namespace orlicz {

namespace detail {

inline double omega_numeric(const std::function<double(double)>& h, double bound, double t)
{
    // sup over u of h(tu)/h(u); u ranges over the finite part of h.
    const double top = std::min(1e6, bound);
    const auto grid = log_grid(std::min(1e-6, top * 1e-6), top, 481);
    const auto ratio = [&](double u) {
        const double hu = h(u);
        if (!(hu > 0.0) || std::isinf(hu))
            return 0.0;
        if (t * u > bound)
            return kInf;
        return h(t * u) / hu;
    };
    std::size_t best = 0;
    double best_val = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = ratio(grid[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    if (std::isinf(best_val))
        return kInf;
    const double a = grid[best == 0 ? 0 : best - 1];
    const double b = grid[std::min(best + 1, grid.size() - 1)];
    return std::max(best_val, golden_section_max(ratio, a, b, 1e-10).second);
}

inline double omega_raw(const PsiSpec& spec, double t)
{
    return std::visit(
        [&](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, PowerNorm>)
                return std::pow(t, f.a);
            else if constexpr (std::is_same_v<F, SeparableTwoLevel>)
                return std::max(t * t, std::pow(t, f.r));
            else if constexpr (std::is_same_v<F, BobkovLedouxCap>)
                return t <= 1.0 ? t * t : kInf;
            else if constexpr (std::is_same_v<F, SeparableFromPhi>) {
                if (f.phi.is_power()) {
                    const double s = f.phi.exponent();
                    if (s == 1.0)
                        return t <= 1.0 ? t * t : kInf;
                    return std::max(t * t, std::pow(t, holder_conjugate(s)));
                }
                return omega_numeric([&](double u) { return f.phi.tilde_conjugate(u); },
                                     f.phi.tilde_conjugate_domain_bound(), t);
            } else
                return omega_numeric(f.h, f.domain_bound, t);
        },
        spec.family());
}

// Where omega stops being finite.
inline double omega_domain_bound(const PsiSpec& spec)
{
    if (std::holds_alternative<BobkovLedouxCap>(spec.family()))
        return 1.0;
    if (const auto* f = std::get_if<SeparableFromPhi>(&spec.family()))
        if (f->phi.is_power() && f->phi.exponent() == 1.0)
            return 1.0;
    return kInf;
}

} // namespace detail

/// omega_Psi(t) = sup Psi(tx)/Psi(x); numeric (a lower bound) for user components.
inline ExtendedReal omega(const PsiSpec& spec, double t)
{
    if (!(t > 0.0) || std::isinf(t))
        throw DomainError("omega: t must be positive and finite");
    return ExtendedReal(detail::omega_raw(spec, t));
}

/// Right-continuous inverse sup{u > 0 : omega(u) <= s}.
inline double omega_inv(const PsiSpec& spec, double s)
{
    if (!(s > 0.0) || std::isinf(s))
        throw DomainError("omega_inv: argument must be positive and finite");
    if (const auto* f = std::get_if<PowerNorm>(&spec.family()))
        return std::pow(s, 1.0 / f->a);
    return monotone_sup([&](double u) { return detail::omega_raw(spec, u) <= s; }, 1.0, 1e-14, "omega_inv");
}

/// omega*(t) = t sup{u > 0 : omega(u)/u <= t}.
inline double omega_star(const PsiSpec& spec, double t)
{
    if (!(t > 0.0) || std::isinf(t))
        throw DomainError("omega_star: t must be positive and finite");
    const double u = monotone_sup([&](double v) { return detail::omega_raw(spec, v) / v <= t; }, 1.0, 1e-14,
                                  "omega_star");
    return t * u;
}

/// lambda(t) = sup_{y > 0} (t y - omega(y)).
inline ExtendedReal omega_legendre(const PsiSpec& spec, double t, const LegendreOptions& opt = {})
{
    const ScalarConvexFn fn{[&spec](double y) { return detail::omega_raw(spec, y); },
                            detail::omega_domain_bound(spec)};
    return legendre_1d(fn, t, opt);
}

/// The functions omega, omega^{-1}, omega* and lambda attached to one spec.
class OmegaProfile
{
public:
    explicit OmegaProfile(PsiSpec spec) : spec_(std::move(spec)) {}

    const PsiSpec& spec() const { return spec_; }
    ExtendedReal omega(double t) const { return orlicz::omega(spec_, t); }
    double omega_inv(double s) const { return orlicz::omega_inv(spec_, s); }
    double omega_star(double t) const { return orlicz::omega_star(spec_, t); }
    ExtendedReal lambda(double t) const { return omega_legendre(spec_, t); }

private:
    PsiSpec spec_;
};

/// Legendre transform of one coordinate of a separable Psi (of its convex envelope
/// when the component is not convex).
inline double psi_star_component(const PsiSpec& spec, double y)
{
    const double a = std::abs(y);
    return std::visit(
        [a](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, SeparableTwoLevel>)
                return two_level_conjugate(a, f.r);
            else if constexpr (std::is_same_v<F, SeparableFromPhi>)
                return f.phi.tilde_envelope(a);
            else if constexpr (std::is_same_v<F, BobkovLedouxCap>)
                return a <= 2.0 * f.threshold ? 0.25 * a * a : f.threshold * a - f.threshold * f.threshold;
            else if constexpr (std::is_same_v<F, UserSeparable>)
                return legendre_1d(ScalarConvexFn{f.h, f.domain_bound}, a).value();
            else
                throw UnsupportedSpecError("psi_star_component: PowerNorm is not separable");
        },
        spec.family());
}

/// Psi*(y) = sup_x (<x, y> - Psi(x)).
inline ExtendedReal psi_star(const PsiSpec& spec, std::span<const double> y)
{
    detail::check_dim(spec, y);
    for (double v : y)
        if (!std::isfinite(v))
            throw InputError("psi_star: non-finite coordinate");
    if (const auto* f = std::get_if<PowerNorm>(&spec.family())) {
        const double dn = f->norm.dual()(y);
        if (f->a == 1.0)
            return dn <= 1.0 ? ExtendedReal(0.0) : ExtendedReal::infinity();
        const double as = holder_conjugate(f->a);
        const double c = (f->a - 1.0) * std::pow(f->a, -as);
        return ExtendedReal(c * std::pow(dn, as));
    }
    double s = 0.0;
    for (double v : y) {
        if (v == 0.0)
            continue;
        s += psi_star_component(spec, v);
        if (std::isinf(s))
            return ExtendedReal::infinity();
    }
    return ExtendedReal(s);
}

/// sup{s >= 0 : Psi*(s d) < u} for a direction d.
inline double psi_star_ray_radius(const PsiSpec& spec, std::span<const double> direction, double u)
{
    if (!(u > 0.0) || std::isinf(u))
        throw DomainError("psi_star_ray_radius: u must be positive and finite");
    std::vector<double> buf(direction.size());
    return monotone_sup(
        [&](double s) {
            for (std::size_t i = 0; i < buf.size(); ++i)
                buf[i] = s * direction[i];
            return psi_star(spec, buf).value() < u;
        },
        1.0, 1e-14, "psi_star_ray_radius");
}

struct SupportResult
{
    double value = 0.0;
    std::vector<double> witness; // a point of {Psi* <= p} attaining `value`
};

namespace detail {

// argmax_{y >= 0} (theta y - lambda g(y)) for convex g with g(0) = 0; +inf when unbounded.
template <class G>
double concave_argmax(G&& g, double theta, double lambda)
{
    if (theta <= 0.0)
        return 0.0;
    const auto phi = [&](double y) {
        const double v = g(y);
        return std::isinf(v) ? -kInf : theta * y - lambda * v;
    };
    double Y = 1.0;
    if (phi(2.0 * Y) > phi(Y)) {
        while (phi(2.0 * Y) > phi(Y)) {
            Y *= 2.0;
            if (Y > 1e200)
                return kInf;
        }
    } else {
        while (phi(0.5 * Y) >= phi(Y)) {
            Y *= 0.5;
            if (Y < 1e-300)
                return 0.0;
        }
    }
    return golden_section_max(phi, 0.5 * Y, 2.0 * Y, 1e-13).first;
}

} // namespace detail

/// Support function sup{<theta, y> : Psi*(y) <= p} of the set A_{Psi,p}, with a
/// feasible maximiser.
inline SupportResult a_set_support(const PsiSpec& spec, std::span<const double> theta, double p)
{
    detail::check_dim(spec, theta);
    if (!(p > 0.0) || std::isinf(p))
        throw DomainError("a_set_support: p must be positive and finite");
    SupportResult res;
    res.witness.assign(theta.size(), 0.0);
    if (max_abs(theta) == 0.0)
        return res;

    if (const auto* f = std::get_if<PowerNorm>(&spec.family())) {
        double radius = 1.0;
        if (f->a > 1.0) {
            const double as = holder_conjugate(f->a);
            const double c = (f->a - 1.0) * std::pow(f->a, -as);
            radius = std::pow(p / c, 1.0 / as);
        }
        res.witness = dual_witness(theta, f->norm.q);
        for (double& w : res.witness)
            w *= radius;
        res.value = radius * f->norm(theta);
        return res;
    }

    const auto g = [&spec](double y) { return psi_star_component(spec, y); };
    const auto witness_at = [&](double lambda) {
        std::vector<double> y(theta.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] = std::copysign(detail::concave_argmax(g, std::abs(theta[i]), lambda), theta[i]);
        return y;
    };
    const auto level = [&](std::span<const double> y, double s) {
        double tot = 0.0;
        for (double v : y)
            if (v != 0.0)
                tot += g(s * v);
        return tot;
    };

    // Multiplier lambda with level(y(lambda)) = p; level decreases in lambda.
    const double lam = monotone_sup([&](double l) { return level(witness_at(l), 1.0) > p; }, 1.0, 1e-13,
                                    "a_set_support");
    // Flat pieces of g make the maximiser set at lam an interval; walk the segment
    // between the maximisers just above and just below lam until the level reaches p.
    constexpr double delta = 1e-10;
    const auto lo = witness_at(lam * (1.0 + delta));
    auto hi = witness_at(lam * (1.0 - delta));
    for (double v : lo)
        if (std::isinf(v))
            throw NumericalError("a_set_support: unbounded witness");
    std::vector<char> open(hi.size(), 0);
    for (std::size_t i = 0; i < hi.size(); ++i)
        if (std::isinf(hi[i])) {
            open[i] = 1;
            hi[i] = std::copysign(std::max(2.0 * std::abs(lo[i]), 1.0), theta[i]);
        }
    const auto mix = [&](double t) {
        std::vector<double> y(lo.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] = lo[i] + t * (hi[i] - lo[i]);
        return y;
    };
    if (std::find(open.begin(), open.end(), 1) != open.end())
        for (int k = 0; level(hi, 1.0) <= p; ++k) {
            if (k > 2000)
                throw NumericalError("a_set_support: level set is unbounded");
            for (std::size_t i = 0; i < hi.size(); ++i)
                if (open[i])
                    hi[i] *= 2.0;
        }
    std::vector<double> y;
    if (level(lo, 1.0) > p) {
        y = lo;
        const double s = monotone_sup([&](double t) { return level(y, t) <= p; }, 1.0, 1e-15, "a_set_support");
        for (double& v : y)
            v *= s;
    } else if (level(hi, 1.0) <= p) {
        y = hi;
    } else {
        double a = 0.0, b = 1.0;
        for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
            const double m = 0.5 * (a + b);
            (level(mix(m), 1.0) <= p ? a : b) = m;
        }
        y = mix(a);
    }
    res.value = dot(theta, y);
    res.witness = std::move(y);
    return res;
}

} // namespace orlicz
