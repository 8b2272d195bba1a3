#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "legendre.hpp"
#include "numeric.hpp"

namespace orlicz {

// The two-regime component h_r(y) = y^2 for |y| <= 1 and |y|^r for |y| > 1 (r >= 1),
// together with its Legendre transform and convex envelope. The same function
// appears as the separable two-level Orlicz function and as the tail function
// tilde-Phi of a power law Phi(t) = t^r.

inline double two_level_component(double y, double r)
{
    const double a = std::abs(y);
    return a <= 1.0 ? a * a : std::pow(a, r);
}

/// sup_{y >= 0} (|u| y - h_r(y)); equal to the transform of the convex envelope.
inline double two_level_conjugate(double u, double r)
{
    const double a = std::abs(u);
    // maximiser restricted to [0, 1]
    const double inner = a <= 2.0 ? 0.25 * a * a : a - 1.0;
    // maximiser restricted to [1, inf)
    double outer;
    if (r == 1.0)
        outer = a > 1.0 ? kInf : a - 1.0;
    else
        outer = a >= r ? (r - 1.0) * std::pow(a / r, holder_conjugate(r)) : a - 1.0;
    return std::max(inner, outer);
}

/// Greatest convex minorant of h_r. h_r is convex for r >= 2; for r < 2 a tangent
/// segment bridges the quadratic and the power branch.
inline double two_level_convex_envelope(double y, double r)
{
    const double a = std::abs(y);
    if (r >= 2.0)
        return two_level_component(a, r);
    if (r == 1.0)
        return a <= 0.5 ? a * a : a - 0.25;
    const double y1 = std::pow(r * r / (4.0 * (r - 1.0)), 1.0 / (2.0 - r));
    const double y0 = 0.5 * r * std::pow(y1, r - 1.0);
    if (a <= y0)
        return a * a;
    if (a <= y1)
        return 2.0 * y0 * a - y0 * y0;
    return std::pow(a, r);
}

/// Convex tail function Phi: [0, inf) -> [0, inf] with Phi(0) = 0, Phi(1) = 1.
/// Built-in: the power Phi(t) = t^s (s >= 1). Custom functions are supported for
/// sampling and numerics but cannot be serialized.
class PhiSpec
{
public:
    static PhiSpec power(double s)
    {
        if (!(s >= 1.0) || std::isinf(s))
            throw InputError("PhiSpec::power: exponent must be finite and >= 1");
        PhiSpec p;
        p.exponent_ = s;
        return p;
    }

    static PhiSpec custom(std::function<double(double)> phi, std::string name = "custom")
    {
        if (!phi)
            throw InputError("PhiSpec::custom: empty function");
        if (std::abs(phi(0.0)) > 1e-12 || std::abs(phi(1.0) - 1.0) > 1e-9)
            throw InputError("PhiSpec::custom: Phi must satisfy Phi(0) = 0 and Phi(1) = 1");
        PhiSpec p;
        p.fn_ = std::move(phi);
        p.name_ = std::move(name);
        return p;
    }

    bool is_power() const { return !fn_; }
    double exponent() const { return exponent_; }
    const std::string& name() const { return name_; }

    double operator()(double t) const
    {
        const double a = std::abs(t);
        return is_power() ? std::pow(a, exponent_) : fn_(a);
    }

    /// tilde-Phi: quadratic on [0, 1], Phi above.
    double tilde(double y) const
    {
        const double a = std::abs(y);
        if (is_power())
            return two_level_component(a, exponent_);
        return a <= 1.0 ? a * a : fn_(a);
    }

    /// Legendre transform of tilde-Phi (may be +inf).
    double tilde_conjugate(double u) const
    {
        if (is_power())
            return two_level_conjugate(u, exponent_);
        const ScalarConvexFn f{[this](double y) { return tilde(y); }};
        return legendre_1d(f, std::abs(u)).value();
    }

    /// Where tilde_conjugate becomes infinite (only Phi(t) = t among powers).
    double tilde_conjugate_domain_bound() const
    {
        return (is_power() && exponent_ == 1.0) ? 1.0 : kInf;
    }

    /// Convex envelope of tilde-Phi, i.e. the transform of tilde_conjugate.
    double tilde_envelope(double y) const
    {
        if (is_power())
            return two_level_convex_envelope(y, exponent_);
        const ScalarConvexFn f{[this](double u) { return tilde_conjugate(u); },
                               tilde_conjugate_domain_bound()};
        return legendre_1d(f, std::abs(y)).value();
    }

    /// Generalised inverse sup{t >= 0 : Phi(t) <= v}.
    double inverse(double v) const
    {
        if (!(v >= 0.0))
            throw DomainError("PhiSpec::inverse: argument must be non-negative");
        if (v == 0.0)
            return 0.0;
        if (std::isinf(v))
            return kInf;
        if (is_power())
            return std::pow(v, 1.0 / exponent_);
        return monotone_sup([&](double t) { return fn_(t) <= v; }, 1.0, 1e-14, "PhiSpec::inverse");
    }

private:
    PhiSpec() = default;

    double exponent_ = 2.0;
    std::function<double(double)> fn_;
    std::string name_ = "power";
};

} // namespace orlicz
