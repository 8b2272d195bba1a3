#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "extended_real.hpp"
#include "numeric.hpp"
#include "phi.hpp"

namespace orlicz {

/// An l_q norm on R^n, q in [1, inf].
struct NormDescriptor
{
    double q = 2.0;

    static NormDescriptor l1() { return {1.0}; }
    static NormDescriptor l2() { return {2.0}; }
    static NormDescriptor linf() { return {kInf}; }
    static NormDescriptor lq(double q)
    {
        if (!(q >= 1.0))
            throw InputError("NormDescriptor: q must be >= 1");
        return {q};
    }

    NormDescriptor dual() const { return {holder_conjugate(q)}; }
    double operator()(std::span<const double> x) const { return lp_norm(x, q); }
    std::string name() const
    {
        if (q == 1.0)
            return "l1";
        if (q == 2.0)
            return "l2";
        if (std::isinf(q))
            return "linf";
        return "lq";
    }
};

/// Psi(x) = |x|^a for a norm |.| and a >= 1.
struct PowerNorm
{
    NormDescriptor norm;
    double a = 2.0;
};

/// Psi(x) = sum_i h_r(x_i) with h_r(y) = y^2 on |y| <= 1 and |y|^r above.
struct SeparableTwoLevel
{
    double r = 2.0;
};

/// Psi(x) = sum_i (tilde-Phi)^*(x_i).
struct SeparableFromPhi
{
    PhiSpec phi;
};

/// Psi(x) = sum_i H(x_i), H(y) = y^2 for |y| <= 1/2 and +inf beyond.
struct BobkovLedouxCap
{
    double threshold = 0.5;
};

/// Psi(x) = sum_i h(|x_i|) for a user-supplied component h with h(0) = 0.
/// h is +inf above `domain_bound`. Tabulated components keep their knots so
/// that they can be serialized.
struct UserSeparable
{
    std::function<double(double)> h;
    double domain_bound = kInf;
    std::vector<std::pair<double, double>> knots;
    std::string name = "user";
};

using PsiFamily = std::variant<PowerNorm, SeparableTwoLevel, SeparableFromPhi, BobkovLedouxCap, UserSeparable>;

/// Component built from (t, h(t)) knots by log-log linear interpolation, extended
/// beyond the first and last knot by the end-segment power laws.
inline std::function<double(double)> tabulated_component(std::vector<std::pair<double, double>> knots)
{
    if (knots.size() < 2)
        throw InputError("tabulated component: need at least two knots");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i].first > 0.0) || !(knots[i].second > 0.0))
            throw InputError("tabulated component: knots must be positive");
        if (i > 0 && !(knots[i].first > knots[i - 1].first))
            throw InputError("tabulated component: knot abscissae must increase");
    }
    return [k = std::move(knots)](double y) {
        const double a = std::abs(y);
        if (a == 0.0)
            return 0.0;
        const double la = std::log(a);
        std::size_t i = 0;
        if (a >= k.back().first)
            i = k.size() - 2;
        else if (a > k.front().first)
            while (k[i + 1].first < a)
                ++i;
        const double x0 = std::log(k[i].first), x1 = std::log(k[i + 1].first);
        const double y0 = std::log(k[i].second), y1 = std::log(k[i + 1].second);
        return std::exp(y0 + (y1 - y0) * (la - x0) / (x1 - x0));
    };
}

class PsiSpec
{
public:
    PsiSpec(PsiFamily family, std::size_t dim) : family_(std::move(family)), dim_(dim)
    {
        if (dim_ == 0)
            throw InputError("PsiSpec: dimension must be positive");
        validate();
    }

    static PsiSpec power_norm(NormDescriptor norm, double a, std::size_t dim)
    {
        return PsiSpec(PowerNorm{norm, a}, dim);
    }
    static PsiSpec two_level(double r, std::size_t dim) { return PsiSpec(SeparableTwoLevel{r}, dim); }
    static PsiSpec from_phi(PhiSpec phi, std::size_t dim) { return PsiSpec(SeparableFromPhi{std::move(phi)}, dim); }
    static PsiSpec bobkov_ledoux_cap(std::size_t dim) { return PsiSpec(BobkovLedouxCap{}, dim); }
    static PsiSpec user_separable(std::function<double(double)> h, std::size_t dim, double domain_bound = kInf,
                                  std::string name = "user")
    {
        return PsiSpec(UserSeparable{std::move(h), domain_bound, {}, std::move(name)}, dim);
    }
    static PsiSpec tabulated(std::vector<std::pair<double, double>> knots, std::size_t dim,
                             double domain_bound = kInf)
    {
        auto h = tabulated_component(knots);
        return PsiSpec(UserSeparable{std::move(h), domain_bound, std::move(knots), "tabulated"}, dim);
    }

    std::size_t dim() const { return dim_; }
    const PsiFamily& family() const { return family_; }

    std::string family_name() const
    {
        return std::visit(
            [](const auto& f) -> std::string {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, PowerNorm>)
                    return "PowerNorm";
                else if constexpr (std::is_same_v<F, SeparableTwoLevel>)
                    return "SeparableTwoLevel";
                else if constexpr (std::is_same_v<F, SeparableFromPhi>)
                    return "SeparableFromPhi";
                else if constexpr (std::is_same_v<F, BobkovLedouxCap>)
                    return "BobkovLedouxCap";
                else
                    return "UserSeparable";
            },
            family_);
    }

    bool is_separable() const { return !std::holds_alternative<PowerNorm>(family_); }

    /// Whether Psi itself is convex (as opposed to only equivalent to a convex function).
    bool is_convex() const
    {
        if (const auto* f = std::get_if<SeparableTwoLevel>(&family_))
            return f->r >= 2.0;
        return !std::holds_alternative<UserSeparable>(family_);
    }

    /// The one-dimensional component h of a separable family; +inf outside its domain.
    double component(double y) const
    {
        const double a = std::abs(y);
        return std::visit(
            [a](const auto& f) -> double {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, SeparableTwoLevel>)
                    return two_level_component(a, f.r);
                else if constexpr (std::is_same_v<F, SeparableFromPhi>)
                    return f.phi.tilde_conjugate(a);
                else if constexpr (std::is_same_v<F, BobkovLedouxCap>)
                    return a <= f.threshold ? a * a : kInf;
                else if constexpr (std::is_same_v<F, UserSeparable>)
                    return a > f.domain_bound ? kInf : f.h(a);
                else
                    throw UnsupportedSpecError("component: PowerNorm is not separable");
            },
            family_);
    }

    /// Largest |y| at which the component is finite.
    double component_domain_bound() const
    {
        if (const auto* f = std::get_if<BobkovLedouxCap>(&family_))
            return f->threshold;
        if (const auto* f = std::get_if<SeparableFromPhi>(&family_))
            return f->phi.tilde_conjugate_domain_bound();
        if (const auto* f = std::get_if<UserSeparable>(&family_))
            return f->domain_bound;
        return kInf;
    }

private:
    void validate() const
    {
        std::visit(
            [](const auto& f) {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, PowerNorm>) {
                    if (!(f.a >= 1.0) || std::isinf(f.a))
                        throw InputError("PowerNorm: exponent a must be finite and >= 1");
                    if (!(f.norm.q >= 1.0))
                        throw InputError("PowerNorm: inner norm exponent must be >= 1");
                } else if constexpr (std::is_same_v<F, SeparableTwoLevel>) {
                    if (!(f.r > 1.0) || std::isinf(f.r))
                        throw InputError("SeparableTwoLevel: r must be finite and > 1");
                } else if constexpr (std::is_same_v<F, BobkovLedouxCap>) {
                    if (f.threshold != 0.5)
                        throw InputError("BobkovLedouxCap: threshold is fixed at 1/2");
                } else if constexpr (std::is_same_v<F, UserSeparable>) {
                    if (!f.h)
                        throw InputError("UserSeparable: empty component function");
                    if (!(f.domain_bound > 0.0))
                        throw InputError("UserSeparable: domain bound must be positive");
                }
            },
            family_);
    }

    PsiFamily family_;
    std::size_t dim_;
};

/// (K, alpha, beta) growth envelope with the log-Sobolev constant D and defect d.
struct GrowthEnvelope
{
    double K = 1.0;
    double alpha = 2.0;
    double beta = 2.0;
    double D = 1.0;
    double d = 0.0;

    void validate() const
    {
        if (!(K >= 1.0) || std::isinf(K))
            throw DomainError("GrowthEnvelope: K must be finite and >= 1");
        if (!(alpha > 1.0 && alpha <= 2.0))
            throw DomainError("GrowthEnvelope: alpha must lie in (1, 2]");
        if (!(beta >= 2.0) || std::isinf(beta))
            throw DomainError("GrowthEnvelope: beta must lie in [2, inf)");
        if (!(D > 0.0) || std::isinf(D))
            throw DomainError("GrowthEnvelope: D must be positive and finite");
        if (!(d >= 0.0) || std::isinf(d))
            throw DomainError("GrowthEnvelope: d must be non-negative and finite");
    }
};

namespace detail {

inline void check_dim(const PsiSpec& spec, std::span<const double> x)
{
    if (x.size() != spec.dim())
        throw InputError("dimension mismatch: spec has dim " + std::to_string(spec.dim()) + ", got " +
                         std::to_string(x.size()));
}

inline double eval_psi_raw(const PsiSpec& spec, std::span<const double> x)
{
    if (const auto* f = std::get_if<PowerNorm>(&spec.family())) {
        const double n = f->norm(x);
        return f->a == 1.0 ? n : std::pow(n, f->a);
    }
    double s = 0.0;
    for (double v : x) {
        if (v == 0.0)
            continue;
        const double c = spec.component(v);
        if (std::isinf(c))
            return kInf;
        s += c;
    }
    return s;
}

} // namespace detail

/// Psi(x).
inline ExtendedReal eval_psi(const PsiSpec& spec, std::span<const double> x)
{
    detail::check_dim(spec, x);
    for (double v : x)
        if (std::isnan(v))
            throw InputError("eval_psi: NaN coordinate");
    return ExtendedReal(detail::eval_psi_raw(spec, x));
}

/// Psi_p(x) = Psi(p x) / p.
inline ExtendedReal eval_psi_p(const PsiSpec& spec, double p, std::span<const double> x)
{
    if (!(p > 0.0) || std::isinf(p))
        throw DomainError("eval_psi_p: p must be positive and finite");
    detail::check_dim(spec, x);
    std::vector<double> px(x.begin(), x.end());
    for (double& v : px)
        v *= p;
    return (1.0 / p) * eval_psi(spec, px);
}

inline constexpr double kDefaultNormTol = 1e-10;

/// |x|_{Psi_p} = inf{a > 0 : Psi(p x / a) <= p}, by bracket expansion from |x|_2
/// followed by bisection to relative width `tol`.
inline double psi_p_norm(const PsiSpec& spec, double p, std::span<const double> x, double tol = kDefaultNormTol)
{
    if (!(p > 0.0) || std::isinf(p))
        throw DomainError("psi_p_norm: p must be positive and finite");
    if (!(tol > 0.0 && tol <= 1e-3))
        throw DomainError("psi_p_norm: tol must lie in (0, 1e-3]");
    detail::check_dim(spec, x);
    for (double v : x)
        if (!std::isfinite(v))
            throw InputError("psi_p_norm: non-finite coordinate");
    const double start = l2_norm(x);
    if (start == 0.0)
        return 0.0;

    std::vector<double> buf(x.size());
    const auto ok = [&](double a) {
        const double s = p / a;
        for (std::size_t i = 0; i < x.size(); ++i)
            buf[i] = s * x[i];
        return detail::eval_psi_raw(spec, buf) <= p;
    };

    double lo, hi;
    int k = 0;
    if (ok(start)) {
        hi = start;
        lo = 0.5 * start;
        while (ok(lo)) {
            hi = lo;
            lo *= 0.5;
            if (++k > 200)
                throw NumericalError("psi_p_norm: failed to bracket within 200 halvings");
        }
    } else {
        lo = start;
        hi = 2.0 * start;
        while (!ok(hi)) {
            lo = hi;
            hi *= 2.0;
            if (++k > 200)
                throw NumericalError("psi_p_norm: failed to bracket within 200 doublings");
        }
    }
    // Keep the invariant ok(hi) && !ok(lo).
    for (int it = 0; it < 200 && hi - lo > 0.5 * tol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ok(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

/// sqrt(p)|x|_2 + p^{1/r*}|x|_r, the closed-form equivalent of the two-level norm
/// for r >= 2 (r = inf gives sqrt(p)|x|_2 + p|x|_inf).
inline double two_level_equiv_norm(std::span<const double> x, double p, double r)
{
    if (!(p >= 1.0) || std::isinf(p))
        throw DomainError("two_level_equiv_norm: p must be finite and >= 1");
    if (!(r >= 2.0))
        throw DomainError("two_level_equiv_norm: r must be >= 2");
    return std::sqrt(p) * l2_norm(x) + std::pow(p, 1.0 / holder_conjugate(r)) * lp_norm(x, r);
}

/// p^{1/r*} |(x*_i)_{i <= floor p}|_r + sqrt(p) |(x*_i)_{i > floor p}|_2 with x* the
/// non-increasing rearrangement of |x_i|; the equivalent form for r in [1, 2].
inline double rearranged_two_level_norm(std::span<const double> x, double p, double r)
{
    if (!(p >= 1.0) || std::isinf(p))
        throw DomainError("rearranged_two_level_norm: p must be finite and >= 1");
    if (!(r >= 1.0 && r <= 2.0))
        throw DomainError("rearranged_two_level_norm: r must lie in [1, 2]");
    std::vector<double> a(x.size());
    std::transform(x.begin(), x.end(), a.begin(), [](double v) { return std::abs(v); });
    std::stable_sort(a.begin(), a.end(), std::greater<>());
    const std::size_t head = std::min(a.size(), static_cast<std::size_t>(std::floor(p)));
    const std::span<const double> all(a);
    const double top = lp_norm(all.first(head), r);
    const double rest = l2_norm(all.subspan(head));
    return std::pow(p, 1.0 / holder_conjugate(r)) * top + std::sqrt(p) * rest;
}

struct Violation
{
    std::string condition;
    std::size_t ray = 0;
    double t = 0.0;
    std::string detail;
};

struct ConditionReport
{
    std::size_t rays = 0;
    std::size_t points = 0;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

namespace detail {

inline std::vector<double> random_ray(std::mt19937_64& gen, std::size_t n, double log10_lo, double log10_hi)
{
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(log10_lo, log10_hi);
    std::vector<double> x(n);
    for (double& v : x)
        v = g(gen);
    const double nx = l2_norm(x);
    const double scale = std::pow(10.0, u(gen)) / (nx > 0 ? nx : 1.0);
    for (double& v : x)
        v *= scale;
    return x;
}

inline std::vector<double> scaled(std::span<const double> x, double t)
{
    std::vector<double> y(x.begin(), x.end());
    for (double& v : y)
        v *= t;
    return y;
}

} // namespace detail

/// Samples random rays and checks (C1)-(C3), (C5), (C6) at grid points t in [1e-3, 1e3].
/// Left-continuity (C4) is not observable on a grid and is not checked.
inline ConditionReport check_condition_C(const PsiSpec& spec, std::size_t ray_samples, std::uint64_t seed)
{
    if (ray_samples == 0)
        throw DomainError("check_condition_C: need at least one ray");
    ConditionReport rep;
    std::mt19937_64 gen(seed);
    const auto grid = log_grid(1e-3, 1e3, 61);
    const std::size_t n = spec.dim();

    const std::vector<double> zero(n, 0.0);
    if (detail::eval_psi_raw(spec, zero) != 0.0)
        rep.violations.push_back({"C1", 0, 0.0, "Psi(0) != 0"});

    constexpr double slack = 1e-12;
    for (std::size_t r = 0; r < ray_samples; ++r) {
        const auto x = detail::random_ray(gen, n, 0.0, 0.0);
        ++rep.rays;

        if (detail::eval_psi_raw(spec, detail::scaled(x, 1e-12)) > 1e-6)
            rep.violations.push_back({"C1", r, 1e-12, "Psi does not vanish near 0"});

        double prev_ratio = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double t = grid[i];
            const auto tx = detail::scaled(x, t);
            const auto mtx = detail::scaled(x, -t);
            const double v = detail::eval_psi_raw(spec, tx);
            const double vm = detail::eval_psi_raw(spec, mtx);
            ++rep.points;
            if (!(v > 0.0))
                rep.violations.push_back({"C2", r, t, "Psi(tx) is not positive"});
            if (!(v == vm || std::abs(v - vm) <= slack * std::max(std::abs(v), std::abs(vm))))
                rep.violations.push_back({"C6", r, t, "Psi(tx) != Psi(-tx)"});
            const double ratio = v / t;
            if (i > 0 && !(ratio >= prev_ratio * (1.0 - slack)))
                rep.violations.push_back({"C5", r, t, "t -> Psi(tx)/t decreases"});
            prev_ratio = ratio;
        }

        const double big = detail::eval_psi_raw(spec, detail::scaled(x, 1e6));
        const double unit = detail::eval_psi_raw(spec, x);
        if (!(big >= 1e6 * unit * (1.0 - slack)) && !(big > 1e12))
            rep.violations.push_back({"C3", r, 1e6, "Psi does not grow without bound along the ray"});
    }
    return rep;
}

struct GrowthReport
{
    bool pass = true;
    double growth_margin = kInf; // min over samples of the relative slack in the two-sided ratio bound
    double norm_bound_margin = kInf;  // min relative slack in Psi(x) <= K(|x|^alpha + |x|^beta)
    double worst_margin = kInf;
    std::size_t samples = 0;
    std::vector<Violation> violations;
};

/// Checks K^{-1} t^alpha <= Psi(tx)/Psi(x) <= K t^beta on sampled (x, t >= 1) and the
/// derived bound Psi(x) <= K(|x|_Psi^alpha + |x|_Psi^beta).
inline GrowthReport check_growth(const PsiSpec& spec, const GrowthEnvelope& env, std::size_t ray_samples,
                                 std::uint64_t seed)
{
    // Exponents are checked as given, so envelopes outside 1 < alpha <= 2 <= beta can be tested too.
    if (!(env.K >= 1.0) || std::isinf(env.K))
        throw DomainError("check_growth: K must be finite and >= 1");
    if (!(env.alpha > 0.0 && env.alpha <= env.beta) || std::isinf(env.beta))
        throw DomainError("check_growth: exponents must satisfy 0 < alpha <= beta < inf");
    GrowthReport rep;
    std::mt19937_64 gen(seed);
    const auto grid = log_grid(1.0, 1e3, 31);
    constexpr double slack = 1e-9;

    for (std::size_t r = 0; r < ray_samples; ++r) {
        const auto x = detail::random_ray(gen, spec.dim(), -3.0, 3.0);
        const double base = detail::eval_psi_raw(spec, x);
        if (!(base > 0.0) || std::isinf(base))
            continue;
        ++rep.samples;
        for (double t : grid) {
            const double v = detail::eval_psi_raw(spec, detail::scaled(x, t));
            const double ratio = v / base;
            const double lower = std::pow(t, env.alpha) / env.K;
            const double upper = env.K * std::pow(t, env.beta);
            const double m_lo = ratio / lower - 1.0;
            const double m_hi = std::isinf(ratio) ? -1.0 : upper / ratio - 1.0;
            const double m = std::min(m_lo, m_hi);
            rep.growth_margin = std::min(rep.growth_margin, m);
            if (m < -slack && rep.violations.size() < 20)
                rep.violations.push_back({"growth", r, t, m_lo < m_hi ? "below K^-1 t^alpha" : "above K t^beta"});
        }
        const double nrm = psi_p_norm(spec, 1.0, x);
        const double bound = env.K * (std::pow(nrm, env.alpha) + std::pow(nrm, env.beta));
        const double lm = bound / base - 1.0;
        rep.norm_bound_margin = std::min(rep.norm_bound_margin, lm);
        if (lm < -slack && rep.violations.size() < 20)
            rep.violations.push_back({"norm_bound", r, 1.0, "Psi(x) exceeds K(|x|^alpha + |x|^beta)"});
    }
    rep.worst_margin = std::min(rep.growth_margin, rep.norm_bound_margin);
    rep.pass = rep.samples > 0 && rep.worst_margin >= -slack;
    return rep;
}

/// Empirical quasi-triangle constant sup |x+y| / (|x| + |y|) of |.|_{Psi_p} over random pairs.
inline double empirical_triangle_constant(const PsiSpec& spec, double p, std::size_t pairs, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
        const auto x = detail::random_ray(gen, spec.dim(), -2.0, 2.0);
        const auto y = detail::random_ray(gen, spec.dim(), -2.0, 2.0);
        std::vector<double> s(x.size());
        for (std::size_t j = 0; j < s.size(); ++j)
            s[j] = x[j] + y[j];
        const double num = psi_p_norm(spec, p, s);
        const double den = psi_p_norm(spec, p, x) + psi_p_norm(spec, p, y);
        worst = std::max(worst, num / den);
    }
    return worst;
}

} // namespace orlicz
