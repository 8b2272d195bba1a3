#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conjugacy.hpp"
#include "errors.hpp"
#include "phi.hpp"
#include "psi.hpp"

namespace orlicz {

/// A map t -> probability bound. `raw` is unclipped; operator() clips to [0, 1].
struct TailProfile
{
    std::string kind;
    std::vector<std::pair<std::string, double>> params;
    std::function<double(double)> raw;

    double operator()(double t) const { return std::clamp(raw(t), 0.0, 1.0); }

    std::vector<double> tabulate(std::span<const double> ts) const
    {
        std::vector<double> out(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            out[i] = (*this)(ts[i]);
        return out;
    }
};

struct MomentBoundInputs
{
    double p = 2.0;
    double lower_moment = 0.0; // |f|_beta, or |f|_q for the smaller-moment variant
    double G = 0.0;            // |(|grad f|_{Psi_p})|_p
    GrowthEnvelope env;
};

/// Five partition norms of a 2-indexed matrix at exponent r.
struct PartitionNorms
{
    double hs = 0.0;
    double op = 0.0;
    double entry_lr = 0.0;
    double mixed_2_rstar = 0.0;
    double rstar_rstar = 0.0;
    double r = 2.0;
};

namespace detail {

inline void require_nonneg(double v, const char* what)
{
    if (!(v >= 0.0) || std::isinf(v))
        throw DomainError(std::string(what) + " must be finite and non-negative");
}

inline void require_pos(double v, const char* what)
{
    if (!(v > 0.0) || std::isinf(v))
        throw DomainError(std::string(what) + " must be positive and finite");
}

inline double kd_max(const GrowthEnvelope& e)
{
    const double kd = e.K * e.D;
    return std::max(std::pow(kd, 1.0 / e.alpha), std::pow(kd, 1.0 / e.beta));
}

inline void check_moment_inputs(const MomentBoundInputs& in)
{
    in.env.validate();
    require_nonneg(in.lower_moment, "lower moment");
    require_nonneg(in.G, "gradient moment G");
    if (!std::isfinite(in.p))
        throw DomainError("p must be finite");
}

} // namespace detail

/// L(K,D,alpha,beta) = (KD)^{1/beta}/(alpha-1) + (1/(alpha-1) + beta^{1/alpha}) (KD)^{1/alpha}.
inline double l_constant(const GrowthEnvelope& env)
{
    env.validate();
    const double kd = env.K * env.D;
    const double inv = 1.0 / (env.alpha - 1.0);
    return inv * std::pow(kd, 1.0 / env.beta) + (inv + std::pow(env.beta, 1.0 / env.alpha)) * std::pow(kd, 1.0 / env.alpha);
}

inline double defective_moment_bound(const MomentBoundInputs& in)
{
    detail::check_moment_inputs(in);
    const auto& e = in.env;
    if (!(in.p >= e.beta))
        throw DomainError("defective_moment_bound: requires p >= beta");
    return std::exp(2.0 * e.d / e.beta) * in.lower_moment +
           2.0 * std::numbers::e / (e.alpha - 1.0) * detail::kd_max(e) * in.G;
}

/// Prefactor 2^{(p-q)beta/((p-beta)q)} e^{2d(p-q)/((p-beta)q)} of the smaller-moment variant.
inline double smaller_moment_prefactor(double p, double q, double beta, double d)
{
    if (!(q > 0.0 && q < beta && beta < p))
        throw DomainError("smaller_moment_prefactor: requires 0 < q < beta < p");
    const double den = (p - beta) * q;
    return std::pow(2.0, (p - q) * beta / den) * std::exp(2.0 * d * (p - q) / den);
}

inline double defective_moment_bound_q(const MomentBoundInputs& in, double q)
{
    detail::check_moment_inputs(in);
    const auto& e = in.env;
    return smaller_moment_prefactor(in.p, q, e.beta, e.d) * in.lower_moment +
           2.0 * std::numbers::e / (e.alpha - 1.0) * detail::kd_max(e) * in.G;
}

/// Bound for the alpha = 1 regime; only K, beta, D, d of `env` enter.
inline double alpha1_moment_bound(double lower_moment, double G, const GrowthEnvelope& env, double p)
{
    detail::check_moment_inputs({p, lower_moment, G, env});
    if (!(p >= env.beta))
        throw DomainError("alpha1_moment_bound: requires p >= beta");
    return std::exp(2.0 * env.d / env.beta) * lower_moment +
           6.0 * std::log(p) * std::max(env.D, std::pow(env.K * env.D, 1.0 / env.beta)) * G;
}

inline double centered_moment_bound(double G, const GrowthEnvelope& env, double p, double C = 1.0)
{
    detail::require_nonneg(G, "G");
    detail::require_pos(C, "C");
    env.validate();
    if (!(p >= env.beta) || std::isinf(p))
        throw DomainError("centered_moment_bound: requires finite p >= beta");
    return C * l_constant(env) * G;
}

inline double poincare_beta_bound(double G_beta, const GrowthEnvelope& env, double C = 1.0)
{
    detail::require_nonneg(G_beta, "G");
    detail::require_pos(C, "C");
    env.validate();
    const double kd = env.K * env.D;
    return C * (std::pow(kd, 1.0 / env.beta) + std::pow(kd * env.beta, 1.0 / env.alpha)) * G_beta;
}

inline constexpr double kChebyshevPMax = 1e6;

/// e^{-p*} for the largest p* in [beta, p_max] with C L G(p*) <= t; 1 if none exists.
inline double chebyshev_level(const std::function<double(double)>& G, const GrowthEnvelope& env, double C,
                              double t)
{
    detail::require_pos(C, "C");
    if (!(t >= 0.0))
        throw DomainError("chebyshev_level: t must be non-negative");
    const double L = l_constant(env);
    const auto ok = [&](double p) { return C * L * G(p) <= t; };
    if (!ok(env.beta))
        return 1.0;
    if (ok(kChebyshevPMax))
        return std::exp(-kChebyshevPMax);
    double lo = env.beta, hi = kChebyshevPMax;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return std::exp(-lo);
}

/// min(1, exp(beta - a omega*(t / (C L b)))).
inline double lipschitz_profile(double a, double b, const GrowthEnvelope& env, const PsiSpec& spec, double C,
                                double t)
{
    detail::require_pos(a, "a");
    detail::require_pos(b, "b");
    detail::require_pos(C, "C");
    if (!(t >= 0.0))
        throw DomainError("lipschitz_profile: t must be non-negative");
    if (t == 0.0)
        return 1.0;
    const double s = t / (C * l_constant(env) * b);
    return std::min(1.0, std::exp(env.beta - a * omega_star(spec, s)));
}

/// Rate (K^{-1/(alpha-1)} L^{-alpha/(alpha-1)}) ^ L^{-1} with L = C_impl l_constant(env).
inline double enlargement_rate(const GrowthEnvelope& env, double C_impl = 1.0)
{
    detail::require_pos(C_impl, "C_impl");
    const double L = C_impl * l_constant(env);
    const double e = 1.0 / (env.alpha - 1.0);
    return std::min(std::pow(env.K, -e) * std::pow(L, -env.alpha * e), 1.0 / L);
}

/// max(0, 1 - 2 exp(beta - u rho)).
inline double enlargement_bound(double u, const GrowthEnvelope& env, double C_impl = 1.0)
{
    if (!(u >= 0.0) || std::isinf(u))
        throw DomainError("enlargement_bound: u must be finite and non-negative");
    return std::max(0.0, 1.0 - 2.0 * std::exp(env.beta - u * enlargement_rate(env, C_impl)));
}

/// min(1, 2 exp(-c min(t^2/a^2, (t/b)^{r*}))).
inline double two_level_tail(double a, double b, double r, double c, double t)
{
    detail::require_pos(a, "a");
    detail::require_pos(b, "b");
    detail::require_pos(c, "c");
    if (!(r >= 2.0))
        throw DomainError("two_level_tail: r must be >= 2");
    if (!(t >= 0.0))
        throw DomainError("two_level_tail: t must be non-negative");
    const double e = std::min(t * t / (a * a), std::pow(t / b, holder_conjugate(r)));
    return std::min(1.0, 2.0 * std::exp(-c * e));
}

/// min(1, 2 exp(-c min((t/A_q)^{q*}, (t/B)^{q*/2}))).
inline double hanson_wright_tail(double A_q, double B, double q, double c, double t)
{
    detail::require_pos(A_q, "A_q");
    detail::require_pos(B, "B");
    detail::require_pos(c, "c");
    if (!(q > 1.0 && q <= 2.0))
        throw DomainError("hanson_wright_tail: q must lie in (1, 2]");
    if (!(t >= 0.0))
        throw DomainError("hanson_wright_tail: t must be non-negative");
    const double qs = holder_conjugate(q);
    const double e = std::min(std::pow(t / A_q, qs), std::pow(t / B, 0.5 * qs));
    return std::min(1.0, 2.0 * std::exp(-c * e));
}

inline double quadratic_chaos_moment(const PartitionNorms& n, double p)
{
    if (!(p >= 2.0) || std::isinf(p))
        throw DomainError("quadratic_chaos_moment: p must be finite and >= 2");
    if (!(n.r >= 2.0))
        throw DomainError("quadratic_chaos_moment: r must be >= 2");
    for (double v : {n.hs, n.op, n.entry_lr, n.mixed_2_rstar, n.rstar_rstar})
        detail::require_nonneg(v, "partition norm");
    const double rs = holder_conjugate(n.r);
    return std::sqrt(p) * n.hs + p * n.op + std::pow(p, 1.0 / rs) * n.entry_lr +
           std::pow(p, 0.5 + 1.0 / rs) * n.mixed_2_rstar + std::pow(p, 2.0 / rs) * n.rstar_rstar;
}

/// |x|_{Psi_p} for Psi(x) = sum (tilde-Phi)^*(x_i), the two-sided moment surrogate of sum x_i Z_i.
inline double gk_moment(std::span<const double> x, const PhiSpec& phi, double p, double tol = kDefaultNormTol)
{
    if (!(p >= 2.0) || std::isinf(p))
        throw DomainError("gk_moment: p must be finite and >= 2");
    return psi_p_norm(PsiSpec::from_phi(phi, x.size()), p, x, tol);
}

/// A^{(p-r)q/((p-q)r)}.
inline double moment_interpolation_factor(double A, double p, double q, double r)
{
    if (!(0.0 < r && r < q && q < p) || std::isinf(p))
        throw DomainError("moment_interpolation_factor: requires 0 < r < q < p < inf");
    if (!(A >= 1.0) || std::isinf(A))
        throw DomainError("moment_interpolation_factor: requires finite A >= 1");
    return std::pow(A, (p - r) * q / ((p - q) * r));
}

struct BcgParams
{
    double a2 = 0.0;
    double b = 0.0;
};

inline BcgParams bcg_params(double L, double hess_hs_m2, double mean_grad, double hess_op_sup)
{
    detail::require_pos(L, "L");
    detail::require_nonneg(hess_hs_m2, "hess_hs_m2");
    detail::require_nonneg(mean_grad, "mean_grad");
    detail::require_nonneg(hess_op_sup, "hess_op_sup");
    constexpr double e = std::numbers::e;
    const double s = std::numbers::sqrt2 * L * L * hess_hs_m2 + L * mean_grad;
    return {4.0 * e * e * s * s, 2.0 * e * L * L * hess_op_sup};
}

/// min(1, e^2 exp(-min(t^2/a^2, t/b))).
inline double bcg_tail(double L, double hess_hs_m2, double mean_grad, double hess_op_sup, double t)
{
    if (!(t >= 0.0))
        throw DomainError("bcg_tail: t must be non-negative");
    const auto [a2, b] = bcg_params(L, hess_hs_m2, mean_grad, hess_op_sup);
    const double g = a2 > 0.0 ? t * t / a2 : (t > 0.0 ? kInf : 0.0);
    const double e = b > 0.0 ? t / b : (t > 0.0 ? kInf : 0.0);
    const double m = std::min(g, e);
    constexpr double e2 = std::numbers::e * std::numbers::e;
    return std::min(1.0, e2 * std::exp(-m));
}

/// L sqrt(p) E|grad f|_2 + L^2 p |(|D^2 f|_op)|_p.
inline double bcg_moment_first_line(double L, double p, double mean_grad_norm, double hess_op_mp)
{
    detail::require_pos(L, "L");
    detail::require_nonneg(mean_grad_norm, "mean_grad_norm");
    detail::require_nonneg(hess_op_mp, "hess_op_mp");
    if (!(p >= 2.0) || std::isinf(p))
        throw DomainError("bcg_moment: p must be finite and >= 2");
    return L * std::sqrt(p) * mean_grad_norm + L * L * p * hess_op_mp;
}

/// (sqrt2 L)^{k-1} |(|D^k f|_2)|_2 + sum_{m<k} (sqrt2 L)^{m-1} |E D^m f|_2, an upper bound
/// for |(|grad f|_2)|_2; mean_derivs[m-1] = |E D^m f|_2 for m = 1..k-1.
inline double gradient_chain_bound(double L, std::span<const double> mean_derivs, double dk_norm)
{
    detail::require_pos(L, "L");
    detail::require_nonneg(dk_norm, "dk_norm");
    if (mean_derivs.empty())
        throw DomainError("gradient_chain_bound: need k >= 2");
    const double s = std::numbers::sqrt2 * L;
    double acc = 0.0;
    for (std::size_t m = 1; m <= mean_derivs.size(); ++m) {
        detail::require_nonneg(mean_derivs[m - 1], "mean derivative norm");
        acc += std::pow(s, static_cast<double>(m) - 1.0) * mean_derivs[m - 1];
    }
    return acc + std::pow(s, static_cast<double>(mean_derivs.size())) * dk_norm;
}

/// sqrt(p)(2^{(k-1)/2} L^k |D^k| + sum 2^{(m-1)/2} L^m |E D^m|) + L^2 p |D^2|_op,p.
inline double bcg_moment_bound(double L, double p, double hess_op_mp, std::span<const double> mean_derivs,
                               double dk_norm)
{
    const double k = static_cast<double>(mean_derivs.size()) + 1.0;
    detail::require_pos(L, "L");
    detail::require_nonneg(dk_norm, "dk_norm");
    detail::require_nonneg(hess_op_mp, "hess_op_mp");
    if (mean_derivs.empty())
        throw DomainError("bcg_moment_bound: need k >= 2");
    if (!(p >= 2.0) || std::isinf(p))
        throw DomainError("bcg_moment: p must be finite and >= 2");
    double acc = std::pow(2.0, 0.5 * (k - 1.0)) * std::pow(L, k) * dk_norm;
    for (std::size_t m = 1; m <= mean_derivs.size(); ++m) {
        detail::require_nonneg(mean_derivs[m - 1], "mean derivative norm");
        const double md = static_cast<double>(m);
        acc += std::pow(2.0, 0.5 * (md - 1.0)) * std::pow(L, md) * mean_derivs[m - 1];
    }
    return std::sqrt(p) * acc + L * L * p * hess_op_mp;
}

inline TailProfile make_lipschitz_profile(double a, double b, GrowthEnvelope env, PsiSpec spec, double C = 1.0)
{
    return {"lipschitz",
            {{"a", a}, {"b", b}, {"C", C}},
            [=](double t) { return lipschitz_profile(a, b, env, spec, C, t); }};
}

inline TailProfile make_two_level_profile(double a, double b, double r, double c = 1.0)
{
    return {"two_level", {{"a", a}, {"b", b}, {"r", r}, {"c", c}},
            [=](double t) { return two_level_tail(a, b, r, c, t); }};
}

inline TailProfile make_hanson_wright_profile(double A_q, double B, double q, double c = 1.0)
{
    return {"hanson_wright", {{"A_q", A_q}, {"B", B}, {"q", q}, {"c", c}},
            [=](double t) { return hanson_wright_tail(A_q, B, q, c, t); }};
}

inline TailProfile make_bcg_profile(double L, double hess_hs_m2, double mean_grad, double hess_op_sup)
{
    return {"bcg",
            {{"L", L}, {"hess_hs_m2", hess_hs_m2}, {"mean_grad", mean_grad}, {"hess_op_sup", hess_op_sup}},
            [=](double t) { return bcg_tail(L, hess_hs_m2, mean_grad, hess_op_sup, t); }};
}

inline TailProfile make_chebyshev_profile(std::function<double(double)> G, GrowthEnvelope env, double C = 1.0)
{
    return {"chebyshev", {{"C", C}}, [=](double t) { return chebyshev_level(G, env, C, t); }};
}

} // namespace orlicz
