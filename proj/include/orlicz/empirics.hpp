#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conjugacy.hpp"
#include "errors.hpp"
#include "measures.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "psi.hpp"
#include "tail_bounds.hpp"
#include "tensor.hpp"

namespace orlicz {

/// Norms of a constant Hessian.
struct HessianInfo
{
    double hs = 0.0;
    double op = 0.0;
};

struct TestFunction
{
    std::string name;
    std::size_t dim = 0; // 0: any dimension
    std::function<double(std::span<const double>)> f;
    std::function<void(std::span<const double>, std::span<double>)> grad;
    std::optional<HessianInfo> hessian;

    double operator()(std::span<const double> x) const { return f(x); }
};

namespace functions {

inline TestFunction constant(double c)
{
    return {"Constant", 0, [c](std::span<const double>) { return c; },
            [](std::span<const double>, std::span<double> g) { std::fill(g.begin(), g.end(), 0.0); },
            HessianInfo{}};
}

inline TestFunction linear(std::vector<double> theta)
{
    const std::size_t n = theta.size();
    return {"Linear", n, [theta](std::span<const double> x) { return dot(theta, x); },
            [theta](std::span<const double>, std::span<double> g) { std::copy(theta.begin(), theta.end(), g.begin()); },
            HessianInfo{}};
}

/// x^T A x for symmetric A; gradient 2Ax, Hessian 2A.
inline TestFunction quadratic_form(MultiIndexMatrix A)
{
    if (A.order() != 2)
        throw InputError("quadratic_form: A must be 2-indexed");
    if (!A.is_symmetric())
        throw DomainError("quadratic_form: A must be symmetric");
    A.check_symmetric();
    const HessianInfo h{2.0 * l2_norm(A.data()), 2.0 * operator_norm(A)};
    const std::size_t n = A.dim();
    return {"QuadraticForm", n, [A](std::span<const double> x) { return eval_form(A, x); },
            [A](std::span<const double> x, std::span<double> g) {
                const auto v = form_gradient(A, x);
                std::copy(v.begin(), v.end(), g.begin());
            },
            h};
}

inline TestFunction euclidean_norm()
{
    return {"EuclideanNorm", 0, [](std::span<const double> x) { return l2_norm(x); },
            [](std::span<const double> x, std::span<double> g) {
                const double n = l2_norm(x);
                for (std::size_t i = 0; i < x.size(); ++i)
                    g[i] = n > 0.0 ? x[i] / n : 0.0;
            },
            std::nullopt};
}

inline TestFunction max_coordinate()
{
    return {"MaxCoordinate", 0, [](std::span<const double> x) { return *std::max_element(x.begin(), x.end()); },
            [](std::span<const double> x, std::span<double> g) {
                std::fill(g.begin(), g.end(), 0.0);
                g[static_cast<std::size_t>(std::max_element(x.begin(), x.end()) - x.begin())] = 1.0;
            },
            std::nullopt};
}

/// Distance (x_1 - m)_+ to the halfspace {x_1 <= m} along e_1.
inline TestFunction halfspace_distance(double m)
{
    return {"HalfspaceDistance", 0, [m](std::span<const double> x) { return std::max(0.0, x[0] - m); },
            [m](std::span<const double> x, std::span<double> g) {
                std::fill(g.begin(), g.end(), 0.0);
                g[0] = x[0] > m ? 1.0 : 0.0;
            },
            std::nullopt};
}

/// exp(<theta, x>).
inline TestFunction exp_tilt(std::vector<double> theta)
{
    const std::size_t n = theta.size();
    return {"ExpTilt", n, [theta](std::span<const double> x) { return std::exp(dot(theta, x)); },
            [theta](std::span<const double> x, std::span<double> g) {
                const double e = std::exp(dot(theta, x));
                for (std::size_t i = 0; i < theta.size(); ++i)
                    g[i] = theta[i] * e;
            },
            std::nullopt};
}

} // namespace functions

inline constexpr std::size_t kBatches = 32;

struct Estimate
{
    double value = 0.0;
    double se = 0.0;
};

struct MomentEstimate
{
    double value = 0.0;
    double se = 0.0;
    double top10_fraction = 0.0; // share of sum |v|^p carried by the 10 largest terms
};

namespace detail {

inline std::size_t batch_begin(std::size_t b, std::size_t n) { return b * n / kBatches; }

inline double batch_se(std::span<const double> batch_vals)
{
    const double m = mean(batch_vals);
    double s = 0.0;
    for (double v : batch_vals)
        s += (v - m) * (v - m);
    const double k = static_cast<double>(batch_vals.size());
    return std::sqrt(s / (k - 1.0) / k);
}

inline std::vector<double> batch_means(std::span<const double> v)
{
    std::vector<double> out;
    for (std::size_t b = 0; b < kBatches; ++b) {
        const auto lo = batch_begin(b, v.size()), hi = batch_begin(b + 1, v.size());
        if (hi > lo)
            out.push_back(mean(v.subspan(lo, hi - lo)));
    }
    return out;
}

inline void check_values(std::span<const double> values)
{
    if (values.empty())
        throw DomainError("empty sample");
    for (double v : values)
        if (!std::isfinite(v))
            throw InputError("non-finite sample value");
}

} // namespace detail

/// (mean |v|^p)^{1/p}, max-shifted.
inline double empirical_moment(std::span<const double> values, double p)
{
    detail::check_values(values);
    if (!(p >= 1.0) || std::isinf(p))
        throw DomainError("empirical_moment: p must be finite and >= 1");
    const double m = max_abs(values);
    if (m == 0.0)
        return 0.0;
    std::vector<double> s(values.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = std::pow(std::abs(values[i]) / m, p);
    return m * std::pow(mean(s), 1.0 / p);
}

/// Moment with a 32-batch standard error (delta method) and the top-10 mass diagnostic.
inline MomentEstimate moment_estimate(std::span<const double> values, double p)
{
    detail::check_values(values);
    if (!(p >= 1.0) || std::isinf(p))
        throw DomainError("moment_estimate: p must be finite and >= 1");
    const double m = max_abs(values);
    if (m == 0.0)
        return {};
    std::vector<double> s(values.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = std::pow(std::abs(values[i]) / m, p);
    const double M = mean(s);
    MomentEstimate out;
    out.value = m * std::pow(M, 1.0 / p);
    if (s.size() >= 2 * kBatches)
        out.se = out.value * detail::batch_se(detail::batch_means(s)) / (p * M);
    const std::size_t top = std::min<std::size_t>(10, s.size());
    std::vector<double> t(s);
    std::nth_element(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(top - 1), t.end(), std::greater<>());
    double top_sum = 0.0;
    for (std::size_t i = 0; i < top; ++i)
        top_sum += t[i];
    out.top10_fraction = top_sum / (M * static_cast<double>(s.size()));
    return out;
}

inline double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

/// mean(v log v) - mean(v) log mean(v), with 0 log 0 = 0.
inline double empirical_entropy(std::span<const double> values)
{
    if (values.empty())
        throw DomainError("empirical_entropy: empty input");
    std::vector<double> vl(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0) || std::isinf(values[i]))
            throw DomainError("empirical_entropy: values must be finite and non-negative");
        vl[i] = xlogx(values[i]);
    }
    return mean(vl) - xlogx(mean(values));
}

namespace detail {

inline SamplerSpec make_sampler(const SamplerFamily& fam, std::size_t N, std::uint64_t seed)
{
    SamplerSpec s{fam, seed, N};
    s.validate();
    return s;
}

inline void check_fn_dim(const TestFunction& f, std::size_t n)
{
    if (f.dim != 0 && f.dim != n)
        throw InputError("test function dimension " + std::to_string(f.dim) + " does not match sampler dimension " +
                         std::to_string(n));
}

} // namespace detail

struct MlsiResult
{
    double residual = 0.0; // D E[Psi(grad f/f) f^2] - Ent f^2 with f^2 = g
    double se = 0.0;
    double entropy = 0.0;
    double energy = 0.0;
    bool infinite = false;
};

inline constexpr double kMlsiShift = 1e-6;

inline MlsiResult mlsi_residual(const SamplerFamily& fam, const TestFunction& g, const PsiSpec& spec, double D,
                                std::size_t N, std::uint64_t seed)
{
    if (!(D > 0.0) || std::isinf(D))
        throw DomainError("mlsi_residual: D must be positive and finite");
    const auto sampler = detail::make_sampler(fam, N, seed);
    const std::size_t n = sampler.dim();
    detail::check_fn_dim(g, n);
    if (spec.dim() != n)
        throw InputError("mlsi_residual: spec dimension does not match sampler dimension");

    std::vector<double> gv(N), glog(N), term(N);
    std::vector<char> inf(N, 0);
    parallel_chunks(N, kSampleChunk, [&](std::size_t b, std::size_t e) {
        std::vector<double> x(n), grad(n);
        for (std::size_t i = b; i < e; ++i) {
            sample_row(sampler, i, x);
            const double raw = g(x);
            if (!(raw >= 0.0))
                throw DomainError("mlsi_residual: g must be non-negative");
            const double v = raw + kMlsiShift;
            g.grad(x, grad);
            for (double& c : grad)
                c /= 2.0 * v;
            const double psi = detail::eval_psi_raw(spec, grad);
            gv[i] = v;
            glog[i] = xlogx(v);
            term[i] = psi * v;
            inf[i] = std::isinf(psi) ? 1 : 0;
        }
    });
    MlsiResult out;
    if (std::find(inf.begin(), inf.end(), 1) != inf.end()) {
        out.infinite = true;
        out.residual = kInf;
        return out;
    }
    const auto residual = [&](std::span<const double> a, std::span<const double> b, std::span<const double> c,
                              double& ent, double& energy) {
        ent = mean(b) - xlogx(mean(a));
        energy = D * mean(c);
        return energy - ent;
    };
    out.residual = residual(gv, glog, term, out.entropy, out.energy);
    std::vector<double> rb;
    for (std::size_t b = 0; b < kBatches; ++b) {
        const auto lo = detail::batch_begin(b, N), hi = detail::batch_begin(b + 1, N);
        if (hi <= lo)
            continue;
        const std::span<const double> A(gv), B(glog), C(term);
        double e1, e2;
        rb.push_back(residual(A.subspan(lo, hi - lo), B.subspan(lo, hi - lo), C.subspan(lo, hi - lo), e1, e2));
    }
    if (rb.size() >= 2)
        out.se = detail::batch_se(rb);
    return out;
}

struct MomentRow
{
    double p = 0.0;
    double lhs = 0.0;
    double lhs_se = 0.0;
    double G = 0.0;
    double G_se = 0.0;
    double bound = 0.0;
    double ratio = 0.0; // lhs / G
    double ratio_se = 0.0;
    double top10_fraction = 0.0;
    bool high_p_flag = false; // p > 64: read together with top10_fraction
};

struct MomentReport
{
    std::string kind;
    std::string sampler;
    std::string function;
    std::string spec;
    GrowthEnvelope env;
    std::uint64_t seed = 0;
    std::size_t N = 0;
    double C = 1.0;
    std::vector<MomentRow> rows;
    double fitted_constant = 0.0; // max ratio
    double fitted_C = 0.0;        // max lhs / bound

    const MomentRow& at(double p) const
    {
        for (const auto& r : rows)
            if (r.p == p)
                return r;
        throw InputError("MomentReport: p not on grid");
    }
};

namespace detail {

inline void fill_row(MomentRow& row, std::span<const double> lhs_vals, std::span<const double> rhs_vals)
{
    const auto l = moment_estimate(lhs_vals, row.p);
    const auto r = moment_estimate(rhs_vals, row.p);
    row.lhs = l.value;
    row.lhs_se = l.se;
    row.G = r.value;
    row.G_se = r.se;
    row.top10_fraction = l.top10_fraction;
    row.high_p_flag = row.p > 64.0;
    if (row.G > 0.0) {
        row.ratio = row.lhs / row.G;
        const double a = row.lhs > 0.0 ? row.lhs_se / row.lhs : 0.0;
        const double b = row.G_se / row.G;
        row.ratio_se = row.ratio * std::sqrt(a * a + b * b);
    } else {
        row.ratio = row.lhs > 0.0 ? kInf : 0.0;
    }
}

inline void check_p_grid(std::span<const double> grid, double lo, double hi, const char* what)
{
    if (grid.empty())
        throw DomainError(std::string(what) + ": empty p grid");
    for (double p : grid)
        if (!(p >= lo && p <= hi))
            throw DomainError(std::string(what) + ": p outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
                              "]");
}

inline std::vector<double> centered(std::span<const double> v)
{
    const double m = mean(v);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i] - m;
    return out;
}

} // namespace detail

/// Compares |f - Ef|_p with G(p) = |(|grad f|_{Psi_p})|_p and the centered bound C L G(p).
inline MomentReport verify_centered(const SamplerFamily& fam, const TestFunction& f, const PsiSpec& spec,
                                    const GrowthEnvelope& env, std::span<const double> p_grid, std::size_t N,
                                    std::uint64_t seed, double C = 1.0)
{
    env.validate();
    detail::check_p_grid(p_grid, env.beta, 128.0, "verify_centered");
    const auto sampler = detail::make_sampler(fam, N, seed);
    const std::size_t n = sampler.dim();
    detail::check_fn_dim(f, n);
    if (spec.dim() != n)
        throw InputError("verify_centered: spec dimension does not match sampler dimension");

    const std::size_t P = p_grid.size();
    std::vector<double> fv(N), gn(P * N);
    parallel_chunks(N, kSampleChunk, [&](std::size_t b, std::size_t e) {
        std::vector<double> x(n), grad(n), last_grad;
        std::vector<double> last_norms(P);
        for (std::size_t i = b; i < e; ++i) {
            sample_row(sampler, i, x);
            fv[i] = f(x);
            f.grad(x, grad);
            if (grad != last_grad) {
                for (std::size_t k = 0; k < P; ++k)
                    last_norms[k] = psi_p_norm(spec, p_grid[k], grad);
                last_grad = grad;
            }
            for (std::size_t k = 0; k < P; ++k)
                gn[k * N + i] = last_norms[k];
        }
    });

    MomentReport rep{"centered", sampler.family_name(), f.name, spec.family_name(), env, seed, N, C, {}, 0.0, 0.0};
    const auto fc = detail::centered(fv);
    for (std::size_t k = 0; k < P; ++k) {
        MomentRow row;
        row.p = p_grid[k];
        detail::fill_row(row, fc, std::span<const double>(gn).subspan(k * N, N));
        row.bound = centered_moment_bound(row.G, env, row.p, C);
        rep.fitted_constant = std::max(rep.fitted_constant, row.ratio);
        if (row.bound > 0.0)
            rep.fitted_C = std::max(rep.fitted_C, row.lhs / row.bound);
        rep.rows.push_back(row);
    }
    return rep;
}

/// Compares |f(X) - Ef|_p with |<grad f(X), Z>|_p for independent Z with P(|Z_i| >= t) = e^{-Phi(t)}.
inline MomentReport comparison_check(const SamplerFamily& famX, const PhiSpec& phi, const TestFunction& f,
                                     std::span<const double> p_grid, std::size_t N, std::uint64_t seed)
{
    detail::check_p_grid(p_grid, 1.0, 128.0, "comparison_check");
    const auto sx = detail::make_sampler(famX, N, seed);
    const std::size_t n = sx.dim();
    detail::check_fn_dim(f, n);
    const auto sz = detail::make_sampler(ProductPhiTail{phi, n}, N, seed);

    std::vector<double> fv(N), pv(N);
    parallel_chunks(N, kSampleChunk, [&](std::size_t b, std::size_t e) {
        std::vector<double> x(n), z(n), grad(n);
        for (std::size_t i = b; i < e; ++i) {
            sample_row(sx, i, x, 0);
            sample_row(sz, i, z, 1);
            fv[i] = f(x);
            f.grad(x, grad);
            pv[i] = dot(grad, z);
        }
    });
    MomentReport rep{"comparison", sx.family_name(), f.name, "ProductPhiTail", {}, seed, N, 1.0, {}, 0.0, 0.0};
    const auto fc = detail::centered(fv);
    for (double p : p_grid) {
        MomentRow row;
        row.p = p;
        detail::fill_row(row, fc, pv);
        row.bound = row.G;
        rep.fitted_constant = std::max(rep.fitted_constant, row.ratio);
        rep.fitted_C = rep.fitted_constant;
        rep.rows.push_back(row);
    }
    return rep;
}

struct NuLogpRow
{
    double p = 0.0;
    double norm_p = 0.0;
    double se = 0.0;
    double norm_1 = 0.0;
    double lower = 0.0; // log(p)/(2e)
    double upper = 0.0; // |f|_1 + log p
    double top10_fraction = 0.0;
    bool lower_ok = false;
    bool upper_ok = false;
};

struct NuLogpReport
{
    std::uint64_t seed = 0;
    std::size_t N = 0;
    std::vector<NuLogpRow> rows;

    bool ok() const
    {
        return std::all_of(rows.begin(), rows.end(), [](const NuLogpRow& r) { return r.lower_ok && r.upper_ok; });
    }
};

/// For f(x) = x under nu: log(p)/(2e) <= |f|_p <= |f|_1 + log p, each within 3 standard errors.
inline NuLogpReport verify_nu_logp(std::span<const double> p_grid, std::size_t N, std::uint64_t seed)
{
    detail::check_p_grid(p_grid, 2.0, 128.0, "verify_nu_logp");
    const auto s = detail::make_sampler(NuMeasure{}, N, seed);
    std::vector<double> v(N);
    for_each_sample(s, [&](std::size_t i, std::span<const double> x) { v[i] = x[0]; });
    NuLogpReport rep{seed, N, {}};
    const auto m1 = moment_estimate(v, 1.0);
    for (double p : p_grid) {
        const auto mp = moment_estimate(v, p);
        NuLogpRow row{p, mp.value, mp.se, m1.value, std::log(p) / (2.0 * std::numbers::e), m1.value + std::log(p),
                      mp.top10_fraction};
        row.lower_ok = row.norm_p >= row.lower - 3.0 * row.se;
        row.upper_ok = row.norm_p <= row.upper + 3.0 * std::hypot(row.se, m1.se);
        rep.rows.push_back(row);
    }
    return rep;
}

struct EnlargementRow
{
    double u = 0.0;
    double radius = 0.0; // sup{y_1 : Psi*(y_1 e_1) < u}
    double mass = 0.0;
    double se = 0.0;
    double bound = 0.0;
};

struct EnlargementReport
{
    double m = 0.0;
    double mass_A = 0.0;
    double mass_A_se = 0.0;
    bool precondition_ok = false; // mu(A) >= 1/2 within 3 SE
    std::uint64_t seed = 0;
    std::size_t N = 0;
    std::vector<EnlargementRow> rows;
};

/// Empirical mass of A + {Psi* < u} for A = {x_1 <= m}, next to the enlargement bound.
inline EnlargementReport enlargement_mc(const SamplerFamily& fam, double m, const PsiSpec& spec,
                                        const GrowthEnvelope& env, std::span<const double> u_grid, std::size_t N,
                                        std::uint64_t seed, double C_impl = 1.0)
{
    env.validate();
    const auto s = detail::make_sampler(fam, N, seed);
    if (spec.dim() != s.dim())
        throw InputError("enlargement_mc: spec dimension does not match sampler dimension");
    std::vector<double> x1(N);
    for_each_sample(s, [&](std::size_t i, std::span<const double> x) { x1[i] = x[0]; });

    const auto mass = [&](double thr, bool strict) {
        std::vector<double> ind(N);
        for (std::size_t i = 0; i < N; ++i)
            ind[i] = (strict ? x1[i] < thr : x1[i] <= thr) ? 1.0 : 0.0;
        Estimate e{mean(ind), 0.0};
        e.se = detail::batch_se(detail::batch_means(ind));
        return e;
    };

    EnlargementReport rep;
    rep.m = m;
    rep.seed = seed;
    rep.N = N;
    const auto a = mass(m, false);
    rep.mass_A = a.value;
    rep.mass_A_se = a.se;
    rep.precondition_ok = a.value >= 0.5 - 3.0 * a.se;

    std::vector<double> e1(spec.dim(), 0.0);
    e1[0] = 1.0;
    for (double u : u_grid) {
        if (!(u >= 0.0) || std::isinf(u))
            throw DomainError("enlargement_mc: u must be finite and non-negative");
        EnlargementRow row;
        row.u = u;
        row.radius = u > 0.0 ? psi_star_ray_radius(spec, e1, u) : 0.0;
        const auto e = u > 0.0 ? mass(m + row.radius, true) : a;
        row.mass = e.value;
        row.se = e.se;
        row.bound = enlargement_bound(u, env, C_impl);
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace orlicz
