#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "conjugacy.hpp"
#include "empirics.hpp"
#include "io.hpp"
#include "measures.hpp"
#include "psi.hpp"
#include "tail_bounds.hpp"
#include "tensor.hpp"

namespace orlicz {

struct Check
{
    std::string label;
    bool pass = false;
    std::string detail;
};

struct ScenarioResult
{
    std::string name;
    std::vector<Check> checks;
    json report = json::object();
    double seconds = 0.0;

    bool ok() const
    {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

struct ScenarioOptions
{
    std::optional<std::size_t> N; // overrides the scenario's default sample size
    std::uint64_t seed = 20240917;
};

namespace scenario {

inline std::string describe(std::initializer_list<std::pair<const char*, double>> kv)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : kv) {
        os << (first ? "" : " ") << k << "=" << fmt(v);
        first = false;
    }
    return os.str();
}

inline std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n, double log10_lo, double log10_hi)
{
    return detail::random_ray(gen, n, log10_lo, log10_hi);
}

inline MultiIndexMatrix random_symmetric(std::mt19937_64& gen, std::size_t n)
{
    std::normal_distribution<double> g;
    MultiIndexMatrix A(2, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = g(gen);
            A[i * n + j] = v;
            A[j * n + i] = v;
        }
    A.check_symmetric();
    return A;
}

/// Closed-form norm oracle for power norms, a in {1.5, 2}.
inline ScenarioResult norm_oracle(const ScenarioOptions& o)
{
    ScenarioResult res{"norm_oracle", {}, json::object(), 0.0};
    const std::size_t trials = o.N.value_or(1000);
    std::mt19937_64 gen(o.seed);
    std::uniform_real_distribution<double> up(1.0, 128.0);
    const NormDescriptor norms[] = {NormDescriptor::l2(), NormDescriptor::l1(), NormDescriptor::linf(),
                                    NormDescriptor::lq(3.0)};
    double worst = 0.0;
    for (double a : {1.5, 2.0}) {
        for (std::size_t i = 0; i < trials; ++i) {
            const auto& nd = norms[i % 4];
            const auto spec = PsiSpec::power_norm(nd, a, 20);
            const double p = up(gen);
            const auto x = random_vector(gen, 20, -3.0, 3.0);
            const double got = psi_p_norm(spec, p, x);
            const double want = std::pow(p, 1.0 / holder_conjugate(a)) * nd(x);
            worst = std::max(worst, std::abs(got - want) / want);
        }
    }
    res.checks.push_back({"closed form within 1e-8 relative", worst <= 1e-8, describe({{"max_rel_err", worst}})});
    res.report = {{"trials_per_exponent", trials}, {"max_rel_err", worst}};
    return res;
}

/// psi_p_norm of the two-level function against sqrt(p)|x|_2 + p^{1/r*}|x|_r.
inline ScenarioResult two_level_equivalence(const ScenarioOptions& o)
{
    ScenarioResult res{"two_level_equivalence", {}, json::object(), 0.0};
    const std::size_t trials = o.N.value_or(1000);
    std::mt19937_64 gen(o.seed);
    std::uniform_real_distribution<double> up(1.0, 128.0);
    std::uniform_int_distribution<std::size_t> un(1, 20);
    for (double r : {2.0, 3.0, 4.0}) {
        double lo = kInf, hi = 0.0;
        for (std::size_t i = 0; i < trials; ++i) {
            const std::size_t n = un(gen);
            const double p = up(gen);
            const auto x = random_vector(gen, n, -3.0, 3.0);
            const double ratio = psi_p_norm(PsiSpec::two_level(r, n), p, x) / two_level_equiv_norm(x, p, r);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        res.checks.push_back({"r=" + fmt(r) + " ratio in [1/4, 4]", lo >= 0.25 && hi <= 4.0,
                              describe({{"min_ratio", lo}, {"max_ratio", hi}})});
        res.report[fmt(r)] = {{"min_ratio", lo}, {"max_ratio", hi}};
    }
    return res;
}

inline std::vector<std::pair<std::string, PsiSpec>> builtin_specs(std::size_t n)
{
    return {{"PowerNorm(l2,2)", PsiSpec::power_norm(NormDescriptor::l2(), 2.0, n)},
            {"PowerNorm(l2,1.5)", PsiSpec::power_norm(NormDescriptor::l2(), 1.5, n)},
            {"PowerNorm(l1,1.5)", PsiSpec::power_norm(NormDescriptor::l1(), 1.5, n)},
            {"SeparableTwoLevel(1.5)", PsiSpec::two_level(1.5, n)},
            {"SeparableTwoLevel(2)", PsiSpec::two_level(2.0, n)},
            {"SeparableTwoLevel(4)", PsiSpec::two_level(4.0, n)},
            {"SeparableFromPhi(t)", PsiSpec::from_phi(PhiSpec::power(1.0), n)},
            {"SeparableFromPhi(t^2)", PsiSpec::from_phi(PhiSpec::power(2.0), n)},
            {"SeparableFromPhi(t^3)", PsiSpec::from_phi(PhiSpec::power(3.0), n)},
            {"BobkovLedouxCap", PsiSpec::bobkov_ledoux_cap(n)}};
}

/// lambda(t) <= omega*(t) <= lambda(2t) on 200 log-spaced t in [1e-3, 1e3].
inline ScenarioResult conjugacy_sandwich(const ScenarioOptions&)
{
    ScenarioResult res{"conjugacy_sandwich", {}, json::object(), 0.0};
    const auto ts = log_grid(1e-3, 1e3, 200);
    constexpr double slack = 1e-6;
    for (const auto& [name, spec] : builtin_specs(1)) {
        double worst_lo = kInf, worst_hi = kInf;
        for (double t : ts) {
            const double ws = omega_star(spec, t);
            const double l1 = omega_legendre(spec, t).value();
            const double l2 = omega_legendre(spec, 2.0 * t).value();
            worst_lo = std::min(worst_lo, (ws - l1) / ws);
            worst_hi = std::min(worst_hi, (l2 - ws) / ws);
        }
        const bool pass = worst_lo >= -slack && worst_hi >= -slack;
        res.checks.push_back({name, pass, describe({{"min_lower_gap", worst_lo}, {"min_upper_gap", worst_hi}})});
        res.report[name] = {{"min_lower_gap", worst_lo}, {"min_upper_gap", worst_hi}};
    }
    return res;
}

/// log(p)/(2e) <= |x|_{L^p(nu)} <= |x|_1 + log p, and the isoperimetric profile inequality.
inline ScenarioResult nu_logp(const ScenarioOptions& o)
{
    ScenarioResult res{"nu_logp", {}, json::object(), 0.0};
    constexpr double e = std::numbers::e;
    const std::vector<double> grid{2.0, e * e, 16.0, e * e * e * e};
    const auto rep = verify_nu_logp(grid, o.N.value_or(1'000'000), o.seed);
    bool lower = true, upper = true;
    for (const auto& r : rep.rows) {
        lower = lower && r.lower_ok;
        upper = upper && r.upper_ok;
    }
    res.checks.push_back({"lower bound log(p)/(2e) within 3 SE", lower, ""});
    res.checks.push_back({"upper bound |x|_1 + log p within 3 SE", upper, ""});
    bool profile = true;
    double min_gap = kInf;
    for (double t : log_grid(1e-9, 0.5, 1000)) {
        const double gap = isoperimetric_profile_nu(t) - t * std::log(1.0 / t);
        min_gap = std::min(min_gap, gap);
        profile = profile && gap >= 0.0;
    }
    res.checks.push_back({"profile t(1+log(1/(2t))) >= t log(1/t)", profile, describe({{"min_gap", min_gap}})});
    res.report = to_json(rep);
    return res;
}

/// E|N(0,1)|^p.
inline double normal_abs_moment(double p)
{
    return std::pow(2.0, 0.5 * p) * std::tgamma(0.5 * (p + 1.0)) / std::sqrt(std::numbers::pi);
}

/// Linear function of a 20-dimensional Gaussian against sqrt(p)|grad f|_2.
inline ScenarioResult gaussian_linear(const ScenarioOptions& o)
{
    ScenarioResult res{"gaussian_linear", {}, json::object(), 0.0};
    constexpr std::size_t n = 20;
    std::mt19937_64 gen(o.seed);
    auto theta = random_vector(gen, n, 0.0, 0.0);
    const auto spec = PsiSpec::power_norm(NormDescriptor::l2(), 2.0, n);
    const GrowthEnvelope env{1.0, 2.0, 2.0, 2.0, 0.0};
    const std::vector<double> grid{2, 4, 8, 16, 32, 64};
    const auto rep = verify_centered(StandardGaussian{n}, functions::linear(theta), spec, env, grid,
                                     o.N.value_or(100'000), o.seed);
    const auto best = std::max_element(rep.rows.begin(), rep.rows.end(),
                                       [](const MomentRow& a, const MomentRow& b) { return a.ratio < b.ratio; });
    const double band = 3.0 * best->ratio_se;
    res.checks.push_back({"fitted constant in [0.5, 1.2]",
                          rep.fitted_constant >= 0.5 - band && rep.fitted_constant <= 1.2 + band,
                          describe({{"fitted_constant", rep.fitted_constant}, {"se", best->ratio_se}})});
    const double exact = std::pow(normal_abs_moment(best->p), 1.0 / best->p) / std::sqrt(best->p);
    res.report = to_json(rep);
    res.report["oracle"] = {{"p", best->p}, {"exact_ratio", exact}, {"z", (best->ratio - exact) / best->ratio_se}};
    return res;
}

/// Gaussian quadratic chaos against sqrt(p) hs + p op.
inline ScenarioResult quadratic_chaos(const ScenarioOptions& o)
{
    ScenarioResult res{"quadratic_chaos", {}, json::object(), 0.0};
    constexpr std::size_t n = 10;
    const std::size_t N = o.N.value_or(100'000);
    const std::vector<double> grid{2, 4, 8, 16, 32, 64};
    std::mt19937_64 gen(o.seed);
    double lo = kInf, hi = 0.0;
    json inst = json::array();
    for (int m = 0; m < 20; ++m) {
        const auto A = random_symmetric(gen, n);
        const auto pn = partition_norms(A, 2.0);
        const SamplerSpec s{StandardGaussian{n}, o.seed + static_cast<std::uint64_t>(m), N};
        std::vector<double> z(N);
        for_each_sample(s, [&](std::size_t i, std::span<const double> x) { z[i] = eval_form(A, x); });
        const auto zc = detail::centered(z);
        json ratios = json::array();
        for (double p : grid) {
            const double r = moment_estimate(zc, p).value / (std::sqrt(p) * pn.hs + p * pn.op);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            ratios.push_back(r);
        }
        inst.push_back({{"hs", pn.hs}, {"op", pn.op}, {"ratios", ratios}});
    }
    res.checks.push_back(
        {"ratio in [0.05, 10] over 20 instances", lo >= 0.05 && hi <= 10.0, describe({{"min", lo}, {"max", hi}})});
    res.report = {{"N", N}, {"p_grid", grid}, {"instances", inst}};
    return res;
}

/// Identity closed forms and the rank-one mixed norm.
inline ScenarioResult partition_norm_forms(const ScenarioOptions& o)
{
    ScenarioResult res{"partition_norms", {}, json::object(), 0.0};
    double worst = 0.0;
    for (std::size_t n : {4, 16, 64})
        for (double r : {2.0, 4.0}) {
            const auto pn = partition_norms(MultiIndexMatrix::identity(n), r, kDefaultRestarts, o.seed);
            const double dn = static_cast<double>(n);
            const double want[] = {std::sqrt(dn), 1.0, std::pow(dn, 1.0 / r), 1.0, 1.0};
            const double got[] = {pn.hs, pn.op, pn.entry_lr, pn.mixed_2_rstar, pn.rstar_rstar};
            for (int i = 0; i < 5; ++i)
                worst = std::max(worst, std::abs(got[i] - want[i]) / want[i]);
        }
    res.checks.push_back({"identity closed forms within 1e-8", worst <= 1e-8, describe({{"max_rel_err", worst}})});

    std::mt19937_64 gen(o.seed);
    double worst1 = 0.0;
    for (int trial = 0; trial < 10; ++trial)
        for (double r : {2.0, 4.0}) {
            const auto u = random_vector(gen, 10, 0.0, 0.0);
            const auto v = random_vector(gen, 10, 0.0, 0.0);
            const auto pn = partition_norms(MultiIndexMatrix::outer(u, v), r, kDefaultRestarts, o.seed);
            const double want = l2_norm(u) * lp_norm(v, r);
            worst1 = std::max(worst1, std::abs(pn.mixed_2_rstar - want) / want);
        }
    res.checks.push_back({"rank-one mixed norm |u|_2 |v|_r within 1e-6", worst1 <= 1e-6,
                          describe({{"max_rel_err", worst1}})});
    res.report = {{"identity_max_rel_err", worst}, {"rank_one_max_rel_err", worst1}};
    return res;
}

/// Gaussian halfspace enlargement against the exact mass Phi(2 sqrt(u)).
inline ScenarioResult enlargement(const ScenarioOptions& o)
{
    ScenarioResult res{"enlargement", {}, json::object(), 0.0};
    const std::size_t N = o.N.value_or(1'000'000);
    const auto spec = PsiSpec::power_norm(NormDescriptor::l2(), 2.0, 1);
    const GrowthEnvelope env{1.0, 2.0, 2.0, 2.0, 0.0};
    const double rho = enlargement_rate(env);
    const double u0 = (env.beta + std::log(2.0)) / rho;
    const std::vector<double> exact_u{0.25, 1.0, 4.0};
    std::vector<double> grid{0.25, 1.0, 2.0, 4.0, u0, 1.25 * u0, 1.5 * u0, 2.0 * u0};
    const auto rep = enlargement_mc(StandardGaussian{1}, 0.0, spec, env, grid, N, o.seed);

    bool exact_ok = true;
    std::string exact_detail;
    std::vector<double> us, logc;
    bool tail_ok = true;
    for (const auto& r : rep.rows) {
        if (std::find(exact_u.begin(), exact_u.end(), r.u) != exact_u.end()) {
            const double want = normal_cdf(2.0 * std::sqrt(r.u));
            const bool ok = std::abs(r.mass - want) <= 3.0 * r.se;
            exact_ok = exact_ok && ok;
            exact_detail += describe({{"u", r.u}, {"mass", r.mass}, {"exact", want}, {"se", r.se}}) + "; ";
        }
        const double comp = 1.0 - r.mass;
        if (r.u < u0 && comp > 0.0) {
            us.push_back(r.u);
            logc.push_back(std::log(comp));
        }
        if (r.u >= u0)
            tail_ok = tail_ok && comp <= 2.0 * std::exp(env.beta - r.u * rho);
    }
    res.checks.push_back({"mass matches Phi(2 sqrt u) within 3 SE", exact_ok, exact_detail});
    double slope = 0.0;
    {
        const double mu = mean(us), ml = mean(logc);
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < us.size(); ++i) {
            sxy += (us[i] - mu) * (logc[i] - ml);
            sxx += (us[i] - mu) * (us[i] - mu);
        }
        slope = sxy / sxx;
    }
    res.checks.push_back({"log complement slope <= -rho", slope <= -rho, describe({{"slope", slope}, {"rho", rho}})});
    res.checks.push_back({"complement below 2exp(beta - u rho) beyond the zero crossing", tail_ok,
                          describe({{"crossing_u", u0}})});
    res.report = to_json(rep);
    res.report["crossing_u"] = u0;
    res.report["precondition_ok"] = rep.precondition_ok;
    res.report["rho"] = rho;
    return res;
}

/// mLSI residuals over the exponential-tilt family.
inline ScenarioResult mlsi(const ScenarioOptions& o)
{
    ScenarioResult res{"mlsi", {}, json::object(), 0.0};
    const std::size_t N = o.N.value_or(1'000'000);
    json rows = json::array();
    bool gauss_ok = true, nu_ok = true;
    const auto gspec = PsiSpec::power_norm(NormDescriptor::l2(), 2.0, 2);
    for (double s : {0.25, 0.5, 1.0}) {
        const auto r = mlsi_residual(StandardGaussian{2}, functions::exp_tilt({0.6 * s, 0.8 * s}), gspec, 2.0, N,
                                     o.seed);
        gauss_ok = gauss_ok && r.residual >= -3.0 * r.se;
        rows.push_back({{"measure", "gaussian"}, {"theta_norm", s}, {"residual", num(r.residual)}, {"se", r.se}});
    }
    const auto nspec = PsiSpec::power_norm(NormDescriptor::l2(), 1.0, 1);
    for (double th : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
        const auto r = mlsi_residual(NuMeasure{}, functions::exp_tilt({th}), nspec, 2.0, N, o.seed);
        nu_ok = nu_ok && r.residual >= -3.0 * r.se;
        rows.push_back({{"measure", "nu"}, {"theta", th}, {"residual", num(r.residual)}, {"se", r.se}});
    }
    res.checks.push_back({"gaussian / |x|^2, D=2: residual >= -3 SE", gauss_ok, ""});
    res.checks.push_back({"nu / |x|, D=2: residual >= -3 SE", nu_ok, ""});
    res.report = {{"N", N}, {"rows", rows}};
    return res;
}

/// Empirical tails of Gaussian quadratic forms against the two-level bound with L = 2.
inline ScenarioResult bcg(const ScenarioOptions& o)
{
    ScenarioResult res{"bcg", {}, json::object(), 0.0};
    constexpr std::size_t n = 10;
    constexpr double L = 2.0;
    const std::size_t N = o.N.value_or(100'000);
    std::mt19937_64 gen(o.seed);
    bool ok = true;
    json inst = json::array();
    for (int m = 0; m < 5; ++m) {
        const auto A = random_symmetric(gen, n);
        const auto f = functions::quadratic_form(A);
        const SamplerSpec s{StandardGaussian{n}, o.seed + static_cast<std::uint64_t>(m), N};
        std::vector<double> fv(N), gsum(n * N);
        for_each_sample(s, [&](std::size_t i, std::span<const double> x) {
            fv[i] = f(x);
            f.grad(x, std::span<double>(gsum).subspan(i * n, n));
        });
        std::vector<double> mg(n);
        for (std::size_t j = 0; j < n; ++j) {
            NeumaierSum acc;
            for (std::size_t i = 0; i < N; ++i)
                acc.add(gsum[i * n + j]);
            mg[j] = acc.value() / static_cast<double>(N);
        }
        const double mean_grad = l2_norm(mg);
        const auto prm = bcg_params(L, f.hessian->hs, mean_grad, f.hessian->op);
        const double a = std::sqrt(prm.a2);
        const auto fc = detail::centered(fv);
        json rows = json::array();
        for (double t : {a, 2.0 * a, 4.0 * a}) {
            const double emp = static_cast<double>(std::count_if(fc.begin(), fc.end(),
                                                                 [t](double v) { return std::abs(v) >= t; })) /
                               static_cast<double>(N);
            const double bound = bcg_tail(L, f.hessian->hs, mean_grad, f.hessian->op, t);
            ok = ok && emp <= bound;
            rows.push_back({{"t", t}, {"empirical", emp}, {"bound", bound}});
        }
        inst.push_back({{"a", a}, {"b", prm.b}, {"rows", rows}});
    }
    res.checks.push_back({"empirical tail <= bound at t in {a, 2a, 4a}", ok, ""});
    res.report = {{"N", N}, {"L", L}, {"instances", inst}};
    return res;
}

/// Gaussian X against Gaussian-type Z for a linear function.
inline ScenarioResult comparison(const ScenarioOptions& o)
{
    ScenarioResult res{"comparison", {}, json::object(), 0.0};
    constexpr std::size_t n = 10;
    std::mt19937_64 gen(o.seed);
    const auto theta = random_vector(gen, n, 0.0, 0.0);
    const std::vector<double> grid{2, 4, 8, 16, 32, 64};
    const auto rep = comparison_check(StandardGaussian{n}, PhiSpec::power(2.0), functions::linear(theta), grid,
                                      o.N.value_or(100'000), o.seed);
    double lo = kInf, hi = 0.0;
    for (const auto& r : rep.rows) {
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    res.checks.push_back({"ratio in [0.3, 3]", lo >= 0.3 && hi <= 3.0, describe({{"min", lo}, {"max", hi}})});
    res.report = to_json(rep);
    return res;
}

} // namespace scenario

using ScenarioFn = std::function<ScenarioResult(const ScenarioOptions&)>;

inline const std::map<std::string, ScenarioFn>& scenario_registry()
{
    static const std::map<std::string, ScenarioFn> reg{
        {"norm_oracle", scenario::norm_oracle},
        {"two_level_equivalence", scenario::two_level_equivalence},
        {"conjugacy_sandwich", scenario::conjugacy_sandwich},
        {"nu_logp", scenario::nu_logp},
        {"gaussian_linear", scenario::gaussian_linear},
        {"quadratic_chaos", scenario::quadratic_chaos},
        {"partition_norms", scenario::partition_norm_forms},
        {"enlargement", scenario::enlargement},
        {"mlsi", scenario::mlsi},
        {"bcg", scenario::bcg},
        {"comparison", scenario::comparison},
    };
    return reg;
}

inline ScenarioResult run_scenario(const std::string& name, const ScenarioOptions& opt = {})
{
    const auto& reg = scenario_registry();
    const auto it = reg.find(name);
    if (it == reg.end())
        throw InputError("unknown scenario '" + name + "'");
    const auto t0 = std::chrono::steady_clock::now();
    auto res = it->second(opt);
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline json to_json(const ScenarioResult& r)
{
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"label", c.label}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"scenario", r.name}, {"pass", r.ok()}, {"checks", checks}, {"report", r.report}};
}

} // namespace orlicz
