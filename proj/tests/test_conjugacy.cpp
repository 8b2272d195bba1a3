#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "orlicz/conjugacy.hpp"

using namespace orlicz;

namespace {

const auto kL2sq = PsiSpec::power_norm(NormDescriptor::l2(), 2.0, 2);

std::vector<PsiSpec> builtin(std::size_t n)
{
    return {PsiSpec::power_norm(NormDescriptor::l2(), 2.0, n),
            PsiSpec::power_norm(NormDescriptor::l1(), 1.5, n),
            PsiSpec::power_norm(NormDescriptor::linf(), 3.0, n),
            PsiSpec::two_level(1.5, n),
            PsiSpec::two_level(3.0, n),
            PsiSpec::two_level(4.0, n),
            PsiSpec::from_phi(PhiSpec::power(1.0), n),
            PsiSpec::from_phi(PhiSpec::power(2.0), n),
            PsiSpec::bobkov_ledoux_cap(n)};
}

// Support function of {Psi* <= p} by the dual formula inf_{l > 0} l (p + Psi(theta / l)).
double dual_support(const PsiSpec& spec, const std::vector<double>& theta, double p)
{
    const auto obj = [&](double ll) {
        const double l = std::exp(ll);
        std::vector<double> y(theta);
        for (auto& v : y)
            v /= l;
        return l * (p + eval_psi(spec, y).value());
    };
    double best = kInf, arg = 0.0;
    for (double ll = -20.0; ll <= 20.0; ll += 0.01) {
        const double v = obj(ll);
        if (v < best) {
            best = v;
            arg = ll;
        }
    }
    double a = arg - 0.01, b = arg + 0.01;
    for (int i = 0; i < 200; ++i) {
        const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (obj(m1) < obj(m2))
            b = m2;
        else
            a = m1;
    }
    return std::min(best, obj(0.5 * (a + b)));
}

} // namespace

TEST(Omega, Examples)
{
    EXPECT_DOUBLE_EQ(omega(kL2sq, 3.0).value(), 9.0);
    EXPECT_DOUBLE_EQ(omega(PsiSpec::two_level(4.0, 2), 2.0).value(), 16.0);
    EXPECT_DOUBLE_EQ(omega(PsiSpec::two_level(4.0, 2), 0.5).value(), 0.25);
    for (const auto& s : builtin(2))
        EXPECT_NEAR(omega(s, 1.0).value(), 1.0, 1e-9) << s.family_name();
}

TEST(Omega, NumericMatchesClosedForms)
{
    // Route the two-level and power components through the grid-backed path.
    for (double r : {1.5, 3.0, 4.0}) {
        const auto user = PsiSpec::user_separable([r](double y) { return two_level_component(std::abs(y), r); }, 1);
        const auto closed = PsiSpec::two_level(r, 1);
        for (double t : {0.1, 0.5, 0.9, 1.0, 1.7, 4.0, 20.0}) {
            const double want = omega(closed, t).value();
            EXPECT_NEAR(omega(user, t).value(), want, 1e-6 * want) << r << " " << t;
        }
    }
    const auto cube = PsiSpec::user_separable([](double y) { return std::pow(std::abs(y), 3.0); }, 1);
    EXPECT_NEAR(omega(cube, 2.5).value(), std::pow(2.5, 3.0), 1e-6 * std::pow(2.5, 3.0));
}

TEST(Omega, EnvelopeBounds)
{
    const GrowthEnvelope env{1, 2, 4, 1, 0};
    const auto s = PsiSpec::two_level(4.0, 3);
    for (double t : log_grid(1e-3, 1e3, 61)) {
        const double w = omega(s, t).value();
        EXPECT_GE(w, std::min(std::pow(t, env.alpha), std::pow(t, env.beta)) / env.K * (1 - 1e-12));
        EXPECT_LE(w, env.K * std::max(std::pow(t, env.alpha), std::pow(t, env.beta)) * (1 + 1e-12));
    }
}

TEST(OmegaInv, RightInverse)
{
    for (const auto& s : builtin(2)) {
        if (detail::omega_domain_bound(s) < kInf)
            continue;
        for (double v : {0.01, 0.5, 1.0, 3.0, 100.0}) {
            const double u = omega_inv(s, v);
            EXPECT_NEAR(omega(s, u).value(), v, 1e-9 * v) << s.family_name();
        }
    }
}

TEST(OmegaStar, Examples)
{
    EXPECT_NEAR(omega_star(kL2sq, 3.0), 9.0, 1e-9);
    for (double a : {1.5, 2.0}) {
        const auto s = PsiSpec::power_norm(NormDescriptor::l2(), a, 2);
        for (double t : {0.1, 1.0, 4.0})
            EXPECT_NEAR(omega_star(s, t), std::pow(t, holder_conjugate(a)), 1e-9 * std::pow(t, holder_conjugate(a)));
    }
    EXPECT_NEAR(omega_legendre(kL2sq, 1.0).value(), 0.25, 1e-9);
    EXPECT_NEAR(omega_legendre(kL2sq, 2.0).value(), 1.0, 1e-9);
}

TEST(OmegaStar, SandwichAndMonotone)
{
    for (const auto& s : builtin(2)) {
        double prev_ratio = 0.0, prev = 0.0;
        for (double t : log_grid(1e-2, 1e2, 200)) {
            const double ws = omega_star(s, t);
            const double lo = omega_legendre(s, t).value();
            const auto hi = omega_legendre(s, 2.0 * t);
            EXPECT_LE(lo, ws * (1 + 1e-6)) << s.family_name() << " t=" << t;
            EXPECT_GE(hi.value(), ws * (1 - 1e-6)) << s.family_name() << " t=" << t;
            EXPECT_GT(ws, prev) << s.family_name();
            EXPECT_GE(ws / t, prev_ratio * (1 - 1e-12)) << s.family_name();
            prev = ws;
            prev_ratio = ws / t;
        }
    }
}

TEST(PsiStar, Examples)
{
    EXPECT_NEAR(psi_star(kL2sq, std::vector<double>{2, 0}).value(), 1.0, 1e-12);
    for (const auto& s : builtin(2))
        EXPECT_EQ(psi_star(s, std::vector<double>{0, 0}).value(), 0.0) << s.family_name();
    // Phi(t) = t: Psi is (tilde-Phi)^*, so Psi* is the convex envelope of tilde-Phi, y^2 on |y| <= 1/2.
    EXPECT_NEAR(psi_star(PsiSpec::from_phi(PhiSpec::power(1.0), 2), std::vector<double>{0.5, 0}).value(), 0.25, 1e-9);
    EXPECT_NEAR(psi_star(PsiSpec::from_phi(PhiSpec::power(1.0), 2), std::vector<double>{2.0, 0}).value(), 1.75, 1e-9);
}

TEST(PsiStar, ClosedFormVersusLegendre)
{
    std::mt19937_64 gen(7);
    std::normal_distribution<double> nd;
    for (double a : {1.5, 2.0, 3.0}) {
        const auto s = PsiSpec::power_norm(NormDescriptor::l2(), a, 1);
        const ScalarConvexFn f{[a](double y) { return std::pow(y, a); }};
        for (int i = 0; i < 20; ++i) {
            const double y = std::abs(nd(gen)) * 3.0;
            const double want = legendre_1d(f, y).value();
            EXPECT_NEAR(psi_star(s, std::vector<double>{y}).value(), want, 1e-6 * (want + 1e-12));
        }
    }
    // Separable two-level via per-coordinate Legendre of the component.
    const auto s = PsiSpec::two_level(3.0, 1);
    const ScalarConvexFn f{[](double y) { return two_level_component(y, 3.0); }};
    for (double y : {0.3, 1.0, 2.0, 2.9, 5.0}) {
        const double want = legendre_1d(f, y).value();
        EXPECT_NEAR(psi_star(s, std::vector<double>{y}).value(), want, 1e-6 * (want + 1e-12));
    }
}

TEST(PsiStar, IndicatorForNormFamily)
{
    const auto s = PsiSpec::power_norm(NormDescriptor::l2(), 1.0, 2);
    EXPECT_EQ(psi_star(s, std::vector<double>{0.6, 0.6}).value(), 0.0);
    EXPECT_TRUE(psi_star(s, std::vector<double>{0.8, 0.8}).is_infinite());
}

TEST(SupportFunction, ClosedFormBall)
{
    // Psi = |x|^2: A = ball of radius 2 sqrt(p).
    const std::vector<double> th{3.0, 4.0};
    const auto r = a_set_support(kL2sq, th, 4.0);
    EXPECT_NEAR(r.value, 2.0 * 2.0 * 5.0, 1e-9);
    EXPECT_NEAR(dot(r.witness, th), r.value, 1e-9);
    EXPECT_LE(psi_star(kL2sq, r.witness).value(), 4.0 * (1 + 1e-9));
}

TEST(SupportFunction, MatchesDualFormula)
{
    std::mt19937_64 gen(11);
    std::normal_distribution<double> nd;
    for (const auto& s : builtin(3)) {
        if (!s.is_convex())
            continue;
        for (int i = 0; i < 6; ++i) {
            std::vector<double> th(3);
            for (auto& v : th)
                v = nd(gen);
            const double p = std::exp(std::uniform_real_distribution<double>(0.0, 3.0)(gen));
            const auto r = a_set_support(s, th, p);
            const double want = dual_support(s, th, p);
            EXPECT_NEAR(r.value, want, 1e-5 * want) << s.family_name() << " p=" << p;
            // The witness is feasible and attains the value.
            EXPECT_LE(psi_star(s, r.witness).value(), p * (1 + 1e-6)) << s.family_name();
            EXPECT_NEAR(dot(r.witness, th), r.value, 1e-9 * r.value) << s.family_name();
        }
    }
}

TEST(PsiStar, SublinearComponentIsInfinite)
{
    const auto s = PsiSpec::user_separable([](double y) { return std::sqrt(std::abs(y)); }, 1);
    EXPECT_TRUE(psi_star(s, std::vector<double>{1.0}).is_infinite());
}
