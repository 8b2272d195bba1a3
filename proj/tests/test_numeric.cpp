#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "orlicz/legendre.hpp"
#include "orlicz/numeric.hpp"
#include "orlicz/phi.hpp"

using namespace orlicz;

TEST(ExtendedReal, InfinityRules)
{
    const auto inf = ExtendedReal::infinity();
    EXPECT_TRUE((inf + ExtendedReal(3.0)).is_infinite());
    EXPECT_TRUE(inf > 1e300);
    EXPECT_FALSE(inf <= 1e300);
    EXPECT_EQ((0.0 * inf).value(), 0.0);
    EXPECT_THROW(ExtendedReal(-1.0), InputError);
}

TEST(Numeric, HolderConjugate)
{
    EXPECT_DOUBLE_EQ(holder_conjugate(2.0), 2.0);
    EXPECT_DOUBLE_EQ(holder_conjugate(4.0), 4.0 / 3.0);
    EXPECT_EQ(holder_conjugate(1.0), kInf);
    EXPECT_EQ(holder_conjugate(kInf), 1.0);
}

TEST(Numeric, NormsAndWitness)
{
    const std::vector<double> x{3.0, -4.0, 0.0};
    EXPECT_DOUBLE_EQ(l2_norm(x), 5.0);
    EXPECT_DOUBLE_EQ(lp_norm(x, 1.0), 7.0);
    EXPECT_DOUBLE_EQ(lp_norm(x, kInf), 4.0);
    // Large entries must not overflow.
    const std::vector<double> big{1e300, 1e300};
    EXPECT_NEAR(l2_norm(big) / 1e300, std::sqrt(2.0), 1e-14);

    std::mt19937_64 gen(5);
    std::normal_distribution<double> nd;
    for (double q : {1.0, 1.5, 2.0, 3.0, kInf}) {
        std::vector<double> v(7);
        for (auto& e : v)
            e = nd(gen);
        const auto w = dual_witness(v, q);
        EXPECT_NEAR(lp_norm(w, holder_conjugate(q)), 1.0, 1e-12) << q;
        EXPECT_NEAR(dot(w, v), lp_norm(v, q), 1e-12 * lp_norm(v, q)) << q;
    }
}

TEST(Numeric, CompensatedSums)
{
    std::vector<double> v(1'000'000, 0.1);
    v.push_back(1e10);
    v.push_back(-1e10);
    EXPECT_NEAR(pairwise_sum(v), 1e5, 1e-6);
    NeumaierSum s;
    for (double e : v)
        s.add(e);
    EXPECT_NEAR(s.value(), 1e5, 1e-6);
}

TEST(Legendre, Examples)
{
    const ScalarConvexFn sq{[](double y) { return y * y; }};
    const ScalarConvexFn lin{[](double y) { return y; }};
    EXPECT_NEAR(legendre_1d(sq, 2.0).value(), 1.0, 1e-9);
    EXPECT_NEAR(legendre_1d(lin, 0.5).value(), 0.0, 1e-12);
    EXPECT_TRUE(legendre_1d(lin, 2.0).is_infinite());
    EXPECT_EQ(legendre_1d(sq, 0.0).value(), 0.0);
}

TEST(Legendre, PowerClosedForm)
{
    // (y^a)* (t) = (a - 1) (t / a)^{a*}
    for (double a : {1.5, 2.0, 3.0, 5.0})
        for (double t : {0.01, 0.3, 1.0, 7.0, 100.0}) {
            const ScalarConvexFn f{[a](double y) { return std::pow(y, a); }};
            const double as = a / (a - 1.0);
            const double want = (a - 1.0) * std::pow(t / a, as);
            EXPECT_NEAR(legendre_1d(f, t).value(), want, 1e-6 * want + 1e-12) << a << " " << t;
        }
}

TEST(Legendre, DomainBound)
{
    // Indicator-like function finite on [0, 1]: conjugate of y^2 restricted is t - 1 for t >= 2.
    const ScalarConvexFn f{[](double y) { return y * y; }, 1.0};
    EXPECT_NEAR(legendre_1d(f, 3.0).value(), 2.0, 1e-9);
    EXPECT_NEAR(legendre_1d(f, 1.0).value(), 0.25, 1e-9);
}

TEST(Phi, TwoLevelPieces)
{
    for (double r : {1.5, 2.0, 4.0}) {
        EXPECT_DOUBLE_EQ(two_level_component(0.5, r), 0.25);
        EXPECT_DOUBLE_EQ(two_level_component(2.0, r), std::pow(2.0, r));
    }
    // The conjugate matches a numeric Legendre transform of the convex envelope.
    for (double r : {1.5, 3.0, 4.0})
        for (double u : {0.2, 1.0, 1.9, 2.5, 9.0}) {
            const ScalarConvexFn f{[r](double y) { return two_level_convex_envelope(y, r); }};
            const double num = legendre_1d(f, u).value();
            EXPECT_NEAR(two_level_conjugate(u, r), num, 1e-6 * (1.0 + num)) << r << " " << u;
        }
}

TEST(Phi, PowerTilde)
{
    const auto phi = PhiSpec::power(2.0);
    EXPECT_DOUBLE_EQ(phi(1.0), 1.0);
    EXPECT_DOUBLE_EQ(phi(0.0), 0.0);
    EXPECT_NEAR(phi.inverse(phi(1.7)), 1.7, 1e-12);
    // Phi(t) = t^2 gives tilde-conjugate u^2/4.
    EXPECT_NEAR(phi.tilde_conjugate(1.2), 0.36, 1e-9);

    const auto expo = PhiSpec::power(1.0);
    EXPECT_NEAR(expo.tilde_conjugate(0.5), 0.0625, 1e-9);
    EXPECT_EQ(expo.tilde_conjugate_domain_bound(), 1.0);
    EXPECT_THROW(PhiSpec::power(0.5), InputError);
}
