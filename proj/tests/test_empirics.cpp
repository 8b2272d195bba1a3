#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "orlicz/empirics.hpp"

using namespace orlicz;

namespace {

const auto kL2sq = [](std::size_t n) { return PsiSpec::power_norm(NormDescriptor::l2(), 2.0, n); };

// E|g|^p for a standard normal g.
double normal_abs_moment(double p)
{
    return std::pow(2.0, p / 2) * std::tgamma((p + 1) / 2) / std::sqrt(std::numbers::pi);
}

} // namespace

TEST(EmpiricalMoment, Examples)
{
    EXPECT_NEAR(empirical_moment(std::vector<double>(100, -2.5), 7.0), 2.5, 1e-14);
    const std::vector<double> v{1, -2, 3, -4};
    EXPECT_NEAR(empirical_moment(v, 1.0), 2.5, 1e-14);
    EXPECT_THROW(empirical_moment(std::vector<double>{}, 2.0), DomainError);
    // Large values at high p do not overflow.
    EXPECT_NEAR(empirical_moment(std::vector<double>{1e300, 1e300}, 256.0) / 1e300, 1.0, 1e-12);

    const auto m = sample({StandardGaussian{1}, 3, 1'000'000});
    EXPECT_NEAR(empirical_moment(m.data, 4.0), std::pow(3.0, 0.25), 0.01);
}

TEST(EmpiricalMoment, MonotoneInP)
{
    std::mt19937_64 gen(1);
    std::exponential_distribution<double> ex;
    std::vector<double> v(1000);
    for (auto& e : v)
        e = ex(gen);
    double prev = 0.0;
    for (double p = 1.0; p <= 128.0; p *= 1.5) {
        const double m = empirical_moment(v, p);
        EXPECT_GE(m, prev * (1 - 1e-14));
        prev = m;
    }
}

TEST(Entropy, Examples)
{
    EXPECT_NEAR(empirical_entropy(std::vector<double>(10, 3.0)), 0.0, 1e-15);
    const double e = std::numbers::e;
    EXPECT_NEAR(empirical_entropy(std::vector<double>{e, 1.0}), e / 2 - (e + 1) / 2 * std::log((e + 1) / 2), 1e-15);
    EXPECT_NEAR(empirical_entropy(std::vector<double>{e, 1.0}), 0.206261, 1e-6);
    EXPECT_THROW(empirical_entropy(std::vector<double>{1.0, -1.0}), DomainError);
    std::mt19937_64 gen(2);
    std::exponential_distribution<double> ex;
    for (int i = 0; i < 50; ++i) {
        std::vector<double> v(20);
        for (auto& x : v)
            x = ex(gen);
        EXPECT_GE(empirical_entropy(v), -1e-15);
    }
}

TEST(TestFunctions, GradientsMatchFiniteDifferences)
{
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    const auto S = symmetrize(MultiIndexMatrix(2, 3, {1, 2, 0, 0, -1, 3, 1, 0, 2}));
    const std::vector<TestFunction> fns{functions::linear({1, -2, 0.5}), functions::quadratic_form(S),
                                        functions::euclidean_norm(), functions::max_coordinate(),
                                        functions::halfspace_distance(0.1), functions::exp_tilt({0.3, -0.2, 0.1})};
    for (const auto& f : fns)
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> x{nd(gen), nd(gen), nd(gen)}, g(3);
            f.grad(x, g);
            for (std::size_t i = 0; i < 3; ++i) {
                auto xp = x, xm = x;
                xp[i] += 1e-6;
                xm[i] -= 1e-6;
                const double fd = (f(xp) - f(xm)) / 2e-6;
                EXPECT_NEAR(g[i], fd, 1e-6 * std::max(1.0, std::abs(fd))) << f.name;
            }
        }
}

TEST(TestFunctions, QuadraticHessianInfo)
{
    const auto f = functions::quadratic_form(MultiIndexMatrix::identity(4));
    ASSERT_TRUE(f.hessian.has_value());
    EXPECT_NEAR(f.hessian->hs, 4.0, 1e-12);
    EXPECT_NEAR(f.hessian->op, 2.0, 1e-9);
    EXPECT_THROW(functions::quadratic_form(MultiIndexMatrix(2, 2, {0, 1, 0, 0})), DomainError);
}

TEST(VerifyCentered, GaussianLinear)
{
    const std::vector<double> grid{2, 4, 8, 16, 32, 64};
    const auto rep = verify_centered(StandardGaussian{3}, functions::linear({0.6, 0.0, 0.8}), kL2sq(3),
                                     {1, 2, 2, 1, 0}, grid, 200000, 4);
    for (const auto& row : rep.rows) {
        EXPECT_NEAR(row.G, std::sqrt(row.p), 1e-8 * std::sqrt(row.p));
        const double exact = std::pow(normal_abs_moment(row.p), 1 / row.p) / std::sqrt(row.p);
        EXPECT_GE(exact, 0.55);
        EXPECT_LE(exact, 1.0);
        EXPECT_LE(row.ratio, exact + 3 * row.ratio_se) << row.p;
        // Sample moments of order above ~16 are dominated by the sample maximum and sit low.
        if (row.p <= 16) {
            EXPECT_NEAR(row.ratio, exact, 3 * row.ratio_se + 0.02 * exact) << row.p;
        }
    }
    EXPECT_EQ(rep.fitted_constant, std::max_element(rep.rows.begin(), rep.rows.end(), [](auto& a, auto& b) {
                                       return a.ratio < b.ratio;
                                   })->ratio);
}

TEST(VerifyCentered, ConstantFunction)
{
    const std::vector<double> grid{2, 8};
    const auto rep = verify_centered(StandardGaussian{2}, functions::constant(3.0), kL2sq(2), {1, 2, 2, 1, 0}, grid,
                                     10000, 5);
    for (const auto& row : rep.rows) {
        EXPECT_EQ(row.lhs, 0.0);
        EXPECT_EQ(row.ratio, 0.0);
    }
}

TEST(VerifyCentered, QuadraticFittedConstantStable)
{
    const std::size_t n = 4;
    MultiIndexMatrix A(2, n);
    for (std::size_t i = 0; i < n; ++i)
        A[i * n + i] = 1.0 / std::sqrt(static_cast<double>(n));
    A.check_symmetric();
    const auto f = functions::quadratic_form(A);
    const std::vector<double> grid{2, 4, 8, 16};
    const auto small = verify_centered(StandardGaussian{n}, f, kL2sq(n), {1, 2, 2, 1, 0}, grid, 10000, 6);
    const auto large = verify_centered(StandardGaussian{n}, f, kL2sq(n), {1, 2, 2, 1, 0}, grid, 100000, 6);
    ASSERT_TRUE(std::isfinite(small.fitted_constant));
    EXPECT_NEAR(small.fitted_constant / large.fitted_constant, 1.0, 0.2);
}

TEST(VerifyCentered, GradientMomentMonotone)
{
    const std::vector<double> grid{3, 5, 8, 13, 21};
    const auto rep = verify_centered(StandardGaussian{2}, functions::euclidean_norm(), PsiSpec::two_level(3.0, 2),
                                     {1, 2, 3, 1, 0}, grid, 20000, 7);
    for (std::size_t k = 1; k < rep.rows.size(); ++k)
        EXPECT_GE(rep.rows[k].G, rep.rows[k - 1].G * (1 - 1e-12));
}

TEST(VerifyCentered, Reproducible)
{
    const std::vector<double> grid{2, 8};
    const auto f = functions::max_coordinate();
    const auto a = verify_centered(StandardGaussian{3}, f, kL2sq(3), {1, 2, 2, 1, 0}, grid, 30000, 8);
    setenv("ORLICZ_CONC_THREADS", "3", 1);
    const auto b = verify_centered(StandardGaussian{3}, f, kL2sq(3), {1, 2, 2, 1, 0}, grid, 30000, 8);
    unsetenv("ORLICZ_CONC_THREADS");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        EXPECT_EQ(a.rows[k].lhs, b.rows[k].lhs);
        EXPECT_EQ(a.rows[k].G, b.rows[k].G);
        EXPECT_EQ(a.rows[k].lhs_se, b.rows[k].lhs_se);
    }
}

TEST(VerifyCentered, RejectsBadGrid)
{
    const std::vector<double> grid{1.0};
    EXPECT_THROW(verify_centered(StandardGaussian{1}, functions::linear({1}), kL2sq(1), {1, 2, 2, 1, 0}, grid, 100, 1),
                 DomainError);
    const std::vector<double> big{256.0};
    EXPECT_THROW(verify_centered(StandardGaussian{1}, functions::linear({1}), kL2sq(1), {1, 2, 2, 1, 0}, big, 100, 1),
                 DomainError);
}

TEST(Mlsi, ConstantIsZero)
{
    const auto r = mlsi_residual(StandardGaussian{2}, functions::constant(2.0), kL2sq(2), 2.0, 10000, 1);
    EXPECT_NEAR(r.residual, 0.0, 1e-12);
}

TEST(Mlsi, GaussianTilts)
{
    for (double s : {0.25, 0.5}) {
        const auto r = mlsi_residual(StandardGaussian{2}, functions::exp_tilt({s, 0.0}), kL2sq(2), 2.0, 200000, 2);
        EXPECT_GE(r.residual, -3 * r.se) << s;
        // Tilts are extremal: Ent = 2 E|grad f|^2 = s^2/2 E g, with E g = e^{s^2/2}.
        EXPECT_NEAR(r.entropy, 0.5 * s * s * std::exp(0.5 * s * s), 0.05 * s * s);
    }
}

TEST(Mlsi, InfiniteEnergy)
{
    const auto r = mlsi_residual(StandardGaussian{1}, functions::exp_tilt({3.0}), PsiSpec::bobkov_ledoux_cap(1), 2.0,
                                 1000, 1);
    EXPECT_TRUE(r.infinite);
    EXPECT_EQ(r.residual, kInf);
}

TEST(NuLogp, Envelope)
{
    const std::vector<double> grid{2.0, std::exp(2.0), 16.0, 64.0};
    const auto rep = verify_nu_logp(grid, 200000, 3);
    EXPECT_TRUE(rep.ok());
    EXPECT_NEAR(rep.rows[1].lower, 1 / std::numbers::e, 1e-15);
    EXPECT_GT(rep.rows[0].norm_p, rep.rows[0].lower);
    EXPECT_LT(rep.rows[0].norm_p, rep.rows[0].upper);
}

TEST(Comparison, GaussianLinear)
{
    const std::vector<double> grid{2, 4, 8, 16, 32, 64};
    const auto rep = comparison_check(StandardGaussian{2}, PhiSpec::power(2.0), functions::linear({1.0, 1.0}), grid,
                                      200000, 4);
    for (const auto& row : rep.rows) {
        EXPECT_GE(row.ratio, 0.3);
        EXPECT_LE(row.ratio, 3.0);
    }
    const auto c = comparison_check(StandardGaussian{2}, PhiSpec::power(2.0), functions::constant(1.0), grid, 1000, 4);
    for (const auto& row : c.rows)
        EXPECT_EQ(row.ratio, 0.0);
}

TEST(Enlargement, GaussianExactMass)
{
    const std::vector<double> u{0.25, 1.0, 4.0};
    const auto rep = enlargement_mc(StandardGaussian{1}, 0.0, kL2sq(1), {1, 2, 2, 1, 0}, u, 400000, 5);
    EXPECT_TRUE(rep.precondition_ok);
    EXPECT_NEAR(rep.mass_A, 0.5, 3 * rep.mass_A_se + 1e-12);
    for (const auto& row : rep.rows) {
        EXPECT_NEAR(row.radius, 2 * std::sqrt(row.u), 1e-9);
        EXPECT_NEAR(row.mass, normal_cdf(2 * std::sqrt(row.u)), 3 * row.se + 1e-12) << row.u;
        EXPECT_LE(row.bound, row.mass + 3 * row.se);
    }
}
