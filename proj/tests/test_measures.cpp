#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "orlicz/measures.hpp"

using namespace orlicz;

namespace {

struct ThreadsEnv
{
    explicit ThreadsEnv(const char* v) { setenv("ORLICZ_CONC_THREADS", v, 1); }
    ~ThreadsEnv() { unsetenv("ORLICZ_CONC_THREADS"); }
};

// Kolmogorov-Smirnov statistic of sorted samples against a CDF.
double ks_stat(std::vector<double> v, const std::function<double(double)>& cdf)
{
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double F = cdf(v[i]);
        d = std::max({d, F - i / n, (i + 1) / n - F});
    }
    return d;
}

std::vector<double> column(const SampleMatrix& m, std::size_t j)
{
    std::vector<double> c(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        c[i] = m.data[i * m.cols + j];
    return c;
}

} // namespace

TEST(Philox, KnownAnswers)
{
    using C = Philox4x32::Counter;
    EXPECT_EQ(Philox4x32::block({0, 0, 0, 0}, {0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterStream, OpenUnitInterval)
{
    CounterStream s(42, 7, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
    CounterStream a(1, 0, 0), b(1, 0, 1), c(1, 1, 0);
    const double ua = a.uniform();
    EXPECT_NE(ua, b.uniform());
    EXPECT_NE(ua, c.uniform());
}

TEST(Parallel, ChunksCoverRangeOnce)
{
    std::vector<std::atomic<int>> hits(10007);
    parallel_chunks(hits.size(), 100, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            ++hits[i];
    }, 8);
    for (const auto& h : hits)
        EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(parallel_chunks(1000, 10, [](std::size_t b, std::size_t) {
        if (b == 500)
            throw NumericalError("boom");
    }, 4),
                 NumericalError);
}

TEST(Sampler, BitIdenticalAcrossThreadCounts)
{
    for (const SamplerFamily& fam : {SamplerFamily{StandardGaussian{3}}, SamplerFamily{ProductPhiTail{PhiSpec::power(1.5), 2}},
                                     SamplerFamily{NuMeasure{}}}) {
        const SamplerSpec spec{fam, 99, 20000};
        SampleMatrix one, many;
        {
            ThreadsEnv t("1");
            one = sample(spec);
        }
        {
            ThreadsEnv t("7");
            many = sample(spec);
        }
        EXPECT_EQ(one.data, many.data) << spec.family_name();
        // A prefix of a longer run is the shorter run.
        const SamplerSpec longer{fam, 99, 30000};
        const auto l = sample(longer);
        EXPECT_TRUE(std::equal(one.data.begin(), one.data.end(), l.data.begin()));
    }
}

TEST(Sampler, GaussianMoments)
{
    const auto m = sample({StandardGaussian{1}, 1, 1'000'000});
    const auto x = column(m, 0);
    double s = 0.0, s2 = 0.0;
    for (double v : x) {
        s += v;
        s2 += v * v;
    }
    EXPECT_NEAR(s / x.size(), 0.0, 0.004);
    EXPECT_NEAR(s2 / x.size(), 1.0, 0.005);
    EXPECT_LT(ks_stat(x, normal_cdf), 1.63 / std::sqrt(1e6));
}

TEST(Sampler, PhiTailProbabilities)
{
    const auto m = sample({ProductPhiTail{PhiSpec::power(2.0), 1}, 2, 1'000'000});
    const auto x = column(m, 0);
    const double frac = std::count_if(x.begin(), x.end(), [](double v) { return std::abs(v) >= 1.0; }) / 1e6;
    EXPECT_NEAR(frac, std::exp(-1.0), 0.002);
    // Symmetric law with P(|Z| >= t) = e^{-t^2}.
    const auto cdf = [](double t) { return t < 0 ? 0.5 * std::exp(-t * t) : 1.0 - 0.5 * std::exp(-t * t); };
    EXPECT_LT(ks_stat(x, cdf), 1.63 / std::sqrt(1e6));
}

TEST(Sampler, PhiTailMomentsAgainstQuadrature)
{
    // E|Z|^q = integral of q t^{q-1} e^{-Phi(t)} dt by Simpson's rule.
    for (double s : {1.0, 1.5, 3.0}) {
        const auto m = sample({ProductPhiTail{PhiSpec::power(s), 1}, 3, 400000});
        const auto x = column(m, 0);
        for (double q : {1.0, 2.0, 4.0}) {
            const int N = 200000;
            const double T = 60.0, h = T / N;
            double acc = 0.0;
            for (int i = 0; i <= N; ++i) {
                const double t = i * h;
                const double f = q * std::pow(t, q - 1) * std::exp(-std::pow(t, s));
                acc += f * (i == 0 || i == N ? 1 : (i % 2 ? 4 : 2));
            }
            const double want = acc * h / 3;
            double emp = 0.0, emp2 = 0.0;
            for (double v : x) {
                emp += std::pow(std::abs(v), q);
                emp2 += std::pow(std::abs(v), 2 * q);
            }
            emp /= x.size();
            const double se = std::sqrt((emp2 / x.size() - emp * emp) / x.size());
            EXPECT_NEAR(emp, want, 4 * se) << "s=" << s << " q=" << q;
        }
    }
}

TEST(Nu, Examples)
{
    EXPECT_DOUBLE_EQ(nu_cdf(0.0), 0.5);
    EXPECT_NEAR(nu_quantile(0.75), std::log(1 + std::log(2.0)), 1e-15);
    EXPECT_NEAR(nu_quantile(0.75), 0.52656, 5e-5);
    EXPECT_EQ(nu_quantile(0.5), 0.0);
    EXPECT_DOUBLE_EQ(isoperimetric_profile_nu(0.5), 0.5);
    EXPECT_NEAR(isoperimetric_profile_nu(1 / (2 * std::numbers::e)), 1 / std::numbers::e, 1e-15);
    EXPECT_THROW(nu_quantile(0.0), DomainError);
    EXPECT_THROW(isoperimetric_profile_nu(0.6), DomainError);
}

TEST(Nu, RoundTripAndDensity)
{
    for (double u = 0.001; u < 1.0; u += 0.001)
        EXPECT_NEAR(nu_cdf(nu_quantile(u)), u, 1e-12);
    for (double x = -5; x <= 5; x += 0.25) {
        const double h = 1e-6;
        EXPECT_NEAR(nu_pdf(x), (nu_cdf(x + h) - nu_cdf(x - h)) / (2 * h), 1e-7) << x;
        EXPECT_DOUBLE_EQ(nu_pdf(x), nu_pdf(-x));
    }
}

TEST(Nu, ProfileDominatesEntropyShape)
{
    for (int i = 1; i <= 1000; ++i) {
        const double t = 0.5 * i / 1000.0;
        EXPECT_GE(isoperimetric_profile_nu(t), t * std::log(1 / t) * (1 - 1e-15));
    }
}

TEST(Nu, SamplerMatchesCdf)
{
    const auto m = sample({NuMeasure{}, 5, 1'000'000});
    auto x = column(m, 0);
    std::nth_element(x.begin(), x.begin() + x.size() / 2, x.end());
    EXPECT_NEAR(x[x.size() / 2], 0.0, 0.005);
    EXPECT_LT(ks_stat(x, nu_cdf), 1.63 / std::sqrt(1e6));
}

TEST(Sampler, BinaryLayout)
{
    const auto m = sample({StandardGaussian{2}, 1, 3});
    std::ostringstream os;
    write_binary(m, os);
    const auto s = os.str();
    ASSERT_EQ(s.size(), 6u * 8u);
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b)
        bits = (bits << 8) | static_cast<unsigned char>(s[b]);
    double v;
    std::memcpy(&v, &bits, 8);
    EXPECT_EQ(v, m.data[0]);
}

TEST(Sampler, Validation)
{
    EXPECT_THROW(sample({StandardGaussian{2}, 1, 0}), InputError);
    EXPECT_THROW(sample({StandardGaussian{0}, 1, 5}), InputError);
}
