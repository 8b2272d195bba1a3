#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "phi.hpp"
#include "rng.hpp"

namespace orlicz {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// F_nu(x) = e^{1 - e^{-x}}/2 for x < 0 and 1 - e^{1 - e^x}/2 for x >= 0.
inline double nu_cdf(double x)
{
    if (std::isnan(x))
        throw InputError("nu_cdf: NaN argument");
    if (x < 0.0)
        return 0.5 * std::exp(1.0 - std::exp(-x));
    return 1.0 - 0.5 * std::exp(1.0 - std::exp(x));
}

inline double nu_pdf(double x)
{
    if (std::isnan(x))
        throw InputError("nu_pdf: NaN argument");
    const double a = std::abs(x);
    return 0.5 * std::exp(-(std::expm1(a) - a));
}

inline double nu_quantile(double u)
{
    if (!(u > 0.0 && u < 1.0))
        throw DomainError("nu_quantile: u must lie in (0, 1)");
    if (u > 0.5)
        return std::log1p(std::log(1.0 / (2.0 * (1.0 - u))));
    return -std::log1p(std::log(1.0 / (2.0 * u)));
}

/// t (1 + log(1/(2t))) on (0, 1/2].
inline double isoperimetric_profile_nu(double t)
{
    if (!(t > 0.0 && t <= 0.5))
        throw DomainError("isoperimetric_profile_nu: t must lie in (0, 1/2]");
    return t * (1.0 + std::log(1.0 / (2.0 * t)));
}

struct StandardGaussian
{
    std::size_t n = 1;
};

/// Independent symmetric coordinates with P(|Z_i| >= t) = e^{-Phi(t)}.
struct ProductPhiTail
{
    PhiSpec phi = PhiSpec::power(2.0);
    std::size_t n = 1;
};

/// The one-dimensional measure with distribution function F_nu.
struct NuMeasure
{
};

using SamplerFamily = std::variant<StandardGaussian, ProductPhiTail, NuMeasure>;

struct SamplerSpec
{
    SamplerFamily family = StandardGaussian{};
    std::uint64_t seed = 0;
    std::size_t count = 1;

    std::size_t dim() const
    {
        if (const auto* g = std::get_if<StandardGaussian>(&family))
            return g->n;
        if (const auto* z = std::get_if<ProductPhiTail>(&family))
            return z->n;
        return 1;
    }

    std::string family_name() const
    {
        if (std::holds_alternative<StandardGaussian>(family))
            return "StandardGaussian";
        if (std::holds_alternative<ProductPhiTail>(family))
            return "ProductPhiTail";
        return "NuMeasure";
    }

    void validate() const
    {
        if (count == 0)
            throw InputError("SamplerSpec: count must be positive");
        if (dim() == 0)
            throw InputError("SamplerSpec: dimension must be positive");
    }
};

/// Row `row` of the sample stream `stream`; depends only on (family, seed, row, stream).
inline void sample_row(const SamplerSpec& spec, std::uint64_t row, std::span<double> out, std::uint32_t stream = 0)
{
    CounterStream rng(spec.seed, row, stream);
    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, StandardGaussian>) {
                for (std::size_t j = 0; j < out.size(); j += 2) {
                    const double r = std::sqrt(-2.0 * std::log(rng.uniform()));
                    const double a = 2.0 * std::numbers::pi * rng.uniform();
                    out[j] = r * std::cos(a);
                    if (j + 1 < out.size())
                        out[j + 1] = r * std::sin(a);
                }
            } else if constexpr (std::is_same_v<F, ProductPhiTail>) {
                for (double& v : out) {
                    const double mag = f.phi.inverse(-std::log(rng.uniform()));
                    v = rng.uniform() < 0.5 ? -mag : mag;
                }
            } else {
                out[0] = nu_quantile(rng.uniform());
            }
        },
        spec.family);
}

inline constexpr std::size_t kSampleChunk = 4096;

/// Calls fn(row, x) for every row, in parallel chunks; fn must be safe to call concurrently
/// for distinct rows.
template <class Fn>
void for_each_sample(const SamplerSpec& spec, Fn&& fn, std::uint32_t stream = 0)
{
    spec.validate();
    parallel_chunks(spec.count, kSampleChunk, [&](std::size_t b, std::size_t e) {
        std::vector<double> x(spec.dim());
        for (std::size_t i = b; i < e; ++i) {
            sample_row(spec, i, x, stream);
            fn(i, std::span<const double>(x));
        }
    });
}

/// Row-major count x n sample matrix.
struct SampleMatrix
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

inline SampleMatrix sample(const SamplerSpec& spec, std::uint32_t stream = 0)
{
    spec.validate();
    SampleMatrix m{spec.count, spec.dim(), std::vector<double>(spec.count * spec.dim())};
    for_each_sample(
        spec,
        [&](std::size_t i, std::span<const double> x) { std::copy(x.begin(), x.end(), m.data.begin() + i * m.cols); },
        stream);
    return m;
}

inline void write_binary(const SampleMatrix& m, std::ostream& os)
{
    for (double v : m.data) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        char buf[8];
        for (int b = 0; b < 8; ++b)
            buf[b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
        os.write(buf, 8);
    }
}

} // namespace orlicz
