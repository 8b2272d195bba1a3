#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "conjugacy.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "psi.hpp"
#include "tail_bounds.hpp"

namespace orlicz {

inline constexpr std::size_t kMaxTensorEntries = 10'000'000;

/// Dense k-indexed array of size n^k, row-major (last index fastest).
class MultiIndexMatrix
{
public:
    MultiIndexMatrix(std::size_t k, std::size_t n) : k_(k), n_(n)
    {
        if (k == 0 || n == 0)
            throw InputError("MultiIndexMatrix: order and dimension must be positive");
        std::size_t sz = 1;
        for (std::size_t i = 0; i < k; ++i) {
            if (sz > kMaxTensorEntries / n)
                throw InputError("MultiIndexMatrix: n^k exceeds the 1e7 size guard");
            sz *= n;
        }
        data_.assign(sz, 0.0);
    }

    MultiIndexMatrix(std::size_t k, std::size_t n, std::vector<double> data) : MultiIndexMatrix(k, n)
    {
        if (data.size() != data_.size())
            throw InputError("MultiIndexMatrix: data length must equal n^k");
        for (double v : data)
            if (!std::isfinite(v))
                throw InputError("MultiIndexMatrix: entries must be finite");
        data_ = std::move(data);
    }

    static MultiIndexMatrix identity(std::size_t n)
    {
        MultiIndexMatrix m(2, n);
        for (std::size_t i = 0; i < n; ++i)
            m.data_[i * n + i] = 1.0;
        m.symmetric_ = true;
        return m;
    }

    static MultiIndexMatrix vector(std::vector<double> v)
    {
        const std::size_t n = v.size();
        MultiIndexMatrix m(1, n, std::move(v));
        m.symmetric_ = true;
        return m;
    }

    /// u v^T.
    static MultiIndexMatrix outer(std::span<const double> u, std::span<const double> v)
    {
        if (u.size() != v.size())
            throw InputError("outer: length mismatch");
        MultiIndexMatrix m(2, u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                m.data_[i * v.size() + j] = u[i] * v[j];
        return m;
    }

    std::size_t order() const { return k_; }
    std::size_t dim() const { return n_; }
    std::size_t size() const { return data_.size(); }
    const std::vector<double>& data() const { return data_; }
    double& operator[](std::size_t flat)
    {
        symmetric_ = false;
        return data_[flat];
    }
    double operator[](std::size_t flat) const { return data_[flat]; }

    double at(std::span<const std::size_t> idx) const { return data_[flat_index(idx)]; }

    std::size_t flat_index(std::span<const std::size_t> idx) const
    {
        std::size_t f = 0;
        for (std::size_t i : idx)
            f = f * n_ + i;
        return f;
    }

    /// Whether the flag is set (by construction or a successful check).
    bool symmetric_flag() const { return symmetric_; }

    /// Checks invariance under adjacent transpositions up to tol * max|a|; sets the flag.
    bool check_symmetric(double tol = 1e-12)
    {
        symmetric_ = is_symmetric(tol);
        return symmetric_;
    }

    bool is_symmetric(double tol = 1e-12) const
    {
        if (k_ == 1)
            return true;
        const double scale = std::max(max_abs(data_), 1.0) * tol;
        std::vector<std::size_t> idx(k_);
        for (std::size_t f = 0; f < data_.size(); ++f) {
            unflatten(f, idx);
            for (std::size_t j = 0; j + 1 < k_; ++j) {
                std::swap(idx[j], idx[j + 1]);
                const double other = data_[flat_index(idx)];
                std::swap(idx[j], idx[j + 1]);
                if (std::abs(other - data_[f]) > scale)
                    return false;
            }
        }
        return true;
    }

    void unflatten(std::size_t f, std::vector<std::size_t>& idx) const
    {
        for (std::size_t j = k_; j-- > 0;) {
            idx[j] = f % n_;
            f /= n_;
        }
    }

private:
    friend MultiIndexMatrix symmetrize(const MultiIndexMatrix&);

    std::size_t k_;
    std::size_t n_;
    std::vector<double> data_;
    bool symmetric_ = false;
};

/// Average over all k! index permutations.
inline MultiIndexMatrix symmetrize(const MultiIndexMatrix& A)
{
    const std::size_t k = A.order();
    if (k > 6)
        throw DomainError("symmetrize: order k > 6 is not supported");
    MultiIndexMatrix out(k, A.dim());
    std::vector<std::size_t> perm(k), idx(k), pidx(k);
    std::vector<std::vector<std::size_t>> perms;
    std::iota(perm.begin(), perm.end(), 0);
    do
        perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    const double w = 1.0 / static_cast<double>(perms.size());
    for (std::size_t f = 0; f < A.size(); ++f) {
        A.unflatten(f, idx);
        NeumaierSum s;
        for (const auto& pm : perms) {
            for (std::size_t j = 0; j < k; ++j)
                pidx[j] = idx[pm[j]];
            s.add(A.at(pidx));
        }
        out.data_[f] = w * s.value();
    }
    out.symmetric_ = true;
    return out;
}

namespace detail {

// Contracts the trailing `m` indices of a row-major block against x.
inline std::vector<double> contract_tail(std::span<const double> data, std::size_t n, std::size_t m,
                                         std::span<const double> x)
{
    std::vector<double> cur(data.begin(), data.end());
    for (std::size_t s = 0; s < m; ++s) {
        std::vector<double> next(cur.size() / n);
        for (std::size_t r = 0; r < next.size(); ++r) {
            NeumaierSum acc;
            for (std::size_t j = 0; j < n; ++j)
                acc.add(cur[r * n + j] * x[j]);
            next[r] = acc.value();
        }
        cur = std::move(next);
    }
    return cur;
}

inline void check_form_dim(const MultiIndexMatrix& A, std::span<const double> x)
{
    if (x.size() != A.dim())
        throw InputError("form: dimension mismatch");
    for (double v : x)
        if (!std::isfinite(v))
            throw InputError("form: non-finite coordinate");
}

} // namespace detail

/// <A, x^{(x)k}>.
inline double eval_form(const MultiIndexMatrix& A, std::span<const double> x)
{
    detail::check_form_dim(A, x);
    return detail::contract_tail(A.data(), A.dim(), A.order(), x)[0];
}

/// Gradient of x -> <A, x^{(x)k}> for symmetric A: k sum_{i2..ik} a_{j i2..ik} x_{i2}..x_{ik}.
inline std::vector<double> form_gradient(const MultiIndexMatrix& A, std::span<const double> x)
{
    detail::check_form_dim(A, x);
    if (!A.symmetric_flag() && !A.is_symmetric())
        throw DomainError("form_gradient: A must be symmetric");
    auto g = detail::contract_tail(A.data(), A.dim(), A.order() - 1, x);
    for (double& v : g)
        v *= static_cast<double>(A.order());
    return g;
}

namespace detail {

inline std::vector<double> matvec(const MultiIndexMatrix& A, std::span<const double> y)
{
    const std::size_t n = A.dim();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        NeumaierSum s;
        for (std::size_t j = 0; j < n; ++j)
            s.add(A[i * n + j] * y[j]);
        out[i] = s.value();
    }
    return out;
}

inline std::vector<double> matvec_t(const MultiIndexMatrix& A, std::span<const double> x)
{
    const std::size_t n = A.dim();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        NeumaierSum s;
        for (std::size_t i = 0; i < n; ++i)
            s.add(A[i * n + j] * x[i]);
        out[j] = s.value();
    }
    return out;
}

inline std::vector<double> gaussian_vector(std::mt19937_64& gen, std::size_t n)
{
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    for (double& x : v)
        x = g(gen);
    return v;
}

inline std::uint64_t restart_seed(std::uint64_t seed, std::size_t i)
{
    return seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(i) + 1));
}

// sup{x^T A y : |x|_{qx*} <= 1, |y|_{qy*} <= 1} by alternating exact maximisation.
inline double alternating_bilinear(const MultiIndexMatrix& A, double qx, double qy, std::size_t restarts,
                                   std::uint64_t seed)
{
    const std::size_t n = A.dim();
    double best = 0.0;
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
        std::mt19937_64 gen(restart_seed(seed, r));
        auto x = gaussian_vector(gen, n);
        x = dual_witness(x, qx);
        double val = 0.0;
        for (int it = 0; it < 2000; ++it) {
            const auto y = dual_witness(matvec_t(A, x), qy);
            const auto ay = matvec(A, y);
            x = dual_witness(ay, qx);
            const double v = lp_norm(ay, qx);
            if (v <= val * (1.0 + 1e-15)) {
                val = std::max(val, v);
                break;
            }
            val = v;
        }
        best = std::max(best, val);
    }
    return best;
}

} // namespace detail

/// Largest singular value by power iteration on A^T A.
inline double operator_norm(const MultiIndexMatrix& A, std::uint64_t seed = 0)
{
    if (A.order() != 2)
        throw DomainError("operator_norm: requires a 2-indexed matrix");
    if (max_abs(A.data()) == 0.0)
        return 0.0;
    std::mt19937_64 gen(seed);
    auto v = detail::gaussian_vector(gen, A.dim());
    double nv = l2_norm(v);
    for (double& x : v)
        x /= nv;
    double sigma = 0.0;
    for (int it = 0; it < 100000; ++it) {
        const auto av = detail::matvec(A, v);
        auto w = detail::matvec_t(A, av);
        const double s2 = dot(v, w); // Rayleigh quotient of A^T A
        sigma = std::max(sigma, std::sqrt(std::max(s2, 0.0)));
        double res = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
            res = std::max(res, std::abs(w[i] - s2 * v[i]));
        const double nw = l2_norm(w);
        if (nw == 0.0 || res <= 1e-10 * s2)
            break;
        for (std::size_t i = 0; i < w.size(); ++i)
            v[i] = w[i] / nw;
    }
    return sigma;
}

inline constexpr std::size_t kDefaultRestarts = 32;

/// hs, op, entry l_r, and the two mixed suprema (certified lower bounds) of a 2-indexed matrix.
inline PartitionNorms partition_norms(const MultiIndexMatrix& A, double r, std::size_t restarts = kDefaultRestarts,
                                      std::uint64_t seed = 0)
{
    if (A.order() != 2)
        throw DomainError("partition_norms: requires a 2-indexed matrix");
    if (!(r >= 2.0))
        throw DomainError("partition_norms: r must be >= 2");
    PartitionNorms out;
    out.r = r;
    out.hs = l2_norm(A.data());
    out.entry_lr = lp_norm(A.data(), r);
    if (max_abs(A.data()) == 0.0)
        return out;
    out.op = operator_norm(A, seed);
    out.mixed_2_rstar = detail::alternating_bilinear(A, 2.0, r, restarts, seed);
    out.rstar_rstar = detail::alternating_bilinear(A, r, r, restarts, seed);
    return out;
}

/// sup over A_{Psi,p} of |<A, y>| (k = 1) or |<A, y1 (x) y2>| (k = 2).
inline double chaos_deterministic_term(const MultiIndexMatrix& A, const PsiSpec& spec, double p,
                                       std::size_t restarts = kDefaultRestarts, std::uint64_t seed = 0)
{
    if (A.order() > 2)
        throw UnsupportedSpecError("chaos_deterministic_term: only k <= 2 is supported");
    if (A.dim() != spec.dim())
        throw InputError("chaos_deterministic_term: dimension mismatch");
    if (max_abs(A.data()) == 0.0)
        return 0.0;
    if (A.order() == 1)
        return std::abs(a_set_support(spec, A.data(), p).value);

    double best = 0.0;
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
        std::mt19937_64 gen(detail::restart_seed(seed, r));
        auto y2 = a_set_support(spec, detail::gaussian_vector(gen, A.dim()), p).witness;
        double val = 0.0;
        for (int it = 0; it < 500; ++it) {
            const auto y1 = a_set_support(spec, detail::matvec(A, y2), p).witness;
            const auto s = a_set_support(spec, detail::matvec_t(A, y1), p);
            y2 = s.witness;
            if (s.value <= val * (1.0 + 1e-13)) {
                val = std::max(val, s.value);
                break;
            }
            val = s.value;
        }
        best = std::max(best, val);
    }
    return best;
}

} // namespace orlicz
